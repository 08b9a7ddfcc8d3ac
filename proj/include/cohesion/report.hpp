#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cohesion/config.hpp"
#include "cohesion/harness.hpp"

namespace cohesion {

inline constexpr std::string_view kReportSchema = "cohesion-report/1";

/// Report CSV columns, in order. One row per query x parameter combination
/// (`combination`), one per query mean (`query_mean`), and one `aggregate`.
inline constexpr std::array<std::string_view, 22> kReportColumns = {
    "row_type", "algorithm", "decay_kind", "decay_rate", "query", "params", "status", "reason",
    "d",        "size",      "deg_min",    "core",       "truss", "ei",     "sit",    "ced",
    "gip",      "gid",       "n_members",  "n_events",   "n_queries", "q_hit"};

enum class ReportFormat { Csv, Json };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw Error("unknown report format '" + std::string(s) + "'");
}

/// Shortest round-trip decimal; non-finite values become `INF` / `-INF` / `NaN`.
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "INF" : "-INF";
  if (std::isnan(x)) return "NaN";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline std::string format_params(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ';';
    out += k + "=" + std::to_string(v);
  }
  return out;
}

namespace detail {


inline ojson number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

inline double number_from_json(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "INF") return kInfinity;
  if (s == "-INF") return -kInfinity;
  if (s == "NaN") return std::nan("");
  throw Error("expected a number, got '" + s + "'");
}

inline ojson row_json(const MeasureRow& r) {
  ojson j;
  j["d"] = number_json(r.d);
  j["size"] = number_json(r.size);
  j["deg_min"] = number_json(r.deg_min);
  j["core"] = number_json(r.core);
  j["truss"] = number_json(r.truss);
  j["ei"] = number_json(r.ei);
  j["sit"] = number_json(r.sit);
  j["ced"] = number_json(r.ced);
  j["gip"] = number_json(r.gip);
  j["gid"] = r.gid ? number_json(*r.gid) : ojson(nullptr);
  j["n_members"] = number_json(r.n_members);
  j["n_events"] = number_json(r.n_events);
  return j;
}

inline MeasureRow row_from_json(const ojson& j) {
  MeasureRow r;
  r.d = number_from_json(j.at("d"));
  r.size = number_from_json(j.at("size"));
  r.deg_min = number_from_json(j.at("deg_min"));
  r.core = number_from_json(j.at("core"));
  r.truss = number_from_json(j.at("truss"));
  r.ei = number_from_json(j.at("ei"));
  r.sit = number_from_json(j.at("sit"));
  r.ced = number_from_json(j.at("ced"));
  r.gip = number_from_json(j.at("gip"));
  if (!j.at("gid").is_null()) r.gid = number_from_json(j.at("gid"));
  r.n_members = number_from_json(j.at("n_members"));
  r.n_events = number_from_json(j.at("n_events"));
  return r;
}

inline ojson optional_row_json(const std::optional<MeasureRow>& r) { return r ? row_json(*r) : ojson(nullptr); }

inline std::optional<MeasureRow> optional_row_from_json(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  return row_from_json(j);
}

}  // namespace detail

inline nlohmann::ordered_json report_json(const RunReport& r) {
  detail::ojson j;
  j["schema"] = std::string(kReportSchema);
  j["plan"] = plan_json(r.plan);
  j["metadata"] = {{"time_unit", "seconds"},
                   {"density", "simple undirected view, 2|E|/(n(n-1))"},
                   {"self_loop_degree", static_cast<int>(r.plan.self_loop_degree)},
                   {"gip_empty_community", "0"},
                   {"st_truss", "greedy heuristic"}};
  j["dataset_stats"] = {{"n_users", r.dataset_stats.n_users},
                        {"n_events", r.dataset_stats.n_events},
                        {"n_timestamps", r.dataset_stats.n_timestamps},
                        {"density", r.dataset_stats.density},
                        {"deg_avg", r.dataset_stats.deg_avg}};
  j["t_cur"] = r.t_cur;
  j["query_pool_size"] = r.sample.pool_size;
  j["queries_with_replacement"] = r.sample.with_replacement;
  j["timed_out"] = r.timed_out;
  j["q_hit"] = r.timed_out ? detail::ojson("INF") : detail::ojson(r.q_hit);
  j["aggregate"] = r.timed_out ? detail::ojson("INF") : detail::optional_row_json(r.aggregate);
  j["queries"] = detail::ojson::array();
  for (const auto& rec : r.records) {
    detail::ojson q;
    q["query"] = rec.query_external;
    q["hit"] = rec.hit;
    q["timed_out"] = rec.timed_out;
    q["average"] = detail::optional_row_json(rec.average);
    q["combinations"] = detail::ojson::array();
    for (const auto& c : rec.combinations) {
      detail::ojson cj;
      cj["params"] = detail::ojson::object();
      for (const auto& [k, v] : c.params) cj["params"][k] = v;
      cj["found"] = c.outcome.ok();
      cj["reason"] = c.outcome.reason();
      cj["scores"] = detail::optional_row_json(c.scores);
      q["combinations"].push_back(std::move(cj));
    }
    j["queries"].push_back(std::move(q));
  }
  return j;
}

/// Flat, plot-oriented view of a report as read back from JSON.
struct ReportTable {
  std::string algorithm;
  std::string decay_kind;
  double decay_rate = 0.0;
  bool timed_out = false;
  double q_hit = 0.0;
  std::size_t n_queries = 0;
  std::optional<MeasureRow> aggregate;

  struct Combination {
    Params params;
    bool found = false;
    std::string reason;
    std::optional<MeasureRow> scores;
  };
  struct Query {
    std::string query;
    bool hit = false;
    std::optional<MeasureRow> average;
    std::vector<Combination> combinations;
  };
  std::vector<Query> queries;
};

inline ReportTable table_of(const RunReport& r) {
  ReportTable t;
  t.algorithm = std::string(to_string(r.plan.algorithm));
  t.decay_kind = std::string(to_string(r.plan.excitation.decay.kind));
  t.decay_rate = r.plan.excitation.decay.rate;
  t.timed_out = r.timed_out;
  t.q_hit = r.q_hit;
  t.n_queries = r.records.size();
  t.aggregate = r.aggregate;
  for (const auto& rec : r.records) {
    ReportTable::Query q{rec.query_external, rec.hit, rec.average, {}};
    for (const auto& c : rec.combinations) q.combinations.push_back({c.params, c.outcome.ok(), c.outcome.reason(), c.scores});
    t.queries.push_back(std::move(q));
  }
  return t;
}

inline ReportTable table_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema) throw Error("unsupported report schema");
    ReportTable t;
    t.algorithm = j.at("plan").at("algorithm").get<std::string>();
    t.decay_kind = j.at("plan").at("decay").at("kind").get<std::string>();
    t.decay_rate = j.at("plan").at("decay").at("rate").get<double>();
    t.timed_out = j.at("timed_out").get<bool>();
    if (!t.timed_out) {
      t.q_hit = j.at("q_hit").get<double>();
      t.aggregate = detail::optional_row_from_json(j.at("aggregate"));
    }
    for (const auto& q : j.at("queries")) {
      ReportTable::Query rq;
      rq.query = q.at("query").get<std::string>();
      rq.hit = q.at("hit").get<bool>();
      rq.average = detail::optional_row_from_json(q.at("average"));
      for (const auto& c : q.at("combinations")) {
        ReportTable::Combination rc;
        for (const auto& [k, v] : c.at("params").items()) rc.params[k] = v.get<std::int64_t>();
        rc.found = c.at("found").get<bool>();
        rc.reason = c.at("reason").get<std::string>();
        rc.scores = detail::optional_row_from_json(c.at("scores"));
        rq.combinations.push_back(std::move(rc));
      }
      t.queries.push_back(std::move(rq));
    }
    t.n_queries = t.queries.size();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

inline ReportTable load_report_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("file not found: " + path.string());
  try {
    return table_from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed report " + path.string() + ": " + e.what());
  }
}

namespace detail {

inline void csv_row(std::ostream& out, const std::array<std::string, kReportColumns.size()>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

inline void fill_scores(std::array<std::string, kReportColumns.size()>& f, const MeasureRow& r) {
  f[8] = format_number(r.d);
  f[9] = format_number(r.size);
  f[10] = format_number(r.deg_min);
  f[11] = format_number(r.core);
  f[12] = format_number(r.truss);
  f[13] = format_number(r.ei);
  f[14] = format_number(r.sit);
  f[15] = format_number(r.ced);
  f[16] = format_number(r.gip);
  f[17] = r.gid ? format_number(*r.gid) : "";
  f[18] = format_number(r.n_members);
  f[19] = format_number(r.n_events);
}

inline std::string csv_safe(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

}  // namespace detail

/// Writes the CSV view: a `#` schema line, the header, then rows. Missing
/// values are empty fields; non-finite values are written as `INF`.
inline void write_report_csv(std::ostream& out, const ReportTable& t, bool header = true) {
  using Row = std::array<std::string, kReportColumns.size()>;
  if (header) {
    out << "# " << kReportSchema << " columns=";
    for (std::size_t i = 0; i < kReportColumns.size(); ++i) out << (i ? ";" : "") << kReportColumns[i];
    out << '\n';
    for (std::size_t i = 0; i < kReportColumns.size(); ++i) out << (i ? "," : "") << kReportColumns[i];
    out << '\n';
  }
  auto base = [&](std::string_view type) {
    Row f;
    f[0] = std::string(type);
    f[1] = t.algorithm;
    f[2] = t.decay_kind;
    f[3] = format_number(t.decay_rate);
    return f;
  };
  for (const auto& q : t.queries) {
    for (const auto& c : q.combinations) {
      Row f = base("combination");
      f[4] = detail::csv_safe(q.query);
      f[5] = format_params(c.params);
      f[6] = c.found ? "found" : "not_found";
      f[7] = detail::csv_safe(c.reason);
      if (c.scores) detail::fill_scores(f, *c.scores);
      detail::csv_row(out, f);
    }
    Row f = base("query_mean");
    f[4] = detail::csv_safe(q.query);
    f[6] = q.hit ? "hit" : "miss";
    if (q.average) detail::fill_scores(f, *q.average);
    detail::csv_row(out, f);
  }
  if (t.queries.empty() && !t.timed_out) return;
  Row f = base("aggregate");
  f[20] = std::to_string(t.n_queries);
  if (t.timed_out) {
    f[6] = "timeout";
    for (std::size_t i = 8; i <= 17; ++i) f[i] = "INF";
    f[21] = "INF";
  } else {
    f[6] = t.aggregate ? "ok" : "no_hits";
    if (t.aggregate) detail::fill_scores(f, *t.aggregate);
    f[21] = format_number(t.q_hit);
  }
  detail::csv_row(out, f);
}

inline void write_report_csv(std::ostream& out, const RunReport& r) { write_report_csv(out, table_of(r)); }

/// Writes a report to `path` in the requested format.
inline void emit_report(const RunReport& r, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  if (format == ReportFormat::Json) {
    out << report_json(r).dump(2) << '\n';
  } else {
    write_report_csv(out, r);
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace cohesion
