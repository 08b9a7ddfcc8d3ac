#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cohesion/graph.hpp"

namespace cohesion {

enum class EdgeFormat { Csv, JsonLines };

inline constexpr std::string_view kEdgeCsvHeader = "src,dst,timestamp,sentiment";

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline Sentiment parse_sentiment(std::string_view s, std::size_t line) {
  if (s == "1" || s == "+1") return Sentiment::Positive;
  if (s == "0" || s == "+0" || s == "-0") return Sentiment::Neutral;
  if (s == "-1") return Sentiment::Negative;
  throw IngestError(line, "sentiment outside {-1,0,1}: '" + std::string(s) + "'");
}

/// Integer seconds; fractional input is truncated toward zero.
inline Timestamp parse_timestamp(std::string_view s, std::size_t line) {
  Timestamp t = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
  if (ec == std::errc{} && p == s.data() + s.size()) return t;
  double d = 0.0;
  auto [q, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec2 != std::errc{} || q != s.data() + s.size() || !std::isfinite(d))
    throw IngestError(line, "malformed timestamp '" + std::string(s) + "'");
  return static_cast<Timestamp>(std::trunc(d));
}

inline void check_id(std::string_view id, std::size_t line, const char* field) {
  if (id.empty()) throw IngestError(line, std::string("empty ") + field);
}

}  // namespace detail

/// Parses `src,dst,timestamp,sentiment` CSV. Blank lines and lines starting
/// with '#' are skipped; the first remaining line must be the header.
inline std::vector<EdgeRecord> read_edge_csv(std::istream& in) {
  std::vector<EdgeRecord> out;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view row = detail::trim(raw);
    if (row.empty() || row.front() == '#') continue;
    if (!header_seen) {
      if (row != kEdgeCsvHeader)
        throw IngestError(line, "expected header '" + std::string(kEdgeCsvHeader) + "'");
      header_seen = true;
      continue;
    }
    std::string_view fields[4];
    std::size_t n = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = row.find(',', start);
      if (n == 4) throw IngestError(line, "expected 4 fields");
      fields[n++] = detail::trim(row.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n != 4) throw IngestError(line, "expected 4 fields");
    detail::check_id(fields[0], line, "src");
    detail::check_id(fields[1], line, "dst");
    out.push_back({std::string(fields[0]), std::string(fields[1]),
                   detail::parse_timestamp(fields[2], line),
                   detail::parse_sentiment(fields[3], line)});
  }
  return out;
}

/// Parses JSON-lines with keys `src`, `dst`, `timestamp`, `sentiment`.
/// Ids may be strings or integers.
inline std::vector<EdgeRecord> read_edge_jsonl(std::istream& in) {
  using nlohmann::json;
  std::vector<EdgeRecord> out;
  std::string raw;
  std::size_t line = 0;
  auto id_of = [&](const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw IngestError(line, std::string("missing key '") + key + "'");
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return it->dump();
    throw IngestError(line, std::string("key '") + key + "' must be a string or integer");
  };
  while (std::getline(in, raw)) {
    ++line;
    std::string_view row = detail::trim(raw);
    if (row.empty()) continue;
    json obj;
    try {
      obj = json::parse(row);
    } catch (const json::parse_error& e) {
      throw IngestError(line, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw IngestError(line, "expected a JSON object");
    EdgeRecord r;
    r.src = id_of(obj, "src");
    r.dst = id_of(obj, "dst");
    detail::check_id(r.src, line, "src");
    detail::check_id(r.dst, line, "dst");
    auto ts = obj.find("timestamp");
    if (ts == obj.end()) throw IngestError(line, "missing key 'timestamp'");
    if (ts->is_number_integer()) {
      r.t = ts->get<Timestamp>();
    } else if (ts->is_number_float()) {
      r.t = static_cast<Timestamp>(std::trunc(ts->get<double>()));
    } else if (ts->is_string()) {
      r.t = detail::parse_timestamp(ts->get<std::string>(), line);
    } else {
      throw IngestError(line, "malformed timestamp");
    }
    auto se = obj.find("sentiment");
    if (se == obj.end()) throw IngestError(line, "missing key 'sentiment'");
    if (se->is_number_integer()) {
      r.sentiment = detail::parse_sentiment(std::to_string(se->get<long long>()), line);
    } else if (se->is_string()) {
      r.sentiment = detail::parse_sentiment(se->get<std::string>(), line);
    } else {
      throw IngestError(line, "sentiment outside {-1,0,1}: '" + se->dump() + "'");
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline EdgeFormat edge_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") ? EdgeFormat::JsonLines : EdgeFormat::Csv;
}

inline std::vector<EdgeRecord> read_edge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("file not found: " + path.string());
  return edge_format_for(path) == EdgeFormat::JsonLines ? read_edge_jsonl(in) : read_edge_csv(in);
}

inline TemporalMultigraph load_graph(const std::filesystem::path& path) {
  return ingest(read_edge_file(path));
}

inline void write_edges(const TemporalMultigraph& g, std::ostream& out, EdgeFormat format) {
  if (format == EdgeFormat::Csv) {
    out << kEdgeCsvHeader << '\n';
    for (const Event& e : g.events()) {
      for (UserId u : {e.src, e.dst}) {
        if (g.external_id(u).find_first_of(",#\n\r") != std::string::npos)
          throw Error("user id '" + g.external_id(u) + "' cannot be written as CSV");
      }
      out << g.external_id(e.src) << ',' << g.external_id(e.dst) << ',' << e.t << ','
          << value(e.sentiment) << '\n';
    }
    return;
  }
  for (const Event& e : g.events()) {
    nlohmann::ordered_json row;
    row["src"] = g.external_id(e.src);
    row["dst"] = g.external_id(e.dst);
    row["timestamp"] = e.t;
    row["sentiment"] = value(e.sentiment);
    out << row.dump() << '\n';
  }
}

/// Writes `g` in a format that `load_graph` reproduces exactly.
inline void export_graph(const TemporalMultigraph& g, const std::filesystem::path& path, EdgeFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_edges(g, out, format);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace cohesion
