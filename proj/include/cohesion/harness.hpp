#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cohesion/graph.hpp"
#include "cohesion/io.hpp"
#include "cohesion/measures.hpp"
#include "cohesion/search.hpp"
#include "cohesion/structural.hpp"

namespace cohesion {

/// When a query counts as a hit: any parameter combination succeeds, or all do.
enum class HitMode { Any, All };

inline std::string_view to_string(HitMode m) noexcept { return m == HitMode::Any ? "any" : "all"; }

inline HitMode parse_hit_mode(std::string_view s) {
  if (s == "any") return HitMode::Any;
  if (s == "all") return HitMode::All;
  throw Error("unknown hit mode '" + std::string(s) + "'");
}

struct EvalPlan {
  std::filesystem::path dataset;
  Algorithm algorithm = Algorithm::MaxCore;
  std::vector<Params> grid{Params{}};
  std::size_t n_queries = 100;
  std::uint64_t rng_seed = 42;
  ExcitationConfig excitation{};
  /// Defaults to the latest timestamp of the evaluated graph.
  std::optional<Timestamp> t_cur;
  /// GID observation window; absent means W = 1.
  std::optional<ObservationWindow> window;
  HitMode hit_mode = HitMode::Any;
  bool largest_component = true;
  SelfLoopDegree self_loop_degree = SelfLoopDegree::One;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  /// Wall-clock budget for one run; exceeded runs report INF aggregates.
  double time_budget_seconds = 600.0;

  void validate() const {
    if (n_queries < 1) throw ContractViolation("n_queries must be >= 1");
    if (grid.empty()) throw ContractViolation("parameter grid must not be empty");
    for (const auto& p : grid) check_params(algorithm, p);
    excitation.validate();
    if (!(time_budget_seconds > 0.0)) throw ContractViolation("time budget must be > 0");
  }
};

struct QuerySample {
  std::vector<UserId> queries;
  std::size_t pool_size = 0;
  /// Set when the pool was smaller than the request and sampling reused users.
  bool with_replacement = false;
};

/// Users whose incidence degree puts them in the top half (ceiling); every
/// user tied with the boundary degree is admitted. Ascending ids.
inline std::vector<UserId> query_pool(const TemporalMultigraph& g, SelfLoopDegree loops = SelfLoopDegree::One) {
  auto deg = incidence_degrees(g, loops);
  if (deg.empty()) return {};
  std::vector<std::size_t> sorted = deg;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t half = (sorted.size() + 1) / 2;
  const std::size_t threshold = sorted[half - 1];
  std::vector<UserId> pool;
  for (UserId u = 0; u < deg.size(); ++u)
    if (deg[u] >= threshold) pool.push_back(u);
  return pool;
}

/// Seeded sample of `n` query users from the top-degree half.
inline QuerySample generate_queries(const TemporalMultigraph& g, std::size_t n, std::uint64_t seed,
                                    SelfLoopDegree loops = SelfLoopDegree::One) {
  if (g.n_users() == 0) throw ContractViolation("cannot draw queries from an empty graph");
  QuerySample out;
  auto pool = query_pool(g, loops);
  out.pool_size = pool.size();
  std::mt19937_64 rng(seed);
  if (pool.size() >= n) {
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    out.queries.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  } else {
    out.with_replacement = true;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < n; ++i) out.queries.push_back(pool[pick(rng)]);
  }
  return out;
}

/// Community-level scores of one mapped community.
struct MeasureRow {
  double d = 0.0;
  double size = 0.0;
  double deg_min = 0.0;
  double core = 0.0;
  double truss = 0.0;
  double ei = 0.0;
  double sit = 0.0;
  double ced = 0.0;
  double gip = 0.0;
  std::optional<double> gid;
  double n_members = 0.0;
  double n_events = 0.0;

  friend bool operator==(const MeasureRow&, const MeasureRow&) = default;
};

/// Field-wise mean. gid averages only the rows that have it.
inline std::optional<MeasureRow> mean_row(const std::vector<MeasureRow>& rows) {
  if (rows.empty()) return std::nullopt;
  MeasureRow m;
  double gid_sum = 0.0;
  std::size_t gid_n = 0;
  for (const auto& r : rows) {
    m.d += r.d;
    m.size += r.size;
    m.deg_min += r.deg_min;
    m.core += r.core;
    m.truss += r.truss;
    m.ei += r.ei;
    m.sit += r.sit;
    m.ced += r.ced;
    m.gip += r.gip;
    m.n_members += r.n_members;
    m.n_events += r.n_events;
    if (r.gid) {
      gid_sum += *r.gid;
      ++gid_n;
    }
  }
  const double n = static_cast<double>(rows.size());
  for (double* f : {&m.d, &m.size, &m.deg_min, &m.core, &m.truss, &m.ei, &m.sit, &m.ced, &m.gip, &m.n_members,
                    &m.n_events})
    *f /= n;
  if (gid_n > 0) m.gid = gid_sum / static_cast<double>(gid_n);
  return m;
}

struct CombinationResult {
  Params params;
  SearchOutcome outcome;
  std::optional<MeasureRow> scores;
};

struct QueryRecord {
  UserId query = 0;
  std::string query_external;
  std::vector<CombinationResult> combinations;
  /// Mean over successful combinations only.
  std::optional<MeasureRow> average;
  bool hit = false;
  bool timed_out = false;
};

struct RunReport {
  EvalPlan plan;
  GraphStats dataset_stats;
  Timestamp t_cur = 0;
  QuerySample sample;
  std::vector<QueryRecord> records;
  /// Mean of per-query averages over hit queries; missing when nothing hit.
  std::optional<MeasureRow> aggregate;
  double q_hit = 0.0;
  bool timed_out = false;
};

/// Percentage of records that are hits.
inline double q_hit(std::span<const QueryRecord> records) {
  if (records.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& r : records) hits += r.hit;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(records.size());
}

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any task is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

/// Dataset, views, queries and search outcomes of one plan. Searches do not
/// depend on decay settings, so one SearchPhase serves a whole decay sweep.
class SearchPhase {
 public:
  SearchPhase(EvalPlan plan, TemporalMultigraph graph) : plan_(std::move(plan)), graph_(std::move(graph)) {
    plan_.validate();
    if (plan_.largest_component) graph_ = largest_weak_component(graph_);
    if (graph_.n_users() == 0) throw Error("dataset has no users");
    views_.emplace(graph_);
    stats_ = stats(graph_, plan_.self_loop_degree);
    t_cur_ = plan_.t_cur.value_or(graph_.latest_time());
    sample_ = generate_queries(graph_, plan_.n_queries, plan_.rng_seed, plan_.self_loop_degree);
    execute();
  }

  /// Loads the plan's dataset from disk.
  static SearchPhase from_plan(const EvalPlan& plan) { return SearchPhase(plan, load_graph(plan.dataset)); }

  SearchPhase(const SearchPhase&) = delete;
  SearchPhase& operator=(const SearchPhase&) = delete;

  [[nodiscard]] const EvalPlan& plan() const noexcept { return plan_; }
  [[nodiscard]] const TemporalMultigraph& graph() const noexcept { return graph_; }
  [[nodiscard]] Timestamp t_cur() const noexcept { return t_cur_; }
  [[nodiscard]] const QuerySample& sample() const noexcept { return sample_; }
  [[nodiscard]] bool timed_out() const noexcept { return timed_out_; }

  /// Outcome of query index `qi` under grid entry `ci`.
  [[nodiscard]] const SearchOutcome& outcome(std::size_t qi, std::size_t ci) const {
    return outcomes_.at(qi).at(ci);
  }
  [[nodiscard]] bool query_timed_out(std::size_t qi) const { return query_timed_out_.at(qi) != 0; }

  /// Measures every found community with the given excitation settings and
  /// assembles the report. Each distinct member set is measured once.
  [[nodiscard]] RunReport measure(const ExcitationConfig& cfg) const {
    cfg.validate();
    std::map<std::vector<UserId>, std::size_t> index;
    std::vector<const std::vector<UserId>*> unique;
    for (const auto& per_query : outcomes_)
      for (const auto& o : per_query)
        if (o && index.try_emplace(o.members(), unique.size()).second) unique.push_back(&o.members());

    std::vector<MeasureRow> rows(unique.size());
    parallel_for(unique.size(), plan_.threads, [&](std::size_t k) {
      Community c = induce(graph_, *unique[k]);
      StructScores st = struct_scores(c, plan_.self_loop_degree);
      PsychScores ps = psych_scores(graph_, c, t_cur_, cfg, plan_.window);
      MeasureRow& r = rows[k];
      r.d = st.diameter;
      r.size = static_cast<double>(st.size);
      r.deg_min = static_cast<double>(st.deg_min);
      r.core = static_cast<double>(st.core);
      r.truss = static_cast<double>(st.truss);
      r.ei = ps.ei;
      r.sit = ps.sit;
      r.ced = ps.ced;
      r.gip = ps.gip;
      r.gid = ps.gid;
      r.n_members = static_cast<double>(c.size());
      r.n_events = static_cast<double>(c.n_events());
    });

    RunReport report;
    report.plan = plan_;
    report.plan.excitation = cfg;
    report.dataset_stats = stats_;
    report.t_cur = t_cur_;
    report.sample = sample_;
    report.timed_out = timed_out_;
    std::vector<MeasureRow> hit_rows;
    for (std::size_t qi = 0; qi < outcomes_.size(); ++qi) {
      QueryRecord rec;
      rec.query = sample_.queries[qi];
      rec.query_external = graph_.external_id(rec.query);
      rec.timed_out = query_timed_out_[qi] != 0;
      std::vector<MeasureRow> ok_rows;
      for (std::size_t ci = 0; ci < plan_.grid.size(); ++ci) {
        CombinationResult cr{plan_.grid[ci], outcomes_[qi][ci], std::nullopt};
        if (cr.outcome) {
          cr.scores = rows[index.at(cr.outcome.members())];
          ok_rows.push_back(*cr.scores);
        }
        rec.combinations.push_back(std::move(cr));
      }
      rec.average = mean_row(ok_rows);
      rec.hit = plan_.hit_mode == HitMode::Any ? !ok_rows.empty()
                                               : (!ok_rows.empty() && ok_rows.size() == plan_.grid.size());
      if (rec.hit) hit_rows.push_back(*rec.average);
      report.records.push_back(std::move(rec));
    }
    report.aggregate = mean_row(hit_rows);
    report.q_hit = q_hit(report.records);
    return report;
  }

 private:
  void execute() {
    const auto& queries = sample_.queries;
    outcomes_.assign(queries.size(), {});
    query_timed_out_.assign(queries.size(), 0);
    const auto start = std::chrono::steady_clock::now();
    const auto budget = std::chrono::duration<double>(plan_.time_budget_seconds);
    std::atomic<bool> expired{false};
    parallel_for(queries.size(), plan_.threads, [&](std::size_t qi) {
      auto& row = outcomes_[qi];
      for (const Params& p : plan_.grid) {
        if (expired || std::chrono::steady_clock::now() - start > budget) {
          expired = true;
          query_timed_out_[qi] = 1;
          row.assign(plan_.grid.size(), SearchOutcome::not_found("timeout"));
          return;
        }
        row.push_back(search(plan_.algorithm, *views_, queries[qi], p));
      }
    });
    timed_out_ = expired;
  }

  EvalPlan plan_;
  TemporalMultigraph graph_;
  std::optional<SearchViews> views_;
  GraphStats stats_;
  Timestamp t_cur_ = 0;
  QuerySample sample_;
  std::vector<std::vector<SearchOutcome>> outcomes_;
  std::vector<char> query_timed_out_;
  bool timed_out_ = false;
};

/// Query generation, search, community mapping and measurement for one plan.
inline RunReport run(const EvalPlan& plan) {
  auto phase = SearchPhase::from_plan(plan);
  return phase.measure(plan.excitation);
}

inline RunReport run(const EvalPlan& plan, TemporalMultigraph graph) {
  SearchPhase phase(plan, std::move(graph));
  return phase.measure(plan.excitation);
}

/// One report per decay rate, sharing queries and search results.
inline std::vector<RunReport> sweep_decay(const SearchPhase& phase, std::span<const double> rates) {
  if (rates.empty()) throw ContractViolation("decay sweep needs at least one rate");
  std::vector<RunReport> out;
  for (double rate : rates) {
    ExcitationConfig cfg = phase.plan().excitation;
    cfg.decay.rate = rate;
    out.push_back(phase.measure(cfg));
  }
  return out;
}

inline std::vector<RunReport> sweep_decay(const EvalPlan& plan, std::span<const double> rates) {
  if (rates.empty()) throw ContractViolation("decay sweep needs at least one rate");
  auto phase = SearchPhase::from_plan(plan);
  return sweep_decay(phase, rates);
}

}  // namespace cohesion
