#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cohesion/types.hpp"

namespace cohesion {

/// One input row before id remapping. External ids are opaque strings.
struct EdgeRecord {
  std::string src;
  std::string dst;
  Timestamp t = 0;
  Sentiment sentiment = Sentiment::Neutral;
};

/// How many incidences a self-loop adds to its user's degree.
enum class SelfLoopDegree { One = 1, Two = 2 };

/// Directed, time-stamped, sentiment-labelled multigraph. Immutable once built.
///
/// Events are stored sorted by (t, input order) and an event's id is its
/// position in that order, so `events()[e.id] == e`. Users are numbered by
/// first appearance in that order; the original ids are kept for output.
class TemporalMultigraph {
 public:
  TemporalMultigraph() : uid_(next_uid()) {}

  /// Builds a graph from raw records. Ties in `t` keep input order.
  static TemporalMultigraph from_records(std::span<const EdgeRecord> records) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return records[a].t < records[b].t;
    });

    TemporalMultigraph g;
    std::unordered_map<std::string, UserId> index;
    auto intern = [&](const std::string& ext) {
      auto [it, inserted] = index.try_emplace(ext, static_cast<UserId>(g.external_ids_.size()));
      if (inserted) g.external_ids_.push_back(ext);
      return it->second;
    };
    g.events_.reserve(records.size());
    for (std::size_t pos : order) {
      const EdgeRecord& r = records[pos];
      Event e;
      e.id = static_cast<EventId>(g.events_.size());
      e.src = intern(r.src);
      e.dst = intern(r.dst);
      e.t = r.t;
      e.sentiment = r.sentiment;
      g.events_.push_back(e);
    }
    g.index_ = std::move(index);
    g.build_incidence();
    return g;
  }

  [[nodiscard]] std::size_t n_users() const noexcept { return external_ids_.size(); }
  [[nodiscard]] std::size_t n_events() const noexcept { return events_.size(); }
  [[nodiscard]] bool empty() const noexcept { return events_.empty(); }

  [[nodiscard]] std::span<const Event> events() const noexcept { return events_; }
  [[nodiscard]] const Event& event(EventId id) const { return events_.at(id); }

  /// Ids of events touching `u`, ascending. A self-loop appears once.
  [[nodiscard]] std::span<const EventId> incident(UserId u) const { return incident_.at(u); }

  [[nodiscard]] const std::string& external_id(UserId u) const { return external_ids_.at(u); }
  [[nodiscard]] std::span<const std::string> external_ids() const noexcept { return external_ids_; }

  /// Dense id of an external id, or `kNoUser`.
  [[nodiscard]] UserId find_user(const std::string& ext) const {
    auto it = index_.find(ext);
    return it == index_.end() ? kNoUser : it->second;
  }

  [[nodiscard]] bool contains(UserId u) const noexcept { return u < n_users(); }

  /// Latest event time; 0 for an empty graph.
  [[nodiscard]] Timestamp latest_time() const noexcept {
    return events_.empty() ? 0 : events_.back().t;
  }
  [[nodiscard]] Timestamp earliest_time() const noexcept {
    return events_.empty() ? 0 : events_.front().t;
  }

  /// Identity used to tie communities to the graph they were induced from.
  [[nodiscard]] std::uint64_t uid() const noexcept { return uid_; }

  /// Records equivalent to this graph, in stored order.
  [[nodiscard]] std::vector<EdgeRecord> to_records() const {
    std::vector<EdgeRecord> out;
    out.reserve(events_.size());
    for (const Event& e : events_)
      out.push_back({external_ids_[e.src], external_ids_[e.dst], e.t, e.sentiment});
    return out;
  }

 private:
  static std::uint64_t next_uid() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  void build_incidence() {
    incident_.assign(external_ids_.size(), {});
    for (const Event& e : events_) {
      incident_[e.src].push_back(e.id);
      if (!e.is_self_loop()) incident_[e.dst].push_back(e.id);
    }
  }

  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, UserId> index_;
  std::vector<Event> events_;
  std::vector<std::vector<EventId>> incident_;
  std::uint64_t uid_;
};

/// Ingests raw records into a graph with dense user ids.
inline TemporalMultigraph ingest(std::span<const EdgeRecord> records) {
  return TemporalMultigraph::from_records(records);
}

/// A member set together with every parent event between members.
class Community {
 public:
  Community() = default;

  [[nodiscard]] const TemporalMultigraph& parent() const { return *parent_; }
  [[nodiscard]] bool induced_from(const TemporalMultigraph& g) const noexcept {
    return parent_ == &g && parent_uid_ == g.uid();
  }

  /// Members in ascending order.
  [[nodiscard]] std::span<const UserId> members() const noexcept { return members_; }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] bool is_member(UserId u) const noexcept {
    return u < membership_.size() && membership_[u] != 0;
  }

  /// Ids of parent events with both endpoints in the community, ascending.
  [[nodiscard]] std::span<const EventId> event_ids() const noexcept { return events_; }
  [[nodiscard]] std::size_t n_events() const noexcept { return events_.size(); }

  /// Position of `u` in `members()`.
  [[nodiscard]] std::size_t local_index(UserId u) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), u);
    if (it == members_.end() || *it != u) throw ContractViolation("user is not a community member");
    return static_cast<std::size_t>(it - members_.begin());
  }

 private:
  friend Community induce(const TemporalMultigraph& g, std::span<const UserId> members);

  const TemporalMultigraph* parent_ = nullptr;
  std::uint64_t parent_uid_ = 0;
  std::vector<UserId> members_;
  std::vector<char> membership_;
  std::vector<EventId> events_;
};

/// Maps a member set back to the multigraph: all events among the members,
/// self-loops included. Duplicate ids are ignored.
inline Community induce(const TemporalMultigraph& g, std::span<const UserId> members) {
  Community c;
  c.parent_ = &g;
  c.parent_uid_ = g.uid();
  c.membership_.assign(g.n_users(), 0);
  for (UserId u : members) {
    if (!g.contains(u)) throw ContractViolation("unknown member id " + std::to_string(u));
    c.membership_[u] = 1;
  }
  c.members_.assign(members.begin(), members.end());
  std::sort(c.members_.begin(), c.members_.end());
  c.members_.erase(std::unique(c.members_.begin(), c.members_.end()), c.members_.end());

  for (UserId u : c.members_) {
    for (EventId id : g.incident(u)) {
      const Event& e = g.event(id);
      if (e.src == u && c.membership_[e.dst]) c.events_.push_back(id);
    }
  }
  std::sort(c.events_.begin(), c.events_.end());
  return c;
}

inline Community induce(const TemporalMultigraph& g, std::initializer_list<UserId> members) {
  return induce(g, std::span<const UserId>(members.begin(), members.size()));
}

/// Simple undirected view: no self-loops, at most one edge per pair.
/// Adjacency lists are sorted ascending.
struct SimpleGraph {
  std::vector<std::vector<UserId>> adj;

  [[nodiscard]] std::size_t n() const noexcept { return adj.size(); }
  [[nodiscard]] std::size_t m() const noexcept {
    std::size_t twice = 0;
    for (const auto& a : adj) twice += a.size();
    return twice / 2;
  }
  [[nodiscard]] std::size_t degree(UserId u) const { return adj.at(u).size(); }
  [[nodiscard]] bool has_edge(UserId u, UserId v) const {
    const auto& a = adj.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Builds from an unordered edge list; self-loops and duplicates dropped.
  static SimpleGraph from_edges(std::size_t n, std::span<const std::pair<UserId, UserId>> edges) {
    SimpleGraph s;
    s.adj.assign(n, {});
    for (auto [u, v] : edges) {
      if (u == v) continue;
      s.adj.at(u).push_back(v);
      s.adj.at(v).push_back(u);
    }
    s.normalize();
    return s;
  }

  void normalize() {
    for (auto& a : adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }
};

/// Simple directed view: no self-loops, at most one arc per ordered pair.
struct SimpleDigraph {
  std::vector<std::vector<UserId>> out;
  std::vector<std::vector<UserId>> in;

  [[nodiscard]] std::size_t n() const noexcept { return out.size(); }
  [[nodiscard]] std::size_t m() const noexcept {
    std::size_t total = 0;
    for (const auto& a : out) total += a.size();
    return total;
  }
  [[nodiscard]] bool has_arc(UserId u, UserId v) const {
    const auto& a = out.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  static SimpleDigraph from_arcs(std::size_t n, std::span<const std::pair<UserId, UserId>> arcs) {
    SimpleDigraph d;
    d.out.assign(n, {});
    d.in.assign(n, {});
    for (auto [u, v] : arcs) {
      if (u == v) continue;
      d.out.at(u).push_back(v);
      d.in.at(v).push_back(u);
    }
    for (auto* side : {&d.out, &d.in}) {
      for (auto& a : *side) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
      }
    }
    return d;
  }
};

namespace detail {
inline std::vector<std::pair<UserId, UserId>> arcs_of(const TemporalMultigraph& g) {
  std::vector<std::pair<UserId, UserId>> arcs;
  arcs.reserve(g.n_events());
  for (const Event& e : g.events()) arcs.emplace_back(e.src, e.dst);
  return arcs;
}
}  // namespace detail

inline SimpleGraph to_simple_undirected(const TemporalMultigraph& g) {
  auto arcs = detail::arcs_of(g);
  return SimpleGraph::from_edges(g.n_users(), arcs);
}

inline SimpleDigraph to_simple_directed(const TemporalMultigraph& g) {
  auto arcs = detail::arcs_of(g);
  return SimpleDigraph::from_arcs(g.n_users(), arcs);
}

/// Simple undirected view of a community, indexed by position in `members()`.
inline SimpleGraph to_simple_undirected(const Community& c) {
  std::vector<std::pair<UserId, UserId>> edges;
  edges.reserve(c.n_events());
  for (EventId id : c.event_ids()) {
    const Event& e = c.parent().event(id);
    edges.emplace_back(static_cast<UserId>(c.local_index(e.src)),
                       static_cast<UserId>(c.local_index(e.dst)));
  }
  return SimpleGraph::from_edges(c.size(), edges);
}

/// Event-incidence degree of every user. Parallel edges all count.
inline std::vector<std::size_t> incidence_degrees(const TemporalMultigraph& g,
                                                  SelfLoopDegree loops = SelfLoopDegree::One) {
  std::vector<std::size_t> deg(g.n_users(), 0);
  for (const Event& e : g.events()) {
    if (e.is_self_loop()) {
      deg[e.src] += static_cast<std::size_t>(loops);
    } else {
      ++deg[e.src];
      ++deg[e.dst];
    }
  }
  return deg;
}

/// Connected components of an undirected simple graph; label = component index,
/// components numbered in order of their smallest vertex.
inline std::vector<std::size_t> component_labels(const SimpleGraph& s) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(s.n(), unset);
  std::vector<UserId> stack;
  std::size_t next = 0;
  for (UserId root = 0; root < s.n(); ++root) {
    if (label[root] != unset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      UserId u = stack.back();
      stack.pop_back();
      for (UserId v : s.adj[u]) {
        if (label[v] == unset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

/// Subgraph induced by the largest weakly connected user set, re-ingested with
/// fresh dense ids. Equal sizes resolve to the component with the smallest id.
inline TemporalMultigraph largest_weak_component(const TemporalMultigraph& g) {
  if (g.empty()) return {};
  auto label = component_labels(to_simple_undirected(g));
  std::vector<std::size_t> sizes;
  for (std::size_t l : label) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  // Components are numbered by smallest member, so the first maximum wins ties.
  std::size_t best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[best] == g.n_users()) return g;

  std::vector<EdgeRecord> kept;
  for (const Event& e : g.events()) {
    if (label[e.src] == best)
      kept.push_back({g.external_id(e.src), g.external_id(e.dst), e.t, e.sentiment});
  }
  return ingest(kept);
}

/// Dataset-level summary in the style of a network statistics table.
struct GraphStats {
  std::size_t n_users = 0;
  std::size_t n_events = 0;
  std::size_t n_timestamps = 0;
  std::size_t n_simple_edges = 0;
  /// 2|E_simple| / (n (n - 1)) on the simple undirected view; 0 when n < 2.
  double density = 0.0;
  /// Event incidences per user, self-loops and parallel edges counted.
  double deg_avg = 0.0;
};

inline GraphStats stats(const TemporalMultigraph& g, SelfLoopDegree loops = SelfLoopDegree::One) {
  GraphStats s;
  s.n_users = g.n_users();
  s.n_events = g.n_events();
  Timestamp prev = 0;
  for (std::size_t i = 0; i < g.n_events(); ++i) {
    Timestamp t = g.events()[i].t;
    if (i == 0 || t != prev) ++s.n_timestamps;
    prev = t;
  }
  s.n_simple_edges = to_simple_undirected(g).m();
  if (s.n_users >= 2) {
    const double n = static_cast<double>(s.n_users);
    s.density = 2.0 * static_cast<double>(s.n_simple_edges) / (n * (n - 1.0));
  }
  if (s.n_users > 0) {
    auto deg = incidence_degrees(g, loops);
    std::size_t total = std::accumulate(deg.begin(), deg.end(), std::size_t{0});
    s.deg_avg = static_cast<double>(total) / static_cast<double>(s.n_users);
  }
  return s;
}

}  // namespace cohesion
