#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "cohesion/graph.hpp"

namespace cohesion {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct StructScores {
  /// Longest shortest path on the simple undirected view; kInfinity when disconnected.
  double diameter = 0.0;
  std::size_t size = 0;
  /// Smallest event-incidence count among members, parallel edges and self-loops counted.
  std::size_t deg_min = 0;
  /// Largest k for which the whole community is a k-core.
  std::size_t core = 0;
  /// Largest k for which the whole community is a k-truss; 2 when edgeless.
  std::size_t truss = 2;
};

/// Number of common neighbours of u and v.
inline std::size_t edge_support(const SimpleGraph& s, UserId u, UserId v) {
  const auto& a = s.adj[u];
  const auto& b = s.adj[v];
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

/// Hop distances from `source`; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const SimpleGraph& s, UserId source) {
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(s.n(), unreached);
  std::vector<UserId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const UserId u = frontier[head];
    for (UserId v : s.adj[u]) {
      if (dist[v] == unreached) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

inline double diameter(const SimpleGraph& s) {
  if (s.n() == 0) throw ContractViolation("diameter of an empty community");
  std::size_t best = 0;
  for (UserId u = 0; u < s.n(); ++u) {
    for (std::size_t d : bfs_distances(s, u)) {
      if (d == std::numeric_limits<std::size_t>::max()) return kInfinity;
      best = std::max(best, d);
    }
  }
  return static_cast<double>(best);
}

inline double diameter(const Community& c) { return diameter(to_simple_undirected(c)); }

inline std::size_t min_degree_multigraph(const Community& c, SelfLoopDegree loops = SelfLoopDegree::One) {
  if (c.empty()) throw ContractViolation("minimum degree of an empty community");
  std::vector<std::size_t> deg(c.size(), 0);
  for (EventId id : c.event_ids()) {
    const Event& e = c.parent().event(id);
    if (e.is_self_loop()) {
      deg[c.local_index(e.src)] += static_cast<std::size_t>(loops);
    } else {
      ++deg[c.local_index(e.src)];
      ++deg[c.local_index(e.dst)];
    }
  }
  return *std::min_element(deg.begin(), deg.end());
}

inline std::size_t core_number(const SimpleGraph& s) {
  if (s.n() == 0) throw ContractViolation("core number of an empty community");
  std::size_t k = std::numeric_limits<std::size_t>::max();
  for (const auto& a : s.adj) k = std::min(k, a.size());
  return k;
}

inline std::size_t truss_number(const SimpleGraph& s) {
  if (s.n() == 0) throw ContractViolation("truss number of an empty community");
  std::size_t min_support = std::numeric_limits<std::size_t>::max();
  for (UserId u = 0; u < s.n(); ++u)
    for (UserId v : s.adj[u])
      if (u < v) min_support = std::min(min_support, edge_support(s, u, v));
  return min_support == std::numeric_limits<std::size_t>::max() ? 2 : min_support + 2;
}

inline std::size_t core_number(const Community& c) { return core_number(to_simple_undirected(c)); }
inline std::size_t truss_number(const Community& c) { return truss_number(to_simple_undirected(c)); }

inline StructScores struct_scores(const Community& c, SelfLoopDegree loops = SelfLoopDegree::One) {
  if (c.empty()) throw ContractViolation("structural scores of an empty community");
  const SimpleGraph s = to_simple_undirected(c);
  StructScores out;
  out.diameter = diameter(s);
  out.size = c.size();
  out.deg_min = min_degree_multigraph(c, loops);
  out.core = core_number(s);
  out.truss = truss_number(s);
  return out;
}

}  // namespace cohesion
