#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohesion/graph.hpp"
#include "cohesion/structural.hpp"

namespace cohesion {

enum class Algorithm { MaxCore, KlCore, Truss, StTruss };

inline std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::MaxCore: return "max-core";
    case Algorithm::KlCore: return "kl-core";
    case Algorithm::Truss: return "truss";
    case Algorithm::StTruss: return "st-truss";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::MaxCore, Algorithm::KlCore, Algorithm::Truss, Algorithm::StTruss})
    if (to_string(a) == s) return a;
  throw Error("unknown algorithm '" + std::string(s) + "'");
}

/// True when the searcher runs on the simple directed view.
constexpr bool needs_directed_view(Algorithm a) noexcept { return a == Algorithm::KlCore; }

/// Algorithm parameters by name, e.g. {"k": 3, "l": 2}. Ordered for stable output.
using Params = std::map<std::string, std::int64_t>;

/// Parameter names each algorithm accepts; all are required.
inline std::vector<std::string> param_names(Algorithm a) {
  switch (a) {
    case Algorithm::MaxCore: return {};
    case Algorithm::KlCore: return {"k", "l"};
    case Algorithm::Truss: return {"k"};
    case Algorithm::StTruss: return {"l", "h"};
  }
  return {};
}

/// Either a member set containing the query, or a reason why none was found.
class SearchOutcome {
 public:
  static SearchOutcome found(std::vector<UserId> members, std::string note = {}) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SearchOutcome o;
    o.found_ = true;
    o.members_ = std::move(members);
    o.reason_ = std::move(note);
    return o;
  }
  static SearchOutcome not_found(std::string reason) {
    SearchOutcome o;
    o.reason_ = std::move(reason);
    return o;
  }

  [[nodiscard]] bool ok() const noexcept { return found_; }
  explicit operator bool() const noexcept { return found_; }
  /// Sorted members; empty when not found.
  [[nodiscard]] const std::vector<UserId>& members() const noexcept { return members_; }
  /// Why the search failed, or an annotation on a degenerate success.
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

  friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;

 private:
  bool found_ = false;
  std::vector<UserId> members_;
  std::string reason_;
};

namespace detail {

inline void require_query(std::size_t n, UserId q) {
  if (q >= n) throw ContractViolation("query " + std::to_string(q) + " is not in the graph");
}

/// Vertices reachable from `q` through vertices with alive[v] set.
template <typename Neighbours>
std::vector<UserId> reachable(std::size_t n, UserId q, const std::vector<char>& alive, Neighbours&& neighbours) {
  std::vector<char> seen(n, 0);
  std::vector<UserId> order{q};
  seen[q] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    neighbours(order[head], [&](UserId v) {
      if (alive[v] && !seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
    });
  }
  return order;
}

}  // namespace detail

/// Core number of every vertex (bucket peeling, O(n + m)).
inline std::vector<std::size_t> core_decomposition(const SimpleGraph& s) {
  const std::size_t n = s.n();
  std::vector<std::size_t> deg(n), pos(n), vert(n);
  std::size_t max_deg = 0;
  for (UserId v = 0; v < n; ++v) {
    deg[v] = s.adj[v].size();
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (std::size_t d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    std::size_t count = b;
    b = start;
    start += count;
  }
  for (UserId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = vert[i];
    for (UserId u : s.adj[v]) {
      if (deg[u] > deg[v]) {
        const std::size_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const std::size_t w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

/// Connected component of `q` within the deepest k-core that still contains q.
/// An isolated query yields itself, annotated "isolated".
inline SearchOutcome max_core_search(const SimpleGraph& s, UserId q) {
  detail::require_query(s.n(), q);
  if (s.adj[q].empty()) return SearchOutcome::found({q}, "isolated");
  auto core = core_decomposition(s);
  const std::size_t k = core[q];
  std::vector<char> alive(s.n());
  for (UserId v = 0; v < s.n(); ++v) alive[v] = core[v] >= k;
  return SearchOutcome::found(detail::reachable(s.n(), q, alive, [&](UserId u, auto&& visit) {
    for (UserId v : s.adj[u]) visit(v);
  }));
}

/// Peels vertices with in-degree < k or out-degree < l to a fixpoint and
/// returns the weakly connected component of q among the survivors.
inline SearchOutcome kl_core_search(const SimpleDigraph& d, UserId q, std::int64_t k, std::int64_t l) {
  detail::require_query(d.n(), q);
  if (k < 0 || l < 0) throw ContractViolation("kl-core parameters must be non-negative");
  const std::size_t n = d.n();
  const auto kk = static_cast<std::size_t>(k);
  const auto ll = static_cast<std::size_t>(l);
  std::vector<std::size_t> indeg(n), outdeg(n);
  std::vector<char> alive(n, 1);
  std::vector<UserId> queue;
  for (UserId v = 0; v < n; ++v) {
    indeg[v] = d.in[v].size();
    outdeg[v] = d.out[v].size();
    if (indeg[v] < kk || outdeg[v] < ll) {
      alive[v] = 0;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const UserId v = queue[head];
    for (UserId w : d.out[v]) {
      if (alive[w] && --indeg[w] < kk) {
        alive[w] = 0;
        queue.push_back(w);
      }
    }
    for (UserId w : d.in[v]) {
      if (alive[w] && --outdeg[w] < ll) {
        alive[w] = 0;
        queue.push_back(w);
      }
    }
  }
  if (!alive[q]) return SearchOutcome::not_found("query peeled");
  return SearchOutcome::found(detail::reachable(n, q, alive, [&](UserId u, auto&& visit) {
    for (UserId v : d.out[u]) visit(v);
    for (UserId v : d.in[u]) visit(v);
  }));
}

/// Edge-indexed copy of a simple graph used by the truss searchers.
struct IndexedEdges {
  std::vector<std::pair<UserId, UserId>> ends;
  /// Per vertex: (neighbour, edge index), sorted by neighbour.
  std::vector<std::vector<std::pair<UserId, std::size_t>>> adj;

  explicit IndexedEdges(const SimpleGraph& s) : adj(s.n()) {
    for (UserId u = 0; u < s.n(); ++u) {
      for (UserId v : s.adj[u]) {
        if (u < v) {
          adj[u].emplace_back(v, ends.size());
          adj[v].emplace_back(u, ends.size());
          ends.emplace_back(u, v);
        }
      }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }
};

/// Peels edges with fewer than k-2 triangles to a fixpoint and returns the
/// vertices reachable from q over surviving edges.
inline SearchOutcome truss_search(const SimpleGraph& s, UserId q, std::int64_t k) {
  detail::require_query(s.n(), q);
  if (k < 2) throw ContractViolation("truss parameter k must be >= 2");
  const auto need = static_cast<std::size_t>(k - 2);
  IndexedEdges ix(s);
  const std::size_t m = ix.ends.size();
  std::vector<std::size_t> support(m);
  std::vector<char> alive(m, 1);
  std::vector<std::size_t> queue;
  for (std::size_t e = 0; e < m; ++e) {
    support[e] = edge_support(s, ix.ends[e].first, ix.ends[e].second);
    if (support[e] < need) {
      alive[e] = 0;
      queue.push_back(e);
    }
  }
  // An edge is dead once queued and removed once processed; each triangle is
  // broken by the first of its edges to be processed.
  std::vector<char> removed(m, 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [u, v] = ix.ends[queue[head]];
    removed[queue[head]] = 1;
    const auto& a = ix.adj[u];
    const auto& b = ix.adj[v];
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (i->first < j->first) {
        ++i;
      } else if (j->first < i->first) {
        ++j;
      } else {
        const std::size_t uw = i->second;
        const std::size_t vw = j->second;
        if (!removed[uw] && !removed[vw]) {
          for (std::size_t e : {uw, vw}) {
            if (--support[e] < need && alive[e]) {
              alive[e] = 0;
              queue.push_back(e);
            }
          }
        }
        ++i;
        ++j;
      }
    }
  }
  bool touched = false;
  for (const auto& [v, e] : ix.adj[q]) touched = touched || alive[e];
  if (!touched) return SearchOutcome::not_found("query has no surviving edge");
  std::vector<char> all(s.n(), 1);
  return SearchOutcome::found(detail::reachable(s.n(), q, all, [&](UserId u, auto&& visit) {
    for (const auto& [v, e] : ix.adj[u])
      if (alive[e]) visit(v);
  }));
}

/// Greedy size-bounded truss search.
///
/// Grows a set from q one neighbour at a time, always adding the candidate
/// that leaves the highest minimum edge support in the induced subgraph.
/// Ties prefer more links into the set, then fewer hops from q, then the
/// smaller id. Growth stops at h vertices; the returned set is the prefix of
/// size in [l, h] with the best minimum support, larger on ties. This is a
/// heuristic: exact search over all candidate sets is exponential.
inline SearchOutcome size_bounded_truss_search(const SimpleGraph& s, UserId q, std::int64_t l, std::int64_t h) {
  detail::require_query(s.n(), q);
  if (l < 1 || h < l) throw ContractViolation("size bounds must satisfy 1 <= l <= h");
  const auto lo = static_cast<std::size_t>(l);
  const auto hi = static_cast<std::size_t>(h);
  const std::size_t n = s.n();

  const auto hops = bfs_distances(s, q);
  std::size_t component = 0;
  for (std::size_t d : hops) component += d != std::numeric_limits<std::size_t>::max();
  if (component < lo) return SearchOutcome::not_found("component too small");

  std::vector<UserId> chosen{q};
  std::vector<char> in_set(n, 0), in_cand(n, 0), mark(n, 0);
  in_set[q] = 1;
  // Induced adjacency of the chosen set and support of each induced edge.
  std::map<std::pair<UserId, UserId>, std::size_t> support;
  std::vector<std::vector<UserId>> inner(n);
  std::vector<UserId> candidates;
  auto add_candidates = [&](UserId u) {
    for (UserId v : s.adj[u]) {
      if (!in_set[v] && !in_cand[v]) {
        in_cand[v] = 1;
        candidates.push_back(v);
      }
    }
  };
  add_candidates(q);

  constexpr auto none = std::numeric_limits<std::size_t>::max();
  auto min_support = [&]() {
    std::size_t m = none;
    for (const auto& [e, sup] : support) m = std::min(m, sup);
    return m;
  };

  // (size, min support) after each growth step; min support of an edgeless set is 0.
  std::vector<std::pair<std::size_t, std::size_t>> prefix{{1, 0}};
  while (chosen.size() < hi && !candidates.empty()) {
    const std::size_t m0 = min_support();
    std::vector<std::pair<UserId, UserId>> weakest;
    for (const auto& [e, sup] : support)
      if (sup == m0) weakest.push_back(e);

    struct Key {
      std::size_t min_support, links, hops;
      UserId id;
    };
    std::optional<Key> best;
    std::size_t best_pos = 0;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const UserId v = candidates[ci];
      std::vector<UserId> links;
      for (UserId u : s.adj[v])
        if (in_set[u]) links.push_back(u);
      for (UserId u : links) mark[u] = 1;
      std::size_t result = none;
      if (!support.empty()) {
        std::size_t bumped = 0;
        for (const auto& [a, b] : weakest) bumped += mark[a] && mark[b];
        result = bumped == weakest.size() ? m0 + 1 : m0;
      }
      for (UserId u : links) {
        std::size_t common = 0;
        for (UserId w : inner[u]) common += mark[w];
        result = std::min(result, common);
      }
      for (UserId u : links) mark[u] = 0;
      Key key{result, links.size(), hops[v], v};
      auto better = [](const Key& a, const Key& b) {
        if (a.min_support != b.min_support) return a.min_support > b.min_support;
        if (a.links != b.links) return a.links > b.links;
        if (a.hops != b.hops) return a.hops < b.hops;
        return a.id < b.id;
      };
      if (!best || better(key, *best)) {
        best = key;
        best_pos = ci;
      }
    }

    const UserId v = candidates[best_pos];
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_pos));
    in_cand[v] = 0;
    std::vector<UserId> links;
    for (UserId u : s.adj[v])
      if (in_set[u]) links.push_back(u);
    for (UserId u : links) mark[u] = 1;
    for (auto& [e, sup] : support)
      if (mark[e.first] && mark[e.second]) ++sup;
    for (UserId u : links) {
      std::size_t common = 0;
      for (UserId w : inner[u]) common += mark[w];
      support[{std::min(u, v), std::max(u, v)}] = common;
    }
    for (UserId u : links) {
      mark[u] = 0;
      inner[u].push_back(v);
      inner[v].push_back(u);
    }
    in_set[v] = 1;
    chosen.push_back(v);
    add_candidates(v);
    prefix.emplace_back(chosen.size(), min_support());
  }

  if (chosen.size() < lo) return SearchOutcome::not_found("component too small");
  std::size_t best_size = 0, best_support = 0;
  for (auto [size, sup] : prefix) {
    if (size < lo || size > hi) continue;
    if (best_size == 0 || sup > best_support || (sup == best_support && size > best_size)) {
      best_size = size;
      best_support = sup;
    }
  }
  chosen.resize(best_size);
  return SearchOutcome::found(std::move(chosen));
}

/// Checks that a found community contains the query and is connected in the
/// undirected view; violations become NotFound.
inline SearchOutcome validate(SearchOutcome outcome, UserId q, const SimpleGraph& undirected) {
  if (!outcome) return outcome;
  const auto& members = outcome.members();
  if (members.empty()) return SearchOutcome::not_found("invalid result");
  for (UserId u : members)
    if (u >= undirected.n()) return SearchOutcome::not_found("invalid result");
  if (!std::binary_search(members.begin(), members.end(), q)) return SearchOutcome::not_found("query absent");
  std::vector<char> alive(undirected.n(), 0);
  for (UserId u : members) alive[u] = 1;
  auto seen = detail::reachable(undirected.n(), q, alive, [&](UserId u, auto&& visit) {
    for (UserId v : undirected.adj[u]) visit(v);
  });
  if (seen.size() != members.size()) return SearchOutcome::not_found("invalid result");
  return outcome;
}

/// Graph views a search may need, built once per dataset.
struct SearchViews {
  SimpleGraph undirected;
  SimpleDigraph directed;

  explicit SearchViews(const TemporalMultigraph& g)
      : undirected(to_simple_undirected(g)), directed(to_simple_directed(g)) {}
};

inline std::int64_t require_param(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ContractViolation("missing parameter '" + name + "'");
  return it->second;
}

/// Validates a parameter map against an algorithm's expected names.
inline void check_params(Algorithm a, const Params& p) {
  auto names = param_names(a);
  for (const auto& [key, val] : p)
    if (std::find(names.begin(), names.end(), key) == names.end())
      throw ContractViolation("unexpected parameter '" + key + "' for " + std::string(to_string(a)));
  for (const auto& name : names) require_param(p, name);
  switch (a) {
    case Algorithm::MaxCore: break;
    case Algorithm::KlCore:
      if (p.at("k") < 0 || p.at("l") < 0) throw ContractViolation("kl-core parameters must be non-negative");
      break;
    case Algorithm::Truss:
      if (p.at("k") < 2) throw ContractViolation("truss parameter k must be >= 2");
      break;
    case Algorithm::StTruss:
      if (p.at("l") < 1 || p.at("h") < p.at("l")) throw ContractViolation("size bounds must satisfy 1 <= l <= h");
      break;
  }
}

/// Runs one search on the view the algorithm needs and validates the result.
inline SearchOutcome search(Algorithm a, const SearchViews& views, UserId q, const Params& p) {
  check_params(a, p);
  SearchOutcome raw;
  switch (a) {
    case Algorithm::MaxCore: raw = max_core_search(views.undirected, q); break;
    case Algorithm::KlCore: raw = kl_core_search(views.directed, q, p.at("k"), p.at("l")); break;
    case Algorithm::Truss: raw = truss_search(views.undirected, q, p.at("k")); break;
    case Algorithm::StTruss: raw = size_bounded_truss_search(views.undirected, q, p.at("l"), p.at("h")); break;
  }
  return validate(std::move(raw), q, views.undirected);
}

}  // namespace cohesion
