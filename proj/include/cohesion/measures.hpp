#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include "cohesion/graph.hpp"
#include "cohesion/sentiment.hpp"

namespace cohesion {

/// Observation window for GID: W = (t_cur - t0) / time_unit.
struct ObservationWindow {
  Timestamp t0 = 0;
  double time_unit = 1.0;

  [[nodiscard]] double length(Timestamp t_cur) const {
    if (!(time_unit > 0.0)) throw ContractViolation("window time unit must be > 0");
    const double w = static_cast<double>(t_cur - t0) / time_unit;
    if (!(w > 0.0)) throw ContractViolation("observation window must have positive length");
    return w;
  }
};

struct PsychScores {
  double ei = 0.0;
  double sit = 0.0;
  double ced = 0.0;
  double gip = 0.0;
  /// Missing for communities with fewer than two members.
  std::optional<double> gid;
  /// False when the community has no events by t_cur, in which case gip is 0.
  bool gip_defined = true;

  /// Per-member scores, aligned with `Community::members()`.
  std::vector<double> ei_per_user;
  std::vector<double> sit_per_user;
  std::vector<double> ced_per_user;

  Timestamp t_cur = 0;
  ExcitationConfig config{};
  std::optional<ObservationWindow> window;
};

namespace detail {

inline void require_parent(const TemporalMultigraph& g, const Community& c) {
  if (!c.induced_from(g)) throw ContractViolation("community was not induced from this graph");
}

inline void require_member(const Community& c, UserId i) {
  if (!c.is_member(i)) throw ContractViolation("user " + std::to_string(i) + " is not a community member");
}

inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace detail

/// Enjoyment of member `i`: decayed elicited sentiment over its interactions
/// with other members, each event excited by the earlier ones of that scope.
inline double ei_user(const TemporalMultigraph& g, const Community& c, UserId i, Timestamp t_cur,
                      const ExcitationConfig& cfg) {
  detail::require_parent(g, c);
  detail::require_member(c, i);
  return decayed_elicited_sum(cfg, user_scope_inside(c, i, t_cur), t_cur);
}

/// Sum of accumulate_pair over the members that `i` has interacted with in
/// both directions by t_cur.
inline double sit_user(const TemporalMultigraph& g, const Community& c, UserId i, Timestamp t_cur,
                       const ExcitationConfig& cfg) {
  detail::require_parent(g, c);
  detail::require_member(c, i);
  EventHistory scope = user_scope_inside(c, i, t_cur);
  std::vector<UserId> out_partners, in_partners;
  for (const Event& e : scope) (e.src == i ? out_partners : in_partners).push_back(e.other(i));
  for (auto* v : {&out_partners, &in_partners}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  std::vector<UserId> mutual;
  std::set_intersection(out_partners.begin(), out_partners.end(), in_partners.begin(), in_partners.end(),
                        std::back_inserter(mutual));
  double total = 0.0;
  for (UserId j : mutual) total += accumulate_pair(cfg, g, c, i, j, t_cur);
  return total;
}

/// Inside enjoyment minus enjoyment from interactions with non-members.
inline double ced_user(const TemporalMultigraph& g, const Community& c, UserId i, Timestamp t_cur,
                       const ExcitationConfig& cfg) {
  detail::require_parent(g, c);
  detail::require_member(c, i);
  const double inside = decayed_elicited_sum(cfg, user_scope_inside(c, i, t_cur), t_cur);
  const double outside = decayed_elicited_sum(cfg, user_scope_outside(c, i, t_cur), t_cur);
  return inside - outside;
}

inline double ei(const TemporalMultigraph& g, const Community& c, Timestamp t_cur, const ExcitationConfig& cfg) {
  std::vector<double> per;
  for (UserId u : c.members()) per.push_back(ei_user(g, c, u, t_cur, cfg));
  return detail::mean(per);
}

inline double sit(const TemporalMultigraph& g, const Community& c, Timestamp t_cur, const ExcitationConfig& cfg) {
  std::vector<double> per;
  for (UserId u : c.members()) per.push_back(sit_user(g, c, u, t_cur, cfg));
  return detail::mean(per);
}

inline double ced(const TemporalMultigraph& g, const Community& c, Timestamp t_cur, const ExcitationConfig& cfg) {
  std::vector<double> per;
  for (UserId u : c.members()) per.push_back(ced_user(g, c, u, t_cur, cfg));
  return detail::mean(per);
}

struct ActivityCounts {
  std::size_t all = 0;
  std::size_t interactions = 0;
};

inline ActivityCounts activity_counts(const Community& c, Timestamp t_cur) {
  ActivityCounts n;
  for (EventId id : c.event_ids()) {
    const Event& e = c.parent().event(id);
    if (e.t > t_cur) continue;
    ++n.all;
    if (!e.is_self_loop()) ++n.interactions;
  }
  return n;
}

/// Share of community activity that is interaction rather than self-posting.
/// An event-free community scores 0.
inline double gip(const TemporalMultigraph& g, const Community& c, Timestamp t_cur) {
  detail::require_parent(g, c);
  auto n = activity_counts(c, t_cur);
  return n.all == 0 ? 0.0 : static_cast<double>(n.interactions) / static_cast<double>(n.all);
}

/// Interactions per ordered member pair, optionally per window unit.
/// Missing for communities with fewer than two members.
inline std::optional<double> gid(const TemporalMultigraph& g, const Community& c, Timestamp t_cur,
                                 std::optional<ObservationWindow> window = std::nullopt) {
  detail::require_parent(g, c);
  if (c.size() < 2) return std::nullopt;
  const double n = static_cast<double>(c.size());
  const double w = window ? window->length(t_cur) : 1.0;
  return static_cast<double>(activity_counts(c, t_cur).interactions) / (n * (n - 1.0) * w);
}

/// All five measures in one pass over the community.
///
/// Pair accumulations are computed once per mutual pair and credited to both
/// members; the values are identical to calling the per-user functions.
inline PsychScores psych_scores(const TemporalMultigraph& g, const Community& c, Timestamp t_cur,
                                const ExcitationConfig& cfg,
                                std::optional<ObservationWindow> window = std::nullopt) {
  detail::require_parent(g, c);
  cfg.validate();
  PsychScores s;
  s.t_cur = t_cur;
  s.config = cfg;
  s.window = window;
  const std::size_t n = c.size();
  s.ei_per_user.assign(n, 0.0);
  s.sit_per_user.assign(n, 0.0);
  s.ced_per_user.assign(n, 0.0);

  EventHistory pair;
  std::vector<UserId> partners;
  for (std::size_t li = 0; li < n; ++li) {
    const UserId i = c.members()[li];
    EventHistory inside = user_scope_inside(c, i, t_cur);
    const double in_sum = decayed_elicited_sum(cfg, inside, t_cur);
    const double out_sum = decayed_elicited_sum(cfg, user_scope_outside(c, i, t_cur), t_cur);
    s.ei_per_user[li] = in_sum;
    s.ced_per_user[li] = in_sum - out_sum;

    // Mutual partners j > i; each pair handled once from its smaller endpoint.
    partners.clear();
    for (const Event& e : inside)
      if (e.other(i) > i) partners.push_back(e.other(i));
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (UserId j : partners) {
      pair.clear();
      bool forward = false, backward = false;
      for (const Event& e : inside) {
        if (e.other(i) != j) continue;
        pair.push_back(e);
        (e.src == i ? forward : backward) = true;
      }
      if (!(forward && backward)) continue;
      const double accu = decayed_elicited_sum(cfg, pair, t_cur);
      s.sit_per_user[li] += accu;
      s.sit_per_user[c.local_index(j)] += accu;
    }
  }
  s.ei = detail::mean(s.ei_per_user);
  s.sit = detail::mean(s.sit_per_user);
  s.ced = detail::mean(s.ced_per_user);

  auto counts = activity_counts(c, t_cur);
  s.gip_defined = counts.all > 0;
  s.gip = counts.all == 0 ? 0.0 : static_cast<double>(counts.interactions) / static_cast<double>(counts.all);
  if (n >= 2) {
    const double nn = static_cast<double>(n);
    const double w = window ? window->length(t_cur) : 1.0;
    s.gid = static_cast<double>(counts.interactions) / (nn * (nn - 1.0) * w);
  }
  return s;
}

}  // namespace cohesion
