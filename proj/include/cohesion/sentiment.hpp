#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cohesion/decay.hpp"
#include "cohesion/graph.hpp"

namespace cohesion {

struct ExcitationConfig {
  /// Baseline excitation of an event with no history.
  double lambda0 = 1.0;
  DecaySpec decay{};

  void validate() const {
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw ContractViolation("lambda0 must be > 0");
    decay.validate();
  }
};

/// Events of one scope, strictly ordered by (t, id).
using EventHistory = std::vector<Event>;

/// Excitation of `current` given prior events of the same scope:
/// max(0, lambda0 + sum Senti(h) * Senti(current) * phi(current.t - h.t)).
inline double excitation(const ExcitationConfig& cfg, const Event& current, std::span<const Event> history) {
  const int s = value(current.sentiment);
  double acc = 0.0;
  for (const Event& h : history) {
    if (!precedes(h, current)) throw ContractViolation("history event does not precede the current event");
    const int sign = value(h.sentiment) * s;
    if (sign != 0) acc += sign * phi(cfg.decay, current.t - h.t);
  }
  return std::max(0.0, cfg.lambda0 + acc);
}

/// Sentiment of `current` scaled by its excitation.
inline double elicited_sentiment(const ExcitationConfig& cfg, const Event& current, std::span<const Event> history) {
  return value(current.sentiment) * excitation(cfg, current, history);
}

namespace detail {
inline void require_ordered(std::span<const Event> scope) {
  for (std::size_t k = 1; k < scope.size(); ++k)
    if (!precedes(scope[k - 1], scope[k])) throw ContractViolation("scope is not ordered by (t, id)");
}
}  // namespace detail

/// Excitation of every event in `scope` with respect to the events before it.
///
/// The exponential kernel is evaluated with a running decayed sum
/// (carry_n = (carry_{n-1} + s_{n-1}) * exp(-rate * (t_n - t_{n-1}))), which
/// keeps a scope linear. The polynomial kernel has no such recurrence and is
/// summed directly.
inline std::vector<double> excitation_profile(const ExcitationConfig& cfg, std::span<const Event> scope) {
  detail::require_ordered(scope);
  std::vector<double> out(scope.size());
  if (cfg.decay.kind == DecayKind::Exponential) {
    double carry = 0.0;
    for (std::size_t n = 0; n < scope.size(); ++n) {
      if (n > 0) {
        const double dt = static_cast<double>(scope[n].t - scope[n - 1].t);
        carry = (carry + value(scope[n - 1].sentiment)) * std::exp(-cfg.decay.rate * dt);
      }
      out[n] = std::max(0.0, cfg.lambda0 + value(scope[n].sentiment) * carry);
    }
    return out;
  }
  for (std::size_t n = 0; n < scope.size(); ++n) {
    const int s = value(scope[n].sentiment);
    double acc = 0.0;
    if (s != 0) {
      for (std::size_t k = 0; k < n; ++k) {
        const int sign = value(scope[k].sentiment) * s;
        if (sign != 0) acc += sign * phi(cfg.decay, scope[n].t - scope[k].t);
      }
    }
    out[n] = std::max(0.0, cfg.lambda0 + acc);
  }
  return out;
}

/// Sum over scope events with t <= t_cur of elicited sentiment weighted by
/// phi(t_cur - t). Summation runs in ascending (t, id) order.
inline double decayed_elicited_sum(const ExcitationConfig& cfg, std::span<const Event> scope, Timestamp t_cur) {
  auto end = std::find_if(scope.begin(), scope.end(), [&](const Event& e) { return e.t > t_cur; });
  std::span<const Event> live(scope.begin(), end);
  auto exc = excitation_profile(cfg, live);
  double sum = 0.0;
  for (std::size_t n = 0; n < live.size(); ++n) {
    const int s = value(live[n].sentiment);
    if (s == 0) continue;
    sum += (s * exc[n]) * phi(cfg.decay, t_cur - live[n].t);
  }
  return sum;
}

/// Interactions between `i` and other members, both directions, t <= t_cur.
inline EventHistory user_scope_inside(const Community& c, UserId i, Timestamp t_cur) {
  EventHistory h;
  for (EventId id : c.parent().incident(i)) {
    const Event& e = c.parent().event(id);
    if (e.t > t_cur) break;
    if (!e.is_self_loop() && c.is_member(e.other(i))) h.push_back(e);
  }
  return h;
}

/// Interactions between `i` and users outside the community, t <= t_cur.
inline EventHistory user_scope_outside(const Community& c, UserId i, Timestamp t_cur) {
  EventHistory h;
  for (EventId id : c.parent().incident(i)) {
    const Event& e = c.parent().event(id);
    if (e.t > t_cur) break;
    if (!e.is_self_loop() && !c.is_member(e.other(i))) h.push_back(e);
  }
  return h;
}

/// Interactions between `i` and `j` in either direction, t <= t_cur.
inline EventHistory pair_scope(const Community& c, UserId i, UserId j, Timestamp t_cur) {
  EventHistory h;
  for (EventId id : c.parent().incident(i)) {
    const Event& e = c.parent().event(id);
    if (e.t > t_cur) break;
    if (!e.is_self_loop() && e.other(i) == j) h.push_back(e);
  }
  return h;
}

/// Accumulated decayed elicited sentiment between two members. Symmetric in
/// (i, j) bit for bit, since both orders sum the same scope in the same order.
inline double accumulate_pair(const ExcitationConfig& cfg, const TemporalMultigraph& g, const Community& c, UserId i,
                              UserId j, Timestamp t_cur) {
  if (i == j) throw ContractViolation("accumulate_pair requires two distinct users");
  if (!c.induced_from(g)) throw ContractViolation("community was not induced from this graph");
  if (!c.is_member(i) || !c.is_member(j)) throw ContractViolation("accumulate_pair users must be community members");
  return decayed_elicited_sum(cfg, pair_scope(c, i, j, t_cur), t_cur);
}

}  // namespace cohesion
