#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cohesion/graph.hpp"

namespace cohesion {

/// Planted-community generator settings. Rates are expected events per user.
struct FixtureSpec {
  std::size_t n_communities = 2;
  std::size_t community_size = 5;
  /// Interactions between members of the same community, per user.
  double intra_event_rate = 4.0;
  /// Interactions across communities, per user.
  double inter_event_rate = 0.0;
  /// Individual posts, per user.
  double self_loop_rate = 0.5;
  double p_pos = 0.5;
  double p_neu = 0.3;
  double p_neg = 0.2;
  /// Timestamps are uniform integers in [0, time_span].
  Timestamp time_span = 86'400;
  std::uint64_t rng_seed = 42;

  [[nodiscard]] std::size_t n_users() const noexcept { return n_communities * community_size; }

  void validate() const {
    if (n_communities == 0 || community_size == 0) throw ContractViolation("fixture needs at least one user");
    for (double r : {intra_event_rate, inter_event_rate, self_loop_rate})
      if (!(r >= 0.0) || !std::isfinite(r)) throw ContractViolation("fixture rates must be finite and >= 0");
    for (double p : {p_pos, p_neu, p_neg})
      if (!(p >= 0.0)) throw ContractViolation("sentiment probabilities must be >= 0");
    if (std::abs(p_pos + p_neu + p_neg - 1.0) > 1e-9) throw ContractViolation("sentiment mix must sum to 1");
    if (time_span < 0) throw ContractViolation("time span must be >= 0");
    if (community_size < 2 && intra_event_rate > 0.0)
      throw ContractViolation("intra-community events need communities of size >= 2");
    if (n_communities < 2 && inter_event_rate > 0.0)
      throw ContractViolation("inter-community events need at least two communities");
  }
};

struct Fixture {
  TemporalMultigraph graph;
  /// Planted community of each generated user, by external id index.
  std::vector<std::size_t> planted;
  /// Planted communities as dense ids of `graph`; users without events are absent.
  std::vector<std::vector<UserId>> communities;
};

/// External id of generated user `index`.
inline std::string fixture_user_id(std::size_t index) { return std::to_string(index); }

/// Samples a planted-community temporal multigraph. Fully determined by the spec.
inline Fixture generate_fixture(const FixtureSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  const std::size_t size = spec.community_size;
  const std::size_t n = spec.n_users();
  std::uniform_int_distribution<Timestamp> when(0, spec.time_span);
  std::discrete_distribution<int> mood({spec.p_neg, spec.p_neu, spec.p_pos});
  std::uniform_int_distribution<std::size_t> member(0, size - 1);
  auto count = [](double rate, std::size_t users) {
    return static_cast<std::size_t>(std::llround(rate * static_cast<double>(users)));
  };

  std::vector<EdgeRecord> records;
  auto emit = [&](std::size_t a, std::size_t b) {
    records.push_back({fixture_user_id(a), fixture_user_id(b), when(rng), static_cast<Sentiment>(mood(rng) - 1)});
  };

  for (std::size_t c = 0; c < spec.n_communities; ++c) {
    const std::size_t base = c * size;
    for (std::size_t k = 0, total = count(spec.intra_event_rate, size); k < total; ++k) {
      std::size_t a = member(rng);
      std::size_t b = member(rng);
      while (b == a) b = member(rng);
      emit(base + a, base + b);
    }
    for (std::size_t k = 0, total = count(spec.self_loop_rate, size); k < total; ++k) {
      std::size_t a = base + member(rng);
      emit(a, a);
    }
  }
  if (spec.n_communities > 1) {
    std::uniform_int_distribution<std::size_t> anyone(0, n - 1);
    for (std::size_t k = 0, total = count(spec.inter_event_rate, n); k < total; ++k) {
      std::size_t a = anyone(rng);
      std::size_t b = anyone(rng);
      while (b / size == a / size) b = anyone(rng);
      emit(a, b);
    }
  }

  Fixture f;
  f.graph = ingest(records);
  f.planted.resize(n);
  f.communities.resize(spec.n_communities);
  for (std::size_t i = 0; i < n; ++i) {
    f.planted[i] = i / size;
    UserId u = f.graph.find_user(fixture_user_id(i));
    if (u != kNoUser) f.communities[i / size].push_back(u);
  }
  for (auto& c : f.communities) std::sort(c.begin(), c.end());
  return f;
}

}  // namespace cohesion
