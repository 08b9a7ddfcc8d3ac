#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace cohesion;
using namespace testing_support;

namespace {

constexpr double kOnePlusInvE = 1.3678794411714423;
constexpr double kMutualAccu = 1.7357588823428847;

Event ev(EventId id, Timestamp t, int s, UserId src = 0, UserId dst = 1) {
  return Event{id, src, dst, t, static_cast<Sentiment>(s)};
}

ExcitationConfig exp_cfg(double rate) { return {1.0, DecaySpec::exponential(rate)}; }

}  // namespace

TEST(Excitation, EmptyHistoryIsBaseline) {
  EXPECT_EQ(excitation(exp_cfg(0.1), ev(0, 5, 1), {}), 1.0);
  EXPECT_EQ(excitation({2.5, DecaySpec::polynomial(1)}, ev(0, 5, -1), {}), 2.5);
}

TEST(Excitation, OnePriorPositiveEvent) {
  std::vector<Event> h{ev(0, 0, 1)};
  EXPECT_NEAR(excitation(exp_cfg(0.1), ev(1, 10, 1), h), kOnePlusInvE, 1e-12);
}

TEST(Excitation, ClampsAtZero) {
  std::vector<Event> h{ev(0, 7, 1), ev(1, 7, 1)};
  EXPECT_EQ(excitation(exp_cfg(0.0), ev(2, 7, -1), h), 0.0);
}

TEST(Excitation, HistoryMustPrecede) {
  std::vector<Event> h{ev(3, 7, 1)};
  EXPECT_THROW(excitation(exp_cfg(0.1), ev(2, 7, 1), h), ContractViolation);
  EXPECT_THROW(excitation(exp_cfg(0.1), ev(3, 7, 1), h), ContractViolation);
  EXPECT_THROW(excitation(exp_cfg(0.1), ev(4, 6, 1), h), ContractViolation);
}

TEST(ElicitedSentiment, WorkedValues) {
  std::vector<Event> h{ev(0, 0, -1)};
  EXPECT_EQ(elicited_sentiment(exp_cfg(0.1), ev(1, 10, 0), h), 0.0);
  EXPECT_EQ(elicited_sentiment(exp_cfg(0.1), ev(1, 10, 1), {}), 1.0);
  EXPECT_NEAR(elicited_sentiment(exp_cfg(0.1), ev(1, 10, -1), h), -kOnePlusInvE, 1e-12);
}

TEST(ExcitationProfile, RejectsUnorderedScope) {
  std::vector<Event> scope{ev(1, 5, 1), ev(0, 5, 1)};
  EXPECT_THROW(excitation_profile(exp_cfg(0.1), scope), ContractViolation);
}

TEST(AccumulatePair, NoEventsIsZero) {
  auto g = graph_of({{0, 0, 1, 1}, {1, 1, 2, 1}});
  auto c = induce(g, {0u, 1u});
  EXPECT_EQ(accumulate_pair(exp_cfg(0.1), g, c, 0, 1, 10), 0.0);
}

TEST(AccumulatePair, MutualFixture) {
  auto g = graph_of({{0, 1, 0, 1}, {1, 0, 10, 1}});
  auto c = induce(g, {0u, 1u});
  EXPECT_NEAR(accumulate_pair(exp_cfg(0.1), g, c, 0, 1, 10), kMutualAccu, 1e-12);
  auto neg = graph_of({{0, 1, 0, -1}, {1, 0, 10, -1}});
  auto cn = induce(neg, {0u, 1u});
  EXPECT_NEAR(accumulate_pair(exp_cfg(0.1), neg, cn, 0, 1, 10), -kMutualAccu, 1e-12);
}

TEST(AccumulatePair, Contracts) {
  auto g = graph_of({{0, 1, 0, 1}, {1, 2, 10, 1}});
  auto c = induce(g, {0u, 1u});
  EXPECT_THROW(accumulate_pair(exp_cfg(0.1), g, c, 0, 0, 10), ContractViolation);
  EXPECT_THROW(accumulate_pair(exp_cfg(0.1), g, c, 0, 2, 10), ContractViolation);
  auto other = graph_of({{0, 1, 0, 1}});
  EXPECT_THROW(accumulate_pair(exp_cfg(0.1), other, c, 0, 1, 10), ContractViolation);
}

TEST(AccumulatePair, IgnoresEventsAfterCurrentTime) {
  auto g = graph_of({{0, 1, 0, 1}, {1, 0, 10, 1}, {0, 1, 50, -1}});
  auto c = induce(g, {0u, 1u});
  EXPECT_NEAR(accumulate_pair(exp_cfg(0.1), g, c, 0, 1, 10), kMutualAccu, 1e-12);
}

// Production scope evaluation against the naive quadratic oracle.
TEST(SentimentKernel, MatchesNaiveOracleOnRandomScopes) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(0, 200);
  std::uniform_int_distribution<Timestamp> span(0, 3000);
  std::uniform_int_distribution<int> mood(-1, 1);
  std::uniform_real_distribution<double> rate(0.0, 0.05);
  for (int round = 0; round < 60; ++round) {
    const std::size_t m = size(rng);
    std::vector<Event> scope;
    for (std::size_t k = 0; k < m; ++k) scope.push_back(ev(static_cast<EventId>(k), span(rng), mood(rng)));
    std::sort(scope.begin(), scope.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
    for (std::size_t k = 0; k < m; ++k) scope[k].id = static_cast<EventId>(k);
    ExcitationConfig cfg = round % 2 ? ExcitationConfig{1.0, DecaySpec::exponential(rate(rng))}
                                     : ExcitationConfig{1.0, DecaySpec::polynomial(0.5 + rate(rng) * 30)};
    auto profile = excitation_profile(cfg, scope);
    auto s = settings_of(cfg);
    auto all = [](const Event&) { return true; };
    for (std::size_t k = 0; k < m; ++k) {
      const double naive = oracle::excitation(s, scope, scope[k], all);
      ASSERT_TRUE(close(profile[k], naive)) << profile[k] << " vs " << naive;
      const std::span<const Event> history(scope.data(), k);
      ASSERT_TRUE(close(excitation(cfg, scope[k], history), naive));
    }
    const Timestamp t_cur = m ? scope.back().t : 0;
    ASSERT_TRUE(close(decayed_elicited_sum(cfg, scope, t_cur), oracle::scope_sum(s, scope, t_cur, all)));
  }
}

TEST(SentimentKernel, BoundsOnExcitation) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> mood(-1, 1);
  for (int round = 0; round < 200; ++round) {
    std::vector<Event> scope;
    for (EventId k = 0; k < 40; ++k) scope.push_back(ev(k, k / 3, mood(rng)));
    auto profile = excitation_profile(exp_cfg(0.01 * (round % 5)), scope);
    for (std::size_t k = 0; k < scope.size(); ++k) {
      EXPECT_GE(profile[k], 0.0);
      EXPECT_LE(profile[k], 1.0 + static_cast<double>(k));
    }
  }
}

TEST(SentimentKernel, SignFlipAndZeroSentiment) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 30; ++round) {
    auto g = random_graph(rng, {6, 120});
    auto f = flipped_graph(g);
    std::vector<UserId> all(g.n_users());
    std::iota(all.begin(), all.end(), UserId{0});
    auto c = induce(g, all);
    auto cf = induce(f, all);
    auto zero_recs = g.to_records();
    for (auto& r : zero_recs) r.sentiment = Sentiment::Neutral;
    auto z = ingest(zero_recs);
    auto cz = induce(z, all);
    for (auto cfg : {exp_cfg(0.01), ExcitationConfig{1.0, DecaySpec::polynomial(1.5)}}) {
      for (UserId i = 0; i < g.n_users(); ++i) {
        for (UserId j = i + 1; j < g.n_users(); ++j) {
          const double a = accumulate_pair(cfg, g, c, i, j, g.latest_time());
          const double b = accumulate_pair(cfg, f, cf, i, j, f.latest_time());
          EXPECT_TRUE(bitwise_equal(a, -b) || (a == 0.0 && b == 0.0));
          EXPECT_EQ(accumulate_pair(cfg, z, cz, i, j, z.latest_time()), 0.0);
        }
      }
      auto scope = user_scope_inside(c, 0, g.latest_time());
      auto scope_f = user_scope_inside(cf, 0, f.latest_time());
      auto p = excitation_profile(cfg, scope);
      auto pf = excitation_profile(cfg, scope_f);
      ASSERT_EQ(p.size(), pf.size());
      for (std::size_t k = 0; k < p.size(); ++k) EXPECT_TRUE(bitwise_equal(p[k], pf[k]));
    }
  }
}

TEST(SentimentKernel, PairSymmetryIsBitwise) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 20; ++round) {
    auto g = random_graph(rng, {5, 150});
    std::vector<UserId> all(g.n_users());
    std::iota(all.begin(), all.end(), UserId{0});
    auto c = induce(g, all);
    for (UserId i = 0; i < g.n_users(); ++i)
      for (UserId j = 0; j < g.n_users(); ++j)
        if (i != j) {
          const auto cfg = exp_cfg(0.003);
          EXPECT_TRUE(bitwise_equal(accumulate_pair(cfg, g, c, i, j, 150), accumulate_pair(cfg, g, c, j, i, 150)));
        }
  }
}
