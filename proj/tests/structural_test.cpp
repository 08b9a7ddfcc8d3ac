#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace cohesion;
using namespace testing_support;

namespace {

std::vector<UserId> all_users(const TemporalMultigraph& g) {
  std::vector<UserId> v(g.n_users());
  std::iota(v.begin(), v.end(), UserId{0});
  return v;
}

SimpleGraph clique(std::size_t n) {
  std::vector<std::pair<UserId, UserId>> e;
  for (UserId u = 0; u < n; ++u)
    for (UserId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return SimpleGraph::from_edges(n, e);
}

}  // namespace

TEST(Diameter, SingleNodeAndPath) {
  auto one = graph_of({{0, 0, 1, 1}});
  EXPECT_EQ(diameter(induce(one, {0u})), 0.0);
  auto path = graph_of({{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 3, 3, 1}});
  EXPECT_EQ(diameter(induce(path, all_users(path))), 3.0);
}

TEST(Diameter, DisconnectedIsInfinite) {
  auto g = graph_of({{0, 1, 1, 1}, {2, 3, 2, 1}});
  EXPECT_EQ(diameter(induce(g, all_users(g))), kInfinity);
  EXPECT_EQ(diameter(induce(g, {0u, 2u})), kInfinity);
}

TEST(Diameter, MatchesFloydWarshall) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + round % 11;
    auto g = random_search_graph(rng, n, 0.25);
    auto a = oracle::undirected_matrix(n, events_of(g));
    auto vs = all_users(g);
    EXPECT_EQ(diameter(to_simple_undirected(g)), oracle::diameter(a, vs));
  }
}

TEST(DegMin, CountsParallelEventsAndSelfLoops) {
  auto par = graph_of({{0, 1, 1, 1}, {0, 1, 2, 1}, {1, 0, 3, 1}});
  EXPECT_EQ(min_degree_multigraph(induce(par, {0u, 1u})), 3u);
  auto loop = graph_of({{0, 0, 1, 1}, {1, 1, 2, 1}, {1, 1, 3, 1}});
  auto c = induce(loop, {0u, 1u});
  EXPECT_EQ(min_degree_multigraph(c), 1u);
  EXPECT_EQ(min_degree_multigraph(c, SelfLoopDegree::Two), 2u);
  auto tri = graph_of({{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 0, 3, 1}});
  EXPECT_EQ(min_degree_multigraph(induce(tri, {0u, 1u, 2u})), 2u);
}

TEST(DegMin, MatchesIncidenceCount) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 50; ++round) {
    auto g = random_graph(rng, {7, 60});
    auto c = induce(g, {0u, 1u, 2u, 3u});
    std::vector<std::size_t> deg(g.n_users(), 0);
    for (const Event& e : g.events()) {
      if (!c.is_member(e.src) || !c.is_member(e.dst)) continue;
      ++deg[e.src];
      if (e.dst != e.src) ++deg[e.dst];
    }
    std::size_t want = SIZE_MAX;
    for (UserId u : c.members()) want = std::min(want, deg[u]);
    EXPECT_EQ(min_degree_multigraph(c), want);
  }
}

TEST(CoreTruss, Conventions) {
  EXPECT_EQ(core_number(clique(3)), 2u);
  EXPECT_EQ(truss_number(clique(3)), 3u);
  EXPECT_EQ(core_number(clique(4)), 3u);
  EXPECT_EQ(truss_number(clique(4)), 4u);
  std::vector<std::pair<UserId, UserId>> spokes{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  auto star = SimpleGraph::from_edges(5, spokes);
  EXPECT_EQ(core_number(star), 1u);
  EXPECT_EQ(truss_number(star), 2u);
  auto empty = SimpleGraph::from_edges(3, std::vector<std::pair<UserId, UserId>>{});
  EXPECT_EQ(core_number(empty), 0u);
  EXPECT_EQ(truss_number(empty), 2u);
}

TEST(CoreTruss, MatchBruteForce) {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + round % 10;
    auto g = random_search_graph(rng, n, 0.45);
    auto a = oracle::undirected_matrix(n, events_of(g));
    const std::uint32_t full = (1u << n) - 1;
    auto s = to_simple_undirected(g);
    EXPECT_EQ(core_number(s), oracle::min_degree(a, full, n));
    EXPECT_EQ(truss_number(s), s.m() == 0 ? 2u : oracle::min_support(a, full, n) + 2);
  }
}

TEST(StructScores, Bundle) {
  auto g = graph_of({{0, 1, 1, 1}, {1, 2, 2, 1}, {2, 0, 3, 1}, {0, 0, 4, 1}, {2, 3, 5, 1}});
  auto s = struct_scores(induce(g, {0u, 1u, 2u}));
  EXPECT_EQ(s.size, 3u);
  EXPECT_EQ(s.diameter, 1.0);
  EXPECT_EQ(s.deg_min, 2u);
  EXPECT_EQ(s.core, 2u);
  EXPECT_EQ(s.truss, 3u);
}
