#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace cohesion;
using namespace testing_support;

namespace {

std::string csv_bytes(const TemporalMultigraph& g) {
  std::ostringstream out;
  write_edges(g, out, EdgeFormat::Csv);
  return out.str();
}

}  // namespace

TEST(Fixture, DisconnectedCommunitiesGiveOneBlock) {
  FixtureSpec spec;
  spec.n_communities = 2;
  spec.community_size = 5;
  spec.intra_event_rate = 6;
  spec.inter_event_rate = 0;
  auto f = generate_fixture(spec);
  EXPECT_EQ(f.graph.n_users(), 10u);
  auto big = largest_weak_component(f.graph);
  ASSERT_EQ(big.n_users(), 5u);
  std::set<std::size_t> blocks;
  for (UserId u = 0; u < big.n_users(); ++u) blocks.insert(std::stoul(big.external_id(u)) / 5);
  EXPECT_EQ(blocks.size(), 1u);
}

TEST(Fixture, AllPositiveMixGivesNonNegativeEnjoyment) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    FixtureSpec spec;
    spec.n_communities = 4;
    spec.community_size = 6;
    spec.inter_event_rate = 1.0;
    spec.p_pos = 1.0;
    spec.p_neu = spec.p_neg = 0.0;
    spec.rng_seed = seed;
    auto f = generate_fixture(spec);
    const ExcitationConfig cfg{1.0, DecaySpec::exponential(1e-4)};
    for (const auto& members : f.communities) {
      auto c = induce(f.graph, members);
      EXPECT_GE(ei(f.graph, c, f.graph.latest_time(), cfg), 0.0);
    }
  }
}

TEST(Fixture, SeedDeterminesBytes) {
  FixtureSpec spec;
  spec.n_communities = 3;
  spec.inter_event_rate = 0.5;
  spec.rng_seed = 42;
  EXPECT_EQ(csv_bytes(generate_fixture(spec).graph), csv_bytes(generate_fixture(spec).graph));
  auto other = spec;
  other.rng_seed = 43;
  EXPECT_NE(csv_bytes(generate_fixture(spec).graph), csv_bytes(generate_fixture(other).graph));
}

TEST(Fixture, PlantedMembershipCoversEveryUser) {
  FixtureSpec spec;
  spec.n_communities = 3;
  spec.community_size = 4;
  spec.intra_event_rate = 10;
  auto f = generate_fixture(spec);
  ASSERT_EQ(f.planted.size(), 12u);
  std::size_t total = 0;
  for (std::size_t c = 0; c < f.communities.size(); ++c) {
    total += f.communities[c].size();
    for (UserId u : f.communities[c]) EXPECT_EQ(f.planted[std::stoul(f.graph.external_id(u))], c);
  }
  EXPECT_EQ(total, f.graph.n_users());
}

TEST(Fixture, InvalidSpecs) {
  FixtureSpec spec;
  spec.p_pos = 0.9;
  EXPECT_THROW(generate_fixture(spec), ContractViolation);
  spec = {};
  spec.intra_event_rate = -1;
  EXPECT_THROW(generate_fixture(spec), ContractViolation);
  spec = {};
  spec.n_communities = 1;
  spec.inter_event_rate = 1;
  EXPECT_THROW(generate_fixture(spec), ContractViolation);
  spec = {};
  spec.community_size = 1;
  EXPECT_THROW(generate_fixture(spec), ContractViolation);
}

// Planted structure: interaction density inside blocks exceeds that between
// blocks whenever the intra rate dominates, on every one of 20 seeds.
TEST(Fixture, IntraDensityExceedsInterDensity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FixtureSpec spec;
    spec.n_communities = 4;
    spec.community_size = 8;
    spec.intra_event_rate = 3.0;
    spec.inter_event_rate = 1.0;
    spec.rng_seed = seed;
    auto f = generate_fixture(spec);
    std::size_t intra = 0, inter = 0;
    for (const Event& e : f.graph.events()) {
      if (e.is_self_loop()) continue;
      const auto a = std::stoul(f.graph.external_id(e.src)) / 8;
      const auto b = std::stoul(f.graph.external_id(e.dst)) / 8;
      (a == b ? intra : inter)++;
    }
    const double intra_pairs = 4.0 * 8 * 7;
    const double inter_pairs = 32.0 * 31 - intra_pairs;
    EXPECT_GT(intra / intra_pairs, inter / inter_pairs) << "seed " << seed;
  }
}

TEST(Fixture, ExportRoundTripKeepsStats) {
  FixtureSpec spec;
  spec.n_communities = 5;
  spec.community_size = 20;
  spec.intra_event_rate = 9.0;
  spec.inter_event_rate = 1.0;
  spec.self_loop_rate = 0.0;
  auto f = generate_fixture(spec);
  ASSERT_EQ(f.graph.n_events(), 1000u);
  auto path = std::filesystem::temp_directory_path() / "cohesion_fixture_rt.jsonl";
  export_graph(f.graph, path, EdgeFormat::JsonLines);
  auto back = load_graph(path);
  std::filesystem::remove(path);
  auto a = stats(f.graph), b = stats(back);
  EXPECT_EQ(a.n_users, b.n_users);
  EXPECT_EQ(a.n_events, b.n_events);
  EXPECT_EQ(a.n_timestamps, b.n_timestamps);
  EXPECT_EQ(a.n_simple_edges, b.n_simple_edges);
  EXPECT_EQ(a.density, b.density);
  EXPECT_EQ(a.deg_avg, b.deg_avg);
}
