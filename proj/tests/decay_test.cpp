#include <gtest/gtest.h>

#include <random>

#include "cohesion/decay.hpp"

using namespace cohesion;

TEST(Decay, UnitAtZeroForBothKinds) {
  for (double rate : {0.0, 1e-4, 0.5, 3.0}) {
    EXPECT_EQ(phi(DecaySpec::exponential(rate), 0.0), 1.0);
    if (rate > 0) {
      EXPECT_EQ(phi(DecaySpec::polynomial(rate), 0.0), 1.0);
    }
  }
}

TEST(Decay, WorkedValues) {
  EXPECT_NEAR(phi(DecaySpec::exponential(0.1), 10.0), 0.36787944117144233, 1e-15);
  EXPECT_DOUBLE_EQ(phi(DecaySpec::polynomial(1.0), 3.0), 0.25);
}

TEST(Decay, NegativeAgeIsRejected) {
  EXPECT_THROW(phi(DecaySpec::exponential(0.1), -1.0), ContractViolation);
  EXPECT_THROW(phi(DecaySpec::polynomial(1.0), -0.5), ContractViolation);
}

TEST(Decay, ZeroRateExponentialIsConstant) {
  for (double d : {0.0, 1.0, 1e6, 1e12}) EXPECT_EQ(phi(DecaySpec::exponential(0.0), d), 1.0);
}

TEST(Decay, SpecValidation) {
  EXPECT_NO_THROW(DecaySpec::exponential(0.0).validate());
  EXPECT_THROW(DecaySpec::exponential(-0.1).validate(), ContractViolation);
  EXPECT_THROW(DecaySpec::polynomial(0.0).validate(), ContractViolation);
  EXPECT_EQ(parse_decay_kind("polynomial"), DecayKind::Polynomial);
  EXPECT_THROW(parse_decay_kind("linear"), Error);
}

TEST(Decay, MonotoneAndBoundedOnRandomSamples) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> age(0.0, 5e4);
  std::uniform_real_distribution<double> rate(1e-5, 0.01);
  std::uniform_real_distribution<double> mu(0.5, 2.0);
  for (int k = 0; k < 2000; ++k) {
    double a = age(rng), b = age(rng);
    if (a > b) std::swap(a, b);
    for (DecaySpec spec : {DecaySpec::exponential(rate(rng)), DecaySpec::polynomial(mu(rng))}) {
      const double pa = phi(spec, a), pb = phi(spec, b);
      EXPECT_GE(pa, pb);
      if (a < b) {
        EXPECT_GT(pa, pb);
      }
      EXPECT_GT(pb, 0.0);
      EXPECT_LE(pa, 1.0);
    }
  }
}
