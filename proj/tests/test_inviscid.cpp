#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cascade/lax_oleinik.hpp"

using namespace cascade;

namespace {

InitialProfile ramp() { return InitialProfile{{0.0, 1.0}, {0.0, 1.0}}; }

double f_value(const HopfPotential& h, double xi, double t, double y) {
  return (xi - y) * (xi - y) / (2.0 * t) - h(y);
}

}  // namespace

TEST(Extension, Examples) {
  const auto one = extend_profile(InitialProfile::constant(1.0));
  EXPECT_EQ(one(-0.5), 0.0);
  EXPECT_EQ(one(0.5), 1.0);
  EXPECT_EQ(one(3.0), 1.0);
  const auto zero = extend_profile(InitialProfile::constant(0.0));
  EXPECT_EQ(zero(0.5), 0.0);
  EXPECT_EQ(zero(1.0), 0.0);
  EXPECT_EQ(zero(1.5), 1.0);
  const auto r = extend_profile(ramp());
  EXPECT_EQ(r(0.0), 0.0);
  EXPECT_EQ(r(0.25), 0.25);
  EXPECT_EQ(r(1.0), 1.0);
}

TEST(Extension, RejectsInvalidProfiles) {
  EXPECT_THROW(extend_profile(InitialProfile{{0.0, 0.5}, {1.0, 1.0}}), DomainError);
  EXPECT_THROW(extend_profile(InitialProfile{{0.0, 1.0}, {-1.0, 1.0}}), DomainError);
  EXPECT_THROW(extend_profile(InitialProfile{{0.0, 0.6, 0.4, 1.0}, {1.0, 1.0, 1.0, 1.0}}), DomainError);
}

TEST(Hopf, Examples) {
  const auto h0 = hopf_potential(extend_profile(InitialProfile::constant(0.0)));
  EXPECT_DOUBLE_EQ(h0(2.0), 1.0);
  EXPECT_EQ(h0(-5.0), 0.0);
  const auto h1 = hopf_potential(extend_profile(InitialProfile::constant(1.0)));
  for (double y : {0.0, 0.3, 1.0, 2.5}) EXPECT_DOUBLE_EQ(h1(y), y);
  const auto hr = hopf_potential(extend_profile(ramp()));
  EXPECT_DOUBLE_EQ(hr(0.5), 0.125);
  EXPECT_DOUBLE_EQ(hr(2.0), 1.5);
}

TEST(Minimizer, ConstantOne) {
  const auto h = hopf_potential(extend_profile(InitialProfile::constant(1.0)));
  for (double xi : {0.1, 0.5, 0.9})
    for (double t : {0.2, 1.0, 3.0}) EXPECT_NEAR(lax_oleinik_minimizer(h, xi, t), xi + t, 1e-14);
}

TEST(Minimizer, ZeroDatumBranches) {
  const auto h = hopf_potential(extend_profile(InitialProfile::constant(0.0)));
  EXPECT_NEAR(lax_oleinik_minimizer(h, 0.75, 1.0), 1.75, 1e-14);
  EXPECT_NEAR(lax_oleinik_minimizer(h, 0.25, 1.0), 0.25, 1e-14);
  EXPECT_THROW(lax_oleinik_minimizer(h, 0.5, 0.0), DomainError);
}

TEST(Minimizer, TieBreakSmallest) {
  // w0 = 0: both branches tie on the shock xi = 1 - t/2
  const auto h = hopf_potential(extend_profile(InitialProfile::constant(0.0)));
  EXPECT_NEAR(lax_oleinik_minimizer(h, 0.5, 1.0), 0.5, 1e-14);
}

TEST(Evaluation, Examples) {
  const auto h0 = hopf_potential(extend_profile(InitialProfile::constant(0.0)));
  EXPECT_NEAR(lax_oleinik_eval(h0, 0.75, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(lax_oleinik_eval(h0, 0.25, 1.0), 0.0, 1e-14);
  const auto hr = hopf_potential(extend_profile(ramp()));
  EXPECT_NEAR(lax_oleinik_eval(hr, 0.4, 0.5), 0.8, 1e-14);
}

TEST(Evaluation, DecreasingProfileCharacteristics) {
  // w0 = 2 - xi: characteristics never cross, w = (2 - xi) / (1 + t) for xi <= 1 - t
  const InitialProfile p{{0.0, 1.0}, {2.0, 1.0}};
  const auto h = hopf_potential(extend_profile(p));
  for (double t : {0.1, 0.4, 0.8})
    for (double xi = 0.01; xi <= 1.0 - t; xi += 0.05)
      EXPECT_NEAR(lax_oleinik_eval(h, xi, t), (2.0 - xi) / (1.0 + t), 1e-13);
}

TEST(Evaluation, AttractedAfterTwo) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto p = random_profile(rng);
    const auto h = hopf_potential(extend_profile(p));
    EXPECT_NEAR(lax_oleinik_eval(h, 0.5, 2.1), 1.0, 1e-12);
  }
}

TEST(Attraction, Reports) {
  const auto p = params_from_alpha(2.0, 1.0, 0.0);
  const XiGrid g(1000);
  const auto zero = verify_attraction(InitialProfile::constant(0.0), p, g);
  EXPECT_LT(zero.max_deviation, 1e-12);
  EXPECT_FALSE(zero.attracted_at_start());
  EXPECT_NEAR(zero.physical_attraction_time, 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(verify_attraction(InitialProfile::constant(1.0), p, g).attracted_at_start());
}

TEST(Properties, MinimalityCertificate) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto prof = random_profile(rng);
    const auto h = hopf_potential(extend_profile(prof));
    const double xi = 0.01 + 0.98 * u(rng), t = 0.05 + 2.5 * u(rng);
    const double ystar = lax_oleinik_minimizer(h, xi, t);
    const double fstar = f_value(h, xi, t, ystar);
    for (int k = 0; k < 1000; ++k) {
      const double y = -1.0 + 6.0 * u(rng);
      EXPECT_LE(fstar, f_value(h, xi, t, y) + 1e-12);
    }
  }
}

TEST(Properties, MonotoneDataStaysMonotone) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    // nondecreasing up to the boundary value 1, so the extension stays monotone
    auto prof = random_profile(rng, 6, 0.0, 1.0);
    std::sort(prof.values.begin(), prof.values.end());
    prof.values.back() = 1.0;
    const auto h = hopf_potential(extend_profile(prof));
    for (double t : {0.3, 0.9, 1.7}) {
      const auto w = lax_oleinik_field(h, prof, XiGrid(400), t);
      for (std::size_t i = 1; i < w.size(); ++i) EXPECT_GE(w.values[i], w.values[i - 1] - 1e-12);
    }
  }
}

TEST(Properties, MaximumPrinciple) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto prof = random_profile(rng);
    const auto h = hopf_potential(extend_profile(prof));
    const double bound = std::max(prof.sup(), 1.0);
    for (double t : {0.1, 0.5, 1.2, 2.5}) {
      const auto w = lax_oleinik_field(h, prof, XiGrid(300), t);
      for (double v : w.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, bound + 1e-12);
      }
    }
  }
}

TEST(Properties, Semigroup) {
  // the solutions at t1 are piecewise linear with known kinks, so they can be
  // used as exact initial data
  struct Case {
    InitialProfile start;
    double t1;
    InitialProfile at_t1;
  };
  const std::vector<Case> cases = {
      {ramp(), 0.3, InitialProfile{{0.0, 0.7, 1.0}, {0.0, 1.0, 1.0}}},
      {InitialProfile{{0.0, 1.0}, {2.0, 1.0}}, 0.25, InitialProfile{{0.0, 0.75, 1.0}, {1.6, 1.0, 1.0}}},
  };
  for (const auto& c : cases) {
    const auto h = hopf_potential(extend_profile(c.start));
    const auto h1 = hopf_potential(extend_profile(c.at_t1));
    for (double xi = 0.02; xi < 1.0; xi += 0.03) {
      EXPECT_NEAR(lax_oleinik_eval(h, xi, c.t1), c.at_t1(xi), 1e-12);
      for (double t2 : {0.2, 0.6, 1.1})
        EXPECT_NEAR(lax_oleinik_eval(h, xi, c.t1 + t2), lax_oleinik_eval(h1, xi, t2), 1e-10)
            << "xi = " << xi << " t2 = " << t2;
    }
  }
}

TEST(Profiles, RandomIsSeededAndInRange) {
  std::mt19937_64 a(42), b(42);
  const auto p = random_profile(a), q = random_profile(b);
  EXPECT_EQ(p.breakpoints, q.breakpoints);
  EXPECT_EQ(p.values, q.values);
  for (double v : p.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 2.0);
  }
  EXPECT_NO_THROW(p.validate());
}
