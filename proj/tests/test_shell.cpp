#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cascade/shell.hpp"

using namespace cascade;

namespace {

ShellState random_state(std::size_t N, double d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto s = ShellState::zeros(N, d, 0.0);
  for (std::size_t j = 0; j <= N; ++j) s.a[j] = u(rng) * std::exp2(-d * j / 3.0);
  return s;
}

// nu placing the dissipation shell near j_d for the constant-flux spectrum 2^(-dj/3)
double nu_for_shell(double d, double jd) { return std::exp2((2.0 * d / 3.0 - 2.0) * jd); }

}  // namespace

TEST(ShellRhs, Examples) {
  const auto zero = ShellState::zeros(10, 1.0, 0.3);
  for (double v : shell_rhs(zero)) EXPECT_EQ(v, 0.0);

  auto s = ShellState::zeros(10, 1.0, 0.0);
  s.a[0] = 1.0;
  const auto r = shell_rhs(s);
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[1], 1.0);
  for (std::size_t j = 2; j < r.size(); ++j) EXPECT_EQ(r[j], 0.0);

  auto single = ShellState::zeros(10, 1.0, 0.01);
  single.a[5] = 0.7;
  EXPECT_DOUBLE_EQ(shell_rhs(single)[5], -0.01 * 1024.0 * 0.7);
}

TEST(ShellRhs, HandSubstitution) {
  auto s = ShellState::zeros(8, 2.0, 0.1);
  s.a[2] = 0.5;
  s.a[3] = 0.25;
  s.a[4] = -0.5;
  const auto r = shell_rhs(s);
  // j = 3: -nu 2^6 a3 + 2^(2*2) a2^2 - 2^(2*3) a3 a4
  EXPECT_DOUBLE_EQ(r[3], -0.1 * 64.0 * 0.25 + 16.0 * 0.25 - 64.0 * 0.25 * -0.5);
  // last shell has no outgoing transfer
  s.a[8] = 0.3;
  s.a[7] = 0.2;
  EXPECT_DOUBLE_EQ(shell_rhs(s)[8], -0.1 * std::ldexp(1.0, 16) * 0.3 + std::ldexp(1.0, 14) * 0.04);
}

TEST(ShellState, Validation) {
  EXPECT_THROW(ShellState::zeros(7, 1.0, 0.0).validate(), DomainError);
  EXPECT_NO_THROW(ShellState::zeros(8, 1.0, 0.0).validate());
  EXPECT_THROW(shell_evolve(ShellState::zeros(8, 1.0, 0.0), 0.0), DomainError);
}

TEST(ShellEvolve, StiffnessLimit) {
  auto s = ShellState::zeros(20, 1.0, 1e-6);
  ShellOptions opt;
  opt.dt = 1e-3;
  EXPECT_THROW(shell_evolve(s, 1.0, opt), StabilityError);
  EXPECT_NEAR(shell_stiffness_limit(s), 2.5 / (1e-6 * std::ldexp(1.0, 40)), 1e-20);
}

TEST(ShellEvolve, InviscidEnergyConserved) {
  for (double d : {0.0, 1.0, 2.0}) {
    const auto s = random_state(10, d, 17);
    ShellOptions opt;
    // the top shell turns over at about 2^(dN) |a_N|, so d = 2 needs a finer step
    opt.dt = d < 2.0 ? 2e-4 : 1e-5;
    const auto tr = shell_evolve(s, 10.0, opt);
    EXPECT_NEAR(tr.energy.back(), tr.energy.front(), 1e-10) << d;
  }
}

TEST(ShellEvolve, EnergyErrorIsFourthOrder) {
  // the error made by a coarse step, measured against a fine reference
  const auto s = random_state(10, 1.0, 5);
  auto run = [&](double dt) {
    ShellOptions opt;
    opt.dt = dt;
    return shell_evolve(s, 1.0, opt).final_state().a;
  };
  const auto ref = run(1e-5);
  auto err = [&](const std::vector<double>& a) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - ref[j]));
    return m;
  };
  const double e1 = err(run(1e-3)), e2 = err(run(5e-4));
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
}

TEST(ShellEvolve, ViscousEnergyBalancePerStep) {
  // d/dt sum a^2 / 2 = a0^2 a1 - nu sum_{j >= 1} 4^j a_j^2 with a0 pinned
  auto s = ShellState::zeros(12, 1.0, nu_for_shell(1.0, 9));
  ShellOptions opt;
  opt.pin_a0 = 1.0;
  opt.dt = 1e-4;
  opt.record_interval = 1e-4;
  const auto tr = shell_evolve(s, 0.5, opt);
  auto balance = [&](const ShellState& st) {
    double diss = 0.0;
    for (std::size_t j = 1; j < st.a.size(); ++j) diss += std::ldexp(st.a[j] * st.a[j], 2 * static_cast<int>(j));
    return st.a[0] * st.a[0] * st.a[1] - st.nu * diss;
  };
  for (std::size_t k = 0; k + 1 < tr.states.size(); ++k) {
    const double dt = tr.times[k + 1] - tr.times[k];
    const double lhs = 0.5 * (tr.energy[k + 1] - tr.energy[k]);
    const double rhs = 0.5 * dt * (balance(tr.states[k]) + balance(tr.states[k + 1]));
    ASSERT_NEAR(lhs, rhs, 1e-9 * dt) << "step " << k;
  }
}

TEST(ShellEvolve, PinnedEnergySaturates) {
  auto s = ShellState::zeros(12, 1.0, nu_for_shell(1.0, 8));
  ShellOptions opt;
  opt.pin_a0 = 1.0;
  opt.record_interval = 1.0;
  const auto tr = shell_evolve(s, 20.0, opt);
  EXPECT_GT(tr.energy[3], tr.energy[0]);
  EXPECT_NEAR(tr.energy.back(), tr.energy[tr.energy.size() - 2], 1e-9);
  EXPECT_EQ(tr.final_state().a[0], 1.0);
}

TEST(ShellSlope, Ansatz) {
  for (double d : {0.0, 1.0, 2.0, 2.5}) {
    auto s = ShellState::zeros(20, d, 0.0);
    for (std::size_t j = 0; j <= 20; ++j) s.a[j] = std::exp2(-d * j / 3.0);
    EXPECT_NEAR(shell_steady_slope(s, 2, 12).slope, -d / 3.0, 1e-12);
    // constant flux 2^(dj) a_j^2 a_{j+1}
    for (std::size_t j = 2; j < 12; ++j) EXPECT_NEAR(s.flux(j) / s.flux(1), 1.0, 1e-12);
  }
  auto c = ShellState::zeros(10, 1.0, 0.0);
  for (double& v : c.a) v = 0.4;
  EXPECT_NEAR(shell_steady_slope(c, 1, 8).slope, 0.0, 1e-14);
}

TEST(ShellSlope, WindowChecks) {
  auto s = ShellState::zeros(10, 1.0, 0.0);
  for (std::size_t j = 0; j <= 10; ++j) s.a[j] = std::exp2(-(j / 3.0));
  EXPECT_THROW(shell_steady_slope(s, 2, 5), FitError);
  EXPECT_THROW(shell_steady_slope(s, 2, 11), FitError);
  EXPECT_TRUE(shell_steady_slope(s, 0, 6).flagged);
  s.a[10] = 0.0;
  EXPECT_THROW(shell_steady_slope(s, 5, 10), FitError);
}

TEST(ShellSteady, SlopeMatchesConstantFlux) {
  struct Case {
    double d;
    std::size_t N;
    double nu;
    double t_end;
    std::size_t hi;
  };
  // d = 2 transfers fast enough that the truncation N acts as the dissipation shell
  const Case cases[] = {{0.0, 14, nu_for_shell(0.0, 10), 60.0, 7},
                        {1.0, 20, nu_for_shell(1.0, 15), 6.0, 12},
                        {2.0, 18, 1e-4, 3.0, 12}};
  for (const auto& c : cases) {
    auto s = ShellState::zeros(c.N, c.d, c.nu);
    ShellOptions opt;
    opt.pin_a0 = 1.0;
    const auto tr = shell_evolve(s, c.t_end, opt);
    const auto fit = shell_steady_slope(tr.final_state(), 2, c.hi);
    EXPECT_NEAR(fit.slope, -c.d / 3.0, 0.05) << "d = " << c.d;
    EXPECT_FALSE(fit.flagged) << fit.note;
  }
}
