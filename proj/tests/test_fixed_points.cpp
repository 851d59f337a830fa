#include <gtest/gtest.h>

#include <cmath>

#include "cascade/diagnostics.hpp"
#include "cascade/fixed_points.hpp"
#include "cascade/quadrature.hpp"

using namespace cascade;

namespace {

const double kAlphas[] = {5.0 / 3.0, 2.0, 7.0 / 3.0, 8.0 / 3.0};
const double kNus[] = {1.0, 1e-1, 1e-2};

// nu \int_1^kd kappa^2 (A^nu)^2 dkappa expanded into exact power integrals:
// A^nu = kappa^(-alpha/2) (B - C kappa^q), q = 3 - alpha.
double energy_identity_oracle(double alpha, double eps, double nu) {
  const double q = 3.0 - alpha;
  const double C = nu / (3.0 * q), B = std::cbrt(eps) + C;
  const double kd = std::pow(1.0 + 3.0 * q * std::cbrt(eps) / nu, 1.0 / q);
  auto I = [&](double p) { return (std::pow(kd, p + 1.0) - 1.0) / (p + 1.0); };
  const double e = 2.0 - alpha;
  return nu * (B * B * I(e) - 2.0 * B * C * I(e + q) + C * C * I(e + 2.0 * q));
}

}  // namespace

TEST(FixedPoints, InviscidHandValues) {
  EXPECT_DOUBLE_EQ(fixed_point_inviscid(params_from_alpha(2.0, 1.0, 0.0), 1.0), 1.0);
  EXPECT_NEAR(fixed_point_inviscid(params_from_alpha(2.0, 1.0, 0.0), 4.0), 0.25, 1e-15);
  EXPECT_NEAR(fixed_point_inviscid(params_from_alpha(5.0 / 3.0, 8.0, 0.0), 1.0), 2.0, 1e-15);
  EXPECT_THROW(fixed_point_inviscid(params_from_alpha(2.0, 1.0, 0.0), 0.9), DomainError);
}

TEST(FixedPoints, ViscousHandValues) {
  const auto p = params_from_alpha(2.0, 1.0, 1.0);
  EXPECT_NEAR(fixed_point_viscous(p, 2.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(fixed_point_viscous(p, 4.0), 0.0, 1e-15);
  EXPECT_EQ(fixed_point_viscous(p, 5.0), 0.0);
  for (double alpha : kAlphas)
    EXPECT_NEAR(fixed_point_viscous(params_from_alpha(alpha, 5.0, 0.3), 1.0), std::cbrt(5.0), 1e-14);
}

TEST(FixedPoints, InviscidViscosityHasNoCutoff) {
  const auto p = params_from_alpha(2.0, 1.0, 0.0);
  EXPECT_THROW(dissipation_wavenumber(p), InfiniteCutoff);
  EXPECT_THROW(fixed_point_viscous(p, 2.0), InfiniteCutoff);
}

TEST(FixedPoints, DissipationWavenumberHandValues) {
  const auto s = dissipation_wavenumber(params_from_alpha(2.0, 1.0, 1.0));
  EXPECT_NEAR(s.kappa_d, 4.0, 1e-14);
  EXPECT_NEAR(s.xi_d, 0.25, 1e-15);
  EXPECT_NEAR(dissipation_wavenumber(params_from_alpha(2.0, 1.0, 3.0)).kappa_d, 2.0, 1e-14);
}

TEST(FixedPoints, KappaXiCutoffsAgree) {
  for (double alpha : kAlphas)
    for (double nu : {1.0, 1e-1, 1e-2, 1e-4})
      for (double eps : {0.5, 1.0, 3.0}) {
        const auto p = params_from_alpha(alpha, eps, nu);
        const auto s = dissipation_wavenumber(p);
        EXPECT_NEAR(s.kappa_d, std::pow(s.xi_d, -p.gamma), 1e-12 * s.kappa_d);
      }
}

TEST(FixedPoints, K41SmallViscosityAsymptote) {
  // kappa_d / (eps / nu^3)^(1/4) -> 4^(3/4)
  const auto p = params_from_alpha(5.0 / 3.0, 1.0, 1e-8);
  EXPECT_NEAR(dissipation_wavenumber(p).kappa_d / std::pow(1e24, 0.25), std::pow(4.0, 0.75), 1e-5);
}

TEST(FixedPoints, WHandValues) {
  const auto p = params_from_alpha(2.0, 1.0, 1.0);
  ASSERT_NEAR(p.mu, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(fixed_point_w(p, 0.5), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(fixed_point_w(p, 0.25), 0.0, 1e-15);
  EXPECT_EQ(fixed_point_w(p, 0.1), 0.0);
  EXPECT_NEAR(fixed_point_w(p, 1.0), 1.0, 1e-15);
}

TEST(FixedPoints, ViscousMapsToW) {
  for (double alpha : kAlphas)
    for (double nu : kNus) {
      const auto p = params_from_alpha(alpha, 2.0, nu);
      const double kd = dissipation_wavenumber(p).kappa_d;
      for (double t : {0.0, 0.2, 0.5, 0.9, 0.999}) {
        const double kappa = std::pow(kd, t);
        const double xi = kappa_to_xi(kappa, p);
        EXPECT_NEAR(w_from_a(fixed_point_viscous(p, kappa), xi, p), fixed_point_w(p, xi), 1e-12)
            << alpha << " " << nu << " " << kappa;
      }
    }
}

TEST(FixedPoints, OrderingAndContinuity) {
  for (double alpha : kAlphas)
    for (double nu : kNus) {
      const auto p = params_from_alpha(alpha, 1.0, nu);
      const auto s = dissipation_wavenumber(p);
      EXPECT_NEAR(fixed_point_viscous(p, s.kappa_d), 0.0, 1e-12);
      EXPECT_NEAR(fixed_point_w(p, s.xi_d), 0.0, 1e-12);
      EXPECT_EQ(fixed_point_viscous(p, 1.0), fixed_point_inviscid(p, 1.0));
      for (double kappa : log_spaced(1.0 + 1e-6, 10.0 * s.kappa_d, 50))
        EXPECT_LT(fixed_point_viscous(p, kappa), fixed_point_inviscid(p, kappa));
    }
}

TEST(FixedPoints, EnergyIdentityHandCase) {
  const auto p = params_from_alpha(2.0, 1.0, 1.0);
  EXPECT_NEAR(p.nu * fixed_point_enstrophy(p), 1.0, 1e-12);
  EXPECT_NEAR(energy_identity_oracle(2.0, 1.0, 1.0), 1.0, 1e-14);
}

TEST(FixedPoints, EnergyIdentityAgainstExpansion) {
  for (double alpha : kAlphas)
    for (double nu : kNus)
      for (double eps : {1.0, 2.0}) {
        const auto p = params_from_alpha(alpha, eps, nu);
        const double q = p.nu * fixed_point_enstrophy(p);
        EXPECT_NEAR(q, eps, 1e-8 * eps) << alpha << " " << nu;
        EXPECT_NEAR(energy_identity_oracle(alpha, eps, nu), eps, 1e-9 * eps);
      }
}

TEST(FixedPoints, L2DistanceHandCase) {
  const auto d = l2_distance_fixed_points(params_from_alpha(2.0, 1.0, 1.0));
  EXPECT_NEAR(d.tail_sq, 0.25, 1e-15);
  EXPECT_NEAR(d.squared(), 0.25 + (3.75 - 2.0 * std::log(4.0)) / 9.0, 1e-14);
  EXPECT_NEAR(d.squared(), 0.35860, 1e-5);
}

TEST(FixedPoints, L2DistanceAgainstQuadrature) {
  for (double alpha : kAlphas)
    for (double nu : kNus) {
      const auto p = params_from_alpha(alpha, 1.0, nu);
      const double kd = dissipation_wavenumber(p).kappa_d;
      const double bulk = quad::graded(
          [&](double k) {
            const double e = fixed_point_viscous(p, k) - fixed_point_inviscid(p, k);
            return e * e;
          },
          1.0, kd, 400);
      const double tail = std::pow(kd, 1.0 - alpha) / (alpha - 1.0);
      const auto d = l2_distance_fixed_points(p);
      EXPECT_NEAR(d.bulk_sq, bulk, 1e-10 * std::max(bulk, 1e-300)) << alpha << " " << nu;
      EXPECT_NEAR(d.tail_sq, tail, 1e-12 * tail);
    }
}

TEST(FixedPoints, L2DistanceVanishesWithViscosity) {
  double prev = 1e300;
  for (double nu : {1.0, 1e-2, 1e-4, 1e-6, 1e-8}) {
    const double d = l2_distance_fixed_points(params_from_alpha(2.0, 1.0, nu)).squared();
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(FixedPoints, Wrapper) {
  const auto p = params_from_alpha(2.0, 1.0, 1.0);
  const auto f = make_fixed_point(FixedPointKind::ViscousAnu, p);
  ASSERT_TRUE(f.kappa_d.has_value());
  EXPECT_NEAR(*f.kappa_d, 4.0, 1e-14);
  EXPECT_NEAR(f(2.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(make_fixed_point(FixedPointKind::RescaledW, p)(0.5), 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(make_fixed_point(FixedPointKind::InviscidA0, params_from_alpha(2.0, 1.0, 0.0)).kappa_d);
  EXPECT_THROW(make_fixed_point(FixedPointKind::RegularizedWdelta, p), DomainError);
}
