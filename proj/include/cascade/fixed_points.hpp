#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/params.hpp"
#include "cascade/quadrature.hpp"

namespace cascade {

/// Steady state of the inviscid model, A0(kappa) = eps^(1/3) kappa^(-alpha/2).
inline double fixed_point_inviscid(const ModelParams& p, double kappa) {
  if (!(kappa >= 1.0)) throw DomainError("fixed_point_inviscid: kappa must be >= 1");
  return p.boundary_amplitude() * std::pow(kappa, -p.alpha / 2.0);
}

struct DissipationScale {
  double kappa_d;  ///< dissipation wavenumber
  double xi_d;     ///< its image under xi = kappa^(-1/gamma)
};

/// Closed-form dissipation cutoff, computed independently in kappa and in xi.
inline DissipationScale dissipation_wavenumber(const ModelParams& p) {
  if (!p.viscous()) throw InfiniteCutoff("dissipation_wavenumber: nu = 0 has no finite cutoff");
  const double q = 3.0 - p.alpha;
  const double kappa_d = std::pow(1.0 + 3.0 * q * p.boundary_amplitude() / p.nu, 1.0 / q);
  const double s = 2.0 * p.gamma - 1.0;
  const double xi_d = std::pow(1.0 + s / p.mu, -1.0 / s);
  return {kappa_d, xi_d};
}

/// Steady state of the viscous model; identically zero beyond kappa_d.
inline double fixed_point_viscous(const ModelParams& p, double kappa) {
  if (!p.viscous())
    throw InfiniteCutoff("fixed_point_viscous: nu = 0, use fixed_point_inviscid");
  if (!(kappa >= 1.0)) throw DomainError("fixed_point_viscous: kappa must be >= 1");
  const double kd = dissipation_wavenumber(p).kappa_d;
  if (kappa >= kd) return 0.0;
  const double q = 3.0 - p.alpha;
  const double bracket =
      p.boundary_amplitude() + p.nu / (3.0 * q) * -std::expm1(q * std::log(kappa));
  return std::max(0.0, std::pow(kappa, -p.alpha / 2.0) * bracket);
}

/// Steady state W(xi) of the damped Burgers equation; zero on [0, xi_d].
inline double fixed_point_w(const ModelParams& p, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("fixed_point_w: xi must lie in [0, 1]");
  if (!p.viscous()) throw InfiniteCutoff("fixed_point_w: nu = 0, the inviscid fixed point is w = 1");
  const double xd = dissipation_wavenumber(p).xi_d;
  if (xi <= xd) return 0.0;
  const double s = 2.0 * p.gamma - 1.0;
  // 1 + mu/s (1 - xi^(-s))
  return std::max(0.0, 1.0 + p.mu / s * -std::expm1(-s * std::log(xi)));
}

enum class FixedPointKind { InviscidA0, ViscousAnu, RescaledW, RegularizedWdelta };

inline const char* to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::InviscidA0: return "A0";
    case FixedPointKind::ViscousAnu: return "Anu";
    case FixedPointKind::RescaledW: return "W";
    case FixedPointKind::RegularizedWdelta: return "Wdelta";
  }
  return "?";
}

/**
 * A steady state of one of the model variants. Closed-form kinds evaluate
 * directly; RegularizedWdelta carries its tabulated values. A-kinds take a
 * wavenumber argument, W-kinds take xi.
 */
struct FixedPoint {
  FixedPointKind kind = FixedPointKind::InviscidA0;
  ModelParams params;
  std::optional<double> kappa_d;
  std::optional<double> xi_d;
  std::optional<WField> table;
  double delta = 0.0;  // RegularizedWdelta only

  double operator()(double x) const {
    switch (kind) {
      case FixedPointKind::InviscidA0: return fixed_point_inviscid(params, x);
      case FixedPointKind::ViscousAnu: return fixed_point_viscous(params, x);
      case FixedPointKind::RescaledW: return fixed_point_w(params, x);
      case FixedPointKind::RegularizedWdelta:
        if (!table) throw InconsistentFieldError("W_delta fixed point has no table");
        return interpolate(*table, x);
    }
    return 0.0;
  }
};

inline FixedPoint make_fixed_point(FixedPointKind kind, const ModelParams& p) {
  if (kind == FixedPointKind::RegularizedWdelta)
    throw DomainError("make_fixed_point: W_delta is tabulated, see fixed_point_regularized");
  FixedPoint fp;
  fp.kind = kind;
  fp.params = p;
  if (kind != FixedPointKind::InviscidA0) {
    const auto s = dissipation_wavenumber(p);
    fp.kappa_d = s.kappa_d;
    fp.xi_d = s.xi_d;
  }
  return fp;
}

/// Enstrophy ||A^nu||^2 = gamma eps^(2/3) \int_{xi_d}^1 xi^(-2 gamma) W^2 dxi,
/// by graded Gauss-Legendre quadrature on the support of W.
inline double fixed_point_enstrophy(const ModelParams& p, std::size_t panels = 400) {
  const double xd = dissipation_wavenumber(p).xi_d;
  auto integrand = [&](double xi) {
    const double w = fixed_point_w(p, xi);
    return std::pow(xi, -2.0 * p.gamma) * w * w;
  };
  const double eps23 = std::cbrt(p.epsilon) * std::cbrt(p.epsilon);
  return p.gamma * eps23 * quad::graded(integrand, xd, 1.0, panels);
}

struct L2Distance {
  double tail_sq = 0.0;  ///< eps^(2/3) \int_{kappa_d}^inf kappa^-alpha
  double bulk_sq = 0.0;  ///< contribution of [1, kappa_d]
  double squared() const { return tail_sq + bulk_sq; }
  double norm() const { return std::sqrt(squared()); }
};

/// ||A^nu - A0|| in L^2([1, inf)) from exact antiderivatives of both pieces.
inline L2Distance l2_distance_fixed_points(const ModelParams& p) {
  const double kd = dissipation_wavenumber(p).kappa_d;
  const double a = p.alpha, q = 3.0 - a;
  const double eps23 = std::cbrt(p.epsilon) * std::cbrt(p.epsilon);
  L2Distance d;
  d.tail_sq = eps23 * quad::power_tail(-a, kd);
  // kappa^-a (1 - kappa^q)^2 = kappa^-a - 2 kappa^(q-a) + kappa^(2q-a)
  const double poly = quad::power_integral(-a, 1.0, kd) -
                      2.0 * quad::power_integral(q - a, 1.0, kd) +
                      quad::power_integral(2.0 * q - a, 1.0, kd);
  d.bulk_sq = p.nu * p.nu / (9.0 * q * q) * poly;
  return d;
}

}  // namespace cascade
