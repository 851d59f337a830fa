#pragma once

#include <cmath>
#include <string>

#include "cascade/errors.hpp"

namespace cascade {

inline constexpr const char* kVersion = "cascade-lab 0.1.0";

inline constexpr double kAlphaMin = 5.0 / 3.0;
inline constexpr double kAlphaMax = 8.0 / 3.0;

/**
 * Parameter tuple of the frequency-space cascade model.
 *
 * Everything is derived from the spectrum exponent alpha:
 *   c     = (alpha - 5/3) / 2      intermittency exponent
 *   D     = 3 - 6c                 intermittency dimension
 *   gamma = 1 / (alpha - 1)        exponent of the xi = kappa^(-1/gamma) map
 *   mu    = nu * epsilon^(-1/3) * gamma / 3
 * Construct through params_from_c / params_from_alpha.
 */
struct ModelParams {
  double c = 0.0;
  double alpha = kAlphaMin;
  double gamma = 1.5;
  double D = 3.0;
  double epsilon = 1.0;
  double nu = 0.0;
  double mu = 0.0;

  bool viscous() const { return nu > 0.0; }

  /// Prefactor epsilon^(1/3) of the boundary value a(1, t).
  double boundary_amplitude() const { return std::cbrt(epsilon); }

  /// Physical time corresponding to a rescaled time in the (xi, w) variables.
  double physical_time(double rescaled) const {
    return rescaled * gamma / (3.0 * std::cbrt(epsilon));
  }
  double rescaled_time(double physical) const {
    return physical * 3.0 * std::cbrt(epsilon) / gamma;
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

namespace detail {
// Rounding slack for alpha computed as 5/3 + 2c in floating point.
inline constexpr double kAlphaSlack = 1e-12;

inline void check_common(double epsilon, double nu) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ParameterError("epsilon must be positive and finite, got " + std::to_string(epsilon));
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw ParameterError("nu must be nonnegative and finite, got " + std::to_string(nu));
}
}  // namespace detail

inline ModelParams params_from_alpha(double alpha, double epsilon, double nu) {
  if (!(alpha >= kAlphaMin - detail::kAlphaSlack && alpha <= kAlphaMax + detail::kAlphaSlack))
    throw ParameterError("alpha must lie in [5/3, 8/3], got " + std::to_string(alpha));
  detail::check_common(epsilon, nu);
  ModelParams p;
  p.alpha = alpha;
  p.c = (alpha - kAlphaMin) / 2.0;
  p.D = 3.0 - 6.0 * p.c;
  p.gamma = 1.0 / (alpha - 1.0);
  p.epsilon = epsilon;
  p.nu = nu;
  p.mu = nu * p.gamma / (3.0 * std::cbrt(epsilon));
  return p;
}

/// Every field is derived from alpha = 5/3 + 2c, so the result equals
/// params_from_alpha(result.alpha, epsilon, nu) exactly.
inline ModelParams params_from_c(double c, double epsilon, double nu) {
  if (!(c >= 0.0 && c <= 0.5))
    throw ParameterError("c must lie in [0, 1/2], got " + std::to_string(c));
  return params_from_alpha(kAlphaMin + 2.0 * c, epsilon, nu);
}

}  // namespace cascade
