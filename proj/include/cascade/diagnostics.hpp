#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/params.hpp"

namespace cascade {

// ---------------------------------------------------------------------------
// Energy and enstrophy. Both quadratures run in xi-space on the cell centres:
//   |a|^2 = gamma eps^(2/3) \int_0^1 w^2 dxi
//   ||a||^2 = gamma eps^(2/3) \int_0^1 xi^(-2 gamma) w^2 dxi

inline double energy(const WField& w, const ModelParams& p) {
  double s = 0.0;
  for (double v : w.values) s += v * v;
  const double eps23 = std::cbrt(p.epsilon) * std::cbrt(p.epsilon);
  return p.gamma * eps23 * s * w.grid.spacing();
}

inline double energy(const AFieldView& a, const ModelParams& p) { return energy(a_to_w(a, p), p); }

/// Raw midpoint sum \int_0^1 xi^(-2 gamma) w^2 dxi with the weight clamped at xi_min.
inline double weighted_square_integral(const WField& w, double two_gamma, double xi_min = 0.0) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v = w.values[i];
    if (v == 0.0) continue;
    s += std::pow(std::max(w.xi(i), xi_min), -two_gamma) * v * v;
  }
  return s * w.grid.spacing();
}

/**
 * Enstrophy ||a||^2 of a field. With kappa_max set, cells with kappa > kappa_max
 * (xi below kappa_max^(-1/gamma)) are excluded. Without it the integrand must be
 * resolved: if the smallest-xi cell carries more than `resolution_tol` of the
 * total, the integral is treated as divergent (integrand ~ kappa^(2 - alpha)).
 */
inline double enstrophy(const WField& w, const ModelParams& p,
                        std::optional<double> kappa_max = std::nullopt,
                        double resolution_tol = 1e-6) {
  const double eps23 = std::cbrt(p.epsilon) * std::cbrt(p.epsilon);
  const double h = w.grid.spacing();
  const double xi_cut = kappa_max ? kappa_to_xi(*kappa_max, p) : 0.0;
  double s = 0.0, first = 0.0;
  bool seen_first = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double xi = w.xi(i);
    if (xi < xi_cut) continue;
    const double term = std::pow(xi, -2.0 * p.gamma) * w.values[i] * w.values[i] * h;
    if (!seen_first) {
      first = term;
      seen_first = true;
    }
    s += term;
  }
  if (!kappa_max && s > 0.0 && first > resolution_tol * s)
    throw DivergentIntegral(
        "enstrophy: field does not vanish at the finest resolved scale; pass kappa_max");
  return p.gamma * eps23 * s;
}

inline double enstrophy(const AFieldView& a, const ModelParams& p,
                        std::optional<double> kappa_max = std::nullopt) {
  return enstrophy(a_to_w(a, p), p, kappa_max);
}

/// Dissipation rate nu ||a||^2 of a rescaled field: 3 mu eps \int xi^(-2 gamma) w^2.
inline double dissipation_rate(const WField& w, const ModelParams& p, double xi_min = 0.0) {
  if (p.mu == 0.0) return 0.0;
  return 3.0 * p.mu * p.epsilon * weighted_square_integral(w, 2.0 * p.gamma, xi_min);
}

/// Lyapunov functional \int_0^1 xi^2 w^2 dxi.
inline double lyapunov_functional(const WField& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double xi = w.xi(i);
    s += xi * xi * w.values[i] * w.values[i];
  }
  return s * w.grid.spacing();
}

// ---------------------------------------------------------------------------
// Flux and spectrum tables

struct Sample {
  double kappa;
  double value;
};
using Table = std::vector<Sample>;

/// Pi(kappa) = kappa^(3c + 5/2) a^3.
inline Table flux_profile(const AFieldView& a, const ModelParams& p) {
  Table out;
  out.reserve(a.kappas.size());
  const double expo = 3.0 * p.c + 2.5;
  for (std::size_t i = 0; i < a.kappas.size(); ++i) {
    const double v = a.values[i];
    out.push_back({a.kappas[i], std::pow(a.kappas[i], expo) * v * v * v});
  }
  return out;
}

/// E(kappa) = a(kappa)^2.
inline Table spectrum(const AFieldView& a) {
  Table out;
  out.reserve(a.kappas.size());
  for (std::size_t i = 0; i < a.kappas.size(); ++i)
    out.push_back({a.kappas[i], a.values[i] * a.values[i]});
  return out;
}

// ---------------------------------------------------------------------------
// Log-log least squares

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;      ///< natural-log intercept
  double residual = 0.0;       ///< RMS of log residuals
  double x_lo = 0.0, x_hi = 0.0;
  std::size_t count = 0;
};

/// Least-squares line through (log x, log y) for every pair with x in [lo, hi].
template <class Range, class X, class Y>
LogLogFit loglog_fit(const Range& pts, X&& get_x, Y&& get_y, double lo, double hi,
                     std::size_t min_points = 4) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& pt : pts) {
    const double x = get_x(pt), y = get_y(pt);
    if (x < lo || x > hi) continue;
    if (!(x > 0.0) || !(y > 0.0))
      throw FitError("loglog_fit: nonpositive value in the fit window");
    xy.emplace_back(std::log(x), std::log(y));
  }
  if (xy.size() < min_points)
    throw FitError("loglog_fit: " + std::to_string(xy.size()) + " points in window, need " +
                   std::to_string(min_points));
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : xy) mx += x, my += y;
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : xy) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
  if (!(sxx > 0.0)) throw FitError("loglog_fit: degenerate window (all abscissae equal)");
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double r2 = 0.0, xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  for (auto [x, y] : xy) {
    const double r = y - (f.intercept + f.slope * x);
    r2 += r * r;
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  f.residual = std::sqrt(r2 / static_cast<double>(xy.size()));
  f.x_lo = std::exp(xmin);
  f.x_hi = std::exp(xmax);
  f.count = xy.size();
  return f;
}

/// Slope of log E against log kappa over [kappa_lo, kappa_hi].
inline double fit_power_law(const Table& table, double kappa_lo, double kappa_hi) {
  return loglog_fit(
             table, [](const Sample& s) { return s.kappa; }, [](const Sample& s) { return s.value; },
             kappa_lo, kappa_hi)
      .slope;
}

using RateFitResult = LogLogFit;

/// Convergence exponent of error ~ C parameter^exponent from (parameter, error) pairs.
inline RateFitResult fit_convergence_rate(const std::vector<std::pair<double, double>>& pairs) {
  for (auto [x, y] : pairs)
    if (!(x > 0.0) || !(y > 0.0)) throw FitError("fit_convergence_rate: nonpositive value");
  return loglog_fit(
      pairs, [](const auto& q) { return q.first; }, [](const auto& q) { return q.second; },
      0.0, std::numeric_limits<double>::infinity());
}

}  // namespace cascade
