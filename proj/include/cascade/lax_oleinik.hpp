#pragma once

// Exact entropy solution of  w_t = w w_xi  on the whole line via the
// Lax-Oleinik formula, for piecewise-linear data on [0, 1] extended by 0 on
// the left and by 1 on the right.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/params.hpp"

namespace cascade {

/// Piecewise-linear initial datum w0 >= 0 on [0, 1].
struct InitialProfile {
  std::vector<double> breakpoints;
  std::vector<double> values;

  void validate() const {
    if (breakpoints.size() != values.size() || breakpoints.size() < 2)
      throw DomainError("InitialProfile: need >= 2 matching breakpoints/values");
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
      throw DomainError("InitialProfile: breakpoints must span [0, 1]");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > breakpoints[i - 1]))
        throw DomainError("InitialProfile: breakpoints must be strictly increasing");
    for (double v : values)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError("InitialProfile: values must be finite and nonnegative");
  }

  /// Linear interpolation on [0, 1].
  double operator()(double xi) const {
    if (xi <= 0.0) return values.front();
    if (xi >= 1.0) return values.back();
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), xi);
    const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    const double th = (xi - breakpoints[k]) / (breakpoints[k + 1] - breakpoints[k]);
    return values[k] + (values[k + 1] - values[k]) * th;
  }

  double sup() const { return *std::max_element(values.begin(), values.end()); }

  static InitialProfile constant(double v) { return {{0.0, 1.0}, {v, v}}; }
  static InitialProfile from_function(std::size_t segments, auto&& fn) {
    InitialProfile p;
    for (std::size_t i = 0; i <= segments; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(segments);
      p.breakpoints.push_back(x);
      p.values.push_back(fn(x));
    }
    p.breakpoints.back() = 1.0;
    return p;
  }
};

/// Random piecewise-linear profile with values uniform in [lo, hi].
inline InitialProfile random_profile(std::mt19937_64& rng, std::size_t interior_points = 6,
                                     double lo = 0.0, double hi = 2.0) {
  std::uniform_real_distribution<double> pos(0.0, 1.0), val(lo, hi);
  InitialProfile p;
  p.breakpoints.push_back(0.0);
  std::vector<double> inner(interior_points);
  for (double& x : inner) x = pos(rng);
  std::sort(inner.begin(), inner.end());
  for (double x : inner)
    if (x > p.breakpoints.back() + 1e-9 && x < 1.0 - 1e-9) p.breakpoints.push_back(x);
  p.breakpoints.push_back(1.0);
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) p.values.push_back(val(rng));
  return p;
}

/// The datum extended to the real line: 0 for xi < 0, w0 on [0, 1], 1 for xi > 1.
struct ExtendedProfile {
  InitialProfile core;

  double operator()(double xi) const {
    if (xi < 0.0) return 0.0;
    if (xi > 1.0) return 1.0;
    return core(xi);
  }
};

inline ExtendedProfile extend_profile(const InitialProfile& p) {
  p.validate();
  return ExtendedProfile{p};
}

/**
 * h(y) = \int_0^y (extended w0), stored piecewise: zero for y <= 0, a quadratic on
 * each profile segment, and h(1) + (y - 1) for y >= 1.
 */
class HopfPotential {
 public:
  explicit HopfPotential(const ExtendedProfile& ext) : x_(ext.core.breakpoints) {
    const auto& v = ext.core.values;
    const std::size_t m = x_.size() - 1;
    base_.resize(m);
    slope_.resize(m);
    value_.resize(m);
    cum_.assign(m + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double len = x_[k + 1] - x_[k];
      value_[k] = v[k];
      slope_[k] = (v[k + 1] - v[k]) / len;
      base_[k] = cum_[k];
      cum_[k + 1] = cum_[k] + 0.5 * (v[k] + v[k + 1]) * len;
    }
  }

  double operator()(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return cum_.back() + (y - 1.0);
    const auto it = std::upper_bound(x_.begin(), x_.end(), y);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - x_.begin()) - 1,
                                                 segments() - 1);
    return piece(k, y);
  }

  double total() const { return cum_.back(); }
  std::size_t segments() const { return x_.size() - 1; }
  double left(std::size_t k) const { return x_[k]; }
  double right(std::size_t k) const { return x_[k + 1]; }
  /// w0 and its slope on segment k.
  double value(std::size_t k) const { return value_[k]; }
  double slope(std::size_t k) const { return slope_[k]; }
  double piece(std::size_t k, double y) const {
    const double u = y - x_[k];
    return base_[k] + value_[k] * u + 0.5 * slope_[k] * u * u;
  }

 private:
  std::vector<double> x_, base_, slope_, value_, cum_;
};

inline HopfPotential hopf_potential(const ExtendedProfile& ext) { return HopfPotential(ext); }

/**
 * Global minimiser of f(y) = (xi - y)^2 / (2t) - h(y).
 *
 * f is piecewise quadratic, so the candidates are the piece endpoints and the
 * stationary points of the convex pieces. When several candidates attain the
 * minimum (up to rounding) the smallest y is returned.
 */
inline double lax_oleinik_minimizer(const HopfPotential& h, double xi, double t) {
  if (!(t > 0.0)) throw DomainError("lax_oleinik_minimizer: t must be positive");
  const auto f = [&](double y, double hy) { return (xi - y) * (xi - y) / (2.0 * t) - hy; };

  struct Cand {
    double y, f;
  };
  std::vector<Cand> cands;
  cands.reserve(2 * h.segments() + 4);

  // y <= 0: h = 0
  {
    const double y = std::min(xi, 0.0);
    cands.push_back({y, f(y, 0.0)});
  }
  // profile segments
  for (std::size_t k = 0; k < h.segments(); ++k) {
    const double a = h.left(k), b = h.right(k);
    cands.push_back({a, f(a, h.piece(k, a))});
    const double curv = 1.0 - t * h.slope(k);  // t * f''
    if (curv > 0.0) {
      const double y = (xi + t * h.value(k) - t * h.slope(k) * a) / curv;
      if (y > a && y < b) cands.push_back({y, f(y, h.piece(k, y))});
    }
  }
  // y >= 1: h = h(1) + (y - 1)
  {
    const double y = std::max(xi + t, 1.0);
    cands.push_back({y, f(y, h.total() + (y - 1.0))});
  }

  double fmin = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (const auto& c : cands) {
    fmin = std::min(fmin, c.f);
    scale = std::max(scale, std::abs(c.f));
  }
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + scale);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands)
    if (c.f <= fmin + tol) best = std::min(best, c.y);
  return best;
}

/// w(xi, t) = (y* - xi) / t.
inline double lax_oleinik_eval(const HopfPotential& h, double xi, double t) {
  const double y = lax_oleinik_minimizer(h, xi, t);
  return std::max(0.0, (y - xi) / t);
}

/// Exact solution sampled on a grid (t = 0 returns the profile itself).
inline WField lax_oleinik_field(const HopfPotential& h, const InitialProfile& p, const XiGrid& g,
                                double t) {
  if (t == 0.0) return sample_w(g, p, 0.0);
  return sample_w(g, [&](double xi) { return lax_oleinik_eval(h, xi, t); }, t);
}

struct AttractionReport {
  double rescaled_time = 0.0;       ///< evaluation time (2 + margin)
  double max_deviation = 0.0;       ///< max_i |w(xi_i, t) - 1|
  double initial_deviation = 0.0;   ///< max_i |w0(xi_i) - 1|
  double attraction_time = 2.0;     ///< rescaled bound after which w = 1
  double physical_attraction_time = 0.0;  ///< (2/3) eps^(-1/3) gamma
  bool attracted_at_start() const { return initial_deviation == 0.0; }
};

/// Evaluates the exact solution at t = 2 + margin on the whole grid and
/// reports the distance to the fixed point w = 1.
inline AttractionReport verify_attraction(const InitialProfile& profile, const ModelParams& p,
                                          const XiGrid& grid, double margin = 0.05) {
  const auto h = hopf_potential(extend_profile(profile));
  AttractionReport r;
  r.rescaled_time = 2.0 + margin;
  r.physical_attraction_time = p.physical_time(2.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid.center(i);
    r.max_deviation = std::max(r.max_deviation, std::abs(lax_oleinik_eval(h, xi, r.rescaled_time) - 1.0));
    r.initial_deviation = std::max(r.initial_deviation, std::abs(profile(xi) - 1.0));
  }
  return r;
}

}  // namespace cascade
