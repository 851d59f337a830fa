#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/params.hpp"

namespace cascade {

/// Uniform cell-centred grid on (0, 1): xi_i = (i + 1/2) / n.
class XiGrid {
 public:
  XiGrid() = default;
  explicit XiGrid(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("XiGrid needs at least one cell");
  }

  std::size_t size() const { return n_; }
  double spacing() const { return 1.0 / static_cast<double>(n_); }
  double center(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(n_);
  }
  std::vector<double> centers() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = center(i);
    return xs;
  }

  friend bool operator==(const XiGrid&, const XiGrid&) = default;

 private:
  std::size_t n_ = 1;
};

/// Rescaled solution w(xi, t) sampled at the cell centres of a XiGrid.
/// The boundary value w(1) = 1 is not stored; solvers supply it as a ghost value.
struct WField {
  XiGrid grid;
  std::vector<double> values;
  double time = 0.0;

  WField() = default;
  WField(XiGrid g, std::vector<double> v, double t = 0.0)
      : grid(g), values(std::move(v)), time(t) {
    if (values.size() != grid.size())
      throw InconsistentFieldError("WField: value count does not match grid size");
  }

  std::size_t size() const { return values.size(); }
  double xi(std::size_t i) const { return grid.center(i); }
  double max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  }
};

/// Physical view a(kappa, t) at strictly increasing wavenumbers starting at kappa = 1.
struct AFieldView {
  std::vector<double> kappas;
  std::vector<double> values;
  double time = 0.0;
};

template <class Fn>
WField sample_w(const XiGrid& grid, Fn&& w_of_xi, double time = 0.0) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = w_of_xi(grid.center(i));
  return WField(grid, std::move(v), time);
}

template <class Fn>
AFieldView sample_a(std::span<const double> kappas, Fn&& a_of_kappa, double time = 0.0) {
  AFieldView view;
  view.kappas.assign(kappas.begin(), kappas.end());
  view.values.reserve(kappas.size());
  for (double k : kappas) view.values.push_back(a_of_kappa(k));
  view.time = time;
  return view;
}

/// n log-spaced wavenumbers on [lo, hi], endpoints included.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw DomainError("log_spaced: need 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

// ---------------------------------------------------------------------------
// Coordinate maps  xi = kappa^(-1/gamma),  w = eps^(-1/3) kappa^(alpha/2) a

inline double kappa_to_xi(double kappa, const ModelParams& p) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa))
    throw DomainError("kappa_to_xi: kappa must be >= 1, got " + std::to_string(kappa));
  return std::pow(kappa, -1.0 / p.gamma);
}

inline double xi_to_kappa(double xi, const ModelParams& p) {
  if (!(xi > 0.0 && xi <= 1.0))
    throw DomainError("xi_to_kappa: xi must lie in (0, 1], got " + std::to_string(xi));
  return std::pow(xi, -p.gamma);
}

/// Pointwise amplitude maps at a given xi.
inline double w_from_a(double a, double xi, const ModelParams& p) {
  return a * std::pow(xi, -p.gamma * p.alpha / 2.0) / p.boundary_amplitude();
}
inline double a_from_w(double w, double xi, const ModelParams& p) {
  return w * std::pow(xi, p.gamma * p.alpha / 2.0) * p.boundary_amplitude();
}

/**
 * Physical view of a rescaled field. The result lists kappa = 1 first with the
 * boundary value eps^(1/3), followed by the mapped cell centres in increasing
 * kappa order (i.e. decreasing xi). Time is converted to physical units.
 */
inline AFieldView w_to_a(const WField& w, const ModelParams& p) {
  const std::size_t n = w.size();
  AFieldView a;
  a.kappas.resize(n + 1);
  a.values.resize(n + 1);
  a.kappas[0] = 1.0;
  a.values[0] = p.boundary_amplitude();
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = n - k;
    const double xi = w.xi(i);
    a.kappas[k] = xi_to_kappa(xi, p);
    a.values[k] = a_from_w(w.values[i], xi, p);
  }
  a.time = p.physical_time(w.time);
  return a;
}

/// Inverse of w_to_a. The view must have the layout w_to_a produces.
inline WField a_to_w(const AFieldView& a, const ModelParams& p, double tol = 1e-10) {
  if (a.kappas.size() != a.values.size() || a.kappas.size() < 2)
    throw InconsistentFieldError("a_to_w: view needs matching kappa/value arrays of length >= 2");
  if (std::abs(a.kappas[0] - 1.0) > tol)
    throw InconsistentFieldError("a_to_w: first wavenumber must be kappa = 1");
  const double a1 = p.boundary_amplitude();
  if (std::abs(a.values[0] - a1) > tol * std::max(1.0, a1))
    throw InconsistentFieldError("a_to_w: boundary value a(1) = " + std::to_string(a.values[0]) +
                                 " differs from epsilon^(1/3) = " + std::to_string(a1));
  const std::size_t n = a.kappas.size() - 1;
  XiGrid grid(n);
  std::vector<double> w(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = n - k;
    const double xi = grid.center(i);
    const double expected = xi_to_kappa(xi, p);
    if (std::abs(a.kappas[k] - expected) > tol * expected)
      throw InconsistentFieldError("a_to_w: wavenumbers do not map onto a uniform xi grid");
    w[i] = w_from_a(a.values[k], xi, p);
  }
  return WField(grid, std::move(w), p.rescaled_time(a.time));
}

/// Linear interpolation of a cell-centred field with w = 1 at xi = 1 and
/// constant extension towards xi = 0.
inline double interpolate(const WField& w, double xi) {
  const std::size_t n = w.size();
  const double h = w.grid.spacing();
  if (xi >= 1.0) return 1.0;
  const double s = xi / h - 0.5;
  if (s <= 0.0) return w.values.front();
  const auto i = static_cast<std::size_t>(s);
  const double theta = s - static_cast<double>(i);
  const double left = w.values[i];
  const double right = i + 1 < n ? w.values[i + 1] : 1.0;
  // beyond the last centre the segment ends at xi = 1, half a cell away
  if (i + 1 >= n) return left + (right - left) * std::min(1.0, 2.0 * theta);
  return left + (right - left) * theta;
}

}  // namespace cascade
