#pragma once

// Leray-type regularization  w_t = v_delta w_xi - mu xi^(-2 gamma) w,
// v_delta = w * phi_delta, with a one-sided mollifier supported on (-delta, 0).
// Since supp phi_delta lies left of 0, v_delta(xi) averages w over the window
// (xi, xi + delta); w is extended by 1 past xi = 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/fixed_points.hpp"
#include "cascade/lax_oleinik.hpp"
#include "cascade/params.hpp"
#include "cascade/quadrature.hpp"
#include "cascade/solver_core.hpp"

namespace cascade {

namespace detail {

/// Unnormalised bump on r in (0, 1): exp(-1 / (4 r (1 - r))).
/// With r = -s this is exp(1 / ((2s + 1)^2 - 1)) on s in (-1, 0).
inline double raw_bump(double r) {
  if (!(r > 0.0 && r < 1.0)) return 0.0;
  return std::exp(-1.0 / (4.0 * r * (1.0 - r)));
}

/// Normalised unit bump with cumulative tables of mass and first moment.
class BumpTable {
 public:
  static constexpr std::size_t kPanels = 1024;

  BumpTable() : mass_(kPanels + 1, 0.0), moment_(kPanels + 1, 0.0) {
    const double h = 1.0 / kPanels;
    for (std::size_t k = 0; k < kPanels; ++k) {
      const double a = h * k, b = h * (k + 1);
      mass_[k + 1] = mass_[k] + quad::gauss_legendre(raw_bump, a, b);
      moment_[k + 1] = moment_[k] + quad::gauss_legendre([](double r) { return r * raw_bump(r); }, a, b);
    }
    norm_ = 1.0 / mass_.back();
    for (auto& m : mass_) m *= norm_;
    for (auto& m : moment_) m *= norm_;
  }

  double normalization() const { return norm_; }
  double density(double r) const { return norm_ * raw_bump(r); }

  /// \int_0^r phi(r') dr'
  double mass(double r) const { return cumulative(mass_, r, [](double x) { return raw_bump(x); }); }
  /// \int_0^r r' phi(r') dr'
  double moment(double r) const {
    return cumulative(moment_, r, [](double x) { return x * raw_bump(x); });
  }

 private:
  template <class Fn>
  double cumulative(const std::vector<double>& table, double r, Fn f) const {
    if (r <= 0.0) return 0.0;
    if (r >= 1.0) return table.back();
    const double pos = r * kPanels;
    const auto k = static_cast<std::size_t>(pos);
    const double a = static_cast<double>(k) / kPanels;
    return table[k] + norm_ * quad::gauss_legendre(f, a, r);
  }

  std::vector<double> mass_, moment_;
  double norm_ = 1.0;
};

inline const BumpTable& unit_bump() {
  static const BumpTable table;
  return table;
}

}  // namespace detail

/// phi_delta(y) = phi(y / delta) / delta, supported on (-delta, 0), unit mass.
class Mollifier {
 public:
  explicit Mollifier(double delta) : delta_(delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
      throw DomainError("Mollifier: delta must be positive, got " + std::to_string(delta));
    (void)detail::unit_bump();
  }

  double delta() const { return delta_; }

  double operator()(double y) const {
    if (!(y > -delta_ && y < 0.0)) return 0.0;
    return detail::unit_bump().density(-y / delta_) / delta_;
  }

  /// \int_{-u}^0 phi_delta, the kernel mass within distance u to the right.
  double mass_within(double u) const { return detail::unit_bump().mass(u / delta_); }
  /// \int_{-u}^0 (-y) phi_delta(y) dy
  double moment_within(double u) const { return delta_ * detail::unit_bump().moment(u / delta_); }
  double total_mass() const { return mass_within(delta_); }
  /// First moment \int (-y) phi_delta(y) dy = delta m1[phi].
  double first_moment() const { return moment_within(delta_); }

 private:
  double delta_;
};

inline Mollifier make_mollifier(double delta) { return Mollifier(delta); }

/**
 * Discrete convolution weights on a cell-centred grid. w is reconstructed
 * piecewise linearly between centres (ghost centres beyond xi = 1 carry 1),
 * and the kernel is integrated exactly over each sub-interval, so constants
 * and linear functions are reproduced exactly away from xi = 1:
 *   v_i = sum_j weights[j] * w_{i+j}.
 */
class GridKernel {
 public:
  GridKernel(const Mollifier& m, const XiGrid& g) {
    const double h = g.spacing(), d = m.delta();
    if (d < 4.0 * h * (1.0 - 1e-12))
      throw DomainError("GridKernel: delta must be at least 4 grid cells (delta >= 4 dxi)");
    const auto parts = static_cast<std::size_t>(std::ceil(d / h - 1e-12));
    weights_.assign(parts + 1, 0.0);
    for (std::size_t j = 0; j < parts; ++j) {
      const double lo = h * j, hi = std::min(h * (j + 1), d);
      const double a = m.mass_within(hi) - m.mass_within(lo);
      const double b = (m.moment_within(hi) - m.moment_within(lo)) / h - static_cast<double>(j) * a;
      weights_[j] += a - b;
      weights_[j + 1] += b;
    }
  }

  std::span<const double> weights() const { return weights_; }
  std::size_t reach() const { return weights_.size() - 1; }

  /// v = w * phi_delta with w extended by 1 beyond the last cell.
  void apply(std::span<const double> w, std::vector<double>& v) const {
    const std::size_t n = w.size(), m = weights_.size();
    ext_.resize(n + m);
    std::copy(w.begin(), w.end(), ext_.begin());
    std::fill(ext_.begin() + static_cast<std::ptrdiff_t>(n), ext_.end(), 1.0);
    v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      const double* e = ext_.data() + i;
      for (std::size_t j = 0; j < m; ++j) s += weights_[j] * e[j];
      v[i] = s;
    }
  }

 private:
  std::vector<double> weights_;
  mutable std::vector<double> ext_;
};

inline WField mollify(const WField& w, const Mollifier& m) {
  GridKernel k(m, w.grid);
  std::vector<double> v;
  k.apply(w.values, v);
  return WField(w.grid, std::move(v), w.time);
}

// ---------------------------------------------------------------------------
// Fixed point W_delta

inline constexpr double kVelocityCutoff = 1e-14;

/**
 * Tabulates W_delta by marching right to left from W(1) = 1. The equation
 * v_delta W' = mu xi^(-2 gamma) W is integrated in log form with the
 * trapezoidal rule; v_delta at a point only needs W to its right, apart from
 * a tiny self-weight handled by a few fixed-point sweeps. Where v_delta drops
 * below kVelocityCutoff, or W_delta underflows, W_delta is set to zero from
 * there leftward and `cutoff_xi` records the position.
 */
struct RegularizedFixedPoint {
  FixedPoint fixed_point;
  std::optional<double> cutoff_xi;
  WField velocity;  ///< v_delta of the tabulated W_delta
};

inline RegularizedFixedPoint fixed_point_regularized(const ModelParams& p, const Mollifier& m,
                                                     const XiGrid& grid) {
  if (!(p.mu > 0.0)) throw DomainError("fixed_point_regularized: needs mu > 0");
  const GridKernel kernel(m, grid);
  const auto wts = kernel.weights();
  const std::size_t n = grid.size(), reach = kernel.reach();
  const double h = grid.spacing();

  std::vector<double> ext(n + reach + 1, 1.0), vel(n, 0.0);
  RegularizedFixedPoint out;
  auto rate = [&](double xi) { return p.mu * std::pow(xi, -2.0 * p.gamma); };

  // the previous node starts at the boundary xi = 1, where W = 1 and v = 1
  double w_prev = 1.0, v_prev = 1.0, g_prev = rate(1.0), dist = 0.5 * h;
  std::size_t i = n;
  while (i-- > 0) {
    const double xi = grid.center(i);
    const double g = rate(xi);
    double rest = 0.0;
    for (std::size_t j = 1; j < wts.size(); ++j) rest += wts[j] * ext[i + j];
    if (w_prev == 0.0) {
      ext[i] = 0.0;
      vel[i] = rest;
    } else {
      double w = w_prev * std::exp(-dist * g_prev / v_prev);
      double v = wts[0] * w + rest;
      bool cut = false;
      for (int it = 0; it < 4; ++it) {
        v = wts[0] * w + rest;
        if (v < kVelocityCutoff) {
          cut = true;
          break;
        }
        w = w_prev * std::exp(-0.5 * dist * (g_prev / v_prev + g / v));
      }
      cut = cut || w == 0.0;
      if (cut) {
        out.cutoff_xi = xi;
        for (std::size_t k = 0; k <= i; ++k) ext[k] = 0.0;
        vel[i] = rest;
        w_prev = 0.0;
        dist = h;
        continue;
      }
      ext[i] = w;
      vel[i] = v;
      w_prev = w;
      v_prev = v;
      g_prev = g;
    }
    dist = h;
  }
  // velocities left of a cutoff only see zeros plus whatever lies in the window
  kernel.apply(std::span<const double>(ext.data(), n), vel);

  FixedPoint& fp = out.fixed_point;
  fp.kind = FixedPointKind::RegularizedWdelta;
  fp.params = p;
  const auto scale = dissipation_wavenumber(p);
  fp.kappa_d = scale.kappa_d;
  fp.xi_d = scale.xi_d;
  fp.delta = m.delta();
  fp.table = WField(grid, std::vector<double>(ext.begin(), ext.begin() + static_cast<std::ptrdiff_t>(n)));
  out.velocity = WField(grid, std::move(vel));
  return out;
}

// ---------------------------------------------------------------------------
// Time evolution

/// Upwind transport with the mollified velocity frozen over each step.
class MollifiedTransport {
 public:
  MollifiedTransport(const Mollifier& m, const XiGrid& g) : kernel_(m, g) {}

  void prepare(const std::vector<double>& w) { kernel_.apply(w, v_); }
  double max_speed(const std::vector<double>&) const {
    return v_.empty() ? 0.0 : *std::max_element(v_.begin(), v_.end());
  }
  void advect(const std::vector<double>& w, std::vector<double>& out, double lambda) const {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double right = i + 1 < n ? w[i + 1] : 1.0;
      out[i] = w[i] + lambda * v_[i] * (right - w[i]);
    }
  }
  WField velocity(const WField& w) const { return WField(w.grid, v_, w.time); }

 private:
  GridKernel kernel_;
  std::vector<double> v_;
};

/// Regularized evolution; the trajectory carries v_delta at every snapshot.
inline Trajectory evolve_regularized(const WField& w0, const ModelParams& p, const Mollifier& m,
                                     const SolverConfig& cfg) {
  MollifiedTransport adv(m, w0.grid);
  return run_evolution(w0, p, cfg, adv, /*record_velocity=*/true);
}

inline Trajectory evolve_regularized(const InitialProfile& profile, const ModelParams& p,
                                     const Mollifier& m, const SolverConfig& cfg) {
  profile.validate();
  cfg.validate();
  return evolve_regularized(sample_w(XiGrid(cfg.n), profile), p, m, cfg);
}

// ---------------------------------------------------------------------------
// Characteristics  d eta / dt = -v_delta(eta, t)

struct Characteristic {
  double start_xi = 1.0;
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> carried;       ///< w transported by dw/dt = -mu eta^(-2 gamma) w
  std::vector<double> field_values;  ///< interpolated field at (eta(t), t), when available
};

/**
 * Integrates a characteristic through a stored velocity history with the
 * explicit midpoint rule on the history's time grid; v is linear in time
 * between records and linear in xi between centres. A curve that reaches
 * xi = 0 stays there.
 */
inline Characteristic trace_characteristic(std::span<const WField> velocity, const ModelParams& p,
                                           double start_xi, std::span<const WField> fields = {}) {
  if (!(start_xi > 0.0 && start_xi <= 1.0))
    throw DomainError("trace_characteristic: start_xi must lie in (0, 1]");
  if (velocity.empty()) throw DomainError("trace_characteristic: empty velocity history");
  const bool with_field = fields.size() == velocity.size();
  Characteristic c;
  c.start_xi = start_xi;
  double eta = start_xi;
  double carried = with_field ? interpolate(fields[0], eta) : 1.0;
  auto push = [&](std::size_t k) {
    c.times.push_back(velocity[k].time);
    c.positions.push_back(eta);
    c.carried.push_back(carried);
    if (with_field) c.field_values.push_back(interpolate(fields[k], eta));
  };
  push(0);
  for (std::size_t k = 0; k + 1 < velocity.size(); ++k) {
    const double dt = velocity[k + 1].time - velocity[k].time;
    if (eta > 0.0) {
      const double half = eta - 0.5 * dt * interpolate(velocity[k], eta);
      const double mid = std::max(half, 0.0);
      const double v_mid = 0.5 * (interpolate(velocity[k], mid) + interpolate(velocity[k + 1], mid));
      const double next = eta - dt * v_mid;
      if (mid > 0.0) carried *= std::exp(-dt * p.mu * std::pow(mid, -2.0 * p.gamma));
      else carried = 0.0;
      eta = std::max(next, 0.0);
    }
    push(k + 1);
  }
  return c;
}

inline Characteristic trace_characteristic(const Trajectory& traj, const ModelParams& p,
                                           double start_xi) {
  return trace_characteristic(traj.velocity_snapshots, p, start_xi, traj.snapshots);
}

/// True when every pair keeps its initial strict ordering while both are in (0, 1).
inline bool characteristics_ordered(const std::vector<Characteristic>& cs) {
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b) {
      if (!(cs[a].start_xi < cs[b].start_xi)) continue;
      const std::size_t len = std::min(cs[a].positions.size(), cs[b].positions.size());
      for (std::size_t k = 0; k < len; ++k) {
        const double lo = cs[a].positions[k], hi = cs[b].positions[k];
        if (lo > 0.0 && hi < 1.0 && !(lo < hi)) return false;
      }
    }
  return true;
}

}  // namespace cascade
