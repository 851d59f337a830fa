#pragma once

// First-order Godunov solver for the damped Burgers equation
//   w_t = w w_xi - mu xi^(-2 gamma) w,   0 < xi < 1,   w(1, t) = 1,
// written as the conservation law w_t + F(w)_xi = -damping with F(w) = -w^2/2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/fixed_points.hpp"
#include "cascade/lax_oleinik.hpp"
#include "cascade/parallel.hpp"
#include "cascade/params.hpp"
#include "cascade/solver_core.hpp"

namespace cascade {

inline double burgers_flux(double w) { return -0.5 * w * w; }

/// Godunov flux of the concave flux F(w) = -w^2/2 for the Riemann data (wl, wr).
inline double godunov_flux(double wl, double wr) {
  if (wl <= wr) return std::min(burgers_flux(wl), burgers_flux(wr));
  if (wl > 0.0 && wr < 0.0) return 0.0;  // sonic point inside the fan
  return std::max(burgers_flux(wl), burgers_flux(wr));
}

/// dt = cfl dxi / max(w, 1); the floor 1 is the inflow speed at xi = 1.
inline double cfl_dt(const WField& w, const SolverConfig& cfg) {
  return cfg.cfl * w.grid.spacing() / std::max(w.max_value(), 1.0);
}

/// Conservative upwind advection. For w >= 0 every wave speed -w is <= 0, so
/// the Godunov flux at an interface is F(right state); ghost value 1 past xi = 1,
/// zero gradient at xi = 0.
struct BurgersAdvection {
  void prepare(const std::vector<double>&) {}
  double max_speed(const std::vector<double>& w) const {
    return w.empty() ? 0.0 : *std::max_element(w.begin(), w.end());
  }
  void advect(const std::vector<double>& w, std::vector<double>& out, double lambda) const {
    const std::size_t n = w.size();
    double f_left = burgers_flux(w[0]);
    for (std::size_t i = 0; i < n; ++i) {
      const double f_right = burgers_flux(i + 1 < n ? w[i + 1] : 1.0);
      out[i] = w[i] - lambda * (f_right - f_left);
      f_left = f_right;
    }
  }
  WField velocity(const WField& w) const { return w; }
};

/// One advect + damp step. Throws StabilityError when dt violates the CFL bound.
inline WField godunov_step(const WField& w, const ModelParams& p, double dt,
                           double xi_min_clamp = 0.0) {
  const double h = w.grid.spacing();
  const double speed = std::max(w.max_value(), 1.0);
  if (!(dt > 0.0) || dt * speed > h * (1.0 + 1e-12))
    throw StabilityError("godunov_step: dt = " + std::to_string(dt) + " exceeds the CFL bound " +
                         std::to_string(h / speed));
  BurgersAdvection adv;
  std::vector<double> out(w.size());
  adv.advect(w.values, out, dt / h);
  DampingFactors damping(w.grid, p, xi_min_clamp > 0.0 ? xi_min_clamp : 0.5 * h);
  damping.apply(out, dt);
  return WField(w.grid, std::move(out), w.time + dt);
}

inline Trajectory evolve(const WField& w0, const ModelParams& p, const SolverConfig& cfg) {
  BurgersAdvection adv;
  return run_evolution(w0, p, cfg, adv);
}

inline Trajectory evolve(const InitialProfile& profile, const ModelParams& p,
                         const SolverConfig& cfg) {
  profile.validate();
  cfg.validate();
  return evolve(sample_w(XiGrid(cfg.n), profile), p, cfg);
}

// ---------------------------------------------------------------------------
// Dissipation anomaly sweep

struct SweepOptions {
  /// When > 0 every row uses n = ceil(cells_per_xi_d / xi_d) cells, so all
  /// viscosities are compared at the same resolution of the dissipation scale.
  /// When 0 the config's n is used for every row.
  double cells_per_xi_d = 0.0;
  /// A row is resolved when n * xi_d >= resolved_threshold.
  double resolved_threshold = 4.0;
  double burn_in = 2.0;
  std::size_t workers = 0;  ///< 0: worker_count()
};

struct AnomalyRow {
  double nu = 0.0;
  double avg_dissipation = 0.0;
  double kappa_d = 0.0;
  double xi_d = 0.0;
  std::size_t n = 0;
  bool resolved = false;
};

/// Long-time averaged dissipation from w0 = 0 for each viscosity. Rows follow
/// nu_list order; under-resolved rows are flagged, never dropped.
inline std::vector<AnomalyRow> dissipation_anomaly_sweep(const ModelParams& base,
                                                         const std::vector<double>& nu_list,
                                                         const SolverConfig& cfg,
                                                         const SweepOptions& opt = {}) {
  for (std::size_t i = 0; i < nu_list.size(); ++i) {
    if (!(nu_list[i] > 0.0)) throw ConfigError("dissipation_anomaly_sweep: nu must be positive");
    if (i > 0 && !(nu_list[i] < nu_list[i - 1]))
      throw ConfigError("dissipation_anomaly_sweep: nu_list must be decreasing");
  }
  if (!(cfg.t_end > opt.burn_in)) throw ConfigError("dissipation_anomaly_sweep: t_end must exceed burn-in");
  auto run_one = [&](double nu) {
    const ModelParams p = params_from_alpha(base.alpha, base.epsilon, nu);
    const auto scale = dissipation_wavenumber(p);
    SolverConfig c = cfg;
    c.snapshot_times.clear();
    if (opt.cells_per_xi_d > 0.0)
      c.n = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(opt.cells_per_xi_d / scale.xi_d)));
    c.xi_min_clamp = 0.0;
    const auto traj = evolve(InitialProfile::constant(0.0), p, c);
    AnomalyRow row;
    row.nu = nu;
    row.avg_dissipation = time_avg_dissipation(traj, opt.burn_in);
    row.kappa_d = scale.kappa_d;
    row.xi_d = scale.xi_d;
    row.n = c.n;
    row.resolved = static_cast<double>(c.n) * scale.xi_d >= opt.resolved_threshold;
    return row;
  };
  return parallel_map(nu_list, run_one, opt.workers ? opt.workers : worker_count());
}

}  // namespace cascade
