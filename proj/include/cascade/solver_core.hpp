#pragma once

// Time-stepping skeleton shared by the damped Burgers and the regularized
// solvers: an advection substep supplied by a policy, followed by the exact
// damping factor exp(-mu xi^(-2 gamma) dt) in every cell.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cascade/diagnostics.hpp"
#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/params.hpp"

namespace cascade {

struct SolverConfig {
  double cfl = 0.9;
  std::size_t n = 4096;
  double t_end = 1.0;
  std::vector<double> snapshot_times;  ///< empty: final state only
  double xi_min_clamp = 0.0;           ///< 0 selects the first cell centre
  std::size_t series_stride = 1;       ///< record energy/dissipation every k steps

  double clamp() const { return xi_min_clamp > 0.0 ? xi_min_clamp : 0.5 / static_cast<double>(n); }

  void validate() const {
    if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("SolverConfig: cfl must lie in (0, 1)");
    if (n < 16) throw ConfigError("SolverConfig: need n >= 16 cells");
    if (!(t_end >= 0.0)) throw ConfigError("SolverConfig: t_end must be nonnegative");
    if (xi_min_clamp != 0.0 && xi_min_clamp < 0.5 / static_cast<double>(n) * (1.0 - 1e-12))
      throw ConfigError("SolverConfig: xi_min_clamp must be >= dxi / 2");
    if (series_stride == 0) throw ConfigError("SolverConfig: series_stride must be >= 1");
    for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
      if (snapshot_times[i] < 0.0 || snapshot_times[i] > t_end)
        throw ConfigError("SolverConfig: snapshot times must lie in [0, t_end]");
      if (i > 0 && !(snapshot_times[i] > snapshot_times[i - 1]))
        throw ConfigError("SolverConfig: snapshot times must be strictly increasing");
    }
  }
};

/// Snapshots of w plus time series in physical units (energy |a|^2 and
/// dissipation nu ||a||^2). Series times are rescaled times.
struct Trajectory {
  std::vector<WField> snapshots;
  std::vector<WField> velocity_snapshots;  ///< regularized runs only, same times as snapshots
  std::vector<double> series_times;
  std::vector<double> energy_series;
  std::vector<double> dissipation_series;
  std::size_t steps = 0;
};

/// Exact per-cell damping factors for a fixed dt, recomputed only when dt changes.
class DampingFactors {
 public:
  DampingFactors(const XiGrid& g, const ModelParams& p, double clamp) : rate_(g.size()) {
    for (std::size_t i = 0; i < g.size(); ++i)
      rate_[i] = p.mu == 0.0 ? 0.0 : p.mu * std::pow(std::max(g.center(i), clamp), -2.0 * p.gamma);
    factor_.resize(g.size(), 1.0);
  }

  void apply(std::vector<double>& w, double dt) {
    if (dt != dt_) {
      for (std::size_t i = 0; i < rate_.size(); ++i) factor_[i] = std::exp(-rate_[i] * dt);
      dt_ = dt;
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= factor_[i];
  }

 private:
  std::vector<double> rate_, factor_;
  double dt_ = -1.0;
};

/**
 * Runs `advection` + exact damping from w0 to config.t_end.
 *
 * Advection policy interface:
 *   void prepare(const std::vector<double>& w);      // once per step, before max_speed
 *   double max_speed(const std::vector<double>& w);  // bound on the wave speeds
 *   void advect(const std::vector<double>& w, std::vector<double>& out, double dt_over_h);
 *   WField velocity(const WField& w);                // optional diagnostics (may be empty)
 */
template <class Advection>
Trajectory run_evolution(const WField& w0, const ModelParams& p, const SolverConfig& cfg,
                         Advection& advection, bool record_velocity = false) {
  cfg.validate();
  if (w0.size() != cfg.n) throw ConfigError("run_evolution: initial field size differs from config n");
  for (double v : w0.values)
    if (!(v >= 0.0)) throw DomainError("run_evolution: initial field must be nonnegative");

  const XiGrid& grid = w0.grid;
  const double h = grid.spacing();
  const double clamp = cfg.clamp();
  DampingFactors damping(grid, p, clamp);

  Trajectory traj;
  std::vector<double> w = w0.values, next(w.size());
  double t = 0.0;
  std::size_t snap = 0;

  // Same sums as energy() and dissipation_rate(), with the weights cached.
  std::vector<double> weight(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    weight[i] = std::pow(std::max(grid.center(i), clamp), -2.0 * p.gamma);
  const double eps23 = std::cbrt(p.epsilon) * std::cbrt(p.epsilon);
  auto record_series = [&] {
    double e = 0.0, d = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double w2 = w[i] * w[i];
      e += w2;
      d += weight[i] * w2;
    }
    traj.series_times.push_back(t);
    traj.energy_series.push_back(p.gamma * eps23 * e * h);
    traj.dissipation_series.push_back(p.mu == 0.0 ? 0.0 : 3.0 * p.mu * p.epsilon * d * h);
  };
  auto record_snapshots = [&] {
    while (snap < cfg.snapshot_times.size() && cfg.snapshot_times[snap] <= t) {
      WField f(grid, w, t);
      if (record_velocity) {
        advection.prepare(w);
        traj.velocity_snapshots.push_back(advection.velocity(f));
      }
      traj.snapshots.push_back(std::move(f));
      ++snap;
    }
  };

  record_series();
  record_snapshots();
  std::size_t since_series = 0;
  while (t < cfg.t_end) {
    advection.prepare(w);
    double dt = cfg.cfl * h / std::max(advection.max_speed(w), 1.0);
    double target = cfg.t_end;
    if (snap < cfg.snapshot_times.size()) target = std::min(target, cfg.snapshot_times[snap]);
    bool hit = false;
    if (t + dt >= target) {
      dt = target - t;
      hit = true;
    }
    advection.advect(w, next, dt / h);
    damping.apply(next, dt);
    w.swap(next);
    t = hit ? target : t + dt;
    ++traj.steps;
    if (++since_series >= cfg.series_stride || t >= cfg.t_end) {
      record_series();
      since_series = 0;
    }
    record_snapshots();
  }
  if (cfg.snapshot_times.empty()) {
    WField f(grid, w, t);
    if (record_velocity) {
      advection.prepare(w);
      traj.velocity_snapshots.push_back(advection.velocity(f));
    }
    traj.snapshots.push_back(std::move(f));
  }
  return traj;
}

/// Trapezoidal average of nu ||a||^2 over series samples with t >= burn_in.
inline double time_avg_dissipation(const Trajectory& traj, double burn_in = 0.0) {
  double acc = 0.0, t0 = 0.0, tprev = 0.0, dprev = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < traj.series_times.size(); ++k) {
    const double t = traj.series_times[k], d = traj.dissipation_series[k];
    if (t < burn_in) continue;
    if (used == 0) t0 = t;
    else acc += 0.5 * (d + dprev) * (t - tprev);
    tprev = t;
    dprev = d;
    ++used;
  }
  if (used < 2 || !(tprev > t0))
    throw DomainError("time_avg_dissipation: need >= 2 dissipation samples after burn-in");
  return acc / (tprev - t0);
}

}  // namespace cascade
