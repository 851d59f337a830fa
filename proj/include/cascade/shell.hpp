#pragma once

// Desnyanskiy-Novikov dyadic model
//   da_j/dt = -nu 2^(2j) a_j + 2^(d(j-1)) a_{j-1}^2 - 2^(dj) a_j a_{j+1},   j = 0..N,
// with a_{-1} = a_{N+1} = 0. Optional forcing pins a_0 to a constant.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cascade/diagnostics.hpp"
#include "cascade/errors.hpp"

namespace cascade {

struct ShellState {
  std::vector<double> a;  ///< a_0 .. a_N
  double d = 1.0;
  double nu = 0.0;

  std::size_t truncation() const { return a.empty() ? 0 : a.size() - 1; }
  void validate() const {
    if (a.size() < 9) throw DomainError("ShellState: truncation index N must be >= 8");
    if (!(nu >= 0.0)) throw DomainError("ShellState: nu must be nonnegative");
  }
  double energy() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
  }
  /// nu sum 2^(2j) a_j^2
  double dissipation() const {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::ldexp(a[j] * a[j], 2 * static_cast<int>(j));
    return nu * s;
  }
  /// Energy flux out of shell j: 2^(dj) a_j^2 a_{j+1}.
  double flux(std::size_t j) const {
    const double next = j + 1 < a.size() ? a[j + 1] : 0.0;
    return std::exp2(d * static_cast<double>(j)) * a[j] * a[j] * next;
  }

  static ShellState zeros(std::size_t N, double d, double nu) {
    return ShellState{std::vector<double>(N + 1, 0.0), d, nu};
  }
};

namespace detail {
struct ShellCoefficients {
  std::vector<double> nonlinear;  // 2^(dj)
  std::vector<double> viscous;    // nu 2^(2j)
  explicit ShellCoefficients(const ShellState& s) {
    const std::size_t m = s.a.size();
    nonlinear.resize(m);
    viscous.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      nonlinear[j] = std::exp2(s.d * static_cast<double>(j));
      viscous[j] = s.nu * std::ldexp(1.0, 2 * static_cast<int>(j));
    }
  }
};

inline void shell_rhs_into(const ShellCoefficients& c, const std::vector<double>& a,
                           std::vector<double>& out, bool pinned) {
  const std::size_t m = a.size();
  for (std::size_t j = 0; j < m; ++j) {
    const double prev = j > 0 ? c.nonlinear[j - 1] * a[j - 1] * a[j - 1] : 0.0;
    const double next = j + 1 < m ? a[j + 1] : 0.0;
    out[j] = -c.viscous[j] * a[j] + prev - c.nonlinear[j] * a[j] * next;
  }
  if (pinned) out[0] = 0.0;
}
}  // namespace detail

inline std::vector<double> shell_rhs(const ShellState& s) {
  std::vector<double> out(s.a.size());
  detail::shell_rhs_into(detail::ShellCoefficients(s), s.a, out, false);
  return out;
}

/// RK4 stability bound on the stiffest viscous rate (kept slightly inside 2.78).
inline double shell_stiffness_limit(const ShellState& s) {
  if (s.nu == 0.0) return std::numeric_limits<double>::infinity();
  return 2.5 / (s.nu * std::ldexp(1.0, 2 * static_cast<int>(s.truncation())));
}

struct ShellOptions {
  double dt = 0.0;                 ///< 0: half the stiffness limit, at most 1e-3
  std::optional<double> pin_a0;    ///< pins a_0 to this value when set
  double record_interval = 0.0;    ///< 0: record only the endpoints
};

struct ShellTrajectory {
  std::vector<double> times;
  std::vector<double> energy;       ///< sum a_j^2
  std::vector<ShellState> states;   ///< recorded states, same times
  double dt = 0.0;
  std::size_t steps = 0;
  const ShellState& final_state() const { return states.back(); }
};

inline ShellTrajectory shell_evolve(ShellState s, double t_end, const ShellOptions& opt = {}) {
  s.validate();
  if (!(t_end > 0.0)) throw DomainError("shell_evolve: t_end must be positive");
  const double limit = shell_stiffness_limit(s);
  double dt = opt.dt > 0.0 ? opt.dt : std::min(0.5 * limit, 1e-3);
  if (!(dt < limit))
    throw StabilityError("shell_evolve: dt = " + std::to_string(dt) + " exceeds the RK4 stiffness limit " +
                         std::to_string(limit) + "; reduce dt or the truncation N");
  const bool pinned = opt.pin_a0.has_value();
  if (pinned) s.a[0] = *opt.pin_a0;

  const detail::ShellCoefficients coef(s);
  const std::size_t m = s.a.size();
  std::vector<double> k1(m), k2(m), k3(m), k4(m), tmp(m);

  ShellTrajectory tr;
  tr.dt = dt;
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.energy.push_back(s.energy());
    tr.states.push_back(s);
  };
  record(0.0);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  dt = t_end / static_cast<double>(steps);
  tr.dt = dt;
  double next_record = opt.record_interval > 0.0 ? opt.record_interval : t_end * 2.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    auto& a = s.a;
    detail::shell_rhs_into(coef, a, k1, pinned);
    for (std::size_t j = 0; j < m; ++j) tmp[j] = a[j] + 0.5 * dt * k1[j];
    detail::shell_rhs_into(coef, tmp, k2, pinned);
    for (std::size_t j = 0; j < m; ++j) tmp[j] = a[j] + 0.5 * dt * k2[j];
    detail::shell_rhs_into(coef, tmp, k3, pinned);
    for (std::size_t j = 0; j < m; ++j) tmp[j] = a[j] + dt * k3[j];
    detail::shell_rhs_into(coef, tmp, k4, pinned);
    for (std::size_t j = 0; j < m; ++j) a[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    const double t = dt * static_cast<double>(k);
    if (k == steps) {
      record(t_end);
    } else if (t >= next_record - 1e-12 * t_end) {
      record(t);
      next_record += opt.record_interval;
    }
  }
  tr.steps = steps;
  return tr;
}

/// First shell where viscous loss outweighs the transfer to the next shell.
inline std::size_t dissipation_shell(const ShellState& s) {
  for (std::size_t j = 1; j < s.a.size(); ++j) {
    const double next = j + 1 < s.a.size() ? s.a[j + 1] : 0.0;
    if (s.nu * std::ldexp(1.0, 2 * static_cast<int>(j)) >= std::exp2(s.d * static_cast<double>(j)) * next)
      return j;
  }
  return s.truncation();
}

struct ShellSlope {
  double slope = 0.0;      ///< d log2(a_j) / dj
  double intercept = 0.0;  ///< log2 a at j = 0
  double residual = 0.0;
  bool flagged = false;
  std::string note;
};

/// Least-squares slope of log2 a_j against j over [j_lo, j_hi].
inline ShellSlope shell_steady_slope(const ShellState& s, std::size_t j_lo, std::size_t j_hi) {
  if (j_hi < j_lo + 4) throw FitError("shell_steady_slope: window needs j_hi - j_lo >= 4");
  if (j_hi > s.truncation()) throw FitError("shell_steady_slope: window exceeds truncation");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = j_lo; j <= j_hi; ++j) pts.emplace_back(std::exp2(static_cast<double>(j)), s.a[j]);
  // log a vs log 2^j has the same slope as log2 a vs j
  const auto fit = loglog_fit(
      pts, [](const auto& q) { return q.first; }, [](const auto& q) { return q.second; }, 0.0,
      std::numeric_limits<double>::infinity(), 5);
  ShellSlope out;
  out.slope = fit.slope;
  out.intercept = fit.intercept / std::log(2.0);
  out.residual = fit.residual / std::log(2.0);
  if (j_lo == 0) {
    out.flagged = true;
    out.note = "window includes the forced shell j = 0";
  }
  const std::size_t jd = dissipation_shell(s);
  if (j_hi >= jd) {
    out.flagged = true;
    if (!out.note.empty()) out.note += "; ";
    out.note += "window reaches the dissipation shell j = " + std::to_string(jd);
  }
  return out;
}

}  // namespace cascade
