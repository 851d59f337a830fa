#pragma once

// Experiment configuration, orchestration and CSV output for the cascade-lab
// command line tool. Needs nlohmann/json on the include path.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cascade/cascade.hpp"

namespace cascade {

enum class Experiment { FixedPoints, Inviscid, Viscous, Leray, Shell, Sweep };

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::FixedPoints: return "fixed-points";
    case Experiment::Inviscid: return "inviscid";
    case Experiment::Viscous: return "viscous";
    case Experiment::Leray: return "leray";
    case Experiment::Shell: return "shell";
    case Experiment::Sweep: return "sweep";
  }
  return "?";
}

inline Experiment experiment_from_string(const std::string& s) {
  for (auto e : {Experiment::FixedPoints, Experiment::Inviscid, Experiment::Viscous, Experiment::Leray,
                 Experiment::Shell, Experiment::Sweep})
    if (s == to_string(e)) return e;
  throw ConfigError("unknown experiment '" + s + "'");
}

/**
 * Every field has a JSON key identical to its command line flag (without the
 * leading dashes). With neither alpha nor c set, alpha = 2. The resolved
 * values are echoed into every output header.
 */
struct ExperimentConfig {
  Experiment experiment = Experiment::FixedPoints;
  std::optional<double> alpha;
  std::optional<double> c;
  double epsilon = 1.0;
  double nu = 1.0;
  double delta = 0.01;
  std::size_t grid_n = 4096;
  double t_end = 1.0;
  double cfl = 0.9;
  std::uint64_t seed = 1;
  std::string out = ".";
  /// zero | one | ramp | random | path to a two-column (xi, w0) CSV
  std::string profile = "zero";
  std::vector<double> snapshots;
  // sweep
  std::string over = "nu";  ///< nu | delta | l2 | grid
  std::vector<double> nu_list = {1e-1, 1e-2, 1e-3};
  std::vector<double> delta_list = {1e-1, 1e-2, 1e-3};
  std::vector<std::size_t> grid_list = {512, 1024, 2048, 4096};
  double cells_per_xi_d = 6.0;
  double burn_in = 2.0;
  // leray
  std::vector<double> starts = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
  // shell
  double d = 1.0;
  std::size_t shells = 24;
  double pin = 1.0;
  // fixed-points
  std::size_t kappa_points = 200;

  ModelParams params() const {
    if (alpha && c) {
      const auto from_c = params_from_c(*c, epsilon, nu);
      if (std::abs(from_c.alpha - *alpha) > 1e-12)
        throw ConfigError("alpha and c are both set and disagree (alpha = 5/3 + 2c)");
      return from_c;
    }
    if (c) return params_from_c(*c, epsilon, nu);
    return params_from_alpha(alpha.value_or(2.0), epsilon, nu);
  }

  void validate() const {
    try {
      (void)params();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("invalid model parameters: ") + e.what());
    }
    if (!(t_end > 0.0)) throw ConfigError("t-end must be positive");
    if (grid_n < 16) throw ConfigError("grid-n must be >= 16");
    if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    for (double t : snapshots)
      if (t < 0.0 || t > t_end) throw ConfigError("snapshots must lie in [0, t-end]");
    if (experiment == Experiment::Viscous && !(nu > 0.0)) throw ConfigError("viscous needs nu > 0");
    if (experiment == Experiment::Leray && !(nu > 0.0)) throw ConfigError("leray needs nu > 0");
    if (experiment == Experiment::Sweep && over != "nu" && over != "delta" && over != "l2" && over != "grid")
      throw ConfigError("over must be one of nu, delta, l2, grid");
    if (shells < 8) throw ConfigError("shells must be >= 8");
  }
};

namespace detail {
inline const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys = {
      "experiment", "alpha", "c", "epsilon", "nu", "delta", "grid-n", "t-end", "cfl", "seed",
      "out", "profile", "snapshots", "over", "nu-list", "delta-list", "grid-list", "cells-per-xi-d",
      "burn-in", "starts", "d", "shells", "pin", "kappa-points"};
  return keys;
}
}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!detail::config_keys().count(k)) throw ConfigError("unknown config key '" + k + "'");
  ExperimentConfig cfg;
  try {
    if (j.contains("experiment")) cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
    if (j.contains("alpha") && !j.at("alpha").is_null()) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("c") && !j.at("c").is_null()) cfg.c = j.at("c").get<double>();
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("epsilon", cfg.epsilon);
    get("nu", cfg.nu);
    get("delta", cfg.delta);
    get("grid-n", cfg.grid_n);
    get("t-end", cfg.t_end);
    get("cfl", cfg.cfl);
    get("seed", cfg.seed);
    get("out", cfg.out);
    get("profile", cfg.profile);
    get("snapshots", cfg.snapshots);
    get("over", cfg.over);
    get("nu-list", cfg.nu_list);
    get("delta-list", cfg.delta_list);
    get("grid-list", cfg.grid_list);
    get("cells-per-xi-d", cfg.cells_per_xi_d);
    get("burn-in", cfg.burn_in);
    get("starts", cfg.starts);
    get("d", cfg.d);
    get("shells", cfg.shells);
    get("pin", cfg.pin);
    get("kappa-points", cfg.kappa_points);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["experiment"] = to_string(cfg.experiment);
  j["alpha"] = cfg.alpha ? nlohmann::json(*cfg.alpha) : nlohmann::json(nullptr);
  j["c"] = cfg.c ? nlohmann::json(*cfg.c) : nlohmann::json(nullptr);
  j["epsilon"] = cfg.epsilon;
  j["nu"] = cfg.nu;
  j["delta"] = cfg.delta;
  j["grid-n"] = cfg.grid_n;
  j["t-end"] = cfg.t_end;
  j["cfl"] = cfg.cfl;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["profile"] = cfg.profile;
  j["snapshots"] = cfg.snapshots;
  j["over"] = cfg.over;
  j["nu-list"] = cfg.nu_list;
  j["delta-list"] = cfg.delta_list;
  j["grid-list"] = cfg.grid_list;
  j["cells-per-xi-d"] = cfg.cells_per_xi_d;
  j["burn-in"] = cfg.burn_in;
  j["starts"] = cfg.starts;
  j["d"] = cfg.d;
  j["shells"] = cfg.shells;
  j["pin"] = cfg.pin;
  j["kappa-points"] = cfg.kappa_points;
  return j;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Profiles

/// Two-column CSV (xi, w0); '#' lines and a non-numeric first line are skipped.
inline InitialProfile load_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile " + path.string());
  InitialProfile p;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    double x = 0.0, w = 0.0;
    char comma = 0;
    std::istringstream ss(line);
    if (!(ss >> x >> comma >> w) || comma != ',') {
      if (p.breakpoints.empty() && lineno == 1) continue;  // column header
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'xi,w0'");
    }
    p.breakpoints.push_back(x);
    p.values.push_back(w);
  }
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return p;
}

inline InitialProfile resolve_profile(const ExperimentConfig& cfg) {
  if (cfg.profile == "zero") return InitialProfile::constant(0.0);
  if (cfg.profile == "one") return InitialProfile::constant(1.0);
  if (cfg.profile == "ramp") return InitialProfile{{0.0, 1.0}, {0.0, 1.0}};
  if (cfg.profile == "random") {
    std::mt19937_64 rng(cfg.seed);
    return random_profile(rng);
  }
  return load_profile_csv(cfg.profile);
}

// ---------------------------------------------------------------------------
// CSV output

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string describe(const ModelParams& p) {
  std::ostringstream s;
  s << "c=" << format_number(p.c) << " alpha=" << format_number(p.alpha) << " gamma=" << format_number(p.gamma)
    << " D=" << format_number(p.D) << " epsilon=" << format_number(p.epsilon) << " nu=" << format_number(p.nu)
    << " mu=" << format_number(p.mu);
  return s.str();
}

/// Writes '#' header lines (version, parameters, resolved config, extras),
/// a column line, then rows.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const ExperimentConfig& cfg, const ModelParams& p,
            const std::vector<std::string>& columns, const std::vector<std::string>& extra = {})
      : path_(path), out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << "# " << kVersion << "\n";
    out_ << "# experiment: " << to_string(cfg.experiment) << "\n";
    out_ << "# params: " << describe(p) << "\n";
    out_ << "# config: " << config_to_json(cfg).dump() << "\n";
    for (const auto& e : extra) out_ << "# " << e << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
    width_ = columns.size();
  }

  void row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::logic_error("CsvWriter: row width mismatch in " + path_.string());
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << "\n";
  }

  void row(const std::string& label, double value) {
    if (width_ != 2) throw std::logic_error("CsvWriter: labelled rows need two columns in " + path_.string());
    out_ << label << "," << format_number(value) << "\n";
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_ = 0;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  ///< "key = value" lines for the terminal
};

// ---------------------------------------------------------------------------
// Experiments

namespace detail {

inline std::string kv(const std::string& key, double v) { return key + " = " + format_number(v); }

inline std::vector<double> snapshot_times(const ExperimentConfig& cfg, std::size_t count) {
  if (!cfg.snapshots.empty()) return cfg.snapshots;
  std::vector<double> t;
  for (std::size_t k = 0; k <= count; ++k) t.push_back(cfg.t_end * static_cast<double>(k) / static_cast<double>(count));
  return t;
}

inline void write_snapshots(CsvWriter& w, const std::vector<WField>& snaps) {
  for (const auto& f : snaps)
    for (std::size_t i = 0; i < f.size(); ++i) w.row({f.time, f.xi(i), f.values[i]});
}

inline void write_series(CsvWriter& w, const Trajectory& tr) {
  for (std::size_t k = 0; k < tr.series_times.size(); ++k)
    w.row({tr.series_times[k], tr.energy_series[k], tr.dissipation_series[k]});
}

inline RunResult run_fixed_points(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const ModelParams p = cfg.params();
  RunResult r;
  if (!p.viscous()) throw ConfigError("fixed-points needs nu > 0");
  const auto scale = dissipation_wavenumber(p);
  const double enst = fixed_point_enstrophy(p);
  const auto l2 = l2_distance_fixed_points(p);

  const auto kappas = log_spaced(1.0, scale.kappa_d, cfg.kappa_points);
  const auto a0 = sample_a(kappas, [&](double k) { return fixed_point_inviscid(p, k); });
  const auto anu = sample_a(std::span<const double>(kappas.data(), kappas.size() - 1),
                            [&](double k) { return fixed_point_viscous(p, k); });
  const double slope0 = fit_power_law(spectrum(a0), 1.0, scale.kappa_d);
  // only reported once [1, kappa_d / 10] holds enough samples to fit
  std::optional<double> slope_nu;
  try {
    slope_nu = fit_power_law(spectrum(anu), 1.0, scale.kappa_d / 10.0);
  } catch (const FitError&) {
  }

  std::vector<std::string> extra = {kv("kappa_d", scale.kappa_d), kv("xi_d", scale.xi_d),
                                    kv("spectrum_slope_A0", slope0)};
  if (slope_nu) extra.push_back(kv("spectrum_slope_Anu_inertial", *slope_nu));
  CsvWriter table(dir / "fixed_points.csv", cfg, p, {"kappa", "xi", "A0", "Anu", "W", "E0", "Enu", "flux0"}, extra);
  for (double k : kappas) {
    const double xi = kappa_to_xi(k, p);
    const double A0 = fixed_point_inviscid(p, k), An = fixed_point_viscous(p, k);
    table.row({k, xi, A0, An, fixed_point_w(p, xi), A0 * A0, An * An,
               std::pow(k, 3.0 * p.c + 2.5) * A0 * A0 * A0});
  }
  r.files.push_back(table.path());

  CsvWriter sum(dir / "fixed_points_summary.csv", cfg, p, {"quantity", "value"});
  std::vector<std::pair<std::string, double>> items = {
      {"kappa_d", scale.kappa_d},
      {"xi_d", scale.xi_d},
      {"A_nu(2)", fixed_point_viscous(p, 2.0)},
      {"W(0.5)", fixed_point_w(p, 0.5)},
      {"nu*enstrophy", p.nu * enst},
      {"l2_distance_sq", l2.squared()},
      {"spectrum_slope_A0", slope0}};
  if (slope_nu) items.emplace_back("spectrum_slope_Anu_inertial", *slope_nu);
  for (const auto& [key, value] : items) {
    sum.row(key, value);
    r.summary.push_back(kv(key, value));
  }
  r.files.push_back(sum.path());
  return r;
}

inline RunResult run_inviscid(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ModelParams p = cfg.params();
  p = params_from_alpha(p.alpha, p.epsilon, 0.0);
  const auto profile = resolve_profile(cfg);
  const XiGrid g(cfg.grid_n);
  const auto h = hopf_potential(extend_profile(profile));
  RunResult r;
  std::vector<double> times = cfg.snapshots;
  if (times.empty()) times = {0.0, 0.5, 1.0, 1.5, 2.0, 2.05};
  CsvWriter snaps(dir / "inviscid_snapshots.csv", cfg, p, {"t", "xi", "w"});
  for (double t : times) {
    const auto f = lax_oleinik_field(h, profile, g, t);
    for (std::size_t i = 0; i < f.size(); ++i) snaps.row({t, f.xi(i), f.values[i]});
  }
  r.files.push_back(snaps.path());

  const auto rep = verify_attraction(profile, p, g);
  CsvWriter att(dir / "attraction.csv", cfg, p,
                {"rescaled_time", "max_deviation", "initial_deviation", "attraction_time", "physical_attraction_time"});
  att.row({rep.rescaled_time, rep.max_deviation, rep.initial_deviation, rep.attraction_time,
           rep.physical_attraction_time});
  r.files.push_back(att.path());
  r.summary = {kv("max|w(.,2.05)-1|", rep.max_deviation), kv("physical_attraction_time", rep.physical_attraction_time)};
  return r;
}

inline SolverConfig solver_config(const ExperimentConfig& cfg, std::size_t snapshot_count) {
  SolverConfig s;
  s.n = cfg.grid_n;
  s.t_end = cfg.t_end;
  s.cfl = cfg.cfl;
  s.snapshot_times = snapshot_times(cfg, snapshot_count);
  s.series_stride = std::max<std::size_t>(1, cfg.grid_n / 256);
  return s;
}

inline RunResult run_viscous(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const ModelParams p = cfg.params();
  const auto profile = resolve_profile(cfg);
  const auto tr = evolve(profile, p, solver_config(cfg, 10));
  RunResult r;
  CsvWriter snaps(dir / "viscous_snapshots.csv", cfg, p, {"t", "xi", "w"});
  write_snapshots(snaps, tr.snapshots);
  r.files.push_back(snaps.path());
  const double avg = time_avg_dissipation(tr, 0.0);
  CsvWriter series(dir / "viscous_series.csv", cfg, p, {"t", "energy", "dissipation"},
                   {kv("avg_dissipation", avg), kv("steps", static_cast<double>(tr.steps))});
  write_series(series, tr);
  r.files.push_back(series.path());
  r.summary = {kv("avg_dissipation", avg), kv("steps", static_cast<double>(tr.steps))};
  return r;
}

inline RunResult run_leray(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const ModelParams p = cfg.params();
  const Mollifier m(cfg.delta);
  const XiGrid g(cfg.grid_n);
  const auto fp = fixed_point_regularized(p, m, g);
  const auto& table = *fp.fixed_point.table;
  RunResult r;

  double sup_err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.center(i) >= 0.3) sup_err = std::max(sup_err, std::abs(table.values[i] - fixed_point_w(p, g.center(i))));
  std::vector<std::string> extra = {kv("sup_[0.3,1]|W_delta-W|", sup_err),
                                    kv("mollifier_first_moment_over_delta", m.first_moment() / m.delta())};
  if (fp.cutoff_xi) extra.push_back(kv("velocity_cutoff_xi", *fp.cutoff_xi));
  CsvWriter wd(dir / "w_delta.csv", cfg, p, {"xi", "w_delta", "W", "v_delta"}, extra);
  for (std::size_t i = 0; i < g.size(); ++i)
    wd.row({g.center(i), table.values[i], fixed_point_w(p, g.center(i)), fp.velocity.values[i]});
  r.files.push_back(wd.path());

  const auto profile = resolve_profile(cfg);
  const auto tr = evolve_regularized(profile, p, m, solver_config(cfg, 100));
  std::vector<Characteristic> cs;
  for (double s : cfg.starts) cs.push_back(trace_characteristic(tr, p, s));
  const bool ordered = characteristics_ordered(cs);
  CsvWriter ch(dir / "characteristics.csv", cfg, p, {"start", "t", "eta", "w_along"},
               {std::string("characteristics_ordered = ") + (ordered ? "true" : "false")});
  for (const auto& c : cs)
    for (std::size_t k = 0; k < c.times.size(); ++k) ch.row({c.start_xi, c.times[k], c.positions[k], c.carried[k]});
  r.files.push_back(ch.path());

  CsvWriter snaps(dir / "leray_snapshots.csv", cfg, p, {"t", "xi", "w"});
  write_snapshots(snaps, tr.snapshots);
  r.files.push_back(snaps.path());
  CsvWriter series(dir / "leray_series.csv", cfg, p, {"t", "energy", "dissipation"});
  write_series(series, tr);
  r.files.push_back(series.path());
  r.summary = {kv("sup_[0.3,1]|W_delta-W|", sup_err), std::string("characteristics_ordered = ") + (ordered ? "true" : "false")};
  return r;
}

inline RunResult run_shell(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const ModelParams p = cfg.params();
  auto s = ShellState::zeros(cfg.shells, cfg.d, cfg.nu);
  ShellOptions opt;
  opt.pin_a0 = cfg.pin;
  opt.record_interval = cfg.t_end / 100.0;
  const auto tr = shell_evolve(s, cfg.t_end, opt);
  const auto& f = tr.final_state();
  const std::size_t jd = dissipation_shell(f);
  std::vector<std::string> extra = {kv("dissipation_shell", static_cast<double>(jd)), kv("dt", tr.dt),
                                    kv("d", cfg.d), kv("N", static_cast<double>(cfg.shells))};
  std::optional<ShellSlope> slope;
  if (jd >= 7) {
    slope = shell_steady_slope(f, 1, jd - 2);
    extra.push_back(kv("inertial_slope", slope->slope));
    extra.push_back(kv("inertial_slope_expected", -cfg.d / 3.0));
    if (slope->flagged) extra.push_back("slope_note = " + slope->note);
  }
  RunResult r;
  CsvWriter sp(dir / "shell_spectrum.csv", cfg, p, {"j", "a_j", "k_j", "a_j2_over_k_j"}, extra);
  for (std::size_t j = 0; j < f.a.size(); ++j) {
    const double k = std::ldexp(1.0, static_cast<int>(j));
    sp.row({static_cast<double>(j), f.a[j], k, f.a[j] * f.a[j] / k});
  }
  r.files.push_back(sp.path());
  CsvWriter en(dir / "shell_energy.csv", cfg, p, {"t", "energy"});
  for (std::size_t k = 0; k < tr.times.size(); ++k) en.row({tr.times[k], tr.energy[k]});
  r.files.push_back(en.path());
  r.summary = {kv("dissipation_shell", static_cast<double>(jd))};
  if (slope) r.summary.push_back(kv("inertial_slope", slope->slope));
  return r;
}

inline RunResult run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const ModelParams base = cfg.params();
  RunResult r;
  if (cfg.over == "nu") {
    SolverConfig s;
    s.n = cfg.grid_n;
    s.t_end = cfg.t_end;
    s.cfl = cfg.cfl;
    s.series_stride = 4;
    SweepOptions opt;
    opt.cells_per_xi_d = cfg.cells_per_xi_d;
    opt.burn_in = cfg.burn_in;
    const auto rows = dissipation_anomaly_sweep(base, cfg.nu_list, s, opt);
    CsvWriter w(dir / "sweep_nu.csv", cfg, base, {"nu", "avg_dissipation", "kappa_d", "resolved", "n", "xi_d"},
                {kv("epsilon", base.epsilon)});
    for (const auto& row : rows) {
      w.row({row.nu, row.avg_dissipation, row.kappa_d, row.resolved ? 1.0 : 0.0, static_cast<double>(row.n), row.xi_d});
      r.summary.push_back(kv("avg_dissipation(nu=" + format_number(row.nu) + ")", row.avg_dissipation));
    }
    r.files.push_back(w.path());
  } else if (cfg.over == "delta") {
    const XiGrid g(cfg.grid_n);
    auto one = [&](double delta) {
      const auto fp = fixed_point_regularized(base, Mollifier(delta), g);
      double sup_err = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g.center(i) >= 0.3)
          sup_err = std::max(sup_err, std::abs(fp.fixed_point.table->values[i] - fixed_point_w(base, g.center(i))));
      return std::pair{sup_err, interpolate(*fp.fixed_point.table, 0.5)};
    };
    const auto res = parallel_map(cfg.delta_list, one);
    std::vector<std::string> extra;
    if (cfg.delta_list.size() >= 4) {
      std::vector<std::pair<double, double>> pairs;
      for (std::size_t i = 0; i < res.size(); ++i) pairs.emplace_back(cfg.delta_list[i], res[i].first);
      const auto fit = fit_convergence_rate(pairs);
      extra = {kv("rate_exponent", fit.slope), kv("rate_residual", fit.residual)};
    }
    CsvWriter w(dir / "sweep_delta.csv", cfg, base, {"delta", "sup_err", "w_delta_at_half"}, extra);
    for (std::size_t i = 0; i < res.size(); ++i) w.row({cfg.delta_list[i], res[i].first, res[i].second});
    r.files.push_back(w.path());
  } else if (cfg.over == "l2") {
    std::vector<std::pair<double, double>> pairs;
    std::vector<L2Distance> ds;
    for (double nu : cfg.nu_list) {
      ds.push_back(l2_distance_fixed_points(params_from_alpha(base.alpha, base.epsilon, nu)));
      pairs.emplace_back(nu, ds.back().squared());
    }
    const auto fit = fit_convergence_rate(pairs);
    const double derived = std::min(2.0, (base.alpha - 1.0) / (3.0 - base.alpha));
    CsvWriter w(dir / "l2_rates.csv", cfg, base, {"nu", "l2_distance_sq", "tail_sq", "bulk_sq"},
                {kv("rate_exponent", fit.slope), kv("rate_intercept", fit.intercept),
                 kv("rate_residual", fit.residual), kv("rate_expected", derived)});
    for (std::size_t i = 0; i < ds.size(); ++i) w.row({cfg.nu_list[i], ds[i].squared(), ds[i].tail_sq, ds[i].bulk_sq});
    r.files.push_back(w.path());
    r.summary = {kv("rate_exponent", fit.slope), kv("rate_expected", derived)};
  } else {
    const ModelParams p = params_from_alpha(base.alpha, base.epsilon, 0.0);
    const auto profile = resolve_profile(cfg);
    const auto h = hopf_potential(extend_profile(profile));
    auto one = [&](std::size_t n) {
      SolverConfig s;
      s.n = n;
      s.t_end = cfg.t_end;
      s.cfl = cfg.cfl;
      const auto w = evolve(profile, p, s).snapshots.back();
      double l1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) l1 += std::abs(w.values[i] - lax_oleinik_eval(h, w.xi(i), cfg.t_end));
      return l1 / static_cast<double>(n);
    };
    const auto errs = parallel_map(cfg.grid_list, one);
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < errs.size(); ++i) pairs.emplace_back(1.0 / static_cast<double>(cfg.grid_list[i]), errs[i]);
    std::vector<std::string> extra;
    if (pairs.size() >= 4) {
      const auto fit = fit_convergence_rate(pairs);
      extra = {kv("order", fit.slope), kv("order_residual", fit.residual)};
      r.summary.push_back(kv("order", fit.slope));
    }
    CsvWriter w(dir / "sweep_grid.csv", cfg, p, {"n", "dxi", "l1_error"}, extra);
    for (std::size_t i = 0; i < errs.size(); ++i)
      w.row({static_cast<double>(cfg.grid_list[i]), pairs[i].first, errs[i]});
    r.files.push_back(w.path());
  }
  return r;
}

}  // namespace detail

/// Runs one experiment and writes its CSV files into cfg.out.
inline RunResult run(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) throw ConfigError("output directory " + dir.string() + " is not usable");
  try {
    switch (cfg.experiment) {
      case Experiment::FixedPoints: return detail::run_fixed_points(cfg, dir);
      case Experiment::Inviscid: return detail::run_inviscid(cfg, dir);
      case Experiment::Viscous: return detail::run_viscous(cfg, dir);
      case Experiment::Leray: return detail::run_leray(cfg, dir);
      case Experiment::Shell: return detail::run_shell(cfg, dir);
      case Experiment::Sweep: return detail::run_sweep(cfg, dir);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(to_string(cfg.experiment)) + ": " + e.what());
  }
  return {};
}

}  // namespace cascade
