// cascade-lab: command line entry point for every experiment.
//
//   cascade_lab <experiment> [--config file.json] [--flag value ...]
//
// Flags override fields of the JSON config; flag names equal the JSON keys.

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cascade/harness.hpp"

namespace {

enum class Kind { Number, Integer, Text, NumberList, IntegerList };

struct Flag {
  const char* name;
  Kind kind;
  const char* help;
};

const std::vector<Flag> kFlags = {
    {"alpha", Kind::Number, "spectral exponent alpha in [5/3, 8/3] (default 2)"},
    {"c", Kind::Number, "intermittency parameter c in [0, 1/2]; alpha = 5/3 + 2c"},
    {"epsilon", Kind::Number, "energy input rate (default 1)"},
    {"nu", Kind::Number, "viscosity (default 1)"},
    {"delta", Kind::Number, "mollifier width (default 0.01)"},
    {"grid-n", Kind::Integer, "cells on [0, 1] (default 4096)"},
    {"t-end", Kind::Number, "final rescaled time (default 1)"},
    {"cfl", Kind::Number, "CFL number in (0, 1) (default 0.9)"},
    {"seed", Kind::Integer, "seed for --profile random (default 1)"},
    {"out", Kind::Text, "output directory (default .)"},
    {"profile", Kind::Text, "zero | one | ramp | random | path to (xi, w0) CSV"},
    {"snapshots", Kind::NumberList, "snapshot times"},
    {"over", Kind::Text, "sweep variable: nu | delta | l2 | grid"},
    {"nu-list", Kind::NumberList, "viscosities for sweeps, decreasing"},
    {"delta-list", Kind::NumberList, "mollifier widths for sweeps"},
    {"grid-list", Kind::IntegerList, "grid sizes for the refinement sweep"},
    {"cells-per-xi-d", Kind::Number, "nu sweep: cells per dissipation length xi_d (0 keeps grid-n)"},
    {"burn-in", Kind::Number, "nu sweep: time excluded from the dissipation average"},
    {"starts", Kind::NumberList, "leray: characteristic start points"},
    {"d", Kind::Number, "shell: intermittency parameter d"},
    {"shells", Kind::Integer, "shell: truncation index N"},
    {"pin", Kind::Number, "shell: value a_0 is pinned to"},
    {"kappa-points", Kind::Integer, "fixed-points: table rows"},
};

nlohmann::json to_json(Kind kind, const std::vector<std::string>& raw, const std::string& name) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw cascade::ConfigError("--" + name + ": '" + s + "' is not a number");
    return v;
  };
  auto integer = [&](const std::string& s) {
    const double v = number(s);
    if (v < 0.0 || v != static_cast<double>(static_cast<unsigned long long>(v)))
      throw cascade::ConfigError("--" + name + ": '" + s + "' is not a nonnegative integer");
    return static_cast<unsigned long long>(v);
  };
  switch (kind) {
    case Kind::Number: return number(raw.back());
    case Kind::Integer: return integer(raw.back());
    case Kind::Text: return raw.back();
    case Kind::NumberList: {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& s : raw) a.push_back(number(s));
      return a;
    }
    case Kind::IntegerList: {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& s : raw) a.push_back(integer(s));
      return a;
    }
  }
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascade-lab: energy cascade model experiments"};
  app.set_version_flag("--version", cascade::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::vector<std::string>> raw;
  std::vector<CLI::App*> subs;
  for (auto e : {cascade::Experiment::FixedPoints, cascade::Experiment::Inviscid, cascade::Experiment::Viscous,
                 cascade::Experiment::Leray, cascade::Experiment::Shell, cascade::Experiment::Sweep}) {
    auto* sub = app.add_subcommand(cascade::to_string(e), std::string("run the ") + cascade::to_string(e) + " experiment");
    sub->add_option("--config", config_path, "JSON config; flags override its fields")->check(CLI::ExistingFile);
    for (const auto& f : kFlags) {
      auto* opt = sub->add_option(std::string("--") + f.name, raw[f.name], f.help);
      if (f.kind == Kind::NumberList || f.kind == Kind::IntegerList) opt->delimiter(',')->expected(1, -1);
      else opt->expected(1);
    }
    subs.push_back(sub);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json j = nlohmann::json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw cascade::ConfigError("config " + config_path + ": " + e.what());
      }
      if (!j.is_object()) throw cascade::ConfigError("config " + config_path + " must be a JSON object");
    }
    for (auto* sub : subs)
      if (sub->parsed()) j["experiment"] = sub->get_name();
    for (const auto& f : kFlags)
      if (!raw[f.name].empty()) j[f.name] = to_json(f.kind, raw[f.name], f.name);

    const auto cfg = cascade::config_from_json(j);
    const auto result = cascade::run(cfg);
    for (const auto& line : result.summary) std::printf("%s\n", line.c_str());
    for (const auto& file : result.files) std::printf("wrote %s\n", file.string().c_str());
    return 0;
  } catch (const cascade::ConfigError& e) {
    std::fprintf(stderr, "cascade_lab: configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cascade_lab: %s\n", e.what());
    return 1;
  }
}
