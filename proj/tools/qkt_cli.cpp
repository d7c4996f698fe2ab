// Command-line driver for the kicked-top experiments.
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qkt/config.hpp"
#include "qkt/experiments.hpp"
#include "qkt/table.hpp"

namespace {

struct Flag {
  const char* option;
  const char* key;
};

// Command-line spellings of the config keys; every subcommand takes all of them.
constexpr Flag kFlags[] = {
    {"--qubits", "qubits"},       {"--p", "p"},
    {"--k", "k"},                 {"--k-min", "k_min"},
    {"--k-max", "k_max"},         {"--k-step", "k_step"},
    {"--kicks", "kicks"},         {"--theta", "theta"},
    {"--phi", "phi"},             {"--scan-axis", "scan_axis"},
    {"--scan-min", "scan_min"},   {"--scan-max", "scan_max"},
    {"--scan-points", "scan_points"}, {"--L", "L"},
    {"--omega-grid", "omega_grid"}, {"--grid", "grid"},
    {"--transient", "transient"}, {"--record", "record"},
    {"--displacement", "displacement"}, {"--seeds", "seeds"},
    {"--iterates", "iterates"},   {"--workers", "workers"},
    {"--out", "out"},
};

std::string help_for(const std::string& key) {
  for (const auto& k : qkt::config_keys())
    if (k.name == key) return std::string(k.help);
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum kicked top experiments: bifurcations, scars and entanglement"};
  app.require_subcommand(1);

  const std::map<std::string, std::string> descriptions{
      {"bifurcation", "classical bifurcation diagram (k,theta,phi)"},
      {"scar-scan", "scar located per k and its entanglement"},
      {"kick-evolve", "entanglement of the pole coherent states after n kicks"},
      {"branch-scan", "entanglement along a theta or phi scan at fixed k"},
      {"husimi", "Husimi map of the located scar and its spectral density"},
      {"portrait", "classical phase-space trajectories"},
  };

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool average = false;

  for (const auto& [name, desc] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "key = value config file; flags override it");
    for (const Flag& f : kFlags) {
      const std::string key = f.key;
      sub->add_option_function<std::string>(
          f.option, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help_for(key));
    }
    sub->add_flag("--average", average, help_for("average"));
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    qkt::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = qkt::load_config(config_path, cfg);
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    if (average) cfg.average = true;
    if (cfg.out.empty()) cfg.out = command + ".csv";

    if (command == "bifurcation") {
      qkt::write_table(qkt::run_bifurcation(cfg), cfg.out);
    } else if (command == "scar-scan") {
      qkt::write_table(qkt::run_scar_scan(cfg), cfg.out);
    } else if (command == "kick-evolve") {
      qkt::write_table(qkt::run_kick_evolution(cfg), cfg.out);
    } else if (command == "branch-scan") {
      qkt::write_table(qkt::run_branch_scan(cfg), cfg.out);
    } else if (command == "husimi") {
      const auto tables = qkt::run_husimi(cfg);
      qkt::write_table(tables.husimi, cfg.out);
      qkt::write_table(tables.spectrum, qkt::spectrum_path(cfg.out));
    } else if (command == "portrait") {
      qkt::write_table(qkt::run_portrait(cfg), cfg.out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qkt %s: %s\n", command.c_str(), e.what());
    return 1;
  }
  return 0;
}
