#include "qkt/experiments.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "qkt/classical.hpp"
#include "qkt/entanglement.hpp"
#include "qkt/error.hpp"
#include "qkt/floquet.hpp"
#include "qkt/parallel.hpp"

namespace qkt {

namespace {

using std::numbers::pi;

constexpr SphereAngles kSouthPole{pi / 2, -pi / 2};
constexpr SphereAngles kNorthPole{pi / 2, pi / 2};

std::vector<double> quantum_k_grid(const ExperimentConfig& cfg) {
  return k_grid(cfg.k_min, cfg.k_max, cfg.resolved_k_step(kQuantumKStep));
}

// Runs `what` and tags any library failure with the k that caused it.
template <typename F>
auto at_k(double k, F&& what) {
  try {
    return what();
  } catch (const Error& e) {
    throw Error("k=" + format_real(k) + ": " + e.what());
  }
}

// Entanglement of the state after n kicks, or its mean over kicks 1..n.
template <typename Measure>
auto evolved_measure(const StateVector& start, const FloquetSpectrum& spec, const SpinSystem& sys, int n,
                     bool average, Measure&& measure) {
  if (!average || n == 0) return measure(propagate(start, spec, n), sys);
  auto acc = measure(propagate(start, spec, 1), sys);
  for (int step = 2; step <= n; ++step) {
    const auto m = measure(propagate(start, spec, step), sys);
    acc.first += m.first;
    acc.second += m.second;
  }
  acc.first /= n;
  acc.second /= n;
  return acc;
}

}  // namespace

const std::vector<Column>& bifurcation_columns() {
  static const std::vector<Column> c{{"k"}, {"theta"}, {"phi"}};
  return c;
}

const std::vector<Column>& scar_scan_columns() {
  static const std::vector<Column> c{{"k"}, {"omega_peak"}, {"state_index", ColumnKind::Integer},
                                     {"quasi_energy"}, {"husimi_overlap"}, {"Q"}, {"negativity"}, {"eof"}};
  return c;
}

const std::vector<Column>& kick_evolution_columns() {
  static const std::vector<Column> c{{"k"}, {"pole", ColumnKind::Text}, {"Q"}, {"eof"}};
  return c;
}

const std::vector<Column>& branch_scan_columns() {
  static const std::vector<Column> c{{"k"}, {"theta"}, {"phi"}, {"Q"}, {"negativity"}};
  return c;
}

const std::vector<Column>& husimi_columns() {
  static const std::vector<Column> c{{"theta"}, {"phi"}, {"value"}};
  return c;
}

const std::vector<Column>& spectrum_columns() {
  static const std::vector<Column> c{{"omega"}, {"magnitude"}};
  return c;
}

const std::vector<Column>& portrait_columns() {
  static const std::vector<Column> c{{"k"}, {"traj_id", ColumnKind::Integer}, {"step", ColumnKind::Integer},
                                     {"theta"}, {"phi"}};
  return c;
}

Table run_bifurcation(const ExperimentConfig& cfg) {
  cfg.validate();
  BifurcationScanOptions opts;
  opts.k_min = cfg.k_min;
  opts.k_max = cfg.k_max;
  opts.k_step = cfg.resolved_k_step(kClassicalKStep);
  opts.seed = SpherePoint::from_angles(cfg.theta, cfg.phi);
  opts.displacement = cfg.displacement;
  opts.transient = cfg.transient;
  opts.record = cfg.record;
  opts.workers = cfg.workers;

  Table t(bifurcation_columns());
  for (const auto& s : bifurcation_scan(opts)) t.add_row({s.k, s.theta, s.phi});
  return t;
}

Table run_scar_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  check_sphere_angles(cfg.theta, cfg.phi);
  const SpinSystem sys(cfg.n_qubits);
  const auto ks = quantum_k_grid(cfg);

  struct Row {
    ScarRecord scar;
    EntanglementReport ent;
  };
  std::vector<Row> rows(ks.size());
  parallel_for(ks.size(), cfg.workers, [&](std::size_t i) {
    at_k(ks[i], [&] {
      const ScarAnalysis a =
          analyze_scar(sys, KickStrength(ks[i]), cfg.p, {cfg.theta, cfg.phi}, cfg.L, cfg.omega_grid);
      rows[i] = {a.record, entanglement_report(a.spectrum.state(a.record.state_index), sys)};
      return 0;
    });
  });

  Table t(scar_scan_columns());
  for (const auto& r : rows) {
    t.add_row({r.scar.k, r.scar.omega_peak, static_cast<long long>(r.scar.state_index), r.scar.quasi_energy,
               r.scar.husimi_overlap, r.ent.q, r.ent.negativity, r.ent.eof});
  }
  return t;
}

Table run_kick_evolution(const ExperimentConfig& cfg) {
  cfg.validate();
  const SpinSystem sys(cfg.n_qubits);
  const auto ks = quantum_k_grid(cfg);
  const StateVector south = coherent_state(sys, kSouthPole.theta, kSouthPole.phi);
  const StateVector north = coherent_state(sys, kNorthPole.theta, kNorthPole.phi);
  auto measure = [](const StateVector& s, const SpinSystem& sy) {
    const TwoQubitRDM rho12 = reduce_two_qubit(s, sy);
    return std::pair{bipartite_q(trace_out_second(rho12)), entanglement_of_formation(rho12)};
  };

  std::vector<std::array<std::pair<double, double>, 2>> rows(ks.size());
  parallel_for(ks.size(), cfg.workers, [&](std::size_t i) {
    at_k(ks[i], [&] {
      const FloquetSpectrum spec = diagonalize(build_floquet(sys, KickStrength(ks[i]), cfg.p));
      rows[i][0] = evolved_measure(south, spec, sys, cfg.n_kicks, cfg.average, measure);
      rows[i][1] = evolved_measure(north, spec, sys, cfg.n_kicks, cfg.average, measure);
      return 0;
    });
  });

  Table t(kick_evolution_columns());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    t.add_row({ks[i], std::string("south"), rows[i][0].first, rows[i][0].second});
    t.add_row({ks[i], std::string("north"), rows[i][1].first, rows[i][1].second});
  }
  return t;
}

std::vector<double> scan_grid(const ExperimentConfig& cfg) {
  const bool theta_axis = cfg.scan_axis == ScanAxis::Theta;
  const double lo = cfg.scan_min.value_or(theta_axis ? 0.0 : -pi);
  const double hi = cfg.scan_max.value_or(pi);
  if (!(lo < hi)) throw ConfigError("scan_min must be below scan_max");
  std::vector<double> grid(static_cast<std::size_t>(cfg.scan_points));
  const double step = (hi - lo) / (cfg.scan_points - 1);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = lo + static_cast<double>(i) * step;
  grid.back() = hi;
  return grid;
}

Table run_branch_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const SpinSystem sys(cfg.n_qubits);
  const auto ks = quantum_k_grid(cfg);
  const auto angles = scan_grid(cfg);
  const bool theta_axis = cfg.scan_axis == ScanAxis::Theta;
  for (double a : angles) {
    if (theta_axis) check_sphere_angles(a, cfg.phi);
    else check_sphere_angles(cfg.theta, a);
  }
  auto measure = [](const StateVector& s, const SpinSystem& sy) {
    const TwoQubitRDM rho12 = reduce_two_qubit(s, sy);
    return std::pair{bipartite_q(trace_out_second(rho12)), negativity(rho12)};
  };

  std::vector<FloquetSpectrum> spectra;
  spectra.reserve(ks.size());
  for (double k : ks) spectra.push_back(at_k(k, [&] { return diagonalize(build_floquet(sys, KickStrength(k), cfg.p)); }));

  const std::size_t per_k = angles.size();
  std::vector<std::pair<double, double>> values(ks.size() * per_k);
  parallel_for(values.size(), cfg.workers, [&](std::size_t idx) {
    const std::size_t ik = idx / per_k;
    const double a = angles[idx % per_k];
    const StateVector start =
        theta_axis ? coherent_state(sys, a, cfg.phi) : coherent_state(sys, cfg.theta, a);
    values[idx] = evolved_measure(start, spectra[ik], sys, cfg.n_kicks, cfg.average, measure);
  });

  Table t(branch_scan_columns());
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const double a = angles[idx % per_k];
    t.add_row({ks[idx / per_k], theta_axis ? a : cfg.theta, theta_axis ? cfg.phi : a, values[idx].first,
               values[idx].second});
  }
  return t;
}

HusimiTables run_husimi(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto ks = quantum_k_grid(cfg);
  if (ks.size() != 1) throw ConfigError("husimi needs a single k (use --k)");
  const SpinSystem sys(cfg.n_qubits);
  const ScarAnalysis a = at_k(ks[0], [&] {
    return analyze_scar(sys, KickStrength(ks[0]), cfg.p, {cfg.theta, cfg.phi}, cfg.L, cfg.omega_grid);
  });

  HusimiTables out{Table(husimi_columns()), Table(spectrum_columns())};
  for (const auto& s : husimi_map(a.spectrum.state(a.record.state_index), sys, cfg.grid_theta, cfg.grid_phi)) {
    out.husimi.add_row({s.theta, s.phi, s.value});
  }
  for (std::size_t i = 0; i < a.density.omegas.size(); ++i) {
    out.spectrum.add_row({a.density.omegas[i], a.density.magnitudes[i]});
  }
  return out;
}

Table run_portrait(const ExperimentConfig& cfg) {
  cfg.validate();
  check_sphere_angles(0.0, cfg.phi);
  const auto ks = k_grid(cfg.k_min, cfg.k_max, cfg.resolved_k_step(kQuantumKStep));
  const auto n_seeds = static_cast<std::size_t>(cfg.seeds);
  std::vector<std::vector<SpherePoint>> paths(ks.size() * n_seeds);
  parallel_for(ks.size(), cfg.workers, [&](std::size_t ik) {
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const double theta = (static_cast<double>(s) + 0.5) * pi / static_cast<double>(n_seeds);
      paths[ik * n_seeds + s] = trajectory(SpherePoint::from_angles(theta, cfg.phi), KickStrength(ks[ik]), cfg.iterates);
    }
  });

  Table t(portrait_columns());
  for (std::size_t idx = 0; idx < paths.size(); ++idx) {
    for (std::size_t step = 0; step < paths[idx].size(); ++step) {
      const SphereAngles a = paths[idx][step].angles();
      t.add_row({ks[idx / n_seeds], static_cast<long long>(idx % n_seeds), static_cast<long long>(step), a.theta,
                 a.phi});
    }
  }
  return t;
}

std::filesystem::path spectrum_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  const std::string stem = p.stem().string();
  return p.replace_filename(stem + "_spectrum.csv");
}

}  // namespace qkt
