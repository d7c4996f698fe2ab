#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qkt/config.hpp"
#include "qkt/table.hpp"

namespace qkt {

// Column layouts of the experiment outputs.
const std::vector<Column>& bifurcation_columns();   // k,theta,phi
const std::vector<Column>& scar_scan_columns();     // k,omega_peak,state_index,quasi_energy,husimi_overlap,Q,negativity,eof
const std::vector<Column>& kick_evolution_columns();  // k,pole,Q,eof
const std::vector<Column>& branch_scan_columns();   // k,theta,phi,Q,negativity
const std::vector<Column>& husimi_columns();        // theta,phi,value
const std::vector<Column>& spectrum_columns();      // omega,magnitude
const std::vector<Column>& portrait_columns();      // k,traj_id,step,theta,phi

inline constexpr double kQuantumKStep = 0.1;
inline constexpr double kClassicalKStep = 0.01;

/// Classical bifurcation diagram from the (theta, phi) seed.
Table run_bifurcation(const ExperimentConfig& cfg);

/// Per k: locate the scar under the coherent state at (theta, phi) and
/// evaluate Q, negativity and entanglement of formation of that eigenstate.
Table run_scar_scan(const ExperimentConfig& cfg);

/// Per k: evolve the south (pi/2, -pi/2) and north (pi/2, pi/2) coherent
/// states for n_kicks periods and evaluate Q and eof.
Table run_kick_evolution(const ExperimentConfig& cfg);

/// Per k and scan angle: evolve the coherent state for n_kicks periods and
/// evaluate Q and negativity. The other angle is held at cfg.theta / cfg.phi.
Table run_branch_scan(const ExperimentConfig& cfg);

struct HusimiTables {
  Table husimi;
  Table spectrum;
};

/// Husimi map of the located scar and the spectral density it came from.
/// Requires a single k.
HusimiTables run_husimi(const ExperimentConfig& cfg);

/// Classical trajectories from `seeds` points on a theta grid at fixed phi.
Table run_portrait(const ExperimentConfig& cfg);

/// Angles of a branch scan: scan_points values spanning [scan_min, scan_max].
std::vector<double> scan_grid(const ExperimentConfig& cfg);

/// Second output path of the husimi subcommand: foo.csv -> foo_spectrum.csv.
std::filesystem::path spectrum_path(const std::filesystem::path& out);

}  // namespace qkt
