#pragma once

// CSV and JSON artifacts: trajectories, state dumps, reports, separation
// series and convergence tables. Floating-point values are written with 17
// significant digits so that reading them back is exact.

#include <iosfwd>
#include <string>
#include <vector>

#include "gns/integrator.hpp"
#include "gns/verifier.hpp"

namespace gns {

/// Header `t,E,gradE,l4,int_grad2,int_f,int_grad4`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Header `t,j,c_j`, one row per (sample, mode).
void write_states_csv(std::ostream& out, const Trajectory& traj);

/// Diagnostics only (no states, int_work left at 0). Throws ConfigError with
/// the 1-based line number of a malformed row.
Trajectory read_trajectory_csv(std::istream& in);

/// Attaches states from a `t,j,c_j` dump. Each sample must list modes
/// 0..n−1 in order at the trajectory's sample times; otherwise ConfigError
/// (malformed rows) or DimensionError (wrong mode count for the basis).
void read_states_csv(std::istream& in, const BasisSet& basis, Trajectory& traj);

/// Recomputes the ∫(f, u) accumulator from recorded states (corrected
/// trapezoid on the samples).
void accumulate_work(Trajectory& traj, const Problem& problem);

std::string reports_to_json(const std::vector<BoundReport>& reports);

/// Header `t,phi,envelope,ratio`.
void write_separation_csv(std::ostream& out, const SeparationSeries& series);

/// Header `cutoff,n,difference,c_0,...,c_{L-1}` over the low-mode set.
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

/// Header `j,kx,ky,kz,pol,parity,lambda`.
void write_basis_csv(std::ostream& out, const BasisSet& basis);

std::string format_double(double v);

}  // namespace gns
