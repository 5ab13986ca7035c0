#pragma once

// Time integration of the Galerkin system
//
//     dc_m/dt = −ν λ_m c_m − N_m(c) + f_m(t),
//
// with an integrating-factor RK4 scheme, trajectory recording and the
// closed-form Stokes reference.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gns/basis.hpp"
#include "gns/field.hpp"
#include "gns/nonlinear.hpp"

namespace gns {

enum class ForcingKind { Zero, ExponentialDecay, Constant };

/// Which coefficients the forcing acts on. The pattern is normalized to unit
/// Euclidean norm, so ‖f(t)‖ = amplitude · e^{−rate·t}.
struct ForcingPattern {
  enum class Kind { Mode, Shell } kind = Kind::Mode;
  int value = 0;  ///< basis index for Mode, |k|² for Shell
};

struct ForcingSpec {
  ForcingKind kind = ForcingKind::Zero;
  double amplitude = 0.0;
  double rate = 0.0;
  ForcingPattern pattern;
};

/// "zero", "exp:A:RATE:PATTERN", "constant:A:PATTERN" with PATTERN "mode=J" or "shell=S".
ForcingSpec parse_forcing(const std::string& text);
std::string to_string(const ForcingSpec& spec);

/// Forcing resolved against a basis.
class ForcingSchedule {
 public:
  ForcingSchedule() = default;
  ForcingSchedule(ForcingSpec spec, const BasisSet& basis);
  ForcingSchedule(ForcingSpec spec, CoefficientVector unit_pattern);

  const ForcingSpec& spec() const noexcept { return spec_; }
  ForcingKind kind() const noexcept { return spec_.kind; }
  const CoefficientVector& pattern() const noexcept { return pattern_; }

  double magnitude(double t) const;  ///< amplitude · time profile
  double magnitude_rate(double t) const;  ///< d/dt of magnitude
  double norm(double t) const;       ///< ‖f(t)‖
  CoefficientVector at(double t) const;
  void add_to(std::vector<double>& rhs, double t) const;

  /// True when sup_t ∫₀ᵗ‖f‖ds is finite on the infinite horizon.
  bool satisfies_assumption_A() const;
  /// Closed form of sup_t ∫₀ᵗ‖f‖ds as t → ∞ (infinity for constant forcing).
  double accumulation_bound() const;

 private:
  ForcingSpec spec_;
  CoefficientVector pattern_;
};

struct ScenarioConfig {
  std::string id = "scenario";
  double nu = 1.0;
  double horizon = 1.0;
  double dt = 1e-3;
  int cutoff = 1;
  InitialConditionSpec initial = TaylorGreenSpec{};
  ForcingSpec forcing;
  int stride = 1;
  std::uint64_t seed = 0;
  bool nonlinear = true;
  bool dump_states = true;

  /// Throws ConfigError on a violated invariant (ν > 0, 0 < dt ≤ T, stride ≥ 1, cutoff ≥ 1).
  void validate() const;
};

/// Everything a run needs, with basis and tensor shareable across runs.
struct Problem {
  std::shared_ptr<const BasisSet> basis;
  std::shared_ptr<const TriadTensor> tensor;  ///< null when the nonlinearity is disabled
  CoefficientVector initial;
  ForcingSchedule forcing;
  double nu = 1.0;
  double horizon = 1.0;
  double dt = 1e-3;
  int stride = 1;
  double dealias = 2.0;
};

Problem make_problem(const ScenarioConfig& config);
Problem make_problem(const ScenarioConfig& config, std::shared_ptr<const BasisSet> basis,
                     std::shared_ptr<const TriadTensor> tensor);

struct Diagnostics {
  double energy = 0.0;         ///< E = ‖u‖²
  double grad2 = 0.0;          ///< ‖∇u‖²
  double l4 = 0.0;             ///< ‖u‖_{L⁴}
  double int_grad2 = 0.0;      ///< ∫₀ᵗ‖∇u‖²
  double int_forcing = 0.0;    ///< ∫₀ᵗ‖f‖
  double int_grad4 = 0.0;      ///< ∫₀ᵗ‖∇u‖⁴
  double int_work = 0.0;       ///< ∫₀ᵗ(f, u)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CoefficientVector> states;  ///< may be empty when loaded without a state dump
  std::vector<Diagnostics> diagnostics;

  std::size_t samples() const noexcept { return times.size(); }
};

/// Non-finite state. Carries the failure time and the samples recorded so far.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double time, Trajectory partial);
  double time() const noexcept { return time_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  double time_;
  Trajectory partial_;
};

/// Integrating-factor RK4 for one problem. The viscous part is integrated
/// exactly through exp(−νλ_m h); the remainder by classical RK4 in the
/// transformed variable.
class Stepper {
 public:
  explicit Stepper(const Problem& problem);
  /// Throws DivergenceError (empty partial trajectory) if the result is non-finite.
  CoefficientVector step(const CoefficientVector& c, double t, double dt) const;

 private:
  void rhs(const CoefficientVector& c, double t, std::vector<double>& out) const;

  const Problem* problem_;
  std::vector<double> decay_rate_;  // ν λ_m
};

/// One step from c at time t (convenience wrapper around Stepper).
CoefficientVector step(const Problem& problem, const CoefficientVector& c, double t, double dt);

/// dc/dt = −νλc − N(c) + f(t).
CoefficientVector time_derivative(const Problem& problem, const CoefficientVector& c, double t);
/// d²c/dt² along the flow, given c and dc/dt.
CoefficientVector second_time_derivative(const Problem& problem, const CoefficientVector& c,
                                         const CoefficientVector& c_dot, double t);

/// Running time integrals of ‖∇u‖², ‖f‖, ‖∇u‖⁴ and (f, u). Each step uses the
/// trapezoid rule with the h²/12 endpoint-derivative correction, so the
/// accumulated quadrature error is O(h⁴).
class TrajectoryRecorder {
 public:
  explicit TrajectoryRecorder(const Problem& problem, bool keep_states = true);
  /// Advance the integrals to (t, c); append a sample when `sample` is set.
  void observe(double t, const CoefficientVector& c, bool sample);
  void record(double t, const CoefficientVector& c) { observe(t, c, true); }
  Trajectory& trajectory() noexcept { return traj_; }
  Trajectory take() { return std::move(traj_); }

 private:
  struct Integrands {
    double value[4];
    double rate[4];
  };
  Integrands integrands(double t, const CoefficientVector& c, double& grad2) const;

  const Problem* problem_;
  GridTransform l4_transform_;
  bool keep_states_;
  Trajectory traj_;
  bool started_ = false;
  double last_t_ = 0.0;
  Integrands last_{};
  double integral_[4] = {0.0, 0.0, 0.0, 0.0};
};

/// Sample times of the fixed-step march: every `stride` steps plus T.
std::vector<double> sample_times(double horizon, double dt, int stride);

Trajectory simulate(const Problem& problem);
Trajectory simulate(const ScenarioConfig& config);

/// Closed-form solution of the linear (Stokes) system on the same samples.
/// Supports zero forcing and single-mode exponential-decay forcing.
Trajectory stokes_oracle(const Problem& problem);
Trajectory stokes_oracle(const ScenarioConfig& config);

struct ConvergenceRow {
  int cutoff = 0;
  std::size_t modes = 0;
  std::vector<double> low_modes;           ///< final coefficients on the low-mode set
  std::optional<double> difference;        ///< ‖low(this) − low(previous)‖
};

struct ConvergenceTable {
  std::vector<ModeIndex> low_modes;  ///< modes of the smallest cutoff
  std::vector<ConvergenceRow> rows;
};

/// Runs the scenario at each cutoff from initial data and forcing built at the
/// smallest cutoff and embedded into the larger bases.
ConvergenceTable refine_study(const ScenarioConfig& base, const std::vector<int>& cutoffs);

}  // namespace gns
