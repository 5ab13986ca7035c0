#pragma once

// Numerical certificates for the energy, interpolation and uniqueness
// estimates, evaluated on computed trajectories and sampled states.

#include <cstdint>
#include <string>
#include <vector>

#include "gns/field.hpp"
#include "gns/integrator.hpp"
#include "gns/nonlinear.hpp"

namespace gns {

/// One checked inequality lhs ≤ rhs·(1 + slack). For identities lhs is the
/// (relative) residual and rhs the tolerance.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs − lhs
  bool satisfied = true;
  double slack = 0.0;
  double t = 0.0;
  std::string scenario;
  std::string flag;  ///< free-form annotation, e.g. a surrogate-constant warning
};

/// Relative slack for bounds that hold with equality at t = 0.
inline constexpr double kRoundoffSlack = 1e-12;

BoundReport make_report(std::string name, double lhs, double rhs, double slack = 0.0, double t = 0.0);

bool all_satisfied(const std::vector<BoundReport>& reports);

// ---------------------------------------------------------------------------
// Energy estimates

/// Integrated energy balance E(t) + 2ν∫‖∇u‖² − E(0) − 2∫(f,u) per sample,
/// relative to E(0) + 2ν∫‖∇u‖² + 2|∫(f,u)|.
std::vector<BoundReport> energy_identity(const Trajectory& traj, double nu, double tolerance = 1e-6);

/// Positive root of b² = c₁ + c₂ b.
double apriori_root(double c1, double c2);

struct AprioriReport {
  double c1 = 0.0;      ///< ‖u₀‖²
  double c2 = 0.0;      ///< 2 sup_t ∫₀ᵗ‖f‖
  double b_star = 0.0;  ///< (c₂ + sqrt(c₂² + 4c₁)) / 2
  BoundReport sup_norm;  ///< sup_t ‖u(t)‖ ≤ b*
  BoundReport budget;    ///< sup_t [E + 2ν∫‖∇u‖²] ≤ c₁ + c₂ b*
};

/// `budget_slack` absorbs the time-quadrature error of ∫‖∇u‖², which makes the
/// budget an equality for unforced runs.
AprioriReport apriori_bound(const Trajectory& traj, double u0_norm, double f_accumulation, double nu,
                            double budget_slack = 0.0);

/// sup over samples of Σ c_j² against b*²; t records where the sup is attained.
BoundReport parseval_sup(const Trajectory& traj, double b_star);

struct AssumptionAReport {
  BoundReport report;
  bool guaranteed = true;  ///< finite as T → ∞
};

/// sup_t ∫₀ᵗ‖f‖ on the horizon against the schedule's closed form.
AssumptionAReport assumption_A(const Trajectory& traj, const ForcingSchedule& forcing, double horizon,
                               double slack = 1e-6);

// ---------------------------------------------------------------------------
// Interpolation inequalities

inline constexpr double kLadyzhenskayaConstant = 1.4142135623730951;  // √2
inline constexpr double kYoungConstant = 27.0 / 16.0;

/// ‖u‖_{L⁴} / (‖u‖^{1/4} ‖∇u‖^{3/4}) against √2. Flags "surrogate-constant"
/// when the torus ratio exceeds √2. Throws UndefinedRatioError for u = 0.
BoundReport ladyzhenskaya_ratio(const BasisSet& basis, const CoefficientVector& c);

/// ‖u‖²_{L⁴} ≤ ε‖∇u‖² + 27/(16ε³)‖u‖². Throws InvalidArgument for ε ≤ 0.
BoundReport interpolation_check(const BasisSet& basis, const CoefficientVector& c, double eps);

/// Pointwise Young step 2 Y^{1/4} X^{3/4} ≤ εX + 27/(16ε³) Y.
bool young_step_holds(double X, double Y, double eps);

/// If the Ladyzhenskaya ratio bound and the Young step hold for c, the
/// interpolation inequality must hold as well; reports whether it does.
BoundReport young_implication(const BasisSet& basis, const CoefficientVector& c, double eps);

// ---------------------------------------------------------------------------
// Uniqueness

struct SeparationSeries {
  std::vector<double> times;
  std::vector<double> phi;       ///< ‖u − w‖²
  std::vector<double> envelope;  ///< φ(0) exp(27/(16ν³) ∫‖∇u‖⁴); may be +inf
  std::vector<double> ratio;     ///< φ / envelope, evaluated in log space
};

struct TwinResult {
  SeparationSeries series;
  Trajectory u;
  Trajectory w;
  std::vector<BoundReport> envelope;   ///< one per sample
  std::vector<BoundReport> splitting;  ///< identity and vanishing term at sampled times
};

struct TwinOptions {
  double slack = 1e-3;
  int check_samples = 10;
  double splitting_tolerance = 1e-10;
};

/// Indices of up to `count` samples spread evenly over [0, samples).
std::vector<std::size_t> spread_samples(std::size_t samples, int count);

/// Runs u from the configured data and w from the data plus a seeded
/// perturbation of L² norm δ; checks the Grönwall envelope and the splitting
/// of the nonlinear difference.
TwinResult twin_uniqueness(const ScenarioConfig& config, double delta, std::uint64_t seed,
                           const TwinOptions& options = {});
TwinResult twin_uniqueness(const Problem& problem, double delta, std::uint64_t seed,
                           const TwinOptions& options = {});

/// |(z_a u_{b;a}, z_b)| ≤ ∫|z|²|∇u| ≤ ‖z‖²_{L⁴}‖∇u‖ by grid quadrature.
std::vector<BoundReport> pointwise_bound_check(const BasisSet& basis, const CoefficientVector& u,
                                               const CoefficientVector& w, double t = 0.0);
std::vector<BoundReport> pointwise_bound_check(const BasisSet& basis, const Trajectory& u, const Trajectory& w,
                                               int sample_count = 10);

/// 2|(z_a u_b, z_{b;a})| ≤ 18‖∇z‖‖|z||u|‖ ≤ ν‖∇z‖² + (81/ν)‖|z||u|‖².
std::vector<BoundReport> remark1_check(const BasisSet& basis, const CoefficientVector& u,
                                       const CoefficientVector& w, double nu, double t = 0.0);
std::vector<BoundReport> remark1_check(const BasisSet& basis, const Trajectory& u, const Trajectory& w,
                                       double nu, int sample_count = 10);

// ---------------------------------------------------------------------------
// Weak form

struct WeakResidual {
  std::vector<double> times;
  std::vector<double> max_abs;         ///< max_m |R_m(t)| per sample
  std::vector<double> final_per_mode;  ///< R_m(T)
  double max_state_energy = 0.0;       ///< max_t ‖c(t)‖²
};

/// R_m(t) = c_m(t) − c_m(0) + ∫₀ᵗ(νλ_m c_m + N_m(c) − f_m) ds, corrected trapezoid on samples.
/// Requires recorded states.
WeakResidual weak_residual(const Trajectory& traj, const Problem& problem);

/// Default per-fixture tolerance 1e-6 · (1 + max‖c‖²) · T.
double default_weak_tolerance(const WeakResidual& residual);
BoundReport weak_residual_report(const WeakResidual& residual, double tolerance);

// ---------------------------------------------------------------------------

/// The full certificate suite for one trajectory (used by `verify`).
std::vector<BoundReport> certify(const Trajectory& traj, const Problem& problem, const std::string& scenario);

}  // namespace gns
