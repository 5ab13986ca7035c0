#include "gns/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gns/errors.hpp"

namespace gns {

BoundReport make_report(std::string name, double lhs, double rhs, double slack, double t) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.slack = slack;
  r.t = t;
  r.satisfied = lhs <= rhs * (1.0 + slack);
  return r;
}

bool all_satisfied(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.satisfied; });
}

namespace {

const BoundReport& worst_of(const std::vector<BoundReport>& reports) {
  // Smallest relative margin wins; failures sort first.
  return *std::min_element(reports.begin(), reports.end(), [](const BoundReport& a, const BoundReport& b) {
    if (a.satisfied != b.satisfied) return !a.satisfied;
    const auto rel = [](const BoundReport& r) { return r.rhs > 0.0 ? r.margin / r.rhs : r.margin; };
    return rel(a) < rel(b);
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Energy estimates

std::vector<BoundReport> energy_identity(const Trajectory& traj, double nu, double tolerance) {
  std::vector<BoundReport> out;
  if (traj.samples() == 0) return out;
  const double e0 = traj.diagnostics.front().energy;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const Diagnostics& d = traj.diagnostics[s];
    const double residual = d.energy + 2.0 * nu * d.int_grad2 - e0 - 2.0 * d.int_work;
    const double scale = e0 + 2.0 * nu * d.int_grad2 + 2.0 * std::abs(d.int_work);
    const double relative = scale > 0.0 ? std::abs(residual) / scale : std::abs(residual);
    out.push_back(make_report("energy_identity", relative, tolerance, 0.0, traj.times[s]));
  }
  return out;
}

double apriori_root(double c1, double c2) { return 0.5 * (c2 + std::sqrt(c2 * c2 + 4.0 * c1)); }

AprioriReport apriori_bound(const Trajectory& traj, double u0_norm, double f_accumulation, double nu,
                            double budget_slack) {
  AprioriReport r;
  r.c1 = u0_norm * u0_norm;
  r.c2 = 2.0 * f_accumulation;
  r.b_star = apriori_root(r.c1, r.c2);

  double sup_norm = 0.0, sup_norm_t = 0.0, sup_budget = 0.0, sup_budget_t = 0.0;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const Diagnostics& d = traj.diagnostics[s];
    const double norm = std::sqrt(d.energy);
    const double budget = d.energy + 2.0 * nu * d.int_grad2;
    if (norm > sup_norm) {
      sup_norm = norm;
      sup_norm_t = traj.times[s];
    }
    if (budget > sup_budget) {
      sup_budget = budget;
      sup_budget_t = traj.times[s];
    }
  }
  r.sup_norm = make_report("apriori_sup_norm", sup_norm, r.b_star, kRoundoffSlack, sup_norm_t);
  r.budget = make_report("apriori_energy_budget", sup_budget, r.c1 + r.c2 * r.b_star, budget_slack,
                         sup_budget_t);
  return r;
}

BoundReport parseval_sup(const Trajectory& traj, double b_star) {
  double sup = 0.0, at = 0.0;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const double e = traj.states.empty() ? traj.diagnostics[s].energy : dot(traj.states[s], traj.states[s]);
    if (e > sup) {
      sup = e;
      at = traj.times[s];
    }
  }
  return make_report("parseval_sup", sup, b_star * b_star, kRoundoffSlack, at);
}

AssumptionAReport assumption_A(const Trajectory& traj, const ForcingSchedule& forcing, double horizon,
                               double slack) {
  double sup = 0.0;
  for (const Diagnostics& d : traj.diagnostics) sup = std::max(sup, d.int_forcing);
  AssumptionAReport out;
  out.guaranteed = forcing.satisfies_assumption_A();
  double bound = forcing.accumulation_bound();
  if (!out.guaranteed) {
    // Finite on [0, T] only; compare with the exact horizon integral.
    bound = std::abs(forcing.spec().amplitude) * norm_l2(forcing.pattern()) * horizon;
  }
  out.report = make_report("assumption_A", sup, bound, slack, traj.times.empty() ? 0.0 : traj.times.back());
  if (!out.guaranteed) out.report.flag = "forcing integral unbounded on the infinite horizon";
  return out;
}

// ---------------------------------------------------------------------------
// Interpolation inequalities

BoundReport ladyzhenskaya_ratio(const BasisSet& basis, const CoefficientVector& c) {
  const double l2 = norm_l2(c);
  const double h1 = norm_h1(basis, c);
  if (l2 == 0.0 || h1 == 0.0) throw UndefinedRatioError("ladyzhenskaya_ratio: zero state");
  const double ratio = norm_l4(basis, c) / (std::pow(l2, 0.25) * std::pow(h1, 0.75));
  BoundReport r = make_report("ladyzhenskaya_ratio", ratio, kLadyzhenskayaConstant);
  if (!r.satisfied) r.flag = "surrogate-constant: torus ratio exceeds sqrt(2)";
  return r;
}

BoundReport interpolation_check(const BasisSet& basis, const CoefficientVector& c, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("interpolation_check: epsilon must be > 0");
  const double l4 = norm_l4(basis, c);
  const double l2 = norm_l2(c);
  const double h1 = norm_h1(basis, c);
  const double rhs = eps * h1 * h1 + kYoungConstant / (eps * eps * eps) * l2 * l2;
  return make_report("interpolation", l4 * l4, rhs, 1e-12);
}

bool young_step_holds(double X, double Y, double eps) {
  const double lhs = 2.0 * std::pow(Y, 0.25) * std::pow(X, 0.75);
  const double rhs = eps * X + kYoungConstant / (eps * eps * eps) * Y;
  return lhs <= rhs * (1.0 + 1e-12);
}

BoundReport young_implication(const BasisSet& basis, const CoefficientVector& c, double eps) {
  BoundReport interp = interpolation_check(basis, c, eps);
  const double l2 = norm_l2(c);
  const double h1 = norm_h1(basis, c);
  bool premise = young_step_holds(h1 * h1, l2 * l2, eps);
  if (l2 > 0.0) premise = premise && ladyzhenskaya_ratio(basis, c).satisfied;
  interp.name = "young_implication";
  interp.satisfied = !premise || interp.satisfied;
  return interp;
}

// ---------------------------------------------------------------------------
// Uniqueness

std::vector<std::size_t> spread_samples(std::size_t samples, int count) {
  std::vector<std::size_t> idx;
  if (samples == 0 || count <= 0) return idx;
  const std::size_t k = std::min<std::size_t>(samples, static_cast<std::size_t>(count));
  for (std::size_t q = 0; q < k; ++q) {
    const std::size_t s = k == 1 ? 0 : q * (samples - 1) / (k - 1);
    if (idx.empty() || idx.back() != s) idx.push_back(s);
  }
  return idx;
}

TwinResult twin_uniqueness(const ScenarioConfig& config, double delta, std::uint64_t seed,
                           const TwinOptions& options) {
  return twin_uniqueness(make_problem(config), delta, seed, options);
}

TwinResult twin_uniqueness(const Problem& problem, double delta, std::uint64_t seed, const TwinOptions& options) {
  if (!(delta >= 0.0)) throw InvalidArgument("twin_uniqueness: delta must be >= 0");
  Problem perturbed = problem;
  perturbed.initial += random_direction(*problem.basis, seed, delta);

  TwinResult out;
  out.u = simulate(problem);
  out.w = simulate(perturbed);

  const double rate = kYoungConstant / (problem.nu * problem.nu * problem.nu);
  SeparationSeries& series = out.series;
  double phi0 = 0.0, log_phi0 = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < out.u.samples(); ++s) {
    const CoefficientVector z = out.u.states[s] - out.w.states[s];
    const double phi = dot(z, z);
    if (s == 0) {
      phi0 = phi;
      log_phi0 = phi > 0.0 ? std::log(phi) : -std::numeric_limits<double>::infinity();
    }
    const double growth = rate * out.u.diagnostics[s].int_grad4;
    const double log_envelope = log_phi0 + growth;
    const double envelope = phi0 > 0.0 ? phi0 * std::exp(growth) : 0.0;
    double ratio = 0.0;
    bool ok = true;
    if (phi > 0.0) {
      const double log_ratio = std::log(phi) - log_envelope;
      ratio = std::exp(log_ratio);
      ok = log_ratio <= std::log1p(options.slack);
    }
    series.times.push_back(out.u.times[s]);
    series.phi.push_back(phi);
    series.envelope.push_back(envelope);
    series.ratio.push_back(ratio);

    BoundReport r = make_report("gronwall_envelope", phi, envelope, options.slack, out.u.times[s]);
    r.satisfied = ok;
    out.envelope.push_back(r);
  }

  if (problem.tensor) {
    const TriadTensor& B = *problem.tensor;
    for (std::size_t s : spread_samples(out.u.samples(), options.check_samples)) {
      const CoefficientVector& u = out.u.states[s];
      const CoefficientVector& w = out.w.states[s];
      const CoefficientVector z = u - w;
      const double difference = weak_pairing(B, u, z) - weak_pairing(B, w, z);
      const double split = trilinear(B, z, u, z);
      const double t = out.u.times[s];
      out.splitting.push_back(
          make_report("splitting_identity", std::abs(difference - split), options.splitting_tolerance, 0.0, t));
      const double vanishing = std::abs(trilinear(B, w, z, z));
      out.splitting.push_back(make_report("splitting_vanishing_term", vanishing,
                                          options.splitting_tolerance * dot(z, z) * norm_h1(*problem.basis, w),
                                          0.0, t));
    }
  }
  return out;
}

namespace {

struct PairGrids {
  GridField z, u, grad_u, grad_z;
};

PairGrids pair_grids(const BasisSet& basis, const CoefficientVector& u, const CoefficientVector& w) {
  const GridTransform transform(basis, l4_resolution(basis.cutoff(), 2.0));
  const CoefficientVector z = u - w;
  return {transform.velocity(z), transform.velocity(u), transform.gradient(u), transform.gradient(z)};
}

}  // namespace

std::vector<BoundReport> pointwise_bound_check(const BasisSet& basis, const CoefficientVector& u,
                                               const CoefficientVector& w, double t) {
  const PairGrids g = pair_grids(basis, u, w);
  const double vol = g.z.cell_volume();
  double transport = 0.0, weighted = 0.0, z4 = 0.0, grad2 = 0.0;
  for (std::size_t p = 0; p < g.z.points(); ++p) {
    double zz = 0.0, gg = 0.0, zgz = 0.0;
    for (int a = 0; a < 3; ++a) {
      zz += g.z.at(p, a) * g.z.at(p, a);
      for (int b = 0; b < 3; ++b) {
        const double d = g.grad_u.at(p, 3 * a + b);
        gg += d * d;
        zgz += g.z.at(p, a) * d * g.z.at(p, b);
      }
    }
    transport += zgz;
    weighted += zz * std::sqrt(gg);
    z4 += zz * zz;
    grad2 += gg;
  }
  transport = std::abs(transport * vol);
  weighted *= vol;
  const double l4_squared = std::sqrt(z4 * vol);
  const double grad_norm = std::sqrt(grad2 * vol);
  return {make_report("pointwise_transport", transport, weighted, 1e-12, t),
          make_report("pointwise_cauchy_schwarz", weighted, l4_squared * grad_norm, 1e-12, t)};
}

std::vector<BoundReport> pointwise_bound_check(const BasisSet& basis, const Trajectory& u, const Trajectory& w,
                                               int sample_count) {
  std::vector<BoundReport> out;
  for (std::size_t s : spread_samples(std::min(u.samples(), w.samples()), sample_count)) {
    for (BoundReport& r : pointwise_bound_check(basis, u.states[s], w.states[s], u.times[s])) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<BoundReport> remark1_check(const BasisSet& basis, const CoefficientVector& u,
                                       const CoefficientVector& w, double nu, double t) {
  const PairGrids g = pair_grids(basis, u, w);
  const double vol = g.z.cell_volume();
  double transport = 0.0, zu2 = 0.0;
  for (std::size_t p = 0; p < g.z.points(); ++p) {
    double zz = 0.0, uu = 0.0;
    for (int a = 0; a < 3; ++a) {
      zz += g.z.at(p, a) * g.z.at(p, a);
      uu += g.u.at(p, a) * g.u.at(p, a);
      for (int b = 0; b < 3; ++b) transport += g.z.at(p, a) * g.u.at(p, b) * g.grad_z.at(p, 3 * a + b);
    }
    zu2 += zz * uu;
  }
  const double lhs = 2.0 * std::abs(transport * vol);
  const double zu = std::sqrt(zu2 * vol);
  const double grad_z = norm_h1(basis, u - w);
  const double middle = 18.0 * grad_z * zu;
  const double right = nu * grad_z * grad_z + 81.0 / nu * zu * zu;
  return {make_report("remark1_first_link", lhs, middle, 1e-12, t),
          make_report("remark1_second_link", middle, right, 1e-12, t)};
}

std::vector<BoundReport> remark1_check(const BasisSet& basis, const Trajectory& u, const Trajectory& w, double nu,
                                       int sample_count) {
  std::vector<BoundReport> out;
  for (std::size_t s : spread_samples(std::min(u.samples(), w.samples()), sample_count)) {
    for (BoundReport& r : remark1_check(basis, u.states[s], w.states[s], nu, u.times[s])) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak form

WeakResidual weak_residual(const Trajectory& traj, const Problem& problem) {
  if (traj.states.size() != traj.samples()) throw InvalidArgument("weak_residual: trajectory has no state dump");
  const BasisSet& basis = *problem.basis;
  const std::size_t n = basis.size();
  WeakResidual out;
  if (traj.samples() == 0) return out;

  // Integrand νλc + N(c) − f = −dc/dt; its rate −d²c/dt² feeds the endpoint correction.
  std::vector<double> integral(n, 0.0);
  const CoefficientVector& c0 = traj.states.front();
  CoefficientVector prev_value, prev_rate;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const CoefficientVector& c = traj.states[s];
    const double t = traj.times[s];
    const CoefficientVector c_dot = time_derivative(problem, c, t);
    const CoefficientVector c_ddot = second_time_derivative(problem, c, c_dot, t);
    if (s > 0) {
      const double h = t - traj.times[s - 1];
      for (std::size_t m = 0; m < n; ++m) {
        integral[m] -= 0.5 * h * (prev_value[m] + c_dot[m]) + h * h / 12.0 * (prev_rate[m] - c_ddot[m]);
      }
    }
    prev_value = c_dot;
    prev_rate = c_ddot;
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) worst = std::max(worst, std::abs(c[m] - c0[m] + integral[m]));
    out.times.push_back(t);
    out.max_abs.push_back(worst);
    out.max_state_energy = std::max(out.max_state_energy, dot(c, c));
  }
  out.final_per_mode.resize(n);
  for (std::size_t m = 0; m < n; ++m) out.final_per_mode[m] = traj.states.back()[m] - c0[m] + integral[m];
  return out;
}

double default_weak_tolerance(const WeakResidual& residual) {
  const double horizon = residual.times.empty() ? 0.0 : residual.times.back() - residual.times.front();
  return 1e-6 * (1.0 + residual.max_state_energy) * std::max(horizon, 1.0);
}

BoundReport weak_residual_report(const WeakResidual& residual, double tolerance) {
  double worst = 0.0, at = 0.0;
  for (std::size_t s = 0; s < residual.max_abs.size(); ++s) {
    if (residual.max_abs[s] > worst) {
      worst = residual.max_abs[s];
      at = residual.times[s];
    }
  }
  return make_report("weak_residual", worst, tolerance, 0.0, at);
}

// ---------------------------------------------------------------------------

std::vector<BoundReport> certify(const Trajectory& traj, const Problem& problem, const std::string& scenario) {
  std::vector<BoundReport> out;
  if (traj.samples() == 0) return out;

  out.push_back(worst_of(energy_identity(traj, problem.nu)));

  const double f_accum = traj.diagnostics.back().int_forcing;
  const AprioriReport apriori =
      apriori_bound(traj, std::sqrt(traj.diagnostics.front().energy), f_accum, problem.nu, 1e-6);
  out.push_back(apriori.sup_norm);
  out.push_back(apriori.budget);
  out.push_back(parseval_sup(traj, apriori.b_star));
  out.push_back(assumption_A(traj, problem.forcing, problem.horizon).report);

  if (traj.states.size() == traj.samples()) {
    const WeakResidual residual = weak_residual(traj, problem);
    out.push_back(weak_residual_report(residual, default_weak_tolerance(residual)));

    std::vector<BoundReport> ratios;
    std::vector<BoundReport> interp;
    for (std::size_t s : spread_samples(traj.samples(), 10)) {
      const CoefficientVector& c = traj.states[s];
      if (norm_l2(c) == 0.0) continue;
      BoundReport r = ladyzhenskaya_ratio(*problem.basis, c);
      r.t = traj.times[s];
      ratios.push_back(r);
      for (double eps : {0.1, 1.0, 10.0}) {
        BoundReport q = young_implication(*problem.basis, c, eps);
        q.t = traj.times[s];
        interp.push_back(q);
      }
    }
    if (!ratios.empty()) {
      out.push_back(*std::max_element(ratios.begin(), ratios.end(),
                                      [](const BoundReport& a, const BoundReport& b) { return a.lhs < b.lhs; }));
      out.push_back(worst_of(interp));
    }
  }
  for (BoundReport& r : out) r.scenario = scenario;
  return out;
}

}  // namespace gns
