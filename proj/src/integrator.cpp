#include "gns/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gns/errors.hpp"

namespace gns {

// ---------------------------------------------------------------------------
// Forcing

namespace {

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' in " + what);
  }
}

ForcingPattern parse_pattern(const std::string& s) {
  ForcingPattern p;
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw ConfigError("forcing pattern must be mode=J or shell=S, got '" + s + "'");
  const std::string key = s.substr(0, eq);
  const std::string value = s.substr(eq + 1);
  if (key == "mode") {
    p.kind = ForcingPattern::Kind::Mode;
  } else if (key == "shell") {
    p.kind = ForcingPattern::Kind::Shell;
  } else {
    throw ConfigError("forcing pattern must be mode=J or shell=S, got '" + s + "'");
  }
  try {
    std::size_t used = 0;
    p.value = std::stoi(value, &used);
    if (used != value.size() || p.value < 0) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw ConfigError("invalid forcing pattern index '" + value + "'");
  }
  return p;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ForcingSpec parse_forcing(const std::string& text) {
  std::vector<std::string> parts;
  {
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(part);
  }
  const std::string what = "forcing '" + text + "'";
  if (parts.empty() || parts[0] == "zero") {
    if (parts.size() > 1) throw ConfigError("zero forcing takes no arguments");
    return {};
  }
  ForcingSpec spec;
  if (parts[0] == "exp") {
    if (parts.size() != 4) throw ConfigError("expected exp:AMPLITUDE:RATE:PATTERN");
    spec.kind = ForcingKind::ExponentialDecay;
    spec.amplitude = parse_number(parts[1], what);
    spec.rate = parse_number(parts[2], what);
    spec.pattern = parse_pattern(parts[3]);
    if (spec.rate <= 0.0) throw ConfigError("exponential forcing needs rate > 0");
    return spec;
  }
  if (parts[0] == "constant") {
    if (parts.size() != 3) throw ConfigError("expected constant:AMPLITUDE:PATTERN");
    spec.kind = ForcingKind::Constant;
    spec.amplitude = parse_number(parts[1], what);
    spec.pattern = parse_pattern(parts[2]);
    return spec;
  }
  throw ConfigError("unknown forcing kind '" + parts[0] + "'");
}

std::string to_string(const ForcingSpec& spec) {
  const std::string pattern =
      std::string(spec.pattern.kind == ForcingPattern::Kind::Mode ? "mode=" : "shell=") +
      std::to_string(spec.pattern.value);
  switch (spec.kind) {
    case ForcingKind::Zero:
      return "zero";
    case ForcingKind::ExponentialDecay:
      return "exp:" + fmt(spec.amplitude) + ":" + fmt(spec.rate) + ":" + pattern;
    case ForcingKind::Constant:
      return "constant:" + fmt(spec.amplitude) + ":" + pattern;
  }
  return "zero";
}

ForcingSchedule::ForcingSchedule(ForcingSpec spec, const BasisSet& basis)
    : spec_(spec), pattern_(CoefficientVector::zeros(basis)) {
  if (spec_.kind == ForcingKind::Zero) return;
  if (spec_.pattern.kind == ForcingPattern::Kind::Mode) {
    if (spec_.pattern.value < 0 || static_cast<std::size_t>(spec_.pattern.value) >= basis.size()) {
      throw ConfigError("forcing mode " + std::to_string(spec_.pattern.value) + " outside basis of " +
                        std::to_string(basis.size()) + " modes");
    }
    pattern_[static_cast<std::size_t>(spec_.pattern.value)] = 1.0;
    return;
  }
  std::size_t count = 0;
  for (const BasisMode& m : basis) count += m.eigenvalue == spec_.pattern.value;
  if (count == 0) {
    throw ConfigError("forcing shell " + std::to_string(spec_.pattern.value) + " has no modes in the basis");
  }
  const double w = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].eigenvalue == spec_.pattern.value) pattern_[j] = w;
  }
}

ForcingSchedule::ForcingSchedule(ForcingSpec spec, CoefficientVector unit_pattern)
    : spec_(spec), pattern_(std::move(unit_pattern)) {}

double ForcingSchedule::magnitude(double t) const {
  switch (spec_.kind) {
    case ForcingKind::Zero:
      return 0.0;
    case ForcingKind::ExponentialDecay:
      return spec_.amplitude * std::exp(-spec_.rate * t);
    case ForcingKind::Constant:
      return spec_.amplitude;
  }
  return 0.0;
}

double ForcingSchedule::magnitude_rate(double t) const {
  return spec_.kind == ForcingKind::ExponentialDecay ? -spec_.rate * magnitude(t) : 0.0;
}

double ForcingSchedule::norm(double t) const {
  return spec_.kind == ForcingKind::Zero ? 0.0 : std::abs(magnitude(t)) * norm_l2(pattern_);
}

CoefficientVector ForcingSchedule::at(double t) const { return magnitude(t) * pattern_; }

void ForcingSchedule::add_to(std::vector<double>& rhs, double t) const {
  if (spec_.kind == ForcingKind::Zero) return;
  const double a = magnitude(t);
  for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += a * pattern_[j];
}

bool ForcingSchedule::satisfies_assumption_A() const {
  switch (spec_.kind) {
    case ForcingKind::Zero:
      return true;
    case ForcingKind::ExponentialDecay:
      return spec_.rate > 0.0;
    case ForcingKind::Constant:
      return spec_.amplitude == 0.0;
  }
  return false;
}

double ForcingSchedule::accumulation_bound() const {
  const double pattern_norm = spec_.kind == ForcingKind::Zero ? 0.0 : norm_l2(pattern_);
  switch (spec_.kind) {
    case ForcingKind::Zero:
      return 0.0;
    case ForcingKind::ExponentialDecay:
      return spec_.rate > 0.0 ? std::abs(spec_.amplitude) * pattern_norm / spec_.rate
                              : std::numeric_limits<double>::infinity();
    case ForcingKind::Constant:
      return spec_.amplitude == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Config and problem

void ScenarioConfig::validate() const {
  if (!(nu > 0.0)) throw ConfigError("nu must be > 0");
  if (!(horizon > 0.0)) throw ConfigError("T must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (dt > horizon) throw ConfigError("dt must not exceed T");
  if (stride < 1) throw ConfigError("stride must be >= 1");
  if (cutoff < 1) throw ConfigError("cutoff must be >= 1");
}

Problem make_problem(const ScenarioConfig& config) {
  config.validate();
  auto basis = std::make_shared<const BasisSet>(build_basis(config.cutoff));
  std::shared_ptr<const TriadTensor> tensor;
  if (config.nonlinear) tensor = std::make_shared<const TriadTensor>(assemble_tensor(*basis));
  return make_problem(config, std::move(basis), std::move(tensor));
}

Problem make_problem(const ScenarioConfig& config, std::shared_ptr<const BasisSet> basis,
                     std::shared_ptr<const TriadTensor> tensor) {
  config.validate();
  Problem p;
  p.initial = project_initial(config.initial, *basis);
  p.forcing = ForcingSchedule(config.forcing, *basis);
  p.basis = std::move(basis);
  p.tensor = config.nonlinear ? std::move(tensor) : nullptr;
  p.nu = config.nu;
  p.horizon = config.horizon;
  p.dt = config.dt;
  p.stride = config.stride;
  return p;
}

// ---------------------------------------------------------------------------
// Stepping

DivergenceError::DivergenceError(double time, Trajectory partial)
    : std::runtime_error("non-finite state at t = " + fmt(time)), time_(time), partial_(std::move(partial)) {}

Stepper::Stepper(const Problem& problem) : problem_(&problem) {
  decay_rate_.reserve(problem.basis->size());
  for (const BasisMode& m : *problem.basis) decay_rate_.push_back(problem.nu * m.eigenvalue);
}

void Stepper::rhs(const CoefficientVector& c, double t, std::vector<double>& out) const {
  if (problem_->tensor) {
    problem_->tensor->contract(c, c, out);
    for (double& v : out) v = -v;
  } else {
    out.assign(c.size(), 0.0);
  }
  problem_->forcing.add_to(out, t);
}

CoefficientVector Stepper::step(const CoefficientVector& c, double t, double dt) const {
  require_matches(*problem_->basis, c);
  const std::size_t n = c.size();
  std::vector<double> full(n), half(n);
  for (std::size_t m = 0; m < n; ++m) {
    full[m] = std::exp(-decay_rate_[m] * dt);
    half[m] = std::exp(-0.5 * decay_rate_[m] * dt);
  }

  std::vector<double> k1, k2, k3, k4;
  CoefficientVector y(c.cutoff(), std::vector<double>(n));

  rhs(c, t, k1);
  for (std::size_t m = 0; m < n; ++m) y[m] = half[m] * (c[m] + 0.5 * dt * k1[m]);
  rhs(y, t + 0.5 * dt, k2);
  for (std::size_t m = 0; m < n; ++m) y[m] = half[m] * c[m] + 0.5 * dt * k2[m];
  rhs(y, t + 0.5 * dt, k3);
  for (std::size_t m = 0; m < n; ++m) y[m] = full[m] * c[m] + dt * half[m] * k3[m];
  rhs(y, t + dt, k4);

  CoefficientVector next(c.cutoff(), std::vector<double>(n));
  for (std::size_t m = 0; m < n; ++m) {
    next[m] = full[m] * c[m] +
              dt / 6.0 * (full[m] * k1[m] + 2.0 * half[m] * (k2[m] + k3[m]) + k4[m]);
  }
  if (!next.all_finite()) throw DivergenceError(t + dt, {});
  return next;
}

CoefficientVector step(const Problem& problem, const CoefficientVector& c, double t, double dt) {
  return Stepper(problem).step(c, t, dt);
}

// ---------------------------------------------------------------------------
// Recording

CoefficientVector time_derivative(const Problem& problem, const CoefficientVector& c, double t) {
  const BasisSet& basis = *problem.basis;
  std::vector<double> out(c.size(), 0.0);
  if (problem.tensor) problem.tensor->contract(c, c, out);
  for (std::size_t m = 0; m < c.size(); ++m) out[m] = -problem.nu * basis[m].eigenvalue * c[m] - out[m];
  problem.forcing.add_to(out, t);
  return CoefficientVector(c.cutoff(), std::move(out));
}

CoefficientVector second_time_derivative(const Problem& problem, const CoefficientVector& c,
                                         const CoefficientVector& c_dot, double t) {
  const BasisSet& basis = *problem.basis;
  const std::size_t n = c.size();
  std::vector<double> out(n, 0.0);
  if (problem.tensor) {
    std::vector<double> other(n, 0.0);
    problem.tensor->contract(c_dot, c, out);
    problem.tensor->contract(c, c_dot, other);
    for (std::size_t m = 0; m < n; ++m) out[m] += other[m];
  }
  const double rate = problem.forcing.magnitude_rate(t);
  for (std::size_t m = 0; m < n; ++m) {
    out[m] = -problem.nu * basis[m].eigenvalue * c_dot[m] - out[m];
    if (rate != 0.0) out[m] += rate * problem.forcing.pattern()[m];
  }
  return CoefficientVector(c.cutoff(), std::move(out));
}

TrajectoryRecorder::TrajectoryRecorder(const Problem& problem, bool keep_states)
    : problem_(&problem),
      l4_transform_(*problem.basis, l4_resolution(problem.basis->cutoff(), problem.dealias)),
      keep_states_(keep_states) {}

TrajectoryRecorder::Integrands TrajectoryRecorder::integrands(double t, const CoefficientVector& c,
                                                              double& grad2) const {
  const BasisSet& basis = *problem_->basis;
  const ForcingSchedule& f = problem_->forcing;
  const CoefficientVector c_dot = time_derivative(*problem_, c, t);
  double grad2_rate = 0.0;
  grad2 = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    grad2 += basis[m].eigenvalue * c[m] * c[m];
    grad2_rate += 2.0 * basis[m].eigenvalue * c[m] * c_dot[m];
  }
  Integrands g{};
  g.value[0] = grad2;
  g.rate[0] = grad2_rate;
  g.value[2] = grad2 * grad2;
  g.rate[2] = 2.0 * grad2 * grad2_rate;
  if (f.kind() != ForcingKind::Zero) {
    const double a = f.magnitude(t), a_rate = f.magnitude_rate(t);
    const double p_norm = norm_l2(f.pattern());
    g.value[1] = std::abs(a) * p_norm;
    g.rate[1] = (a < 0.0 ? -a_rate : a_rate) * p_norm;
    g.value[3] = a * dot(f.pattern(), c);
    g.rate[3] = a_rate * dot(f.pattern(), c) + a * dot(f.pattern(), c_dot);
  }
  return g;
}

void TrajectoryRecorder::observe(double t, const CoefficientVector& c, bool sample) {
  double grad2 = 0.0;
  const Integrands g = integrands(t, c, grad2);
  if (started_) {
    const double h = t - last_t_;
    for (int q = 0; q < 4; ++q) {
      integral_[q] += 0.5 * h * (last_.value[q] + g.value[q]) + h * h / 12.0 * (last_.rate[q] - g.rate[q]);
    }
  }
  started_ = true;
  last_t_ = t;
  last_ = g;
  if (!sample) return;

  Diagnostics d;
  d.energy = dot(c, c);
  d.grad2 = grad2;
  d.l4 = norm_l4(l4_transform_, c);
  d.int_grad2 = integral_[0];
  d.int_forcing = integral_[1];
  d.int_grad4 = integral_[2];
  d.int_work = integral_[3];
  traj_.times.push_back(t);
  if (keep_states_) traj_.states.push_back(c);
  traj_.diagnostics.push_back(d);
}

std::vector<double> sample_times(double horizon, double dt, int stride) {
  const long steps = std::max(1L, static_cast<long>(std::ceil(horizon / dt - 1e-9)));
  std::vector<double> times;
  for (long k = 0; k <= steps; ++k) {
    if (k % stride == 0 || k == steps) times.push_back(k == steps ? horizon : static_cast<double>(k) * dt);
  }
  return times;
}

Trajectory simulate(const Problem& problem) {
  const long steps = std::max(1L, static_cast<long>(std::ceil(problem.horizon / problem.dt - 1e-9)));
  const auto time_of = [&](long k) { return k == steps ? problem.horizon : static_cast<double>(k) * problem.dt; };

  const Stepper stepper(problem);
  TrajectoryRecorder recorder(problem);
  CoefficientVector c = problem.initial;
  if (!c.all_finite()) throw DivergenceError(0.0, {});
  recorder.record(0.0, c);
  for (long k = 1; k <= steps; ++k) {
    const double t0 = time_of(k - 1);
    try {
      c = stepper.step(c, t0, time_of(k) - t0);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.time(), recorder.take());
    }
    recorder.observe(time_of(k), c, k % problem.stride == 0 || k == steps);
  }
  return recorder.take();
}

Trajectory simulate(const ScenarioConfig& config) { return simulate(make_problem(config)); }

// ---------------------------------------------------------------------------
// Stokes reference

namespace {

// ∫₀ᵗ e^{−a(t−s)} e^{−r s} ds without cancellation for a ≈ r.
double duhamel(double a, double r, double t) {
  const double x = (a - r) * t;
  if (x == 0.0) return t * std::exp(-a * t);
  if (x > 0.0) return std::exp(-r * t) * t * (-std::expm1(-x)) / x;
  return std::exp(-a * t) * t * std::expm1(x) / x;
}

}  // namespace

Trajectory stokes_oracle(const Problem& problem) {
  const ForcingSchedule& f = problem.forcing;
  if (f.kind() == ForcingKind::Constant) {
    throw InvalidArgument("stokes_oracle: only zero or single-mode exponential forcing is supported");
  }
  if (f.kind() == ForcingKind::ExponentialDecay) {
    const auto nonzero = std::count_if(f.pattern().values().begin(), f.pattern().values().end(),
                                       [](double v) { return v != 0.0; });
    if (nonzero != 1) throw InvalidArgument("stokes_oracle: exponential forcing must act on a single mode");
  }
  const BasisSet& basis = *problem.basis;
  Problem linear = problem;
  linear.tensor = nullptr;
  TrajectoryRecorder recorder(linear);
  const std::vector<double> times = sample_times(problem.horizon, problem.dt, 1);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    CoefficientVector c = CoefficientVector::zeros(basis);
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const double a = problem.nu * basis[m].eigenvalue;
      c[m] = problem.initial[m] * std::exp(-a * t);
      if (f.kind() == ForcingKind::ExponentialDecay && f.pattern()[m] != 0.0) {
        c[m] += f.spec().amplitude * f.pattern()[m] * duhamel(a, f.spec().rate, t);
      }
    }
    recorder.observe(t, c, k % problem.stride == 0 || k + 1 == times.size());
  }
  return recorder.take();
}

Trajectory stokes_oracle(const ScenarioConfig& config) {
  ScenarioConfig linear = config;
  linear.nonlinear = false;
  return stokes_oracle(make_problem(linear));
}

// ---------------------------------------------------------------------------
// Refinement

ConvergenceTable refine_study(const ScenarioConfig& base, const std::vector<int>& cutoffs) {
  if (cutoffs.empty()) throw InvalidArgument("refine_study: no cutoffs given");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1 || (i > 0 && cutoffs[i] <= cutoffs[i - 1])) {
      throw InvalidArgument("refine_study: cutoffs must be positive and strictly increasing");
    }
  }
  ScenarioConfig smallest = base;
  smallest.cutoff = cutoffs.front();
  smallest.validate();
  const BasisSet coarse = build_basis(cutoffs.front());
  const CoefficientVector initial = project_initial(base.initial, coarse);
  const ForcingSchedule coarse_forcing(base.forcing, coarse);

  ConvergenceTable table;
  for (const BasisMode& m : coarse) table.low_modes.push_back(m.index);

  for (int cutoff : cutoffs) {
    ScenarioConfig config = base;
    config.cutoff = cutoff;
    auto basis = std::make_shared<const BasisSet>(build_basis(cutoff));
    std::shared_ptr<const TriadTensor> tensor;
    if (config.nonlinear) tensor = std::make_shared<const TriadTensor>(assemble_tensor(*basis));

    Problem p;
    p.initial = embed(coarse, initial, *basis);
    p.forcing = ForcingSchedule(base.forcing, embed(coarse, coarse_forcing.pattern(), *basis));
    p.basis = basis;
    p.tensor = tensor;
    p.nu = config.nu;
    p.horizon = config.horizon;
    p.dt = config.dt;
    p.stride = config.stride;
    const Trajectory traj = simulate(p);

    ConvergenceRow row;
    row.cutoff = cutoff;
    row.modes = basis->size();
    const CoefficientVector& final_state = traj.states.back();
    for (const ModeIndex& index : table.low_modes) {
      row.low_modes.push_back(final_state[static_cast<std::size_t>(basis->find(index))]);
    }
    if (!table.rows.empty()) {
      const std::vector<double>& prev = table.rows.back().low_modes;
      double s = 0.0;
      for (std::size_t q = 0; q < prev.size(); ++q) s += (row.low_modes[q] - prev[q]) * (row.low_modes[q] - prev[q]);
      row.difference = std::sqrt(s);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace gns
