#include <doctest.h>

#include <cmath>

#include "gns/errors.hpp"
#include "gns/integrator.hpp"
#include "helpers.hpp"

using namespace gns;

namespace {

ScenarioConfig base_config() {
  ScenarioConfig c;
  c.nu = 1.0;
  c.horizon = 1.0;
  c.dt = 1e-3;
  c.cutoff = 2;
  c.stride = 10;
  return c;
}

std::size_t first_mode_with_lambda(const BasisSet& basis, double lambda) {
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (basis[j].eigenvalue == lambda) return j;
  return basis.size();
}

double max_relative_state_error(const Trajectory& a, const Trajectory& b) {
  double err = 0.0;
  for (std::size_t s = 0; s < a.samples(); ++s) {
    err = std::max(err, norm_l2(a.states[s] - b.states[s]) / norm_l2(b.states[s]));
  }
  return err;
}

}  // namespace

TEST_CASE("forcing grammar") {
  CHECK(parse_forcing("zero").kind == ForcingKind::Zero);
  const ForcingSpec e = parse_forcing("exp:2:0.5:shell=1");
  CHECK(e.kind == ForcingKind::ExponentialDecay);
  CHECK(e.amplitude == 2.0);
  CHECK(e.rate == 0.5);
  CHECK(e.pattern.kind == ForcingPattern::Kind::Shell);
  CHECK(e.pattern.value == 1);
  const ForcingSpec c = parse_forcing("constant:1.5:mode=3");
  CHECK(c.kind == ForcingKind::Constant);
  CHECK(c.pattern.kind == ForcingPattern::Kind::Mode);
  CHECK(c.pattern.value == 3);
  for (const char* bad : {"exp:1:0:mode=0", "exp:1:-1:mode=0", "exp:1:1", "constant:1:mode", "gust:1",
                          "exp:1:1:shell=x", "zero:1"}) {
    CHECK_THROWS_AS(parse_forcing(bad), ConfigError);
  }
  for (const char* text : {"zero", "exp:2:0.5:shell=1", "constant:1.5:mode=3"}) {
    CHECK(to_string(parse_forcing(to_string(parse_forcing(text)))) == to_string(parse_forcing(text)));
  }
}

TEST_CASE("forcing schedules") {
  const BasisSet basis = build_basis(2);
  const ForcingSchedule shell(parse_forcing("exp:2:0.5:shell=1"), basis);
  CHECK(norm_l2(shell.pattern()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(shell.norm(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(shell.norm(2.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(shell.satisfies_assumption_A());
  CHECK(shell.accumulation_bound() == doctest::Approx(4.0).epsilon(1e-15));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (shell.pattern()[j] != 0.0) CHECK(basis[j].eigenvalue == 1.0);
  }

  const ForcingSchedule constant(parse_forcing("constant:1:mode=5"), basis);
  CHECK(!constant.satisfies_assumption_A());
  CHECK(std::isinf(constant.accumulation_bound()));
  CHECK(constant.pattern()[5] == 1.0);

  CHECK_THROWS_AS(ForcingSchedule(parse_forcing("exp:1:1:mode=9999"), basis), ConfigError);
  CHECK_THROWS_AS(ForcingSchedule(parse_forcing("exp:1:1:shell=7"), build_basis(1)), ConfigError);
}

TEST_CASE("config invariants") {
  ScenarioConfig c = base_config();
  CHECK_NOTHROW(c.validate());
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.dt = 2.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.nu = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.stride = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.cutoff = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("sample times") {
  CHECK(sample_times(1.0, 0.25, 1) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(sample_times(1.0, 0.25, 3) == std::vector<double>{0.0, 0.75, 1.0});
  CHECK(sample_times(1.0, 0.3, 1).back() == 1.0);
  CHECK(sample_times(1.0, 0.3, 1).size() == 5);
  CHECK(sample_times(1.0, 1e-3, 10).size() == 101);
}

TEST_CASE("linear step is exact") {
  ScenarioConfig config = base_config();
  config.nonlinear = false;
  config.initial = RandomBandSpec{8, 3, 1.0};
  const Problem p = make_problem(config);
  const double dt = 0.01;
  const CoefficientVector next = step(p, p.initial, 0.0, dt);
  for (std::size_t m = 0; m < next.size(); ++m) {
    const double exact = p.initial[m] * std::exp(-p.nu * (*p.basis)[m].eigenvalue * dt);
    CHECK(std::abs(next[m] - exact) <= 1e-15 * std::abs(p.initial[m]) + 1e-300);
  }
  const CoefficientVector zero = CoefficientVector::zeros(*p.basis);
  CHECK(step(p, zero, 0.0, dt) == zero);
}

TEST_CASE("full step on a Beltrami state is pure decay") {
  ScenarioConfig config = base_config();
  config.nu = 0.7;
  config.initial = BeltramiSpec{1, 4, 1.0};
  const Problem p = make_problem(config);
  const CoefficientVector next = step(p, p.initial, 0.0, 1e-3);
  CHECK(norm_l2(next - std::exp(-0.7 * 1e-3) * p.initial) <= 1e-12);
}

TEST_CASE("zero data stays zero") {
  ScenarioConfig config = base_config();
  config.initial = ExplicitSpec{std::vector<double>(248, 0.0)};
  const Trajectory t = simulate(config);
  for (const Diagnostics& d : t.diagnostics) {
    CHECK(d.energy == 0.0);
    CHECK(d.grad2 == 0.0);
    CHECK(d.l4 == 0.0);
    CHECK(d.int_grad2 == 0.0);
    CHECK(d.int_forcing == 0.0);
    CHECK(d.int_grad4 == 0.0);
  }
}

TEST_CASE("single Stokes mode decays as exp(-2 nu lambda t)") {
  const BasisSet basis = build_basis(2);
  const std::size_t j = first_mode_with_lambda(basis, 4.0);
  ScenarioConfig config = base_config();
  config.nu = 0.5;
  config.nonlinear = false;
  std::vector<double> c(basis.size(), 0.0);
  c[j] = 1.3;
  config.initial = ExplicitSpec{c};
  const Trajectory t = simulate(config);
  const double ratio = t.diagnostics.back().energy / t.diagnostics.front().energy;
  CHECK(std::abs(ratio - std::exp(-4.0)) <= 1e-8 * std::exp(-4.0));
}

TEST_CASE("unforced energy is nonincreasing") {
  ScenarioConfig config = base_config();
  config.initial = RandomBandSpec{6, 12, 3.0};
  config.stride = 1;
  const Trajectory t = simulate(config);
  for (std::size_t s = 1; s < t.samples(); ++s) {
    CHECK(t.diagnostics[s].energy < t.diagnostics[s - 1].energy);
    CHECK(t.diagnostics[s].int_grad2 >= t.diagnostics[s - 1].int_grad2);
    CHECK(t.diagnostics[s].int_grad4 >= t.diagnostics[s - 1].int_grad4);
  }
}

TEST_CASE("Stokes oracle") {
  ScenarioConfig config = base_config();
  config.nonlinear = false;
  config.initial = RandomBandSpec{6, 3, 1.0};
  config.forcing = parse_forcing("exp:0.5:0.5:mode=8");
  const Trajectory exact = stokes_oracle(config);
  CHECK(exact.states.front() == make_problem(config).initial);
  CHECK(max_relative_state_error(simulate(config), exact) <= 1e-8);

  ScenarioConfig viscous = config;
  viscous.nu = 2.0;
  viscous.forcing = {};
  config.forcing = {};
  const Trajectory slow = stokes_oracle(config), fast = stokes_oracle(viscous);
  for (std::size_t s = 1; s < slow.samples(); ++s)
    for (std::size_t m = 0; m < slow.states[s].size(); ++m) {
      if (slow.states[0][m] != 0.0) CHECK(std::abs(fast.states[s][m]) < std::abs(slow.states[s][m]));
    }

  config.forcing = parse_forcing("constant:1:mode=0");
  CHECK_THROWS_AS(stokes_oracle(config), InvalidArgument);
  config.forcing = parse_forcing("exp:1:1:shell=1");
  CHECK_THROWS_AS(stokes_oracle(config), InvalidArgument);
}

TEST_CASE("fourth-order convergence against the Stokes oracle") {
  // The forced mode makes the step error visible; unforced linear steps are exact.
  ScenarioConfig config = base_config();
  config.nonlinear = false;
  config.initial = RandomBandSpec{3, 3, 1.0};
  config.forcing = parse_forcing("exp:1:0.5:mode=40");
  config.stride = 1;
  double errors[2];
  for (int q = 0; q < 2; ++q) {
    config.dt = q == 0 ? 1e-2 : 5e-3;
    const Trajectory a = simulate(config), b = stokes_oracle(config);
    errors[q] = 0.0;
    for (std::size_t s = 0; s < a.samples(); ++s) errors[q] = std::max(errors[q], norm_l2(a.states[s] - b.states[s]));
  }
  CHECK(errors[0] / errors[1] >= 8.0);
}

TEST_CASE("energy balance error shrinks with the step") {
  ScenarioConfig config = base_config();
  config.initial = TaylorGreenSpec{1.0};
  config.stride = 1;
  double residual[2];
  for (int q = 0; q < 2; ++q) {
    config.dt = q == 0 ? 0.02 : 0.01;
    const Trajectory t = simulate(config);
    const Diagnostics& d = t.diagnostics.back();
    residual[q] = std::abs(d.energy + 2.0 * config.nu * d.int_grad2 - t.diagnostics.front().energy);
  }
  CHECK(residual[1] < residual[0] / 4.0);
}

TEST_CASE("simulation is deterministic") {
  ScenarioConfig config = base_config();
  config.initial = RandomBandSpec{4, 2, 2.0};
  config.forcing = parse_forcing("exp:1:1:shell=2");
  const Trajectory a = simulate(config), b = simulate(config);
  CHECK(a.times == b.times);
  CHECK(a.states == b.states);
}

TEST_CASE("divergence carries the failure time and the partial trajectory") {
  ScenarioConfig config = base_config();
  config.nu = 0.1;
  config.dt = 0.1;
  config.stride = 1;
  config.initial = RandomBandSpec{3, 4, 1000.0};
  try {
    simulate(config);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= 1.0);
    CHECK(!e.partial().times.empty());
    CHECK(e.partial().times.back() < e.time());
  }
}

TEST_CASE("refinement study") {
  ScenarioConfig config = base_config();
  config.horizon = 0.2;
  config.initial = TaylorGreenSpec{1.0};

  const ConvergenceTable one = refine_study(config, {2});
  REQUIRE(one.rows.size() == 1);
  CHECK(!one.rows[0].difference);
  CHECK(one.low_modes.size() == 248);

  const ConvergenceTable tg = refine_study(config, {1, 2, 3});
  REQUIRE(tg.rows.size() == 3);
  CHECK(*tg.rows[2].difference < *tg.rows[1].difference);

  config.initial = BeltramiSpec{1, 2, 1.0};
  const ConvergenceTable bel = refine_study(config, {1, 2});
  CHECK(*bel.rows[1].difference <= 1e-10);

  CHECK_THROWS_AS(refine_study(config, {2, 1}), InvalidArgument);
  CHECK_THROWS_AS(refine_study(config, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(refine_study(config, {}), InvalidArgument);
}
