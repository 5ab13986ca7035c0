#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gns/cli.hpp"
#include "gns/config.hpp"
#include "gns/errors.hpp"
#include "gns/io.hpp"
#include "helpers.hpp"

using namespace gns;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(GNS_FIXTURE_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const char* kMinimal = "nu=1\nT=0.1\ndt=1e-3\ncutoff=1\nic=taylor_green\n";

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# scenario\nid = demo\nnu=0.5\nT=2\ndt=0.01\ncutoff=2\nic=beltrami:1\nforcing=exp:1:2:mode=3\n"
      "stride=5\nseed=42\nnonlinear=off\nstates=off\n");
  const ScenarioConfig c = parse_config(in);
  CHECK(c.id == "demo");
  CHECK(c.nu == 0.5);
  CHECK(c.horizon == 2.0);
  CHECK(c.dt == 0.01);
  CHECK(c.cutoff == 2);
  CHECK(c.stride == 5);
  CHECK(c.seed == 42);
  CHECK(!c.nonlinear);
  CHECK(!c.dump_states);
  CHECK(std::get<BeltramiSpec>(c.initial).seed == 42);
  CHECK(c.forcing.kind == ForcingKind::ExponentialDecay);

  std::istringstream echo(to_config_text(c));
  CHECK(to_config_text(parse_config(echo)) == to_config_text(c));
}

TEST_CASE("config errors carry line numbers") {
  const std::pair<const char*, int> cases[] = {
      {"nu=1\nT=1\ndt=0\ncutoff=1\nic=taylor_green\n", 3},
      {"nu=1\nT=1\ndt=1e-3\ncutoff=1\nic=taylor_green\nwind=3\n", 6},
      {"nu=1\nnu=2\n", 2},
      {"nu=abc\nT=1\ndt=1e-3\ncutoff=1\nic=taylor_green\n", 1},
      {"# c\n\nnu 1\n", 3},
      {"nu=1\nT=1\ndt=1e-3\ncutoff=1\nic=vortex\n", 5},
      {"nu=1\nT=1\ndt=1e-3\ncutoff=1\nic=taylor_green\nnonlinear=maybe\n", 6},
      {"nu=-1\nT=1\ndt=1e-3\ncutoff=1\nic=taylor_green\n", 1},
  };
  for (const auto& [text, line] : cases) {
    std::istringstream in(text);
    try {
      parse_config(in);
      FAIL("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find("line " + std::to_string(line)) == 0);
    }
  }
  std::istringstream missing("nu=1\nT=1\n");
  CHECK_THROWS_AS(parse_config(missing), ConfigError);
}

TEST_CASE("trajectory and state CSV round trip") {
  ScenarioConfig config;
  config.cutoff = 1;
  config.horizon = 0.05;
  config.dt = 0.01;
  config.initial = RandomBandSpec{3, 1, 1.0};
  const Problem p = make_problem(config);
  const Trajectory t = simulate(p);
  std::stringstream tcsv, scsv;
  write_trajectory_csv(tcsv, t);
  write_states_csv(scsv, t);
  Trajectory back = read_trajectory_csv(tcsv);
  read_states_csv(scsv, *p.basis, back);
  CHECK(back.times == t.times);
  CHECK(back.states == t.states);
  for (std::size_t s = 0; s < t.samples(); ++s) {
    CHECK(back.diagnostics[s].energy == t.diagnostics[s].energy);
    CHECK(back.diagnostics[s].int_grad4 == t.diagnostics[s].int_grad4);
  }

  std::istringstream states_again(scsv.str());
  CHECK_THROWS_AS(read_states_csv(states_again, build_basis(2), back), DimensionError);
}

TEST_CASE("corrupted trajectory rows report their line") {
  std::istringstream in("t,E,gradE,l4,int_grad2,int_f,int_grad4\n0,1,1,1,0,0,0\n0.1,1,x,1,0,0,0\n");
  try {
    read_trajectory_csv(in);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream short_row("t,E,gradE,l4,int_grad2,int_f,int_grad4\n0,1,1\n");
  CHECK_THROWS_AS(read_trajectory_csv(short_row), ConfigError);
  std::istringstream bad_header("time,E\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad_header), ConfigError);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"simulate"}).code == kExitUsage);
  CHECK(run({"simulate", "--config", "/nonexistent/x.cfg"}).code == kExitUsage);
  CHECK(run({"basis-info", "--cutoff", "0"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitPass);
  CHECK(run({"--version"}).out == std::string(kVersion) + "\n");
}

TEST_CASE("simulate and verify round trip") {
  const fs::path dir = test::scratch_dir("roundtrip");
  spit(dir / "min.cfg", kMinimal);
  const Run sim = run({"simulate", "--config", (dir / "min.cfg").string(), "--out-dir", (dir / "out").string()});
  CHECK(sim.code == kExitPass);
  for (const char* f : {"trajectory.csv", "states.csv", "manifest.json"}) CHECK(fs::exists(dir / "out" / f));

  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  CHECK(manifest["status"] == "ok");
  CHECK(manifest["version"] == kVersion);
  for (const auto& f : manifest["outputs"]) CHECK(fs::exists(dir / "out" / f.get<std::string>()));

  const Run ver = run({"verify", "--trajectory", (dir / "out" / "trajectory.csv").string(), "--config",
                       (dir / "min.cfg").string()});
  CHECK(ver.code == kExitPass);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  REQUIRE(report.is_array());
  for (const auto& r : report) {
    for (const char* key : {"name", "lhs", "rhs", "margin", "satisfied", "t"}) CHECK(r.contains(key));
  }

  // Reproducibility from the echoed config.
  spit(dir / "echo.cfg", manifest["config"].get<std::string>());
  CHECK(run({"simulate", "--config", (dir / "echo.cfg").string(), "--out-dir", (dir / "again").string()}).code == 0);
  CHECK(slurp(dir / "again" / "trajectory.csv") == slurp(dir / "out" / "trajectory.csv"));
  CHECK(slurp(dir / "again" / "states.csv") == slurp(dir / "out" / "states.csv"));
}

TEST_CASE("malformed config exits 2 with the line") {
  const fs::path dir = test::scratch_dir("badcfg");
  spit(dir / "bad.cfg", "nu=1\nT=1\ndt=0\ncutoff=1\nic=taylor_green\n");
  const Run r = run({"simulate", "--config", (dir / "bad.cfg").string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("divergence exits 3 with the failure time recorded") {
  const fs::path dir = test::scratch_dir("diverge");
  const Run r = run({"simulate", "--config", fixture("divergence.cfg"), "--out-dir", dir.string()});
  CHECK(r.code == kExitDivergence);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["status"] == "diverged");
  CHECK(manifest["failure_time"].is_number());
  CHECK(manifest["failure_time"].get<double>() > 0.0);
  CHECK(fs::exists(dir / "trajectory.csv"));
}

TEST_CASE("verify rejects corrupted and mismatched inputs") {
  const fs::path dir = test::scratch_dir("verify");
  spit(dir / "min.cfg", kMinimal);
  REQUIRE(run({"simulate", "--config", (dir / "min.cfg").string(), "--out-dir", dir.string()}).code == 0);
  const std::string traj = slurp(dir / "trajectory.csv");
  const std::string traj_path = (dir / "trajectory.csv").string();

  SUBCASE("corrupted row") {
    std::string bad = traj;
    const auto third = bad.find('\n', bad.find('\n', bad.find('\n') + 1) + 1);
    bad.insert(third + 1, "0.0025,oops\n");
    spit(dir / "trajectory.csv", bad);
    const Run r = run({"verify", "--trajectory", traj_path, "--config", (dir / "min.cfg").string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("line 4") != std::string::npos);
  }
  SUBCASE("injected energy violation") {
    std::istringstream in(traj);
    Trajectory t = read_trajectory_csv(in);
    t.diagnostics[t.samples() / 2].energy *= 1.0201;
    std::ostringstream out;
    write_trajectory_csv(out, t);
    spit(dir / "trajectory.csv", out.str());
    fs::remove(dir / "states.csv");
    const Run r = run({"verify", "--trajectory", traj_path, "--config", (dir / "min.cfg").string()});
    CHECK(r.code == kExitVerificationFailure);
    CHECK(r.out.find("FAILED energy_identity") != std::string::npos);
  }
  SUBCASE("different cutoff") {
    spit(dir / "other.cfg", "nu=1\nT=0.1\ndt=1e-3\ncutoff=2\nic=taylor_green\n");
    CHECK(run({"verify", "--trajectory", traj_path, "--config", (dir / "other.cfg").string()}).code == kExitUsage);
  }
  SUBCASE("different viscosity") {
    spit(dir / "other.cfg", "nu=0.5\nT=0.1\ndt=1e-3\ncutoff=1\nic=taylor_green\n");
    CHECK(run({"verify", "--trajectory", traj_path, "--config", (dir / "other.cfg").string()}).code == kExitUsage);
  }
  SUBCASE("states from another basis without a manifest") {
    fs::remove(dir / "manifest.json");
    spit(dir / "other.cfg", "nu=1\nT=0.1\ndt=1e-3\ncutoff=2\nic=taylor_green\n");
    CHECK(run({"verify", "--trajectory", traj_path, "--config", (dir / "other.cfg").string()}).code == kExitUsage);
  }
  SUBCASE("different horizon") {
    spit(dir / "other.cfg", "nu=1\nT=0.2\ndt=1e-3\ncutoff=1\nic=taylor_green\n");
    CHECK(run({"verify", "--trajectory", traj_path, "--config", (dir / "other.cfg").string()}).code == kExitUsage);
  }
}

TEST_CASE("forced runs need the state dump to verify") {
  const fs::path dir = test::scratch_dir("forced");
  spit(dir / "f.cfg", "nu=1\nT=0.1\ndt=1e-3\ncutoff=1\nic=taylor_green\nforcing=exp:1:1:shell=1\nstates=off\n");
  REQUIRE(run({"simulate", "--config", (dir / "f.cfg").string(), "--out-dir", dir.string()}).code == 0);
  CHECK(!fs::exists(dir / "states.csv"));
  CHECK(run({"verify", "--trajectory", (dir / "trajectory.csv").string(), "--config", (dir / "f.cfg").string()})
            .code == kExitUsage);
}

TEST_CASE("twin subcommand") {
  const fs::path dir = test::scratch_dir("twin");
  CHECK(run({"twin", "--config", fixture("twin_taylor_green.cfg"), "--delta", "0", "--out-dir", dir.string()}).code ==
        kExitPass);
  std::istringstream sep(slurp(dir / "separation.csv"));
  std::string line;
  std::getline(sep, line);
  CHECK(line == "t,phi,envelope,ratio");
  while (std::getline(sep, line)) {
    const auto a = line.find(','), b = line.find(',', a + 1);
    CHECK(line.substr(a + 1, b - a - 1) == "0");
  }
  CHECK(run({"twin", "--config", fixture("twin_taylor_green.cfg"), "--delta", "1e-6", "--out-dir", dir.string()})
            .code == kExitPass);
  CHECK(run({"twin", "--config", fixture("twin_taylor_green.cfg"), "--delta", "-1", "--out-dir", dir.string()})
            .code == kExitUsage);
}

TEST_CASE("refine, oracle and inspection subcommands") {
  const fs::path dir = test::scratch_dir("misc");
  spit(dir / "min.cfg", kMinimal);
  CHECK(run({"refine", "--config", (dir / "min.cfg").string(), "--cutoffs", "1,2", "--out-dir", dir.string()}).code ==
        kExitPass);
  const std::string conv = slurp(dir / "convergence.csv");
  CHECK(conv.rfind("cutoff,n,difference,c_0,", 0) == 0);
  CHECK(std::count(conv.begin(), conv.end(), '\n') == 3);
  CHECK(run({"refine", "--config", (dir / "min.cfg").string(), "--cutoffs", "2,1", "--out-dir", dir.string()}).code ==
        kExitUsage);

  CHECK(run({"oracle", "--config", fixture("stokes.cfg"), "--out-dir", (dir / "oracle").string()}).code == kExitPass);
  CHECK(run({"verify", "--trajectory", (dir / "oracle" / "trajectory.csv").string(), "--config",
             fixture("stokes.cfg")})
            .code == kExitPass);

  const Run basis = run({"basis-info", "--cutoff", "1"});
  CHECK(basis.code == kExitPass);
  CHECK(basis.out.rfind("j,kx,ky,kz,pol,parity,lambda\n0,0,0,1,1,cos,1\n", 0) == 0);
  CHECK(std::count(basis.out.begin(), basis.out.end(), '\n') == 53);

  const Run tensor = run({"tensor-dump", "--cutoff", "1"});
  CHECK(tensor.code == kExitPass);
  CHECK(tensor.out.rfind("i,j,m,value\n", 0) == 0);
}
