#include "gns/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gns/config.hpp"
#include "gns/errors.hpp"
#include "gns/io.hpp"
#include "gns/verifier.hpp"

namespace gns {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Manifest {
  std::string command;
  ScenarioConfig config;
  std::vector<std::string> outputs;
  std::string status = "ok";
  std::optional<double> failure_time;
  Clock::time_point started = Clock::now();
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path.string());
  file << text;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  write_text(path, buffer.str());
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["scenario"] = m.config.id;
  j["config"] = to_config_text(m.config);
  j["version"] = kVersion;
  j["seed"] = m.config.seed;
  j["outputs"] = m.outputs;
  j["status"] = m.status;
  j["failure_time"] = m.failure_time ? nlohmann::ordered_json(*m.failure_time) : nlohmann::ordered_json(nullptr);
  j["wall_clock_seconds"] = std::chrono::duration<double>(Clock::now() - m.started).count();
  write_text(dir / "manifest.json", j.dump(2) + "\n");
}

fs::path prepare_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());
  return dir;
}

void write_trajectory_files(const fs::path& dir, const Trajectory& traj, bool states, Manifest& manifest) {
  write_file(dir / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, traj); });
  manifest.outputs.push_back("trajectory.csv");
  if (states) {
    write_file(dir / "states.csv", [&](std::ostream& o) { write_states_csv(o, traj); });
    manifest.outputs.push_back("states.csv");
  }
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, std::ostream& out) {
  Manifest manifest;
  manifest.command = "simulate";
  manifest.config = parse_config_file(config_path);
  const fs::path dir = prepare_dir(out_dir);
  const Problem problem = make_problem(manifest.config);
  try {
    const Trajectory traj = simulate(problem);
    write_trajectory_files(dir, traj, manifest.config.dump_states, manifest);
    write_manifest(dir, manifest);
    out << "simulate: " << traj.samples() << " samples written to " << dir.string() << '\n';
    return kExitPass;
  } catch (const DivergenceError& e) {
    write_trajectory_files(dir, e.partial(), manifest.config.dump_states, manifest);
    manifest.status = "diverged";
    manifest.failure_time = e.time();
    write_manifest(dir, manifest);
    throw;
  }
}

int cmd_oracle(const std::string& config_path, const std::string& out_dir, std::ostream& out) {
  Manifest manifest;
  manifest.command = "oracle";
  manifest.config = parse_config_file(config_path);
  manifest.config.nonlinear = false;
  const fs::path dir = prepare_dir(out_dir);
  const Trajectory traj = stokes_oracle(manifest.config);
  write_trajectory_files(dir, traj, manifest.config.dump_states, manifest);
  write_manifest(dir, manifest);
  out << "oracle: " << traj.samples() << " samples written to " << dir.string() << '\n';
  return kExitPass;
}

// Cutoff and ν recorded next to the trajectory must agree with the config.
void check_manifest(const fs::path& manifest_path, const ScenarioConfig& config) {
  std::ifstream file(manifest_path);
  if (!file) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest.json: " + std::string(e.what()));
  }
  if (!j.contains("config") || !j["config"].is_string()) throw ConfigError("manifest.json: missing config echo");
  std::istringstream echo(j["config"].get<std::string>());
  const ScenarioConfig recorded = parse_config(echo);
  if (recorded.cutoff != config.cutoff) {
    throw DimensionError("trajectory was produced at cutoff " + std::to_string(recorded.cutoff) + ", config has " +
                         std::to_string(config.cutoff));
  }
  if (recorded.nu != config.nu) {
    throw ConfigError("trajectory was produced with nu=" + format_double(recorded.nu) + ", config has nu=" +
                      format_double(config.nu));
  }
  if (recorded.nonlinear != config.nonlinear) throw ConfigError("trajectory and config disagree on nonlinear");
}

int cmd_verify(const std::string& trajectory_path, const std::string& config_path,
               const std::optional<std::string>& out_dir, std::ostream& out) {
  const ScenarioConfig config = parse_config_file(config_path);
  const fs::path traj_file(trajectory_path);
  const fs::path source_dir = traj_file.has_parent_path() ? traj_file.parent_path() : fs::path(".");
  check_manifest(source_dir / "manifest.json", config);

  std::ifstream traj_in(traj_file);
  if (!traj_in) throw ConfigError("cannot read " + trajectory_path);
  Trajectory traj = read_trajectory_csv(traj_in);

  const std::vector<double> expected = sample_times(config.horizon, config.dt, config.stride);
  if (expected.size() != traj.samples() || expected.back() != traj.times.back()) {
    throw ConfigError("trajectory sample times do not match the config horizon, dt and stride");
  }

  const Problem problem = make_problem(config);
  std::ifstream states_in(source_dir / "states.csv");
  if (states_in) {
    read_states_csv(states_in, *problem.basis, traj);
  } else if (problem.forcing.kind() != ForcingKind::Zero) {
    throw ConfigError("forced run requires states.csv next to the trajectory");
  }
  accumulate_work(traj, problem);

  const std::vector<BoundReport> reports = certify(traj, problem, config.id);
  const fs::path dir = prepare_dir(out_dir ? *out_dir : source_dir.string());
  write_text(dir / "report.json", reports_to_json(reports));
  int failures = 0;
  for (const BoundReport& r : reports) {
    if (!r.satisfied) {
      ++failures;
      out << "FAILED " << r.name << " at t=" << format_double(r.t) << ": lhs=" << format_double(r.lhs)
          << " rhs=" << format_double(r.rhs) << '\n';
    }
  }
  out << "verify: " << reports.size() - failures << "/" << reports.size() << " checks satisfied\n";
  return failures == 0 ? kExitPass : kExitVerificationFailure;
}

int cmd_twin(const std::string& config_path, double delta, std::optional<std::uint64_t> seed, double slack,
             const std::string& out_dir, std::ostream& out) {
  if (!(delta >= 0.0)) throw InvalidArgument("--delta must be non-negative");
  if (!(slack >= 0.0)) throw InvalidArgument("--slack must be non-negative");
  Manifest manifest;
  manifest.command = "twin";
  manifest.config = parse_config_file(config_path);
  const fs::path dir = prepare_dir(out_dir);
  TwinOptions options;
  options.slack = slack;
  const Problem problem = make_problem(manifest.config);
  const TwinResult result = twin_uniqueness(problem, delta, seed.value_or(manifest.config.seed), options);

  std::vector<BoundReport> reports = result.envelope;
  reports.insert(reports.end(), result.splitting.begin(), result.splitting.end());
  for (auto&& extra : {pointwise_bound_check(*problem.basis, result.u, result.w),
                       remark1_check(*problem.basis, result.u, result.w, problem.nu)}) {
    reports.insert(reports.end(), extra.begin(), extra.end());
  }
  for (BoundReport& r : reports) r.scenario = manifest.config.id;

  write_file(dir / "separation.csv", [&](std::ostream& o) { write_separation_csv(o, result.series); });
  write_text(dir / "report.json", reports_to_json(reports));
  manifest.outputs = {"separation.csv", "report.json"};
  write_manifest(dir, manifest);

  int failures = 0;
  for (const BoundReport& r : reports) {
    if (!r.satisfied) {
      ++failures;
      out << "FAILED " << r.name << " at t=" << format_double(r.t) << ": lhs=" << format_double(r.lhs)
          << " rhs=" << format_double(r.rhs) << '\n';
    }
  }
  out << "twin: " << reports.size() - failures << "/" << reports.size() << " checks satisfied\n";
  return failures == 0 ? kExitPass : kExitVerificationFailure;
}

std::vector<int> parse_cutoffs(const std::string& text) {
  std::vector<int> cutoffs;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      cutoffs.push_back(k);
    } catch (const std::exception&) {
      throw InvalidArgument("--cutoffs: invalid entry '" + item + "'");
    }
  }
  if (cutoffs.empty()) throw InvalidArgument("--cutoffs: empty list");
  return cutoffs;
}

int cmd_refine(const std::string& config_path, const std::string& cutoffs, const std::string& out_dir,
               std::ostream& out) {
  Manifest manifest;
  manifest.command = "refine";
  manifest.config = parse_config_file(config_path);
  const std::vector<int> list = parse_cutoffs(cutoffs);
  const fs::path dir = prepare_dir(out_dir);
  const ConvergenceTable table = refine_study(manifest.config, list);
  write_file(dir / "convergence.csv", [&](std::ostream& o) { write_convergence_csv(o, table); });
  manifest.outputs = {"convergence.csv"};
  write_manifest(dir, manifest);
  out << "refine: " << table.rows.size() << " cutoffs written to " << dir.string() << '\n';
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galerkin Navier-Stokes solver and estimate verifier on the periodic box", "gns"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, out_dir = ".", trajectory_path, cutoffs;
  std::optional<std::string> verify_out;
  std::optional<std::uint64_t> seed;
  double delta = 1e-6, slack = TwinOptions{}.slack;
  int cutoff = 1;

  auto* simulate_cmd = app.add_subcommand("simulate", "integrate a scenario and write trajectory.csv");
  simulate_cmd->add_option("--config", config_path, "scenario file")->required();
  simulate_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* verify_cmd = app.add_subcommand("verify", "check estimates on a recorded trajectory");
  verify_cmd->add_option("--trajectory", trajectory_path, "trajectory.csv")->required();
  verify_cmd->add_option("--config", config_path, "scenario file")->required();
  verify_cmd->add_option("--out-dir", verify_out, "report directory (default: next to the trajectory)");

  auto* twin_cmd = app.add_subcommand("twin", "twin-solution separation experiment");
  twin_cmd->add_option("--config", config_path, "scenario file")->required();
  twin_cmd->add_option("--delta", delta, "L2 norm of the initial perturbation");
  twin_cmd->add_option("--seed", seed, "perturbation seed (default: config seed)");
  twin_cmd->add_option("--slack", slack, "relative slack on the envelope");
  twin_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* refine_cmd = app.add_subcommand("refine", "resolution refinement study");
  refine_cmd->add_option("--config", config_path, "scenario file")->required();
  refine_cmd->add_option("--cutoffs", cutoffs, "increasing comma-separated cutoffs")->required();
  refine_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* basis_cmd = app.add_subcommand("basis-info", "print the mode table as CSV");
  basis_cmd->add_option("--cutoff", cutoff, "wavevector cutoff K")->required();

  auto* tensor_cmd = app.add_subcommand("tensor-dump", "print nonzero triad coefficients as CSV");
  tensor_cmd->add_option("--cutoff", cutoff, "wavevector cutoff K")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "closed-form Stokes trajectory for a scenario");
  oracle_cmd->add_option("--config", config_path, "scenario file")->required();
  oracle_cmd->add_option("--out-dir", out_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
      return kExitPass;
    }
    err << "gns: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(config_path, out_dir, out);
    if (verify_cmd->parsed()) return cmd_verify(trajectory_path, config_path, verify_out, out);
    if (twin_cmd->parsed()) return cmd_twin(config_path, delta, seed, slack, out_dir, out);
    if (refine_cmd->parsed()) return cmd_refine(config_path, cutoffs, out_dir, out);
    if (basis_cmd->parsed()) {
      write_basis_csv(out, build_basis(cutoff));
      return kExitPass;
    }
    if (tensor_cmd->parsed()) {
      write_tensor_csv(out, assemble_tensor(build_basis(cutoff)));
      return kExitPass;
    }
    if (oracle_cmd->parsed()) return cmd_oracle(config_path, out_dir, out);
  } catch (const DivergenceError& e) {
    err << "gns: divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    err << "gns: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gns
