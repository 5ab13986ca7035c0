#include "gns/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gns/errors.hpp"

namespace gns {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,E,gradE,l4,int_grad2,int_f,int_grad4\n";
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const Diagnostics& d = traj.diagnostics[s];
    out << format_double(traj.times[s]) << ',' << format_double(d.energy) << ',' << format_double(d.grad2) << ','
        << format_double(d.l4) << ',' << format_double(d.int_grad2) << ',' << format_double(d.int_forcing) << ','
        << format_double(d.int_grad4) << '\n';
  }
}

void write_states_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,j,c_j\n";
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const std::string t = format_double(traj.times[s]);
    const CoefficientVector& c = traj.states[s];
    for (std::size_t j = 0; j < c.size(); ++j) out << t << ',' << j << ',' << format_double(c[j]) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size() || std::isnan(v)) {
    throw ConfigError("malformed value '" + s + "' in row", line);
  }
  return v;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "t,E,gradE,l4,int_grad2,int_f,int_grad4") {
    throw ConfigError("trajectory.csv: unexpected header", 1);
  }
  Trajectory traj;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 7) throw ConfigError("trajectory.csv: expected 7 fields, got " + std::to_string(f.size()), row);
    double v[7];
    for (int q = 0; q < 7; ++q) v[q] = parse_field(f[q], row);
    if (!traj.times.empty() && !(v[0] > traj.times.back())) {
      throw ConfigError("trajectory.csv: times must increase", row);
    }
    traj.times.push_back(v[0]);
    Diagnostics d;
    d.energy = v[1];
    d.grad2 = v[2];
    d.l4 = v[3];
    d.int_grad2 = v[4];
    d.int_forcing = v[5];
    d.int_grad4 = v[6];
    traj.diagnostics.push_back(d);
  }
  if (traj.times.empty()) throw ConfigError("trajectory.csv: no samples");
  return traj;
}

void read_states_csv(std::istream& in, const BasisSet& basis, Trajectory& traj) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "t,j,c_j") throw ConfigError("states.csv: unexpected header", 1);
  const std::size_t n = basis.size();
  std::vector<CoefficientVector> states;
  std::vector<double> times;
  std::vector<double> current;
  double current_t = 0.0;
  int row = 1;
  const auto flush = [&] {
    if (current.empty()) return;
    if (current.size() != n) {
      throw DimensionError("states.csv: sample at t=" + format_double(current_t) + " has " +
                           std::to_string(current.size()) + " modes, basis has " + std::to_string(n));
    }
    times.push_back(current_t);
    states.emplace_back(basis.cutoff(), std::move(current));
    current.clear();
  };
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 3) throw ConfigError("states.csv: expected 3 fields", row);
    const double t = parse_field(f[0], row);
    const double jd = parse_field(f[1], row);
    const double value = parse_field(f[2], row);
    if (jd < 0 || jd != std::floor(jd)) throw ConfigError("states.csv: invalid mode index", row);
    const auto j = static_cast<std::size_t>(jd);
    if (j == 0) {
      flush();
      current_t = t;
    } else if (t != current_t || j != current.size()) {
      if (j >= n) throw DimensionError("states.csv: mode index " + std::to_string(j) + " outside basis of " +
                                       std::to_string(n) + " modes (row " + std::to_string(row) + ")");
      throw ConfigError("states.csv: modes out of order", row);
    }
    current.push_back(value);
  }
  flush();
  if (times.size() != traj.times.size()) {
    throw ConfigError("states.csv: " + std::to_string(times.size()) + " samples, trajectory has " +
                      std::to_string(traj.times.size()));
  }
  for (std::size_t s = 0; s < times.size(); ++s) {
    if (times[s] != traj.times[s]) throw ConfigError("states.csv: sample times differ from trajectory.csv");
  }
  traj.states = std::move(states);
}

void accumulate_work(Trajectory& traj, const Problem& problem) {
  const ForcingSchedule& f = problem.forcing;
  if (f.kind() == ForcingKind::Zero || traj.states.empty()) {
    for (Diagnostics& d : traj.diagnostics) d.int_work = 0.0;
    return;
  }
  double prev_value = 0.0, prev_rate = 0.0;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const double t = traj.times[s];
    const CoefficientVector& c = traj.states[s];
    const CoefficientVector c_dot = time_derivative(problem, c, t);
    const double a = f.magnitude(t);
    const double value = a * dot(f.pattern(), c);
    const double rate = f.magnitude_rate(t) * dot(f.pattern(), c) + a * dot(f.pattern(), c_dot);
    if (s == 0) {
      traj.diagnostics[s].int_work = 0.0;
    } else {
      const double h = t - traj.times[s - 1];
      traj.diagnostics[s].int_work =
          traj.diagnostics[s - 1].int_work + 0.5 * h * (prev_value + value) + h * h / 12.0 * (prev_rate - rate);
    }
    prev_value = value;
    prev_rate = rate;
  }
}

std::string reports_to_json(const std::vector<BoundReport>& reports) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const BoundReport& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["satisfied"] = r.satisfied;
    j["t"] = r.t;
    j["slack"] = r.slack;
    if (!r.scenario.empty()) j["scenario"] = r.scenario;
    if (!r.flag.empty()) j["flag"] = r.flag;
    array.push_back(std::move(j));
  }
  return array.dump(2) + "\n";
}

void write_separation_csv(std::ostream& out, const SeparationSeries& series) {
  out << "t,phi,envelope,ratio\n";
  for (std::size_t s = 0; s < series.times.size(); ++s) {
    out << format_double(series.times[s]) << ',' << format_double(series.phi[s]) << ','
        << format_double(series.envelope[s]) << ',' << format_double(series.ratio[s]) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "cutoff,n,difference";
  for (std::size_t q = 0; q < table.low_modes.size(); ++q) out << ",c_" << q;
  out << '\n';
  for (const ConvergenceRow& row : table.rows) {
    out << row.cutoff << ',' << row.modes << ',' << (row.difference ? format_double(*row.difference) : "");
    for (double v : row.low_modes) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_basis_csv(std::ostream& out, const BasisSet& basis) {
  out << "j,kx,ky,kz,pol,parity,lambda\n";
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const BasisMode& m = basis[j];
    out << j << ',' << m.index.k[0] << ',' << m.index.k[1] << ',' << m.index.k[2] << ',' << m.index.polarization
        << ',' << (m.index.parity == Parity::Cosine ? "cos" : "sin") << ',' << format_double(m.eigenvalue) << '\n';
  }
}

}  // namespace gns
