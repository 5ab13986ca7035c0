#include "gns/basis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "gns/errors.hpp"

namespace gns {

namespace {

IVec3 cross(const IVec3& a, const IVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 cross(const IVec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

double box_volume() {
  constexpr double L = 2.0 * std::numbers::pi;
  return L * L * L;
}

double mode_amplitude() { return std::sqrt(2.0 / box_volume()); }

int norm2(const IVec3& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }

bool is_half_lattice(const IVec3& k) {
  for (int c : k) {
    if (c != 0) return c > 0;
  }
  return false;
}

std::pair<Vec3, Vec3> polarization_pair(const IVec3& k) {
  if (k == IVec3{0, 0, 0}) throw InvalidArgument("polarization_pair: zero wavevector");
  IVec3 axis{};
  for (int a = 0; a < 3; ++a) {
    IVec3 candidate{};
    candidate[a] = 1;
    if (cross(k, candidate) != IVec3{0, 0, 0}) {
      axis = candidate;
      break;
    }
  }
  const IVec3 kxa = cross(k, axis);
  const Vec3 e1 = normalized({double(kxa[0]), double(kxa[1]), double(kxa[2])});
  const Vec3 e2 = normalized(cross(k, e1));
  return {e1, e2};
}

BasisSet::BasisSet(int cutoff, std::vector<BasisMode> modes)
    : cutoff_(cutoff), modes_(std::move(modes)) {
  const std::size_t w = 2 * static_cast<std::size_t>(cutoff_) + 1;
  first_by_k_.assign(w * w * w, -1);
  for (std::size_t j = 0; j < modes_.size(); ++j) {
    long& slot_ref = first_by_k_[slot(modes_[j].index.k)];
    if (slot_ref < 0) slot_ref = static_cast<long>(j);
  }
}

std::size_t BasisSet::slot(const IVec3& k) const {
  const std::size_t w = 2 * static_cast<std::size_t>(cutoff_) + 1;
  return ((k[0] + cutoff_) * w + (k[1] + cutoff_)) * w + (k[2] + cutoff_);
}

long BasisSet::first_mode_of(const IVec3& k) const {
  for (int c : k) {
    if (c < -cutoff_ || c > cutoff_) return -1;
  }
  return first_by_k_[slot(k)];
}

long BasisSet::find(const ModeIndex& index) const {
  const long first = first_mode_of(index.k);
  if (first < 0) return -1;
  for (long j = first; j < static_cast<long>(modes_.size()) && modes_[j].index.k == index.k; ++j) {
    if (modes_[j].index == index) return j;
  }
  return -1;
}

BasisSet build_basis(int cutoff) {
  if (cutoff < 1) {
    throw InvalidArgument("build_basis: cutoff must be >= 1 (got " + std::to_string(cutoff) + ")");
  }
  std::vector<IVec3> reps;
  for (int x = -cutoff; x <= cutoff; ++x)
    for (int y = -cutoff; y <= cutoff; ++y)
      for (int z = -cutoff; z <= cutoff; ++z)
        if (is_half_lattice({x, y, z})) reps.push_back({x, y, z});
  std::sort(reps.begin(), reps.end(), [](const IVec3& a, const IVec3& b) {
    return std::make_tuple(norm2(a), a) < std::make_tuple(norm2(b), b);
  });

  std::vector<BasisMode> modes;
  modes.reserve(reps.size() * 4);
  for (const IVec3& k : reps) {
    const auto [e1, e2] = polarization_pair(k);
    for (int p = 1; p <= 2; ++p) {
      for (Parity parity : {Parity::Cosine, Parity::Sine}) {
        modes.push_back({ModeIndex{k, p, parity}, p == 1 ? e1 : e2, double(norm2(k))});
      }
    }
  }
  return BasisSet(cutoff, std::move(modes));
}

GramReport gram_report(const BasisSet& basis, int resolution) {
  const int needed = 2 * basis.cutoff() + 1;
  if (resolution < needed) {
    throw ResolutionError("gram_report: resolution " + std::to_string(resolution) +
                          " < 2*cutoff+1 = " + std::to_string(needed));
  }
  const long n = static_cast<long>(basis.size());
  const long M = resolution;
  const long points = M * M * M;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(M);
  const double weight = h * h * h;
  const double A = mode_amplitude();

  // Rows are modes; columns run over (node, component) for values and over
  // (node, derivative, component) for gradients.
  Eigen::MatrixXd values(n, points * 3);
  Eigen::MatrixXd grads(n, points * 9);
  for (long j = 0; j < n; ++j) {
    const BasisMode& mode = basis[j];
    const IVec3& k = mode.index.k;
    const Vec3& e = mode.polarization_vector;
    const bool is_cos = mode.index.parity == Parity::Cosine;
    long p = 0;
    for (long ix = 0; ix < M; ++ix)
      for (long iy = 0; iy < M; ++iy)
        for (long iz = 0; iz < M; ++iz, ++p) {
          // Integer phase reduced mod M keeps the argument exact.
          const long q = ((k[0] * ix + k[1] * iy + k[2] * iz) % M + M) % M;
          const double theta = h * static_cast<double>(q);
          const double s = std::sin(theta);
          const double co = std::cos(theta);
          const double psi = is_cos ? co : s;
          const double dpsi = is_cos ? -s : co;
          for (int b = 0; b < 3; ++b) values(j, p * 3 + b) = A * e[b] * psi;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) grads(j, p * 9 + a * 3 + b) = A * e[b] * k[a] * dpsi;
        }
  }

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(values, weight);
  Eigen::MatrixXd stiff = Eigen::MatrixXd::Zero(n, n);
  stiff.selfadjointView<Eigen::Lower>().rankUpdate(grads, weight);

  GramReport report;
  for (long j = 0; j < n; ++j) {
    for (long i = j; i < n; ++i) {
      const double g = gram(i, j) - (i == j ? 1.0 : 0.0);
      const double s = stiff(i, j) - (i == j ? basis[j].eigenvalue : 0.0);
      report.max_gram_deviation = std::max(report.max_gram_deviation, std::abs(g));
      report.max_stiffness_deviation = std::max(report.max_stiffness_deviation, std::abs(s));
    }
  }
  return report;
}

}  // namespace gns
