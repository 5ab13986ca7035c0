#include "gns/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <string>
#include <unordered_map>

#include "gns/errors.hpp"
#include "gns/parallel.hpp"

namespace gns {

namespace {

using cplx = std::complex<double>;

// Coefficients (a₊, a₋) of ψ(θ) = a₊ e^{iθ} + a₋ e^{−iθ}.
struct Exponential {
  cplx plus;
  cplx minus;
};

Exponential exponential_of(Parity parity) {
  return parity == Parity::Cosine ? Exponential{{0.5, 0.0}, {0.5, 0.0}} : Exponential{{0.0, -0.5}, {0.0, 0.5}};
}

// d/dθ multiplies a₊ by i and a₋ by −i.
Exponential derivative(Exponential e) { return {e.plus * cplx{0.0, 1.0}, e.minus * cplx{0.0, -1.0}}; }

// (2π)⁻³ ∫ f1(k1·x) f2(k2·x) f3(k3·x) dx over the box.
double triple_mean(const Exponential f[3], const IVec3 k[3]) {
  cplx sum{};
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1}) {
        bool resonant = true;
        for (int a = 0; a < 3; ++a) {
          if (s1 * k[0][a] + s2 * k[1][a] + s3 * k[2][a] != 0) {
            resonant = false;
            break;
          }
        }
        if (!resonant) continue;
        sum += (s1 > 0 ? f[0].plus : f[0].minus) * (s2 > 0 ? f[1].plus : f[1].minus) *
               (s3 > 0 ? f[2].plus : f[2].minus);
      }
  return sum.real();
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

IVec3 canonical(const IVec3& k) { return is_half_lattice(k) ? k : IVec3{-k[0], -k[1], -k[2]}; }

// Entries smaller than this are roundoff in an analytically zero product.
constexpr double kDropThreshold = 1e-13;

double analytic_entry(const BasisSet& basis, std::size_t i, std::size_t j, std::size_t m) {
  const BasisMode& mi = basis[i];
  const BasisMode& mj = basis[j];
  const BasisMode& mm = basis[m];
  const IVec3& kj = mj.index.k;
  const double transport = mi.polarization_vector[0] * kj[0] + mi.polarization_vector[1] * kj[1] +
                           mi.polarization_vector[2] * kj[2];
  const double alignment = dot3(mj.polarization_vector, mm.polarization_vector);
  if (transport == 0.0 || alignment == 0.0) return 0.0;
  const Exponential f[3] = {exponential_of(mi.index.parity), derivative(exponential_of(mj.index.parity)),
                            exponential_of(mm.index.parity)};
  const IVec3 k[3] = {mi.index.k, kj, mm.index.k};
  const double A = mode_amplitude();
  return A * A * A * box_volume() * transport * alignment * triple_mean(f, k);
}

}  // namespace

TriadTensor::TriadTensor(int cutoff, std::size_t modes, std::vector<TriadEntry> entries)
    : cutoff_(cutoff), modes_(modes) {
  std::sort(entries.begin(), entries.end(), [](const TriadEntry& a, const TriadEntry& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  offset_.assign(modes_ + 1, 0);
  i_.reserve(entries.size());
  j_.reserve(entries.size());
  value_.reserve(entries.size());
  for (const TriadEntry& e : entries) {
    if (e.i >= modes_ || e.j >= modes_ || e.m >= modes_) throw DimensionError("triad entry index out of range");
    ++offset_[e.m + 1];
    i_.push_back(e.i);
    j_.push_back(e.j);
    value_.push_back(e.value);
  }
  for (std::size_t m = 0; m < modes_; ++m) offset_[m + 1] += offset_[m];
}

std::vector<TriadEntry> TriadTensor::entries() const {
  std::vector<TriadEntry> out;
  out.reserve(value_.size());
  for (std::size_t m = 0; m < modes_; ++m) {
    for (std::size_t e = offset_[m]; e < offset_[m + 1]; ++e) {
      out.push_back({i_[e], j_[e], static_cast<std::uint32_t>(m), value_[e]});
    }
  }
  return out;
}

double TriadTensor::at(std::uint32_t i, std::uint32_t j, std::uint32_t m) const {
  if (m >= modes_) return 0.0;
  std::size_t lo = offset_[m];
  std::size_t hi = offset_[m + 1];
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (i_[mid] < i || (i_[mid] == i && j_[mid] < j)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return (lo < offset_[m + 1] && i_[lo] == i && j_[lo] == j) ? value_[lo] : 0.0;
}

TriadTensor TriadTensor::with_perturbed_entry(std::uint32_t i, std::uint32_t j, std::uint32_t m,
                                              double delta) const {
  std::vector<TriadEntry> list = entries();
  auto it = std::find_if(list.begin(), list.end(),
                         [&](const TriadEntry& e) { return e.i == i && e.j == j && e.m == m; });
  if (it == list.end()) {
    list.push_back({i, j, m, delta});
  } else {
    it->value += delta;
  }
  return TriadTensor(cutoff_, modes_, std::move(list));
}

void TriadTensor::require(const CoefficientVector& c) const {
  if (c.cutoff() != cutoff_ || c.size() != modes_) {
    throw DimensionError("state of length " + std::to_string(c.size()) + " does not match tensor of " +
                         std::to_string(modes_) + " modes (cutoff " + std::to_string(cutoff_) + ")");
  }
}

void TriadTensor::contract(const CoefficientVector& u, const CoefficientVector& v, std::vector<double>& out) const {
  require(u);
  require(v);
  out.assign(modes_, 0.0);
  const double* uu = u.values().data();
  const double* vv = v.values().data();
  parallel_for(modes_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      double s = 0.0;
      for (std::size_t e = offset_[m]; e < offset_[m + 1]; ++e) s += value_[e] * uu[i_[e]] * vv[j_[e]];
      out[m] = s;
    }
  });
}

TriadTensor assemble_tensor(const BasisSet& basis) {
  const std::size_t n = basis.size();
  if (n == 0) throw InvalidArgument("assemble_tensor: empty basis");
  std::vector<std::vector<TriadEntry>> by_m(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const IVec3& km = basis[m].index.k;
      std::vector<TriadEntry>& out = by_m[m];
      for (std::size_t i = 0; i < n; ++i) {
        const IVec3& ki = basis[i].index.k;
        // Resonance ±k_i ± k_j ± k_m = 0 leaves k_j ∈ {±(k_m − k_i), ±(k_m + k_i)}.
        const IVec3 diff{km[0] - ki[0], km[1] - ki[1], km[2] - ki[2]};
        const IVec3 sum{km[0] + ki[0], km[1] + ki[1], km[2] + ki[2]};
        long firsts[2] = {-1, -1};
        if (diff != IVec3{0, 0, 0}) firsts[0] = basis.first_mode_of(canonical(diff));
        if (sum != IVec3{0, 0, 0}) firsts[1] = basis.first_mode_of(canonical(sum));
        if (firsts[0] > firsts[1]) std::swap(firsts[0], firsts[1]);
        for (long first : firsts) {
          if (first < 0) continue;
          for (std::size_t j = static_cast<std::size_t>(first); j < static_cast<std::size_t>(first) + 4; ++j) {
            const double v = analytic_entry(basis, i, j, m);
            if (std::abs(v) > kDropThreshold) {
              out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             static_cast<std::uint32_t>(m), v});
            }
          }
        }
      }
    }
  });
  std::size_t total = 0;
  for (const auto& v : by_m) total += v.size();
  std::vector<TriadEntry> all;
  all.reserve(total);
  for (auto& v : by_m) all.insert(all.end(), v.begin(), v.end());
  return TriadTensor(basis.cutoff(), n, std::move(all));
}

double tensor_entry_quadrature(const BasisSet& basis, std::size_t i, std::size_t j, std::size_t m,
                               int resolution) {
  if (resolution < 3 * basis.cutoff() + 1) {
    throw ResolutionError("tensor_entry_quadrature: resolution must be >= 3*cutoff+1");
  }
  const long M = resolution;
  const double h = 2.0 * std::numbers::pi / resolution;
  const double A = mode_amplitude();
  const BasisMode* mode[3] = {&basis[i], &basis[j], &basis[m]};
  const double transport = dot3(mode[0]->polarization_vector,
                                {double(mode[1]->index.k[0]), double(mode[1]->index.k[1]),
                                 double(mode[1]->index.k[2])});
  const double alignment = dot3(mode[1]->polarization_vector, mode[2]->polarization_vector);
  double sum = 0.0;
  for (long x = 0; x < M; ++x)
    for (long y = 0; y < M; ++y)
      for (long z = 0; z < M; ++z) {
        double f[3];
        for (int q = 0; q < 3; ++q) {
          const IVec3& k = mode[q]->index.k;
          const double theta = h * static_cast<double>(((k[0] * x + k[1] * y + k[2] * z) % M + M) % M);
          const bool is_cos = mode[q]->index.parity == Parity::Cosine;
          if (q == 1) {
            f[q] = is_cos ? -std::sin(theta) : std::cos(theta);
          } else {
            f[q] = is_cos ? std::cos(theta) : std::sin(theta);
          }
        }
        sum += f[0] * f[1] * f[2];
      }
  return A * A * A * transport * alignment * sum * h * h * h;
}

CoefficientVector nonlinear_term(const TriadTensor& B, const CoefficientVector& c) {
  std::vector<double> out;
  B.contract(c, c, out);
  return CoefficientVector(c.cutoff(), std::move(out));
}

CoefficientVector nonlinear_term_pseudospectral(const BasisSet& basis, const CoefficientVector& c) {
  const GridTransform transform(basis, 3 * basis.cutoff() + 1);
  const GridField u = transform.velocity(c);
  const GridField grad = transform.gradient(c);
  GridField advection{u.resolution, u.cutoff, 3, std::vector<double>(u.values.size(), 0.0)};
  for (std::size_t p = 0; p < u.points(); ++p) {
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a) s += u.at(p, a) * grad.at(p, 3 * a + b);
      advection.values[p * 3 + b] = s;
    }
  }
  return transform.project(advection);
}

double trilinear(const TriadTensor& B, const CoefficientVector& u, const CoefficientVector& v,
                 const CoefficientVector& w) {
  std::vector<double> out;
  B.contract(u, v, out);
  if (w.size() != out.size() || w.cutoff() != B.cutoff()) throw DimensionError("trilinear: basis mismatch");
  double s = 0.0;
  for (std::size_t m = 0; m < out.size(); ++m) s += out[m] * w[m];
  return s;
}

double weak_pairing(const TriadTensor& B, const CoefficientVector& u, const CoefficientVector& v) {
  return trilinear(B, u, u, v);
}

double skew_report(const TriadTensor& B) {
  const std::vector<TriadEntry> list = B.entries();
  const auto key = [](std::uint64_t i, std::uint64_t j, std::uint64_t m) { return (i << 42) | (j << 21) | m; };
  std::unordered_map<std::uint64_t, double> lookup;
  lookup.reserve(list.size());
  for (const TriadEntry& e : list) lookup.emplace(key(e.i, e.j, e.m), e.value);
  double worst = 0.0;
  for (const TriadEntry& e : list) {
    const auto partner = lookup.find(key(e.i, e.m, e.j));
    const double other = partner == lookup.end() ? 0.0 : partner->second;
    worst = std::max(worst, std::abs(e.value + other));
  }
  return worst;
}

void write_tensor_csv(std::ostream& out, const TriadTensor& B) {
  std::vector<TriadEntry> list = B.entries();
  std::sort(list.begin(), list.end(), [](const TriadEntry& a, const TriadEntry& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.m < b.m;
  });
  out << "i,j,m,value\n";
  char buf[96];
  for (const TriadEntry& e : list) {
    std::snprintf(buf, sizeof buf, "%u,%u,%u,%.17g\n", e.i, e.j, e.m, e.value);
    out << buf;
  }
}

}  // namespace gns
