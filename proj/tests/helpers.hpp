#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gns/basis.hpp"
#include "gns/field.hpp"

namespace gns::test {

inline constexpr double kPi = 3.14159265358979323846;

inline CoefficientVector random_state(const BasisSet& basis, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(basis.size());
  for (double& x : v) x = scale * normal(rng);
  return CoefficientVector(basis.cutoff(), std::move(v));
}

inline CoefficientVector unit_mode(const BasisSet& basis, std::size_t j, double amplitude = 1.0) {
  CoefficientVector c = CoefficientVector::zeros(basis);
  c[j] = amplitude;
  return c;
}

inline double node(int l, int M) { return 2.0 * kPi * l / M; }

// Value and gradient of one basis field at x, straight from its definition.
struct ModeSample {
  double u[3];
  double grad[3][3];  // grad[a][b] = ∂_a φ_b
};

inline ModeSample sample_mode(const BasisMode& mode, double x, double y, double z) {
  const auto& k = mode.index.k;
  const double phase = k[0] * x + k[1] * y + k[2] * z;
  const double A = std::sqrt(2.0 / std::pow(2.0 * kPi, 3));
  const bool cosine = mode.index.parity == Parity::Cosine;
  const double f = cosine ? std::cos(phase) : std::sin(phase);
  const double df = cosine ? -std::sin(phase) : std::cos(phase);
  ModeSample s{};
  for (int b = 0; b < 3; ++b) {
    s.u[b] = A * mode.polarization_vector[b] * f;
    for (int a = 0; a < 3; ++a) s.grad[a][b] = A * mode.polarization_vector[b] * k[a] * df;
  }
  return s;
}

// Velocity and gradient of Σ c_j φ_j at every node of an M³ grid by direct summation.
struct DirectGrid {
  int M = 0;
  std::vector<double> u;     // [point][3]
  std::vector<double> grad;  // [point][9], 3a + b
  double cell() const { return std::pow(2.0 * kPi / M, 3); }
  std::size_t points() const { return static_cast<std::size_t>(M) * M * M; }
};

inline DirectGrid direct_grid(const BasisSet& basis, const CoefficientVector& c, int M) {
  DirectGrid g;
  g.M = M;
  g.u.assign(g.points() * 3, 0.0);
  g.grad.assign(g.points() * 9, 0.0);
  std::size_t p = 0;
  for (int ix = 0; ix < M; ++ix)
    for (int iy = 0; iy < M; ++iy)
      for (int iz = 0; iz < M; ++iz, ++p) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
          if (c[j] == 0.0) continue;
          const ModeSample s = sample_mode(basis[j], node(ix, M), node(iy, M), node(iz, M));
          for (int b = 0; b < 3; ++b) {
            g.u[3 * p + b] += c[j] * s.u[b];
            for (int a = 0; a < 3; ++a) g.grad[9 * p + 3 * a + b] += c[j] * s.grad[a][b];
          }
        }
      }
  return g;
}

// (u_a v_{b;a}, w_b) by grid quadrature.
inline double transport_quadrature(const DirectGrid& u, const DirectGrid& v, const DirectGrid& w) {
  double sum = 0.0;
  for (std::size_t p = 0; p < u.points(); ++p)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) sum += u.u[3 * p + a] * v.grad[9 * p + 3 * a + b] * w.u[3 * p + b];
  return sum * u.cell();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("gns_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace gns::test
