#pragma once

// Galerkin states, collocation grids and the norms used by the energy and
// interpolation estimates.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gns/basis.hpp"

namespace gns {

/// Galerkin coefficients c_j of u = Σ c_j φ_j. The basis is identified by its
/// cutoff, which determines it completely.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  CoefficientVector(int cutoff, std::vector<double> values);
  static CoefficientVector zeros(const BasisSet& basis);

  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool all_finite() const;

  CoefficientVector& operator+=(const CoefficientVector& other);
  CoefficientVector& operator-=(const CoefficientVector& other);
  CoefficientVector& operator*=(double alpha);

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  int cutoff_ = 0;
  std::vector<double> values_;
};

CoefficientVector operator+(CoefficientVector a, const CoefficientVector& b);
CoefficientVector operator-(CoefficientVector a, const CoefficientVector& b);
CoefficientVector operator*(double alpha, CoefficientVector c);

/// Throws DimensionError unless c has the basis' cutoff and length.
void require_matches(const BasisSet& basis, const CoefficientVector& c);

double dot(const CoefficientVector& a, const CoefficientVector& b);

/// Collocation samples on the uniform grid x_l = 2π l / M, layout
/// [ix][iy][iz][component], row-major.
struct GridField {
  int resolution = 0;
  int cutoff = 0;
  int components = 3;
  std::vector<double> values;

  std::size_t points() const {
    return static_cast<std::size_t>(resolution) * resolution * resolution;
  }
  double at(std::size_t point, int comp) const { return values[point * components + comp]; }
  /// Quadrature weight (2π/M)³ of one node.
  double cell_volume() const;
};

// ---------------------------------------------------------------------------
// Transforms

/// Separable trigonometric transforms between coefficient space of one basis
/// and an M³ collocation grid. Cost per transform is O((2K+1)·M³) per component.
class GridTransform {
 public:
  GridTransform(const BasisSet& basis, int resolution);

  int resolution() const noexcept { return resolution_; }
  const BasisSet& basis() const noexcept { return *basis_; }

  /// Velocity samples of Σ c_j φ_j.
  GridField velocity(const CoefficientVector& c) const;
  /// Velocity gradient samples, component index 3·a + b holds ∂_a u_b.
  GridField gradient(const CoefficientVector& c) const;
  /// Grid quadrature projection c_j = (u, φ_j); exact for band-limited u.
  CoefficientVector project(const GridField& u) const;

 private:
  using cplx = std::complex<double>;
  // Half-lattice complex amplitudes û_k with u = Re Σ û_k e^{ik·x}.
  std::vector<cplx> spectrum(const CoefficientVector& c) const;
  GridField synthesize(const std::vector<cplx>& spec, int components) const;

  const BasisSet* basis_;
  int resolution_;
  int width_;                       // 2K + 1
  std::vector<cplx> phase_;         // phase_[l * width + (k + K)] = e^{i k x_l}
};

/// Velocity samples at resolution M. Throws ResolutionError if M < 2·cutoff + 1.
GridField to_grid(const BasisSet& basis, const CoefficientVector& c, int resolution);

/// Reference synthesis by direct summation over modes at every node; O(n·M³).
GridField to_grid_direct(const BasisSet& basis, const CoefficientVector& c, int resolution);

/// Flat binary export: text header line "M,cutoff\n" followed by the samples
/// as little-endian 8-byte floats in GridField layout.
void write_grid_binary(std::ostream& out, const GridField& grid);
GridField read_grid_binary(std::istream& in);
/// CSV export for small grids: ix,iy,iz,ux,uy,uz.
void write_grid_csv(std::ostream& out, const GridField& grid);

// ---------------------------------------------------------------------------
// Norms

double norm_l2(const CoefficientVector& c);
double norm_h1(const BasisSet& basis, const CoefficientVector& c);

/// Grid resolution used by norm_l4: max(ceil(dealias·(2K+1)), 4K+1).
int l4_resolution(int cutoff, double dealias_factor);
/// L⁴ norm by exact quadrature of the band-limited |u|⁴.
double norm_l4(const BasisSet& basis, const CoefficientVector& c, double dealias_factor = 2.0);
/// Same quadrature on a caller-owned transform (resolution must be ≥ 4·cutoff + 1).
double norm_l4(const GridTransform& transform, const CoefficientVector& c);

// ---------------------------------------------------------------------------
// Initial conditions

/// Helical single-shell field on all modes with |k|² = shell, positive
/// helicity (curl u = |k| u), random per-wavevector amplitudes, normalized to
/// ‖u‖ = amplitude.
struct BeltramiSpec {
  int shell = 1;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
};

/// Gaussian coefficients on every mode with |k|² ≤ max_shell, normalized to
/// ‖u‖ = amplitude.
struct RandomBandSpec {
  int max_shell = 1;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
};

/// u = amplitude · (sin x cos y cos z, −cos x sin y cos z, 0).
struct TaylorGreenSpec {
  double amplitude = 1.0;
};

struct ExplicitSpec {
  std::vector<double> coefficients;
};

using InitialConditionSpec = std::variant<BeltramiSpec, RandomBandSpec, TaylorGreenSpec, ExplicitSpec>;

/// c_m(0) = (u_0, φ_m) for the built-in initial fields.
CoefficientVector project_initial(const InitialConditionSpec& spec, const BasisSet& basis);

/// Parse "taylor_green[:A]", "beltrami:S[:SEED[:A]]", "random_band:S:A[:SEED]",
/// "explicit:c0,c1,...". `default_seed` fills an omitted seed.
InitialConditionSpec parse_initial_condition(const std::string& text, std::uint64_t default_seed);
std::string to_string(const InitialConditionSpec& spec);

/// Copy coefficients onto another basis by mode identity; modes absent from
/// the target are dropped, new modes start at zero.
CoefficientVector embed(const BasisSet& from, const CoefficientVector& c, const BasisSet& to);

/// Seeded isotropic direction: Gaussian coefficients on every mode, scaled to L² norm `norm`.
CoefficientVector random_direction(const BasisSet& basis, std::uint64_t seed, double norm);

}  // namespace gns
