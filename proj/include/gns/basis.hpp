#pragma once

// Divergence-free real Fourier basis on the periodic box [0, 2π)³.
//
// Each basis field is
//
//     φ(x) = A e cos(k·x)   or   φ(x) = A e sin(k·x),    A = sqrt(2 / (2π)³),
//
// with k a nonzero integer wavevector taken from the lexicographically positive
// half-lattice and e one of two unit polarization vectors orthogonal to k.
// These fields are L²-orthonormal and (∇φ_i, ∇φ_j) = |k_j|² δ_ij, so the
// Galerkin system for the coefficients has a diagonal viscous part.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gns {

using Vec3 = std::array<double, 3>;
using IVec3 = std::array<int, 3>;

enum class Parity : std::uint8_t { Cosine = 0, Sine = 1 };

struct ModeIndex {
  IVec3 k{};
  int polarization = 1;  ///< 1 or 2
  Parity parity = Parity::Cosine;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

struct BasisMode {
  ModeIndex index;
  Vec3 polarization_vector{};
  double eigenvalue = 0.0;  ///< |k|²
};

/// Normalization amplitude sqrt(2/(2π)³) giving unit L² norm.
double mode_amplitude();

/// Volume of the periodic box, (2π)³.
double box_volume();

int norm2(const IVec3& k);

/// True when the first nonzero component of k is positive.
bool is_half_lattice(const IVec3& k);

/// Ordered, immutable set of basis modes with |k|_∞ ≤ cutoff.
class BasisSet {
 public:
  BasisSet(int cutoff, std::vector<BasisMode> modes);

  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return modes_.size(); }
  const BasisMode& operator[](std::size_t j) const { return modes_[j]; }
  std::span<const BasisMode> modes() const noexcept { return modes_; }
  auto begin() const noexcept { return modes_.begin(); }
  auto end() const noexcept { return modes_.end(); }

  /// Index of the first of the four modes carrying half-lattice wavevector k,
  /// or -1 when k is not represented (outside the cutoff or not canonical).
  long first_mode_of(const IVec3& k) const;

  /// Position of a mode, or -1 if absent.
  long find(const ModeIndex& index) const;

 private:
  std::size_t slot(const IVec3& k) const;

  int cutoff_;
  std::vector<BasisMode> modes_;
  std::vector<long> first_by_k_;  // dense over [-cutoff, cutoff]³
};

/// Orthonormal pair (e1, e2) spanning the plane orthogonal to k.
/// e1 = normalize(k × a) with a the first standard axis not parallel to k,
/// e2 = normalize(k × e1). Throws InvalidArgument for k = 0.
std::pair<Vec3, Vec3> polarization_pair(const IVec3& k);

/// All divergence-free modes with 0 < |k|_∞ ≤ cutoff, four per half-lattice
/// wavevector, sorted by (λ, lexicographic k, polarization, parity).
BasisSet build_basis(int cutoff);

struct GramReport {
  double max_gram_deviation = 0.0;       ///< max |(φ_i, φ_j) − δ_ij|
  double max_stiffness_deviation = 0.0;  ///< max |(∇φ_i, ∇φ_j) − λ_j δ_ij|
};

/// Gram and stiffness matrices by tensor-product grid quadrature with
/// `resolution` nodes per axis. Requires resolution ≥ 2·cutoff + 1.
GramReport gram_report(const BasisSet& basis, int resolution);

}  // namespace gns
