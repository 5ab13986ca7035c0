#pragma once

// Triadic interaction tensor B_ijm = (φ_ia ∂_a φ_jb, φ_mb) and the Galerkin
// nonlinearity N_m(c) = Σ_ij B_ijm c_i c_j.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gns/basis.hpp"
#include "gns/field.hpp"

namespace gns {

struct TriadEntry {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t m = 0;
  double value = 0.0;
};

/// Sparse B_ijm. Entries are stored grouped by output index m and sorted by
/// (m, i, j), so the contraction for each m is a contiguous, fixed-order sum.
class TriadTensor {
 public:
  TriadTensor(int cutoff, std::size_t modes, std::vector<TriadEntry> entries);

  int cutoff() const noexcept { return cutoff_; }
  std::size_t modes() const noexcept { return modes_; }
  std::size_t entry_count() const noexcept { return value_.size(); }
  std::vector<TriadEntry> entries() const;

  /// B_ijm, or 0 when the entry is not stored.
  double at(std::uint32_t i, std::uint32_t j, std::uint32_t m) const;

  /// Same tensor with `delta` added to one entry (inserted if absent). Used to
  /// exercise the skew-symmetry report.
  TriadTensor with_perturbed_entry(std::uint32_t i, std::uint32_t j, std::uint32_t m, double delta) const;

  /// Σ_ij B_ijm u_i v_j for every m.
  void contract(const CoefficientVector& u, const CoefficientVector& v, std::vector<double>& out) const;

 private:
  void require(const CoefficientVector& c) const;

  int cutoff_;
  std::size_t modes_;
  std::vector<std::size_t> offset_;  // modes_ + 1 segment boundaries by m
  std::vector<std::uint32_t> i_;
  std::vector<std::uint32_t> j_;
  std::vector<double> value_;
};

/// Exact entries from closed-form triple trigonometric integrals. Only triads
/// with ±k_i ± k_j ± k_m = 0 are visited; numerically zero entries are dropped.
TriadTensor assemble_tensor(const BasisSet& basis);

/// Reference value of one entry by tensor-product grid quadrature at
/// resolution M ≥ 3·cutoff + 1 (exact for the cubic trigonometric integrand).
double tensor_entry_quadrature(const BasisSet& basis, std::size_t i, std::size_t j, std::size_t m,
                               int resolution);

/// N_m = Σ_ij B_ijm c_i c_j.
CoefficientVector nonlinear_term(const TriadTensor& B, const CoefficientVector& c);

/// Pseudo-spectral evaluation of the same N(c): (u·∇)u on a grid of
/// resolution ≥ 3·cutoff + 1, projected onto the basis.
CoefficientVector nonlinear_term_pseudospectral(const BasisSet& basis, const CoefficientVector& c);

/// (u_a v_{b;a}, w_b) = Σ B_ijm u_i v_j w_m.
double trilinear(const TriadTensor& B, const CoefficientVector& u, const CoefficientVector& v,
                 const CoefficientVector& w);

/// (u_a u_{b;a}, v_b).
double weak_pairing(const TriadTensor& B, const CoefficientVector& u, const CoefficientVector& v);

/// max |B_ijm + B_imj| over all stored entries (missing partners count as 0).
double skew_report(const TriadTensor& B);

/// CSV "i,j,m,value", lexicographic in (i, j, m).
void write_tensor_csv(std::ostream& out, const TriadTensor& B);

}  // namespace gns
