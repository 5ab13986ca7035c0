#include <doctest.h>

#include <cmath>

#include "gns/basis.hpp"
#include "gns/errors.hpp"
#include "helpers.hpp"

using namespace gns;

namespace {

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

TEST_CASE("mode counts follow the half-lattice formula") {
  for (int K = 1; K <= 4; ++K) {
    const int side = 2 * K + 1;
    CHECK(build_basis(K).size() == static_cast<std::size_t>(4 * (side * side * side - 1) / 2));
  }
  CHECK(build_basis(1).size() == 52);
  CHECK(build_basis(3).size() == 684);
}

TEST_CASE("polarization rule on axis wavevectors") {
  const auto [e1, e2] = polarization_pair({1, 0, 0});
  CHECK(e1 == Vec3{0.0, 0.0, 1.0});
  CHECK(e2[0] == doctest::Approx(0.0));
  CHECK(e2[1] == doctest::Approx(-1.0));
  CHECK(e2[2] == doctest::Approx(0.0));

  const auto [f1, f2] = polarization_pair({0, 2, 0});
  CHECK(f1[2] == doctest::Approx(-1.0));
  CHECK(f2[0] == doctest::Approx(-1.0));
}

TEST_CASE("polarization vectors are orthonormal and transverse") {
  const BasisSet basis = build_basis(3);
  for (const BasisMode& m : basis) {
    const Vec3 k{double(m.index.k[0]), double(m.index.k[1]), double(m.index.k[2])};
    const Vec3& e = m.polarization_vector;
    CHECK(std::abs(dot3(k, e)) <= 1e-14);
    CHECK(std::abs(dot3(e, e) - 1.0) <= 1e-14);
  }
  for (std::size_t j = 0; j < basis.size(); j += 4) {
    CHECK(std::abs(dot3(basis[j].polarization_vector, basis[j + 2].polarization_vector)) <= 1e-14);
  }
}

TEST_CASE("zero wavevector and zero cutoff are rejected") {
  CHECK_THROWS_AS(polarization_pair({0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(build_basis(0), InvalidArgument);
  CHECK_THROWS_AS(build_basis(-2), InvalidArgument);
}

TEST_CASE("ordering, half-lattice and lookup") {
  const BasisSet basis = build_basis(2);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const BasisMode& m = basis[j];
    CHECK(is_half_lattice(m.index.k));
    CHECK(m.eigenvalue == norm2(m.index.k));
    CHECK(basis.find(m.index) == static_cast<long>(j));
    if (j > 0) CHECK(basis[j - 1].eigenvalue <= m.eigenvalue);
  }
  CHECK(basis.first_mode_of({0, 0, 3}) == -1);
  CHECK(basis.first_mode_of({0, 0, -1}) == -1);
  CHECK(basis.first_mode_of({0, 0, 1}) == 0);
}

TEST_CASE("bases nest under refinement") {
  for (int K = 1; K <= 3; ++K) {
    const BasisSet small = build_basis(K);
    const BasisSet large = build_basis(K + 1);
    for (const BasisMode& m : small) {
      const long at = large.find(m.index);
      REQUIRE(at >= 0);
      CHECK(large[at].polarization_vector == m.polarization_vector);
    }
  }
  // Cutoff 1 contains every mode with λ ≤ 3, so it is a prefix of cutoff 2.
  const BasisSet b1 = build_basis(1), b2 = build_basis(2);
  for (std::size_t j = 0; j < b1.size(); ++j) CHECK(b2[j].index == b1[j].index);
}

TEST_CASE("construction is deterministic") {
  const BasisSet a = build_basis(3), b = build_basis(3);
  REQUIRE(a.size() == b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].index == b[j].index);
    CHECK(a[j].polarization_vector == b[j].polarization_vector);
  }
}

TEST_CASE("Gram and stiffness matrices against direct point evaluation") {
  const BasisSet basis = build_basis(1);
  const int M = 4;
  const double cell = std::pow(2.0 * test::kPi / M, 3);
  std::vector<test::ModeSample> samples;
  for (int ix = 0; ix < M; ++ix)
    for (int iy = 0; iy < M; ++iy)
      for (int iz = 0; iz < M; ++iz)
        for (const BasisMode& m : basis)
          samples.push_back(test::sample_mode(m, test::node(ix, M), test::node(iy, M), test::node(iz, M)));
  const std::size_t n = basis.size();
  double gram = 0.0, stiff = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double g = 0.0, s = 0.0;
      for (std::size_t p = 0; p < samples.size() / n; ++p) {
        const auto& a = samples[p * n + i];
        const auto& b = samples[p * n + j];
        for (int q = 0; q < 3; ++q) {
          g += a.u[q] * b.u[q];
          for (int r = 0; r < 3; ++r) s += a.grad[r][q] * b.grad[r][q];
        }
      }
      gram = std::max(gram, std::abs(g * cell - (i == j ? 1.0 : 0.0)));
      stiff = std::max(stiff, std::abs(s * cell - (i == j ? basis[j].eigenvalue : 0.0)));
    }
  CHECK(gram <= 1e-12);
  CHECK(stiff <= 1e-12);

  const GramReport report = gram_report(basis, M);
  CHECK(report.max_gram_deviation <= 1e-12);
  CHECK(report.max_stiffness_deviation <= 1e-12);
}

TEST_CASE("gram_report at cutoffs 2 and 3") {
  for (int K : {2, 3}) {
    const GramReport r = gram_report(build_basis(K), 2 * K + 2);
    CHECK(r.max_gram_deviation <= 1e-12);
    CHECK(r.max_stiffness_deviation <= 1e-12);
  }
}

TEST_CASE("gram_report needs an alias-free grid") {
  CHECK_THROWS_AS(gram_report(build_basis(2), 4), ResolutionError);
  CHECK_NOTHROW(gram_report(build_basis(1), 3));
}
