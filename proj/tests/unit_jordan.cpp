#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "contspec/expansions.hpp"
#include "contspec/jordan.hpp"

using namespace contspec;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("canonical Jordan block is defective") {
  const Matrix2 m{cplx(0.3, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0),
                  cplx(0.3, 0.0)};
  const JordanReport r = analyze(m);
  CHECK(r.defective);
  CHECK_FALSE(r.diagonalizable_degeneracy);
  CHECK(r.eigenvector_overlap == doctest::Approx(1.0));
  CHECK(r.eigenvalues[0] == cplx(0.3, 0.0));
  CHECK(r.eigenvalues[1] == cplx(0.3, 0.0));
  CHECK(r.rank_deficiency_certificate < 1e-12);
}

TEST_CASE("scalar matrix is a diagonalizable degeneracy") {
  const Matrix2 m{cplx(0.3, 0.1), cplx(0.0, 0.0), cplx(0.0, 0.0),
                  cplx(0.3, 0.1)};
  const JordanReport r = analyze(m);
  CHECK_FALSE(r.defective);
  CHECK(r.diagonalizable_degeneracy);
  CHECK(r.eigenvector_overlap == 0.0);
}

TEST_CASE("well-separated matrix is diagonalizable") {
  const Matrix2 m{cplx(1.0, 0.0), cplx(0.4, 0.0), cplx(0.2, 0.0),
                  cplx(-1.0, 0.0)};
  const JordanReport r = analyze(m);
  CHECK_FALSE(r.defective);
  CHECK_FALSE(r.diagonalizable_degeneracy);
  CHECK(r.eigenvector_overlap < 0.5);
  CHECK(r.rank_deficiency_certificate > 0.1);
}

TEST_CASE("single-level block reproduces the expansion eigenvalues") {
  const double alpha = 0.1;
  const double eps_c = eps_critical_single(alpha);
  for (const double u : {1e-6, 1e-4, 1e-2, -1e-4}) {
    const double eps_a = eps_c + u;
    const JordanReport r = analyze(build_2x2_single(eps_a, alpha));
    const ExpansionResult e = z_ep_single(eps_a, alpha);
    const double d1 = std::abs(r.eigenvalues[0] - e.z_plus) +
                      std::abs(r.eigenvalues[1] - e.z_minus);
    const double d2 = std::abs(r.eigenvalues[0] - e.z_minus) +
                      std::abs(r.eigenvalues[1] - e.z_plus);
    CHECK(std::min(d1, d2) < 1e-12);
  }
  CHECK_THROWS_AS(build_2x2_single(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("single-level block is defective exactly at the critical position") {
  const double alpha = 0.1;
  const double eps_c = eps_critical_single(alpha);
  CHECK(analyze(build_2x2_single(eps_c, alpha)).defective);
  // The detection boundary is far inside |eps_a - eps_c| = 1e-10.
  CHECK_FALSE(analyze(build_2x2_single(eps_c + 1e-10, alpha)).defective);
  CHECK_FALSE(analyze(build_2x2_single(eps_c - 1e-10, alpha)).defective);
  // Certificate collapses at the degeneracy and is sizable away from it.
  CHECK(analyze(build_2x2_single(eps_c, alpha)).rank_deficiency_certificate <
        1e-15);
  CHECK(analyze(build_2x2_single(eps_c + 0.01, alpha))
            .rank_deficiency_certificate > 1e-6);
}

TEST_CASE("two-level block reproduces the small-detuning pair") {
  const double alpha = 0.1;
  for (const double eps_A : {0.05, 0.2, 0.4}) {
    for (const double eps_D : {1e-3, 1e-2, 5e-2}) {
      const JordanReport r = analyze(build_2x2_two(eps_A, eps_D, alpha));
      const ExpansionResult e = z_fano_small(eps_A, eps_D, alpha);
      const double d1 = std::abs(r.eigenvalues[0] - e.z_plus) +
                        std::abs(r.eigenvalues[1] - e.z_minus);
      const double d2 = std::abs(r.eigenvalues[0] - e.z_minus) +
                        std::abs(r.eigenvalues[1] - e.z_plus);
      CHECK(std::min(d1, d2) < 1e-12);
      CHECK_FALSE(r.defective);
    }
  }
}

TEST_CASE("two-level block is defective on the embedded-bound-state locus") {
  const double alpha = 0.1;
  // eps_A = 0: the width prefactor vanishes with the level position.
  CHECK(analyze(build_2x2_two(0.0, 0.02, alpha)).defective);
  // eps_D = 0: the off-diagonal feedback vanishes; the block is a
  // textbook Jordan form [[a, 1], [0, a]].
  CHECK(analyze(build_2x2_two(0.2, 0.0, alpha)).defective);
  // Nearby interior points are diagonalizable.
  CHECK_FALSE(analyze(build_2x2_two(1e-3, 0.02, alpha)).defective);
  CHECK_FALSE(analyze(build_2x2_two(0.2, 1e-3, alpha)).defective);
}

TEST_CASE("eigenvalue identities of the raw blocks") {
  // [[a, 1], [-b^2 c, a]] has eigenvalues a +/- i b sqrt(c).
  const double alpha = 0.1;
  const double a2 = alpha * alpha;
  const double eps_A = 0.2, eps_D = 0.01;
  const double denom = a2 * (kPi * kPi + 4.0 * eps_A);
  const double a = eps_A - 2.0 * eps_A * eps_D * eps_D / denom;
  const double b = kPi * eps_D * eps_D / denom;
  const JordanReport r = analyze(build_2x2_two(eps_A, eps_D, alpha));
  const cplx expected(a, b * std::sqrt(eps_A));
  const double d1 = std::abs(r.eigenvalues[0] - expected);
  const double d2 = std::abs(r.eigenvalues[1] - expected);
  CHECK(std::min(d1, d2) < 1e-15);
}
