#ifndef CONTSPEC_JORDAN_HPP
#define CONTSPEC_JORDAN_HPP

#include <array>
#include <complex>

namespace contspec {

/// Dense 2x2 complex matrix.
struct Matrix2 {
  std::complex<double> m11;  // row 1, column 1
  std::complex<double> m12;  // row 1, column 2
  std::complex<double> m21;  // row 2, column 1
  std::complex<double> m22;  // row 2, column 2
};

/// Diagnosis of the eigenstructure of a 2x2 matrix near a spectral
/// degeneracy.
struct JordanReport {
  std::array<std::complex<double>, 2> eigenvalues;  // closed-form pair
  bool defective = false;             // true iff a genuine Jordan block
  double eigenvector_overlap = 0.0;   // |<v1, v2>| of normalized eigenvectors; 1 => coalesced
  double rank_deficiency_certificate = 0.0;  // sigma_min(H - mean(lambda) I) / ||H||_F
  bool diagonalizable_degeneracy = false;    // scalar matrix: degenerate yet diagonalizable
};

/// Local 2x2 model of a single level near its band-edge critical position:
/// [[a, 1], [-b^2 c, a]] with a = (eps_a + alpha^2)/3,
/// b = (2 pi alpha^2)^{1/3} / sqrt(3), c = eps_a - eps_c.
/// Its eigenvalues a +/- i b sqrt(c) reproduce the near-degeneracy pair of
/// the exact cubic. Throws std::invalid_argument unless alpha > 0.
Matrix2 build_2x2_single(double eps_a, double alpha);

/// Local 2x2 model of the symmetric two-level system near the embedded bound
/// state: [[a, 1], [-b^2 c, a]] with
/// a = eps_A - 2 eps_A eps_D^2 / (alpha^2 (pi^2 + 4 eps_A)),
/// b = pi eps_D^2 / (alpha^2 (pi^2 + 4 eps_A)), c = eps_A.
Matrix2 build_2x2_two(double eps_A, double eps_D, double alpha);

/// Closed-form eigen-analysis of a 2x2 matrix.
/// Defective requires eigenvalue gap < 1e-8 * ||m||_F jointly with
/// eigenvector overlap > 1 - 1e-6; a scalar matrix is reported as a
/// diagonalizable degeneracy instead (overlap 0, defective false).
JordanReport analyze(const Matrix2& m);

}  // namespace contspec

#endif  // CONTSPEC_JORDAN_HPP
