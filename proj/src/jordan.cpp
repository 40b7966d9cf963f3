#include "contspec/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using C = std::complex<double>;

double frobenius(const Matrix2& m) {
  return std::sqrt(std::norm(m.m11) + std::norm(m.m12) + std::norm(m.m21) +
                   std::norm(m.m22));
}

/// Null-direction of the singular matrix (m - lambda I), taken as the larger
/// adjugate column; zero vector if the shifted matrix vanishes identically.
std::array<C, 2> eigenvector_of(const Matrix2& m, C lambda) {
  const std::array<C, 2> col1{m.m22 - lambda, -m.m21};
  const std::array<C, 2> col2{-m.m12, m.m11 - lambda};
  const double n1 = std::sqrt(std::norm(col1[0]) + std::norm(col1[1]));
  const double n2 = std::sqrt(std::norm(col2[0]) + std::norm(col2[1]));
  return (n1 >= n2) ? col1 : col2;
}

/// Smallest singular value of a 2x2 complex matrix from the closed form
/// sigma_max^2 = (f + sqrt(f^2 - 4 d^2)) / 2, sigma_min = d / sigma_max,
/// with f = ||m||_F^2 and d = |det m|.
double sigma_min_2x2(const Matrix2& m) {
  const double f = std::norm(m.m11) + std::norm(m.m12) + std::norm(m.m21) +
                   std::norm(m.m22);
  const double d = std::abs(m.m11 * m.m22 - m.m12 * m.m21);
  const double disc = std::max(0.0, f * f - 4.0 * d * d);
  const double smax = std::sqrt(0.5 * (f + std::sqrt(disc)));
  return (smax > 0.0) ? d / smax : 0.0;
}

}  // namespace

Matrix2 build_2x2_single(double eps_a, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("build_2x2_single: alpha must be positive");
  }
  const double a2 = alpha * alpha;
  const double eps_c = -3.0 * std::pow(kPi * a2 / 4.0, 2.0 / 3.0) - a2;
  const double a = (eps_a + a2) / 3.0;
  const double b = std::cbrt(2.0 * kPi * a2) / std::sqrt(3.0);
  const double c = eps_a - eps_c;
  return Matrix2{C(a, 0.0), C(1.0, 0.0), C(-b * b * c, 0.0), C(a, 0.0)};
}

Matrix2 build_2x2_two(double eps_A, double eps_D, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("build_2x2_two: alpha must be positive");
  }
  const double denom = alpha * alpha * (kPi * kPi + 4.0 * eps_A);
  const double d2 = eps_D * eps_D;
  const double a = eps_A - 2.0 * eps_A * d2 / denom;
  const double b = kPi * d2 / denom;
  return Matrix2{C(a, 0.0), C(1.0, 0.0), C(-b * b * eps_A, 0.0), C(a, 0.0)};
}

JordanReport analyze(const Matrix2& m) {
  const C tr_half = 0.5 * (m.m11 + m.m22);
  const C det = m.m11 * m.m22 - m.m12 * m.m21;
  const C disc = std::sqrt(tr_half * tr_half - det);

  JordanReport out;
  out.eigenvalues = {tr_half + disc, tr_half - disc};

  const double scale = frobenius(m);
  const Matrix2 shifted{m.m11 - tr_half, m.m12, m.m21, m.m22 - tr_half};
  out.rank_deficiency_certificate =
      (scale > 0.0) ? sigma_min_2x2(shifted) / scale : 0.0;

  const std::array<C, 2> v1 = eigenvector_of(m, out.eigenvalues[0]);
  const std::array<C, 2> v2 = eigenvector_of(m, out.eigenvalues[1]);
  const double n1 = std::sqrt(std::norm(v1[0]) + std::norm(v1[1]));
  const double n2 = std::sqrt(std::norm(v2[0]) + std::norm(v2[1]));
  const double floor = 1e-14 * std::max(1.0, scale);
  if (n1 < floor && n2 < floor) {
    // Shifting by an eigenvalue annihilated the matrix: scalar matrix.
    out.diagonalizable_degeneracy = true;
    out.eigenvector_overlap = 0.0;
    out.defective = false;
    return out;
  }
  if (n1 >= floor && n2 >= floor) {
    const C inner = std::conj(v1[0]) * v2[0] + std::conj(v1[1]) * v2[1];
    out.eigenvector_overlap = std::min(1.0, std::abs(inner) / (n1 * n2));
  } else {
    // One shifted matrix vanished but not the other cannot happen for equal
    // eigenvalues; for distinct ones a zero column means a repeated pick.
    out.eigenvector_overlap = 1.0;
  }

  const double gap = std::abs(out.eigenvalues[0] - out.eigenvalues[1]);
  out.defective = gap < 1e-8 * scale && out.eigenvector_overlap > 1.0 - 1e-6;
  return out;
}

}  // namespace contspec
