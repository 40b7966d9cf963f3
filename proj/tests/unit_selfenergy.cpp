#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "contspec/selfenergy.hpp"

using namespace contspec;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("closed-form coefficients") {
  const SigmaCoefficients one = sigma_coefficients(Medium::OneD);
  CHECK(one.c0 == doctest::Approx(1.0));
  CHECK(one.c1.real() == doctest::Approx(0.0));
  CHECK(one.c1.imag() == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
  CHECK(one.eta == doctest::Approx(-0.5));

  const SigmaCoefficients three = sigma_coefficients(Medium::ThreeD);
  CHECK(three.c0 == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(three.c1.real() == doctest::Approx(0.0));
  CHECK(three.c1.imag() == doctest::Approx(-kPi * kPi / 2.0).epsilon(1e-15));
  CHECK(three.eta == doctest::Approx(0.5));
}

TEST_CASE("the two branches sum to twice the constant term") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const Medium m : {Medium::OneD, Medium::ThreeD}) {
    const double two_c0 = 2.0 * sigma_coefficients(m).c0;
    for (int i = 0; i < 200; ++i) {
      cplx z(u(rng), u(rng));
      if (std::abs(z) < 1e-3) z += cplx(1.0, 1.0);
      const cplx sum = sigma_closed(z, SheetBranch::Plus, m) +
                       sigma_closed(z, SheetBranch::Minus, m);
      CHECK(std::abs(sum - two_c0) < 1e-12);
    }
  }
}

TEST_CASE("first-sheet evaluation obeys Schwarz reflection") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const Medium m : {Medium::OneD, Medium::ThreeD}) {
    for (int i = 0; i < 200; ++i) {
      cplx z(u(rng), u(rng));
      if (std::abs(z.imag()) < 1e-6) z += cplx(0.0, 0.5);
      const cplx upper = sigma_first_sheet(z, m);
      const cplx lower = sigma_first_sheet(std::conj(z), m);
      CHECK(std::abs(std::conj(upper) - lower) < 1e-12 * std::max(1.0, std::abs(upper)));
    }
  }
}

TEST_CASE("first-sheet discontinuity across the band matches 2*c1*z^eta") {
  const double eps = 0.04;
  const double delta = 1e-10;
  const cplx above(eps, delta);
  const cplx below(eps, -delta);

  // 1D: jump -> -i*pi/sqrt(eps)
  {
    const cplx jump = sigma_first_sheet(above, Medium::OneD) -
                      sigma_first_sheet(below, Medium::OneD);
    const cplx expected(0.0, -kPi / std::sqrt(eps));
    CHECK(std::abs(jump - expected) < 1e-6 * std::abs(expected));
  }
  // 3D: jump -> -i*pi^2*sqrt(eps)
  {
    const cplx jump = sigma_first_sheet(above, Medium::ThreeD) -
                      sigma_first_sheet(below, Medium::ThreeD);
    const cplx expected(0.0, -kPi * kPi * std::sqrt(eps));
    CHECK(std::abs(jump - expected) < 1e-6 * std::abs(expected));
  }
}

TEST_CASE("closed form throws at the branch point") {
  CHECK_THROWS_AS(sigma_closed(cplx(0.0, 0.0), SheetBranch::Plus, Medium::OneD),
                  std::domain_error);
  CHECK_THROWS_AS(sigma_first_sheet(cplx(0.0, 0.0), Medium::ThreeD),
                  std::domain_error);
}

TEST_CASE("quadrature oracle anchors") {
  // Independent high-precision values of the defining integrals.
  CHECK(std::abs(sigma_quadrature(cplx(-0.01, 0.0), Medium::OneD) -
                 cplx(-14.71127674303735, 0.0)) < 1e-8);
  CHECK(std::abs(sigma_quadrature(cplx(-1.0, 0.0), Medium::OneD) -
                 cplx(-kPi / 4.0, 0.0)) < 1e-9);
  CHECK(std::abs(sigma_quadrature(cplx(-0.01, 0.0), Medium::ThreeD) -
                 cplx(-2.679424264181268, 0.0)) < 1e-8);
}

TEST_CASE("quadrature approaches the 1D closed form near the band edge") {
  for (const double x : {-1e-4, -1e-3, -1e-2}) {
    const cplx quad = sigma_quadrature(cplx(x, 0.0), Medium::OneD);
    const cplx closed = sigma_closed(cplx(x, 0.0), SheetBranch::Plus, Medium::OneD);
    CHECK(std::abs(quad - closed) < 1e-3 * std::abs(closed));
  }
}

TEST_CASE("quadrature rejects evaluation points on or near the band") {
  CHECK_THROWS_AS(sigma_quadrature(cplx(0.5, 0.0), Medium::OneD), std::domain_error);
  CHECK_THROWS_AS(sigma_quadrature(cplx(0.5, 1e-7), Medium::ThreeD), std::domain_error);
  CHECK_THROWS_AS(sigma_quadrature(cplx(1.0 + 1e-7, 0.0), Medium::OneD), std::domain_error);
  CHECK_NOTHROW(sigma_quadrature(cplx(0.5, 1e-3), Medium::OneD));
}

TEST_CASE("quadrature obeys Schwarz reflection off the real axis") {
  // The defining integral has real coefficients, so conjugating z
  // conjugates the result; this pins the sign of the imaginary part
  // independently of any branch convention.
  const cplx z(-0.5, 0.3);
  const cplx upper = sigma_quadrature(z, Medium::OneD);
  const cplx lower = sigma_quadrature(std::conj(z), Medium::OneD);
  CHECK(std::abs(std::conj(upper) - lower) < 1e-9);
  CHECK(upper.imag() < 0.0);  // retarded sign for Im z > 0
}
