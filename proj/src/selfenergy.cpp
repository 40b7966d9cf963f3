#include "contspec/selfenergy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contspec {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Distance from z to the band segment [0, 1] on the real axis.
double band_distance(cd z) {
  const double x = std::clamp(z.real(), 0.0, 1.0);
  return std::hypot(z.real() - x, z.imag());
}

struct Quadrature {
  cd (*integrand)(double, cd);
  cd z;
  long evals = 0;
  static constexpr long kBudget = 1000000;

  cd f(double k) {
    if (++evals > kBudget) {
      throw std::runtime_error("sigma_quadrature: evaluation budget exhausted");
    }
    return integrand(k, z);
  }

  // Adaptive Simpson with the standard 1/15 Richardson error estimate.
  cd simpson(double a, double b, cd fa, cd fm, cd fb, cd whole, double tol,
             int depth) {
    const double m = 0.5 * (a + b);
    const cd fl = f(0.5 * (a + m));
    const cd fr = f(0.5 * (m + b));
    const cd left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const cd right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    const cd delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    return simpson(a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
           simpson(m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
  }

  cd integrate(double a, double b, double tol) {
    const cd fa = f(a);
    const cd fm = f(0.5 * (a + b));
    const cd fb = f(b);
    const cd whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(a, b, fa, fm, fb, whole, tol, 60);
  }
};

}  // namespace

SigmaCoefficients sigma_coefficients(Medium medium) {
  if (medium == Medium::OneD) {
    return SigmaCoefficients{1.0, cd(0.0, -kPi / 2.0), -0.5};
  }
  return SigmaCoefficients{-kPi, cd(0.0, -kPi * kPi / 2.0), 0.5};
}

std::complex<double> sigma_closed(std::complex<double> z, SheetBranch branch,
                                  Medium medium) {
  if (z == cd(0.0, 0.0)) {
    throw std::domain_error("sigma_closed: z = 0 is the branch point");
  }
  const SigmaCoefficients c = sigma_coefficients(medium);
  const double s = (branch == SheetBranch::Plus) ? 1.0 : -1.0;
  const cd root = std::sqrt(z);  // principal branch, cut on the negative real axis
  const cd zeta = (c.eta < 0.0) ? 1.0 / root : root;
  return c.c0 + s * c.c1 * zeta;
}

std::complex<double> sigma_first_sheet(std::complex<double> z, Medium medium) {
  const SheetBranch b =
      (z.imag() >= 0.0) ? SheetBranch::Plus : SheetBranch::Minus;
  return sigma_closed(z, b, medium);
}

std::complex<double> sigma_quadrature(std::complex<double> z, Medium medium) {
  if (band_distance(z) <= 1e-6) {
    throw std::domain_error("sigma_quadrature: z is too close to the band [0, 1]");
  }
  Quadrature q;
  q.z = z;
  if (medium == Medium::OneD) {
    // (1/2) Int_{-1}^{1} dk/(z - k^2); the integrand is even in k.
    q.integrand = [](double k, cd zz) { return 1.0 / (zz - k * k); };
    return q.integrate(0.0, 1.0, 1e-10);
  }
  q.integrand = [](double k, cd zz) { return cd(k * k, 0.0) / (zz - k * k); };
  return kPi * q.integrate(0.0, 1.0, 1e-10);
}

}  // namespace contspec
