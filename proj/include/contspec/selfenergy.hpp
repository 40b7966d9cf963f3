#ifndef CONTSPEC_SELFENERGY_HPP
#define CONTSPEC_SELFENERGY_HPP

#include <complex>

#include "contspec/model.hpp"

namespace contspec {

/// Sign s in sigma_s(z) = c0 + s*c1*z^eta. The self-energy is a two-valued
/// function of z; Plus reproduces the closed form obtained by contour
/// integration of the defining integral.
enum class SheetBranch { Plus, Minus };

/// Coefficients of the closed-form self-energy sigma_s(z) = c0 + s*c1*z^eta.
struct SigmaCoefficients {
  double c0;                // constant (semicircle) term
  std::complex<double> c1;  // pure-imaginary branch coefficient
  double eta;               // exponent: -1/2 (1D) or +1/2 (3D)
};

/// 1D: c0 = 1, c1 = -i*pi/2, eta = -1/2.  3D: c0 = -pi, c1 = -i*pi^2/2, eta = +1/2.
SigmaCoefficients sigma_coefficients(Medium medium);

/// Closed-form self-energy on the requested branch, with the principal
/// branch of z^eta (cut on the negative real axis of z).
/// Throws std::domain_error at z = 0 (branch point; divergent in 1D).
std::complex<double> sigma_closed(std::complex<double> z, SheetBranch branch,
                                  Medium medium);

/// First-sheet evaluation: Plus for Im z >= 0, Minus for Im z < 0. This is
/// the branch assignment under which the function is analytic off the band
/// [0, 1], satisfies the Schwarz reflection sigma(conj z) = conj(sigma(z)),
/// and jumps by 2*c1*z^eta across the band.
std::complex<double> sigma_first_sheet(std::complex<double> z, Medium medium);

/// Numerical quadrature of the defining integral, as an oracle independent
/// of the closed form:
///   1D: (1/2) * Int_{-1}^{1} dk / (z - k^2)
///   3D:   pi  * Int_{0}^{1} k^2 dk / (z - k^2)
/// Adaptive subdivision to absolute tolerance 1e-10 with a 1e6-evaluation
/// budget. Throws std::domain_error when z lies within 1e-6 of the band
/// segment [0, 1], and std::runtime_error on non-convergence.
std::complex<double> sigma_quadrature(std::complex<double> z, Medium medium);

}  // namespace contspec

#endif  // CONTSPEC_SELFENERGY_HPP
