#ifndef CONTSPEC_SRC_POLY_HPP
#define CONTSPEC_SRC_POLY_HPP

// Internal extended-precision polynomial machinery shared by the solver and
// the resultant code. Not part of the installed API.

#include <complex>
#include <vector>

namespace contspec::detail {

using ld = long double;
using cld = std::complex<ld>;

/// Horner evaluation of c[0] + c[1]*z + ... + c[n]*z^n.
cld poly_eval(const std::vector<ld>& c, cld z);

/// Magnitude scale sum_k |c_k| |z|^k; evaluation noise is O(eps * scale).
ld poly_scale(const std::vector<ld>& c, cld z);

/// Rounding-error bound for poly_eval at z (running-error style).
ld poly_eval_bound(const std::vector<ld>& c, cld z);

/// Coefficients of the derivative polynomial.
std::vector<ld> poly_derivative(const std::vector<ld>& c);

struct SolvedRoot {
  cld z;                  // root value; exactly real when snapped
  int multiplicity = 1;   // cluster size
  bool converged = true;  // polishing reached the evaluation noise floor
};

/// All roots of a real-coefficient polynomial: companion-matrix eigenvalues,
/// Newton polishing (500-iteration cap), second-order rescue of real-axis
/// iterates stalled between the members of a narrow conjugate pair,
/// conjugate re-pairing, snap-to-real against the local evaluation noise
/// floor, double-root collapse onto the derivative root, and clustering at
/// relative radius 1e-9. Opposite-sign imaginary parts are never merged, so
/// arbitrarily narrow conjugate pairs survive. Throws std::invalid_argument
/// for a constant polynomial.
std::vector<SolvedRoot> solve_real_polynomial(std::vector<ld> coeffs);

}  // namespace contspec::detail

#endif  // CONTSPEC_SRC_POLY_HPP
