#ifndef CONTSPEC_DISPERSION_HPP
#define CONTSPEC_DISPERSION_HPP

#include <complex>
#include <optional>
#include <vector>

#include "contspec/model.hpp"
#include "contspec/selfenergy.hpp"

namespace contspec {

/// Which rationalized dispersion equation a polynomial instance represents.
enum class PolyKind { TwoState1D, Single1D, TwoState3D, Single3D, Generic };

/// Coupling normalization of the rationalized polynomial. Full substitutes
/// the closed-form self-energy directly and is normative; Halved replaces
/// alpha^2 by alpha^2/2 and reproduces the alternative printed normalization
/// of the 3D two-state equation. The two agree after alpha -> alpha/sqrt(2).
enum class CouplingConvention { Full, Halved };

/// Real-coefficient polynomial whose roots are the dispersion solutions on
/// both sheet branches. Degrees: 5 (1D two-state), 3 (1D single),
/// 4 (3D two-state), 2 (3D single).
struct DispersionPolynomial {
  std::vector<long double> coeffs;  // ascending; constant term first
  PolyKind kind = PolyKind::Generic;
  CouplingConvention convention = CouplingConvention::Full;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Physical category of a dispersion root.
enum class RootCategory {
  BoundFirstSheet,  // real root whose first-sheet residual vanishes (PBS,
                    // ordinary bound state, or decoupled double real root)
  Resonance,        // Im z < 0
  AntiResonance,    // Im z > 0
  RealSecondSheet,  // real root satisfied only by the continued branch
  Degenerate        // no branch test is meaningful (branch point or no fit)
};

/// One dispersion root with its branch assignment and residual certificate.
struct ClassifiedRoot {
  std::complex<double> z;             // root value
  std::optional<SheetBranch> branch;  // empty when no branch satisfies
  RootCategory category = RootCategory::Degenerate;
  double residual = 0.0;  // |det(H_eff(z) - z I)| on the assigned branch
  int multiplicity = 1;
};

/// Full classified spectrum at one parameter point.
struct Spectrum {
  ModelParams params;
  std::vector<ClassifiedRoot> roots;  // ordered by (Re z, Im z)
  int n_complex_pairs = 0;            // resonance/anti-resonance pairs
};

/// One polynomial root with multiplicity, before classification.
struct PolyRoot {
  std::complex<double> z;
  int multiplicity = 1;
  bool converged = true;
};

/// Rationalized dispersion polynomial for the given parameters:
/// with P(z) = (z - eps_a)(z - eps_b) - c0 R(z) and
/// R(z) = alpha_a^2 (z - eps_b) + alpha_b^2 (z - eps_a)
/// (single state: P = z - eps_a - c0 alpha^2, R = alpha^2), returns
///   z P^2 + |c1|^2 R^2   (1D)  or  P^2 + |c1|^2 z R^2   (3D).
DispersionPolynomial build_dispersion(
    const ModelParams& p,
    CouplingConvention convention = CouplingConvention::Full);

/// All roots with multiplicity: companion-matrix eigenvalues, Newton
/// polishing (500-iteration cap), clustering at relative radius 1e-9 with a
/// vanishing-derivative confirmation for multiple roots. The root multiset
/// is exactly closed under conjugation. Throws std::invalid_argument when
/// degree < 1 and std::runtime_error when polishing fails to converge.
std::vector<PolyRoot> solve_roots(const DispersionPolynomial& poly);

/// Branch assignment and physical category by transcendental residual
/// |det(H_eff(z) - z I)| evaluated with sigma_closed on both branches;
/// a branch fits when its residual is below 1e-9 * max(1, |z|^2). Roots
/// within 1e-10 of the branch point z = 0 are labeled Degenerate (the
/// self-energy diverges there; no residual test is meaningful).
ClassifiedRoot classify_root(std::complex<double> z, const ModelParams& p);

/// build -> solve -> classify, with deterministic (Re z, Im z) ordering.
Spectrum spectrum(const ModelParams& p);

/// The three right-hand-side terms of the resolvent form of the dispersion
/// relation z = eps_a + alpha_a^2 sigma + alpha_a^2 alpha_b^2 sigma^2 / (z -
/// eps_b - alpha_b^2 sigma): unperturbed energy, direct continuum shift, and
/// indirect coupling through the continuum.
struct DispersionTerms {
  std::complex<double> direct;           // eps_a
  std::complex<double> continuum_shift;  // alpha_a^2 sigma(z)
  std::complex<double> indirect;         // coupling through |b> and the band
};

/// Terms evaluated with sigma on the branch classify_root assigns to z
/// (first sheet when no branch fits). Throws std::domain_error at a pole of
/// the indirect term.
DispersionTerms dispersion_terms(std::complex<double> z, const ModelParams& p);

}  // namespace contspec

#endif  // CONTSPEC_DISPERSION_HPP
