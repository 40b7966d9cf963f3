#ifndef CONTSPEC_EXPANSIONS_HPP
#define CONTSPEC_EXPANSIONS_HPP

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "contspec/dispersion.hpp"
#include "contspec/model.hpp"

namespace contspec {

/// A conjugate pair produced by a small-parameter expansion, together with
/// the validity window of the truncation it came from.
struct ExpansionResult {
  std::complex<double> z_plus;   // upper-half-plane member of the pair
  std::complex<double> z_minus;  // lower-half-plane member (conjugate for real input)
  bool valid = false;            // expansion parameter inside its window
  std::string window;            // human-readable window condition
  double window_threshold = 0.0; // numeric bound the expansion parameter is compared to
  std::string truncation_order;  // leading neglected order
};

/// Which sign pattern of the two level positions applies when one level is
/// adiabatically eliminated near the band edge.
enum class CouplingCase {
  CaseA,  // eps_b > 0 > eps_a with eps_b - eps_a > alpha
  CaseB,  // 0 > eps_b > eps_a with eps_a - eps_b < -alpha
};

/// Effective one-level coupling after eliminating the spectator level.
struct CorrectedCoupling {
  double alpha_tilde = 0.0;        // corrected interaction strength
  double eps_tilde_c = 0.0;        // shifted critical level position
  std::complex<double> xi;         // correction factor evaluated at the band-edge critical point
  CouplingCase coupling_case = CouplingCase::CaseA;
};

/// Quadratic-truncation deviation of the resonance pair from the
/// bound-in-continuum point on the symmetric line.
struct FanoDeviation {
  std::complex<double> p_plus;        // root with +sqrt(discriminant)
  std::complex<double> p_minus;       // root with -sqrt(discriminant)
  std::complex<double> discriminant;  // exact quadratic discriminant B^2 - 4AC
};

/// Least-squares power-law fit of |Im z| against the sweep parameter.
struct FitResult {
  double slope = 0.0;         // fitted exponent
  double slope_stderr = 0.0;  // standard error of the slope
  double intercept = 0.0;     // log-log intercept
  double prefactor = 0.0;     // exp(intercept)
};

/// Eigenvalue pair of a single level near its critical position
/// eps_c = -3 (pi alpha^2 / 4)^{2/3} - alpha^2 (1D continuum):
/// z = (eps_a + alpha^2)/3 +/- (i/sqrt(3)) (2 pi alpha^2)^{1/3} sqrt(eps_a - eps_c).
/// The square root is taken in the complex sense, so eps_a below eps_c yields
/// the real pair on the other side of the degeneracy. `valid` requires
/// 0 <= eps_a - eps_c < alpha^{4/3}.
ExpansionResult z_ep_single(double eps_a, double alpha);

/// Critical level position of a single 1D level: -3 (pi alpha^2/4)^{2/3} - alpha^2.
double eps_critical_single(double alpha);

/// Effective coupling of the lower level after eliminating the other one.
/// The correction factor xi = (2 z - eps_a - eps_b)/(z - eps_spectator) is
/// evaluated at the one-level band-edge critical point z = -(pi alpha^2/4)^{2/3},
/// where the spectator is eps_b in CaseA and eps_a in CaseB; then
/// alpha_tilde = alpha sqrt(|xi|) and eps_tilde_c is the one-level critical
/// position evaluated at alpha_tilde.
/// Throws std::invalid_argument if neither case condition holds.
CorrectedCoupling corrected_coupling(double eps_a, double eps_b, double alpha);

/// Eigenvalue pair of the detuned two-level system near the band-edge
/// degeneracy of its effectively single level: the single-level pair formula
/// with alpha_tilde and eps_tilde_c substituted. Propagates the case
/// rejection of corrected_coupling.
ExpansionResult z_ep_two(double eps_a, const ModelParams& p);

/// Roots of the quadratic truncation of the dispersion relation in the
/// deviation p = z - eps_A along the symmetric-coupling line, with
/// A p^2 + B p + C = 0,
///   A = 4 alpha^4 (eps_A + eps_D^2) - 2 eps_A eps_D^2 + pi^2 alpha^4,
///   B = eps_D^2 (4 alpha^2 eps_A + eps_D^2),
///   C = eps_A eps_D^4.
/// Throws std::domain_error when the quadratic degenerates (|A| ~ 0).
FanoDeviation fano_deviation(double eps_A, double eps_D, double alpha);

/// Resonance pair for small detuning eps_D around the embedded bound state at
/// z = eps_A on the symmetric line:
/// z = eps_A - 2 eps_A eps_D^2 / (alpha^2 (pi^2 + 4 eps_A))
///         +/- i pi sqrt(eps_A) eps_D^2 / (alpha^2 (pi^2 + 4 eps_A)).
/// Throws std::domain_error for eps_A <= 0.
ExpansionResult z_fano_small(double eps_A, double eps_D, double alpha);

/// Resonance pair in polar level coordinates near the point where the two
/// critical curves meet the symmetric line at the band edge.
/// 1D: z = sin(t) e - (2 cos^2 t sin t / (pi^2 a^2)) e^3
///         +/- i (cos^2 t sqrt(sin t) / (pi a^2)) e^{5/2},
///     window e < (4 pi^2 a^4)^{1/3};
/// 3D: z = sin(t) e + (cos^2 t / (pi a^2)) e^2
///         +/- i (cos^2 t sqrt(sin t) / (2 a^2)) e^{5/2},
///     window e < pi^4 a^4 / 4.
/// Throws std::domain_error for sin(t) < 0 or e < 0.
ExpansionResult z_meeting_polar(const PolarCoords& c, double alpha, Medium medium);

/// Decay rate of the resonance near the embedded bound state:
/// gamma = sqrt(eps_D + eps_b) eps_D^2 / (pi alpha^2).
/// Throws std::domain_error if eps_D + eps_b < 0.
double gamma_fano(double eps_D, double eps_b, double alpha);

/// Second derivative of gamma_fano with respect to eps_D at eps_D = 0:
/// (2 / (pi alpha^2)) sqrt(eps_b). Throws std::domain_error for eps_b < 0.
double gamma_fano_d2(double eps_b, double alpha);

/// Least-squares fit of log|Im z| versus log(parameter) over samples whose
/// parameter lies in [range[0], range[1]]. Samples with Im z <= 0 are
/// rejected (dropped); the remaining set must contain at least 8 points
/// spanning at least 1.5 decades, otherwise std::invalid_argument is thrown.
FitResult fit_puiseux_exponent(const std::vector<std::pair<double, double>>& samples,
                               const std::array<double, 2>& range);

/// The spectrum root nearest to `z` in complex distance. Used to pair an
/// expansion value with its exact counterpart.
/// Throws std::invalid_argument on an empty spectrum.
ClassifiedRoot nearest_root(const Spectrum& s, std::complex<double> z);

}  // namespace contspec

#endif  // CONTSPEC_EXPANSIONS_HPP
