#ifndef CONTSPEC_CRITICAL_HPP
#define CONTSPEC_CRITICAL_HPP

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "contspec/dispersion.hpp"
#include "contspec/model.hpp"

namespace contspec {

/// Which boundary an exceptional point belongs to. Curve1 separates the
/// stable and single-resonance phases; Curve2 separates the single- and
/// double-resonance phases; SingleClosedForm marks the single-state
/// bifurcation point evaluated in closed form.
enum class CurveId { SingleClosedForm, Curve1, Curve2 };

/// Time-symmetry phase of a parameter point, by number of
/// resonance/anti-resonance pairs (0, 1, 2).
enum class PhaseLabel { Stable, SingleResonance, DoubleResonance };

/// Parameter-space location of an exceptional point together with the
/// coalescence eigenvalue z_c (double root of the dispersion polynomial).
struct EPPoint {
  double eps_a = 0.0;
  std::optional<double> eps_b;  // empty for a single-state instance
  std::complex<double> z_c;
  CurveId curve_id = CurveId::SingleClosedForm;
  bool ambiguous = false;  // adjacent phases were not a recognized pair
};

/// Scanned parameter axis for EP location.
enum class ScanAxis { EpsA, EpsB };

/// One-dimensional parameter scan: n samples over [lo, hi].
struct ScanSpec {
  ScanAxis axis = ScanAxis::EpsA;
  double lo = 0.0;
  double hi = 0.0;
  int n = 2;
};

/// Rectangular lattice over the (eps_a, eps_b) plane.
struct GridSpec {
  double a_lo = 0.0;
  double a_hi = 0.0;
  double b_lo = 0.0;
  double b_hi = 0.0;
  int na = 2;
  int nb = 2;
};

/// One grid cell: phase label (empty when indeterminate, e.g. a degenerate
/// root cluster at an exact boundary) and the resonance-pair count.
struct PhaseCell {
  double eps_a = 0.0;
  double eps_b = 0.0;
  std::optional<PhaseLabel> label;
  int n_complex_pairs = 0;
};

/// Polyline of exceptional points sharing one curve tag.
struct EPCurve {
  CurveId id = CurveId::Curve1;
  std::vector<EPPoint> points;
};

/// Phase map plus traced EP curves. The Fano line is the diagonal segment
/// eps_a = eps_b clipped to the grid; meeting_point is the Curve2 point
/// closest to that line when Curve2 is nonempty.
struct PhaseDiagram {
  GridSpec grid;
  double alpha = 0.0;
  Medium medium = Medium::OneD;
  std::vector<PhaseCell> cells;  // row-major: index i + na*j for (a_i, b_j)
  std::vector<EPCurve> ep_curves;
  std::array<double, 2> fano_line{0.0, 0.0};  // diagonal parameter range
  std::optional<std::array<double, 2>> meeting_point;
};

/// Double-root certificate at the decoupled (eps_D = 0) point: residuals of
/// the dispersion polynomial and its derivative at z = eps_A, relative to
/// the coefficient magnitude scale.
struct BicCertificate {
  bool is_double_root = false;
  double f_residual = 0.0;
  double fprime_residual = 0.0;
};

/// Determinant of the Sylvester matrix of f and g (size deg f + deg g),
/// via partial-pivoting LU in extended precision. Throws
/// std::invalid_argument unless both degrees are >= 1.
double sylvester_resultant(const DispersionPolynomial& f,
                           const DispersionPolynomial& g);

/// Single-state bifurcation point in closed form:
/// eps_a = -3 (pi alpha^2/4)^(2/3) - alpha^2, z_c = -(pi alpha^2/4)^(2/3).
EPPoint ep_single_closed_form(double alpha);

/// Exceptional points along a parameter line: evaluates res(f, f') at the n
/// scan samples, brackets sign changes whose resonance-pair count differs
/// across the bracket, bisects each bracket to width 1e-12, and recovers
/// z_c as the derivative root minimizing |f|. Curve tags come from the
/// adjacent phase pair. Throws std::invalid_argument on a malformed scan.
std::vector<EPPoint> ep_locate_line(const ModelParams& p, const ScanSpec& scan);

/// Phase by resonance-pair count. Empty when the spectrum carries a
/// degenerate root cluster (multiplicity >= 2, or two or more degenerate
/// roots), which happens only at exact phase boundaries.
std::optional<PhaseLabel> classify_phase(const ModelParams& p);

/// Same phase rule applied to an already-computed spectrum.
std::optional<PhaseLabel> classify_phase(const Spectrum& s);

/// Per-cell phase classification plus EP curves traced by scanning every
/// grid row and column and linking adjacent crossings into polylines.
/// n_jobs <= 0 selects the hardware concurrency.
PhaseDiagram phase_diagram(const GridSpec& grid, double alpha, Medium medium,
                           int n_jobs = 0);

/// Checks that z = eps_A is a double real root of the equal-coupling
/// dispersion polynomial at eps_D = 0 (decoupled antisymmetric channel):
/// f(eps_A) and f'(eps_A) must vanish to 1e-12 relative.
BicCertificate bic_check(double eps_A, double alpha, Medium medium);

}  // namespace contspec

#endif  // CONTSPEC_CRITICAL_HPP
