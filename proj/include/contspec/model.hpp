#ifndef CONTSPEC_MODEL_HPP
#define CONTSPEC_MODEL_HPP

#include <string>
#include <vector>

namespace contspec {

/// Continuum dimensionality; selects the closed-form self-energy branch pair.
enum class Medium { OneD, ThreeD };

/// Number of discrete states coupled to the continuum.
enum class NStates { Single, Double };

/// Problem instance in dimensionless band units: the continuum occupies the
/// real segment [0, 1] with its threshold (band edge) at z = 0.
struct ModelParams {
  double eps_a = 0.0;    // energy of discrete state |a>
  double eps_b = 0.0;    // energy of discrete state |b> (ignored for Single)
  double alpha_a = 0.1;  // coupling of |a> to the continuum, > 0
  double alpha_b = 0.1;  // coupling of |b> to the continuum, > 0 (ignored for Single)
  Medium medium = Medium::OneD;
  NStates n_states = NStates::Double;
};

/// Average / half-difference coordinates of a two-state instance.
struct SymmetricCoords {
  double eps_A = 0.0;    // (eps_a + eps_b) / 2
  double eps_D = 0.0;    // (eps_a - eps_b) / 2
  double alpha_A = 0.0;  // (alpha_a + alpha_b) / sqrt(2)
  double alpha_D = 0.0;  // (alpha_a - alpha_b) / sqrt(2)
};

/// Polar coordinates on the (eps_D, eps_A) plane around its origin:
/// eps_D = eps*cos(theta), eps_A = eps*sin(theta).
struct PolarCoords {
  double eps = 0.0;    // radius, >= 0
  double theta = 0.0;  // angle in [0, 2*pi]
};

/// Symmetric coordinates of a two-state instance.
/// Throws std::invalid_argument for Single instances.
SymmetricCoords to_symmetric(const ModelParams& p);

/// Inverse of to_symmetric; the result is always a Double instance.
ModelParams from_symmetric(const SymmetricCoords& s, Medium medium);

/// Energy-plane polar <-> symmetric conversions (couplings untouched;
/// from_polar leaves alpha_A = alpha_D = 0).
SymmetricCoords from_polar(const PolarCoords& c);
PolarCoords to_polar(const SymmetricCoords& s);

/// Non-throwing parameter check. Returns human-readable findings: a soft
/// band-validity warning when |eps| > 0.5 (the closed-form self-energy is a
/// small-|z| approximation) and hard error text for non-positive couplings.
std::vector<std::string> validate(const ModelParams& p);

}  // namespace contspec

#endif  // CONTSPEC_MODEL_HPP
