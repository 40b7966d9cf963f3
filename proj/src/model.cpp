#include "contspec/model.hpp"

#include <cmath>
#include <stdexcept>

namespace contspec {

SymmetricCoords to_symmetric(const ModelParams& p) {
  if (p.n_states != NStates::Double) {
    throw std::invalid_argument("to_symmetric: requires a two-state instance");
  }
  const double r = std::sqrt(2.0);
  return SymmetricCoords{0.5 * (p.eps_a + p.eps_b), 0.5 * (p.eps_a - p.eps_b),
                         (p.alpha_a + p.alpha_b) / r, (p.alpha_a - p.alpha_b) / r};
}

ModelParams from_symmetric(const SymmetricCoords& s, Medium medium) {
  const double r = std::sqrt(2.0);
  ModelParams p;
  p.eps_a = s.eps_A + s.eps_D;
  p.eps_b = s.eps_A - s.eps_D;
  p.alpha_a = (s.alpha_A + s.alpha_D) * r / 2.0;
  p.alpha_b = (s.alpha_A - s.alpha_D) * r / 2.0;
  p.medium = medium;
  p.n_states = NStates::Double;
  return p;
}

SymmetricCoords from_polar(const PolarCoords& c) {
  SymmetricCoords s;
  s.eps_D = c.eps * std::cos(c.theta);
  s.eps_A = c.eps * std::sin(c.theta);
  return s;
}

PolarCoords to_polar(const SymmetricCoords& s) {
  PolarCoords c;
  c.eps = std::hypot(s.eps_D, s.eps_A);
  c.theta = std::atan2(s.eps_A, s.eps_D);
  if (c.theta < 0.0) c.theta += 2.0 * M_PI;
  return c;
}

std::vector<std::string> validate(const ModelParams& p) {
  std::vector<std::string> findings;
  if (!(p.alpha_a > 0.0)) {
    findings.push_back("error: alpha_a must be positive");
  }
  if (p.n_states == NStates::Double && !(p.alpha_b > 0.0)) {
    findings.push_back("error: alpha_b must be positive");
  }
  if (std::abs(p.eps_a) > 0.5) {
    findings.push_back("warning: |eps_a| > 0.5 is outside the trusted band-"
                       "validity range of the closed-form self-energy");
  }
  if (p.n_states == NStates::Double && std::abs(p.eps_b) > 0.5) {
    findings.push_back("warning: |eps_b| > 0.5 is outside the trusted band-"
                       "validity range of the closed-form self-energy");
  }
  return findings;
}

}  // namespace contspec
