#include "contspec/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "poly.hpp"

namespace contspec {

namespace {

using detail::cld;
using detail::ld;

constexpr ld kPi = 3.141592653589793238462643383279502884L;

struct LinearLD {
  ld c0 = 0.0L;
  ld c1 = 0.0L;
};

std::vector<ld> poly_mul(const std::vector<ld>& a, const std::vector<ld>& b) {
  std::vector<ld> out(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<ld> poly_shift_up(const std::vector<ld>& a) {
  std::vector<ld> out(a.size() + 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] = a[i];
  return out;
}

std::vector<ld> poly_add(std::vector<ld> a, const std::vector<ld>& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0L);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

double residual_scale(std::complex<double> z) {
  return std::max(1.0, std::norm(z));
}

std::complex<double> det_heff(std::complex<double> z, const ModelParams& p,
                              SheetBranch branch) {
  const std::complex<double> sigma = sigma_closed(z, branch, p.medium);
  const double aa2 = p.alpha_a * p.alpha_a;
  if (p.n_states == NStates::Single) {
    return z - p.eps_a - aa2 * sigma;
  }
  const double ab2 = p.alpha_b * p.alpha_b;
  const std::complex<double> r = aa2 * (z - p.eps_b) + ab2 * (z - p.eps_a);
  return (z - p.eps_a) * (z - p.eps_b) - sigma * r;
}

}  // namespace

DispersionPolynomial build_dispersion(const ModelParams& p,
                                      CouplingConvention convention) {
  const ld scale = (convention == CouplingConvention::Halved) ? 0.5L : 1.0L;
  const ld aa2 = scale * static_cast<ld>(p.alpha_a) * p.alpha_a;
  const ld eps_a = p.eps_a;
  const bool one_d = (p.medium == Medium::OneD);
  const ld c0 = one_d ? 1.0L : -kPi;
  const ld q = one_d ? kPi * kPi / 4.0L : kPi * kPi * kPi * kPi / 4.0L;

  std::vector<ld> pz;  // P(z)
  std::vector<ld> rz;  // R(z)
  if (p.n_states == NStates::Single) {
    pz = {-eps_a - c0 * aa2, 1.0L};
    rz = {aa2};
  } else {
    const ld ab2 = scale * static_cast<ld>(p.alpha_b) * p.alpha_b;
    const ld eps_b = p.eps_b;
    rz = {-(aa2 * eps_b + ab2 * eps_a), aa2 + ab2};
    pz = {eps_a * eps_b - c0 * rz[0], -(eps_a + eps_b) - c0 * rz[1], 1.0L};
  }

  std::vector<ld> p2 = poly_mul(pz, pz);
  std::vector<ld> r2 = poly_mul(rz, rz);
  for (ld& c : r2) c *= q;

  DispersionPolynomial out;
  out.convention = convention;
  if (one_d) {
    out.coeffs = poly_add(poly_shift_up(p2), r2);
    out.kind = (p.n_states == NStates::Single) ? PolyKind::Single1D
                                               : PolyKind::TwoState1D;
  } else {
    out.coeffs = poly_add(p2, poly_shift_up(r2));
    out.kind = (p.n_states == NStates::Single) ? PolyKind::Single3D
                                               : PolyKind::TwoState3D;
  }
  return out;
}

std::vector<PolyRoot> solve_roots(const DispersionPolynomial& poly) {
  if (poly.degree() < 1) {
    throw std::invalid_argument("solve_roots: degree must be >= 1");
  }
  std::vector<PolyRoot> out;
  for (const detail::SolvedRoot& r : detail::solve_real_polynomial(poly.coeffs)) {
    if (!r.converged) {
      throw std::runtime_error("solve_roots: Newton polishing failed to converge");
    }
    out.push_back(PolyRoot{
        std::complex<double>(static_cast<double>(r.z.real()),
                             static_cast<double>(r.z.imag())),
        r.multiplicity, r.converged});
  }
  return out;
}

ClassifiedRoot classify_root(std::complex<double> z, const ModelParams& p) {
  ClassifiedRoot out;
  out.z = z;
  if (std::abs(z) < 1e-10) {
    out.category = RootCategory::Degenerate;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const double tol = 1e-9 * residual_scale(z);
  const double r_plus = std::abs(det_heff(z, p, SheetBranch::Plus));
  const double r_minus = std::abs(det_heff(z, p, SheetBranch::Minus));
  if (std::min(r_plus, r_minus) >= tol) {
    out.category = RootCategory::Degenerate;
    out.residual = std::min(r_plus, r_minus);
    return out;
  }
  const bool real_root = std::abs(z.imag()) <= 1e-15 * std::max(1.0, std::abs(z));
  if (real_root) {
    if (r_plus < tol) {
      out.branch = SheetBranch::Plus;
      out.category = RootCategory::BoundFirstSheet;
      out.residual = r_plus;
    } else {
      out.branch = SheetBranch::Minus;
      out.category = RootCategory::RealSecondSheet;
      out.residual = r_minus;
    }
    return out;
  }
  out.branch = (r_plus <= r_minus) ? SheetBranch::Plus : SheetBranch::Minus;
  out.residual = std::min(r_plus, r_minus);
  out.category = (z.imag() < 0.0) ? RootCategory::Resonance
                                  : RootCategory::AntiResonance;
  return out;
}

Spectrum spectrum(const ModelParams& p) {
  Spectrum s;
  s.params = p;
  for (const PolyRoot& r : solve_roots(build_dispersion(p))) {
    ClassifiedRoot c = classify_root(r.z, p);
    c.multiplicity = r.multiplicity;
    s.roots.push_back(c);
  }
  std::sort(s.roots.begin(), s.roots.end(),
            [](const ClassifiedRoot& a, const ClassifiedRoot& b) {
              if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
              return a.z.imag() < b.z.imag();
            });
  s.n_complex_pairs = 0;
  for (const ClassifiedRoot& r : s.roots) {
    if (r.category == RootCategory::Resonance) s.n_complex_pairs += r.multiplicity;
  }
  return s;
}

DispersionTerms dispersion_terms(std::complex<double> z, const ModelParams& p) {
  const ClassifiedRoot probe = classify_root(z, p);
  const SheetBranch branch =
      probe.branch ? *probe.branch
                   : (z.imag() >= 0.0 ? SheetBranch::Plus : SheetBranch::Minus);
  const std::complex<double> sigma = sigma_closed(z, branch, p.medium);
  const double aa2 = p.alpha_a * p.alpha_a;
  const double ab2 =
      (p.n_states == NStates::Double) ? p.alpha_b * p.alpha_b : 0.0;

  DispersionTerms t;
  t.direct = p.eps_a;
  t.continuum_shift = aa2 * sigma;
  if (ab2 == 0.0) {
    t.indirect = 0.0;
    return t;
  }
  const std::complex<double> den = z - p.eps_b - ab2 * sigma;
  if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(z))) {
    throw std::domain_error("dispersion_terms: z is a pole of the indirect term");
  }
  t.indirect = aa2 * ab2 * sigma * sigma / den;
  return t;
}

}  // namespace contspec
