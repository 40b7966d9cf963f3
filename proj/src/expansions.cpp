#include "contspec/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace contspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Band-edge critical point of a single 1D level: z_c = -(pi alpha^2/4)^{2/3}.
double z_critical_single(double alpha) {
  return -std::pow(kPi * alpha * alpha / 4.0, 2.0 / 3.0);
}

/// Conjugate pair (a +/- i b sqrt(u)) with the square root taken complex, so
/// u < 0 produces a real pair.
ExpansionResult pair_about(double a, double b, double u) {
  const std::complex<double> root = std::sqrt(std::complex<double>(u, 0.0));
  ExpansionResult out;
  out.z_plus = a + std::complex<double>(0.0, b) * root;
  out.z_minus = a - std::complex<double>(0.0, b) * root;
  return out;
}

}  // namespace

double eps_critical_single(double alpha) {
  return 3.0 * z_critical_single(alpha) - alpha * alpha;
}

ExpansionResult z_ep_single(double eps_a, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("z_ep_single: alpha must be positive");
  }
  const double a2 = alpha * alpha;
  const double u = eps_a - eps_critical_single(alpha);
  ExpansionResult out = pair_about(
      (eps_a + a2) / 3.0, std::cbrt(2.0 * kPi * a2) / std::sqrt(3.0), u);
  out.window_threshold = std::pow(alpha, 4.0 / 3.0);
  out.window = "0 <= eps_a - eps_c < alpha^(4/3)";
  out.truncation_order = "O(u) relative to the sqrt(u) splitting";
  out.valid = (u >= 0.0) && (u < out.window_threshold);
  return out;
}

CorrectedCoupling corrected_coupling(double eps_a, double eps_b, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("corrected_coupling: alpha must be positive");
  }
  const bool case_a = eps_b > 0.0 && eps_a < 0.0 && (eps_b - eps_a) > alpha;
  const bool case_b = eps_b < 0.0 && eps_a < eps_b && (eps_b - eps_a) > alpha;
  if (!case_a && !case_b) {
    throw std::invalid_argument(
        "corrected_coupling: parameters satisfy neither level-ordering case");
  }
  const double zc = z_critical_single(alpha);
  const double spectator = case_a ? eps_b : eps_a;
  const double xi = (2.0 * zc - eps_a - eps_b) / (zc - spectator);

  CorrectedCoupling out;
  out.xi = xi;
  out.coupling_case = case_a ? CouplingCase::CaseA : CouplingCase::CaseB;
  out.alpha_tilde = alpha * std::sqrt(std::abs(xi));
  out.eps_tilde_c = eps_critical_single(out.alpha_tilde);
  return out;
}

ExpansionResult z_ep_two(double eps_a, const ModelParams& p) {
  const CorrectedCoupling cc = corrected_coupling(eps_a, p.eps_b, p.alpha_a);
  const double at2 = cc.alpha_tilde * cc.alpha_tilde;
  const double u = eps_a - cc.eps_tilde_c;
  ExpansionResult out = pair_about(
      (eps_a + at2) / 3.0, std::cbrt(2.0 * kPi * at2) / std::sqrt(3.0), u);
  out.window_threshold = std::pow(cc.alpha_tilde, 4.0 / 3.0);
  out.window = "0 <= eps_a - eps_tilde_c < alpha_tilde^(4/3)";
  out.truncation_order = "O(u) relative to the sqrt(u) splitting";
  out.valid = (u >= 0.0) && (u < out.window_threshold);
  return out;
}

FanoDeviation fano_deviation(double eps_A, double eps_D, double alpha) {
  const double a2 = alpha * alpha;
  const double a4 = a2 * a2;
  const double d2 = eps_D * eps_D;
  const double A = 4.0 * a4 * (eps_A + d2) - 2.0 * eps_A * d2 + kPi * kPi * a4;
  const double B = d2 * (4.0 * a2 * eps_A + d2);
  const double C = eps_A * d2 * d2;
  const double scale = std::max({std::abs(4.0 * a4 * eps_A), std::abs(2.0 * eps_A * d2),
                                 kPi * kPi * a4, 1e-300});
  if (std::abs(A) < 1e-12 * scale) {
    throw std::domain_error("fano_deviation: quadratic truncation degenerates");
  }
  const double D = B * B - 4.0 * A * C;
  const std::complex<double> root = std::sqrt(std::complex<double>(D, 0.0));
  FanoDeviation out;
  out.discriminant = D;
  out.p_plus = (-B + root) / (2.0 * A);
  out.p_minus = (-B - root) / (2.0 * A);
  return out;
}

ExpansionResult z_fano_small(double eps_A, double eps_D, double alpha) {
  if (!(eps_A > 0.0)) {
    throw std::domain_error("z_fano_small: requires eps_A > 0");
  }
  const double denom = alpha * alpha * (kPi * kPi + 4.0 * eps_A);
  const double d2 = eps_D * eps_D;
  const double re = eps_A - 2.0 * eps_A * d2 / denom;
  const double im = kPi * std::sqrt(eps_A) * d2 / denom;
  ExpansionResult out;
  out.z_plus = {re, im};
  out.z_minus = {re, -im};
  out.window_threshold = 0.5 * alpha * std::sqrt(kPi * kPi + 4.0 * eps_A);
  out.window = "|eps_D| < alpha sqrt(pi^2 + 4 eps_A) / 2";
  out.truncation_order = "O(eps_D^4)";
  out.valid = std::abs(eps_D) < out.window_threshold;
  return out;
}

ExpansionResult z_meeting_polar(const PolarCoords& c, double alpha, Medium medium) {
  const double st = std::sin(c.theta);
  const double ct = std::cos(c.theta);
  if (st < 0.0) {
    throw std::domain_error("z_meeting_polar: requires sin(theta) >= 0");
  }
  if (c.eps < 0.0) {
    throw std::domain_error("z_meeting_polar: requires eps >= 0");
  }
  const double a2 = alpha * alpha;
  const double ct2 = ct * ct;
  const double e = c.eps;
  ExpansionResult out;
  if (medium == Medium::OneD) {
    const double re = st * e - 2.0 * ct2 * st * e * e * e / (kPi * kPi * a2);
    const double im = ct2 * std::sqrt(st) * std::pow(e, 2.5) / (kPi * a2);
    out.z_plus = {re, im};
    out.z_minus = {re, -im};
    out.window_threshold = std::cbrt(4.0 * kPi * kPi * a2 * a2);
    out.window = "eps < (4 pi^2 alpha^4)^(1/3)";
    out.truncation_order = "O(eps^(7/2))";
  } else {
    const double re = st * e + ct2 * e * e / (kPi * a2);
    const double im = ct2 * std::sqrt(st) * std::pow(e, 2.5) / (2.0 * a2);
    out.z_plus = {re, im};
    out.z_minus = {re, -im};
    out.window_threshold = std::pow(kPi, 4.0) * a2 * a2 / 4.0;
    out.window = "eps < pi^4 alpha^4 / 4";
    out.truncation_order = "O(eps^3)";
  }
  out.valid = e < out.window_threshold;
  return out;
}

double gamma_fano(double eps_D, double eps_b, double alpha) {
  const double radicand = eps_D + eps_b;
  if (radicand < 0.0) {
    throw std::domain_error("gamma_fano: requires eps_D + eps_b >= 0");
  }
  return std::sqrt(radicand) * eps_D * eps_D / (kPi * alpha * alpha);
}

double gamma_fano_d2(double eps_b, double alpha) {
  if (eps_b < 0.0) {
    throw std::domain_error("gamma_fano_d2: requires eps_b >= 0");
  }
  return 2.0 * std::sqrt(eps_b) / (kPi * alpha * alpha);
}

FitResult fit_puiseux_exponent(const std::vector<std::pair<double, double>>& samples,
                               const std::array<double, 2>& range) {
  std::vector<double> xs, ys;
  for (const auto& [eps, im] : samples) {
    if (eps < range[0] || eps > range[1]) continue;
    if (!(im > 0.0) || !(eps > 0.0)) continue;  // reject nonpositive samples
    xs.push_back(std::log(eps));
    ys.push_back(std::log(im));
  }
  const std::size_t n = xs.size();
  if (n < 8) {
    throw std::invalid_argument(
        "fit_puiseux_exponent: need at least 8 positive-Im samples in range");
  }
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if ((*hi - *lo) < 1.5 * std::log(10.0)) {
    throw std::invalid_argument(
        "fit_puiseux_exponent: samples must span at least 1.5 decades");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.prefactor = std::exp(out.intercept);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (out.intercept + out.slope * xs[i]);
    ss_res += r * r;
  }
  out.slope_stderr =
      (n > 2) ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return out;
}

ClassifiedRoot nearest_root(const Spectrum& s, std::complex<double> z) {
  if (s.roots.empty()) {
    throw std::invalid_argument("nearest_root: empty spectrum");
  }
  const ClassifiedRoot* best = &s.roots.front();
  double best_dist = std::abs(s.roots.front().z - z);
  for (const ClassifiedRoot& r : s.roots) {
    const double d = std::abs(r.z - z);
    if (d < best_dist) {
      best_dist = d;
      best = &r;
    }
  }
  return *best;
}

}  // namespace contspec
