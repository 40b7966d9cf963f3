#include "poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace contspec::detail {

namespace {

constexpr ld kEps = std::numeric_limits<ld>::epsilon();

using MatrixXld = Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic>;

std::vector<cld> companion_eigenvalues(const std::vector<ld>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  MatrixXld m = MatrixXld::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0L;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -monic[i];
  Eigen::EigenSolver<MatrixXld> solver(m, /*computeEigenvectors=*/false);
  std::vector<cld> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

struct Polished {
  cld z;
  bool converged;
};

Polished newton_polish(const std::vector<ld>& c, const std::vector<ld>& d,
                       cld z, int cap) {
  cld best = z;
  ld best_abs = std::abs(poly_eval(c, z));
  bool step_converged = false;
  for (int it = 0; it < cap; ++it) {
    const cld f = poly_eval(c, z);
    const ld af = std::abs(f);
    if (af < best_abs) {
      best_abs = af;
      best = z;
    }
    const cld fp = poly_eval(d, z);
    if (std::abs(fp) == 0.0L) break;
    const cld step = f / fp;
    z -= step;
    if (std::abs(step) <= 0.5L * kEps * (1.0L + std::abs(z))) {
      const ld af2 = std::abs(poly_eval(c, z));
      if (af2 < best_abs) {
        best_abs = af2;
        best = z;
      }
      // A sub-epsilon Newton step means the iterate is a fixed point to
      // machine precision; for a multiple root at the origin the residual
      // bound below scales away with |z| and can never fire, so the step
      // criterion is the convergence signal there.
      step_converged = true;
      break;
    }
  }
  const bool ok =
      step_converged || best_abs <= 64.0L * poly_eval_bound(c, best);
  return Polished{best, ok};
}

/// Smallest root displacement distinguishable from coefficient rounding near
/// the real point x: min over derivative orders k of (k! * noise/|f^(k)(x)|)^(1/k),
/// using only derivatives that are themselves resolved above their noise.
ld snap_floor(const std::vector<ld>& c, cld z) {
  const ld tol = poly_eval_bound(c, z);
  const cld x(z.real(), 0.0L);
  std::vector<ld> d = c;
  ld fact = 1.0L;
  ld best = std::numeric_limits<ld>::infinity();
  const int deg = static_cast<int>(c.size()) - 1;
  for (int k = 1; k <= deg; ++k) {
    d = poly_derivative(d);
    fact *= static_cast<ld>(k);
    const ld dk = std::abs(poly_eval(d, x));
    if (dk > 16.0L * poly_eval_bound(d, x)) {
      best = std::min(best, std::pow(fact * tol / dk, 1.0L / k));
    }
  }
  return best;
}

/// Newton on the derivative: collapses the two halves of a genuine double
/// root onto one point. Returns the refined location, or z unchanged when
/// the certificate (residual within noise, bounded displacement) fails.
cld double_root_collapse(const std::vector<ld>& c, const std::vector<ld>& d,
                         const std::vector<ld>& d2, cld z) {
  if (std::abs(poly_eval(d, z)) >= 1e-8L * poly_scale(d, z)) return z;
  const cld y = newton_polish(d, d2, z, 100).z;
  if (std::abs(y - z) > 1e-6L * std::max<ld>(1.0L, std::abs(z))) return z;
  if (std::abs(poly_eval(c, y)) > 64.0L * poly_eval_bound(c, y)) return z;
  return y;
}

int im_sign(cld z) { return (z.imag() > 0.0L) - (z.imag() < 0.0L); }

}  // namespace

cld poly_eval(const std::vector<ld>& c, cld z) {
  cld acc(0.0L, 0.0L);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ld poly_scale(const std::vector<ld>& c, cld z) {
  const ld az = std::abs(z);
  ld acc = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * az + std::abs(*it);
  }
  return acc;
}

ld poly_eval_bound(const std::vector<ld>& c, cld z) {
  const ld n = static_cast<ld>(c.size());
  return 2.0L * n * kEps * poly_scale(c, z);
}

std::vector<ld> poly_derivative(const std::vector<ld>& c) {
  if (c.size() <= 1) return {0.0L};
  std::vector<ld> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) {
    d[k - 1] = static_cast<ld>(k) * c[k];
  }
  return d;
}

std::vector<SolvedRoot> solve_real_polynomial(std::vector<ld> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0L) coeffs.pop_back();
  if (coeffs.size() <= 1) {
    throw std::invalid_argument("solve_real_polynomial: degree must be >= 1");
  }
  const int deg = static_cast<int>(coeffs.size()) - 1;

  std::vector<ld> monic(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) monic[k] = coeffs[k] / coeffs.back();

  const std::vector<ld> d1 = poly_derivative(coeffs);
  const std::vector<ld> d2 = poly_derivative(d1);

  struct Raw {
    cld z;
    bool converged;
  };
  std::vector<Raw> raw;
  raw.reserve(deg);
  for (cld z0 : companion_eigenvalues(monic)) {
    const Polished p = newton_polish(coeffs, d1, z0, 500);
    raw.push_back(Raw{p.z, p.converged});
  }

  // Stagnation rescue: Newton in real arithmetic cannot leave the real axis,
  // so when a narrow conjugate pair rounds to two real companion seeds the
  // polish stalls just above the residual bound, midway between the members.
  // The second-order Taylor model at the stalled point resolves the pair;
  // each member is polished and must verify independently, and the rescue is
  // kept only when it yields one member per half-plane.
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].converged || raw[i].z.imag() != 0.0L) continue;
    int pair = -1;
    ld pair_dist = std::numeric_limits<ld>::infinity();
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (j == i || raw[j].converged || raw[j].z.imag() != 0.0L) continue;
      const ld dist = std::abs(raw[j].z - raw[i].z);
      if (dist < pair_dist) {
        pair_dist = dist;
        pair = static_cast<int>(j);
      }
    }
    if (pair < 0) continue;
    const cld x(0.5L * (raw[i].z.real() + raw[pair].z.real()), 0.0L);
    if (pair_dist > 1e-6L * std::max<ld>(1.0L, std::abs(x))) continue;
    const cld f = poly_eval(coeffs, x);
    const cld fp = poly_eval(d1, x);
    const cld fpp = poly_eval(d2, x);
    if (std::abs(fpp) == 0.0L) continue;
    const cld s = std::sqrt(fp * fp - 2.0L * f * fpp);
    const cld q = (std::abs(-fp + s) >= std::abs(-fp - s)) ? (-fp + s)
                                                           : (-fp - s);
    if (std::abs(q) == 0.0L) continue;
    const Polished a = newton_polish(coeffs, d1, x + q / fpp, 100);
    const Polished b = newton_polish(coeffs, d1, x + 2.0L * f / q, 100);
    if (!a.converged || !b.converged) continue;
    if (im_sign(a.z) * im_sign(b.z) != -1) continue;
    raw[i] = Raw{a.z, true};
    raw[static_cast<std::size_t>(pair)] = Raw{b.z, true};
  }

  // Conjugate re-pairing: real coefficients force conjugate-symmetric roots;
  // average matched pairs so the symmetry is exact.
  std::vector<int> partner(raw.size(), -1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (im_sign(raw[i].z) <= 0) continue;
    int best = -1;
    ld best_dist = std::numeric_limits<ld>::infinity();
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (im_sign(raw[j].z) >= 0 || partner[j] >= 0) continue;
      const ld dist = std::abs(raw[i].z - std::conj(raw[j].z));
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0 &&
        best_dist <= 1e-6L * std::max<ld>(1.0L, std::abs(raw[i].z))) {
      partner[i] = best;
      partner[best] = static_cast<int>(i);
      const cld avg = 0.5L * (raw[i].z + std::conj(raw[best].z));
      raw[i].z = avg;
      raw[best].z = std::conj(avg);
    }
  }

  // Snap to the real axis whenever the imaginary part is below the local
  // noise floor; paired roots snap jointly to preserve the count.
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const cld z = raw[i].z;
    if (z.imag() == 0.0L) continue;
    if (partner[i] >= 0 && static_cast<std::size_t>(partner[i]) < i) continue;
    if (std::abs(z.imag()) > 1e-3L * std::max<ld>(1.0L, std::abs(z))) continue;
    if (std::abs(z.imag()) < 8.0L * snap_floor(coeffs, z)) {
      raw[i].z = cld(z.real(), 0.0L);
      if (partner[i] >= 0) raw[partner[i]].z = cld(z.real(), 0.0L);
    }
  }

  // Pull both halves of a genuine real double root onto the same point so
  // clustering sees them as one.
  for (Raw& r : raw) {
    if (r.z.imag() == 0.0L && deg >= 2) {
      r.z = double_root_collapse(coeffs, d1, d2, r.z);
    }
  }

  // Union-find clustering; opposite imaginary signs never merge.
  std::vector<int> head(raw.size());
  std::iota(head.begin(), head.end(), 0);
  const auto find = [&head](int i) {
    while (head[i] != i) i = head[i] = head[head[i]];
    return i;
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      const int si = im_sign(raw[i].z);
      const int sj = im_sign(raw[j].z);
      if (si != sj) continue;
      const ld radius =
          1e-9L * std::max({1.0L, std::abs(raw[i].z), std::abs(raw[j].z)});
      if (std::abs(raw[i].z - raw[j].z) <= radius) head[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }
  }

  std::vector<SolvedRoot> out;
  std::vector<char> emitted(raw.size(), 0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (emitted[i]) continue;
    const int root_id = find(static_cast<int>(i));
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < raw.size(); ++j) {
      if (!emitted[j] && find(static_cast<int>(j)) == root_id) members.push_back(j);
    }
    cld rep(0.0L, 0.0L);
    bool conv = true;
    for (std::size_t j : members) {
      rep += raw[j].z;
      conv = conv && raw[j].converged;
      emitted[j] = 1;
    }
    rep /= static_cast<ld>(members.size());
    if (members.size() >= 2) {
      // Multiplicity must be backed by a vanishing derivative; otherwise the
      // cluster is two resolved roots and is kept split.
      if (std::abs(poly_eval(d1, rep)) < 1e-8L * poly_scale(d1, rep)) {
        out.push_back(SolvedRoot{rep, static_cast<int>(members.size()), conv});
        continue;
      }
      for (std::size_t j : members) {
        out.push_back(SolvedRoot{raw[j].z, 1, raw[j].converged});
      }
      continue;
    }
    out.push_back(SolvedRoot{rep, 1, conv});
  }

  std::sort(out.begin(), out.end(), [](const SolvedRoot& a, const SolvedRoot& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace contspec::detail
