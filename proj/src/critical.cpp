#include "contspec/critical.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "poly.hpp"

namespace contspec {

namespace {

using detail::cld;
using detail::ld;

using MatrixXld = Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic>;

ModelParams with_axis(ModelParams p, ScanAxis axis, double x) {
  if (axis == ScanAxis::EpsA) {
    p.eps_a = x;
  } else {
    p.eps_b = x;
  }
  return p;
}

double resultant_of_f_fprime(const ModelParams& p) {
  const DispersionPolynomial f = build_dispersion(p);
  DispersionPolynomial d;
  d.coeffs = detail::poly_derivative(f.coeffs);
  d.convention = f.convention;
  return sylvester_resultant(f, d);
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

/// Double root at a converged EP parameter: the derivative root where f is
/// smallest.
std::complex<double> recover_zc(const ModelParams& p) {
  const DispersionPolynomial f = build_dispersion(p);
  const std::vector<ld> d = detail::poly_derivative(f.coeffs);
  cld best(0.0L, 0.0L);
  ld best_val = std::numeric_limits<ld>::infinity();
  for (const detail::SolvedRoot& r : detail::solve_real_polynomial(d)) {
    const ld val = std::abs(detail::poly_eval(f.coeffs, r.z));
    if (val < best_val) {
      best_val = val;
      best = r.z;
    }
  }
  return {static_cast<double>(best.real()), static_cast<double>(best.imag())};
}

CurveId tag_from_pairs(int pairs_lo, int pairs_hi, bool& ambiguous) {
  const int a = std::min(pairs_lo, pairs_hi);
  const int b = std::max(pairs_lo, pairs_hi);
  if (a == 0 && b == 1) return CurveId::Curve1;
  if (a == 1 && b == 2) return CurveId::Curve2;
  ambiguous = true;
  return (a == 0) ? CurveId::Curve1 : CurveId::Curve2;
}

std::optional<PhaseLabel> phase_from_spectrum(const Spectrum& s) {
  int degenerate_roots = 0;
  bool degenerate_multiple = false;
  for (const ClassifiedRoot& r : s.roots) {
    if (r.category == RootCategory::Degenerate) {
      ++degenerate_roots;
      if (r.multiplicity >= 2) degenerate_multiple = true;
    }
  }
  if (degenerate_multiple || degenerate_roots >= 2) return std::nullopt;
  switch (s.n_complex_pairs) {
    case 0:
      return PhaseLabel::Stable;
    case 1:
      return PhaseLabel::SingleResonance;
    case 2:
      return PhaseLabel::DoubleResonance;
    default:
      return std::nullopt;
  }
}

void parallel_for(std::size_t total, int n_jobs,
                  const std::function<void(std::size_t)>& fn) {
  int jobs = (n_jobs > 0) ? n_jobs
                          : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= total) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<EPCurve> link_chains(const std::vector<EPPoint>& pool, CurveId id,
                                 double radius) {
  std::vector<EPPoint> pts;
  for (const EPPoint& e : pool) {
    if (e.curve_id == id) pts.push_back(e);
  }
  std::sort(pts.begin(), pts.end(), [](const EPPoint& x, const EPPoint& y) {
    const double xb = x.eps_b.value_or(0.0);
    const double yb = y.eps_b.value_or(0.0);
    if (xb != yb) return xb < yb;
    return x.eps_a < y.eps_a;
  });
  const auto dist = [](const EPPoint& x, const EPPoint& y) {
    return std::hypot(x.eps_a - y.eps_a,
                      x.eps_b.value_or(0.0) - y.eps_b.value_or(0.0));
  };
  std::vector<char> used(pts.size(), 0);
  std::vector<EPCurve> curves;
  for (std::size_t seed = 0; seed < pts.size(); ++seed) {
    if (used[seed]) continue;
    used[seed] = 1;
    std::deque<EPPoint> chain{pts[seed]};
    for (bool grew = true; grew;) {
      grew = false;
      for (const bool at_back : {true, false}) {
        const EPPoint& tip = at_back ? chain.back() : chain.front();
        int best = -1;
        double best_dist = radius;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (used[j]) continue;
          const double d = dist(tip, pts[j]);
          if (d <= best_dist) {
            best_dist = d;
            best = static_cast<int>(j);
          }
        }
        if (best >= 0) {
          used[best] = 1;
          if (at_back) {
            chain.push_back(pts[best]);
          } else {
            chain.push_front(pts[best]);
          }
          grew = true;
        }
      }
    }
    curves.push_back(EPCurve{id, {chain.begin(), chain.end()}});
  }
  return curves;
}

}  // namespace

double sylvester_resultant(const DispersionPolynomial& f,
                           const DispersionPolynomial& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m < 1 || n < 1) {
    throw std::invalid_argument("sylvester_resultant: degrees must be >= 1");
  }
  MatrixXld s = MatrixXld::Zero(m + n, m + n);
  for (int row = 0; row < n; ++row) {
    for (int k = 0; k <= m; ++k) s(row, row + k) = f.coeffs[m - k];
  }
  for (int row = 0; row < m; ++row) {
    for (int k = 0; k <= n; ++k) s(n + row, row + k) = g.coeffs[n - k];
  }
  return static_cast<double>(Eigen::PartialPivLU<MatrixXld>(s).determinant());
}

EPPoint ep_single_closed_form(double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("ep_single_closed_form: alpha must be positive");
  }
  const double a2 = alpha * alpha;
  const double zc = -std::pow(M_PI * a2 / 4.0, 2.0 / 3.0);
  EPPoint out;
  out.eps_a = 3.0 * zc - a2;
  out.z_c = zc;
  out.curve_id = CurveId::SingleClosedForm;
  return out;
}

std::vector<EPPoint> ep_locate_line(const ModelParams& p, const ScanSpec& scan) {
  if (!(scan.lo < scan.hi) || scan.n < 2) {
    throw std::invalid_argument("ep_locate_line: need lo < hi and n >= 2");
  }
  const int n = scan.n;
  std::vector<double> x(n), res(n);
  std::vector<int> pairs(n);
  for (int i = 0; i < n; ++i) {
    x[i] = scan.lo + (scan.hi - scan.lo) * i / (n - 1);
    const ModelParams pi = with_axis(p, scan.axis, x[i]);
    res[i] = resultant_of_f_fprime(pi);
    pairs[i] = spectrum(pi).n_complex_pairs;
  }

  std::vector<EPPoint> out;
  const auto emit = [&](double x_star, int pairs_lo, int pairs_hi) {
    const ModelParams ps = with_axis(p, scan.axis, x_star);
    EPPoint e;
    e.eps_a = ps.eps_a;
    if (p.n_states == NStates::Double) e.eps_b = ps.eps_b;
    e.z_c = recover_zc(ps);
    e.curve_id = tag_from_pairs(pairs_lo, pairs_hi, e.ambiguous);
    out.push_back(e);
  };

  for (int i = 0; i + 1 < n; ++i) {
    const int s_lo = sgn(res[i]);
    const int s_hi = sgn(res[i + 1]);
    if (s_lo == 0) {
      // Resultant vanishes at a sample: an EP sits exactly on the grid when
      // the pair count changes across it (a paired-root tangency does not).
      if (i > 0 && pairs[i - 1] != pairs[i + 1]) emit(x[i], pairs[i - 1], pairs[i + 1]);
      continue;
    }
    if (s_hi == 0 || s_lo == s_hi) continue;
    if (pairs[i] == pairs[i + 1]) continue;  // tangential resultant zero
    double lo = x[i];
    double hi = x[i + 1];
    int sign_lo = s_lo;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const int sm = sgn(resultant_of_f_fprime(with_axis(p, scan.axis, mid)));
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == sign_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    emit(0.5 * (lo + hi), pairs[i], pairs[i + 1]);
  }
  return out;
}

std::optional<PhaseLabel> classify_phase(const ModelParams& p) {
  return phase_from_spectrum(spectrum(p));
}

std::optional<PhaseLabel> classify_phase(const Spectrum& s) {
  return phase_from_spectrum(s);
}

PhaseDiagram phase_diagram(const GridSpec& grid, double alpha, Medium medium,
                           int n_jobs) {
  if (grid.na < 2 || grid.nb < 2 || !(grid.a_lo < grid.a_hi) ||
      !(grid.b_lo < grid.b_hi)) {
    throw std::invalid_argument("phase_diagram: malformed grid");
  }
  PhaseDiagram out;
  out.grid = grid;
  out.alpha = alpha;
  out.medium = medium;
  out.fano_line = {std::max(grid.a_lo, grid.b_lo), std::min(grid.a_hi, grid.b_hi)};

  const auto a_at = [&](int i) {
    return grid.a_lo + (grid.a_hi - grid.a_lo) * i / (grid.na - 1);
  };
  const auto b_at = [&](int j) {
    return grid.b_lo + (grid.b_hi - grid.b_lo) * j / (grid.nb - 1);
  };
  const auto params_at = [&](double a, double b) {
    ModelParams p;
    p.eps_a = a;
    p.eps_b = b;
    p.alpha_a = alpha;
    p.alpha_b = alpha;
    p.medium = medium;
    p.n_states = NStates::Double;
    return p;
  };

  out.cells.resize(static_cast<std::size_t>(grid.na) * grid.nb);
  parallel_for(out.cells.size(), n_jobs, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) % grid.na;
    const int j = static_cast<int>(idx) / grid.na;
    const double a = a_at(i);
    const double b = b_at(j);
    const Spectrum s = spectrum(params_at(a, b));
    out.cells[idx] = PhaseCell{a, b, phase_from_spectrum(s), s.n_complex_pairs};
  });

  std::vector<std::vector<EPPoint>> row_hits(grid.nb), col_hits(grid.na);
  parallel_for(static_cast<std::size_t>(grid.nb), n_jobs, [&](std::size_t j) {
    row_hits[j] = ep_locate_line(
        params_at(0.0, b_at(static_cast<int>(j))),
        ScanSpec{ScanAxis::EpsA, grid.a_lo, grid.a_hi, grid.na});
  });
  parallel_for(static_cast<std::size_t>(grid.na), n_jobs, [&](std::size_t i) {
    col_hits[i] = ep_locate_line(
        params_at(a_at(static_cast<int>(i)), 0.0),
        ScanSpec{ScanAxis::EpsB, grid.b_lo, grid.b_hi, grid.nb});
  });

  std::vector<EPPoint> pool;
  for (const auto& hits : row_hits) pool.insert(pool.end(), hits.begin(), hits.end());
  for (const auto& hits : col_hits) pool.insert(pool.end(), hits.begin(), hits.end());

  const double da = (grid.a_hi - grid.a_lo) / (grid.na - 1);
  const double db = (grid.b_hi - grid.b_lo) / (grid.nb - 1);
  const double radius = 2.5 * std::max(da, db);
  for (const CurveId id : {CurveId::Curve1, CurveId::Curve2}) {
    for (EPCurve& c : link_chains(pool, id, radius)) {
      out.ep_curves.push_back(std::move(c));
    }
  }

  double best_gap = std::numeric_limits<double>::infinity();
  for (const EPCurve& c : out.ep_curves) {
    if (c.id != CurveId::Curve2) continue;
    for (const EPPoint& e : c.points) {
      const double gap = std::abs(e.eps_a - e.eps_b.value_or(0.0));
      if (gap < best_gap) {
        best_gap = gap;
        out.meeting_point = std::array<double, 2>{e.eps_a, e.eps_b.value_or(0.0)};
      }
    }
  }
  return out;
}

BicCertificate bic_check(double eps_A, double alpha, Medium medium) {
  ModelParams p;
  p.eps_a = eps_A;
  p.eps_b = eps_A;
  p.alpha_a = alpha;
  p.alpha_b = alpha;
  p.medium = medium;
  p.n_states = NStates::Double;
  const DispersionPolynomial f = build_dispersion(p);
  const std::vector<ld> d = detail::poly_derivative(f.coeffs);
  const cld z(static_cast<ld>(eps_A), 0.0L);

  BicCertificate cert;
  cert.f_residual = static_cast<double>(
      std::abs(detail::poly_eval(f.coeffs, z)) / detail::poly_scale(f.coeffs, z));
  cert.fprime_residual = static_cast<double>(
      std::abs(detail::poly_eval(d, z)) / detail::poly_scale(d, z));
  cert.is_double_root =
      cert.f_residual < 1e-12 && cert.fprime_residual < 1e-12;
  return cert;
}

}  // namespace contspec
