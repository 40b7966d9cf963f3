#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "contspec/critical.hpp"
#include "contspec/dispersion.hpp"
#include "contspec/expansions.hpp"
#include "contspec/jordan.hpp"
#include "contspec/model.hpp"
#include "contspec/selfenergy.hpp"

namespace contspec::cli {

namespace {

// ---------------------------------------------------------------------------
// Tabular output model: one schema per subcommand, rendered to CSV or JSON.
// ---------------------------------------------------------------------------

struct Cell {
  enum class Kind { Number, Integer, Text, Boolean, Null };
  Kind kind = Kind::Null;
  double num = 0.0;
  long long integer = 0;
  std::string text;
};

Cell cell(double v) {
  if (!std::isfinite(v)) return {};
  Cell c;
  c.kind = Cell::Kind::Number;
  c.num = v;
  return c;
}

Cell cell(long long v) {
  Cell c;
  c.kind = Cell::Kind::Integer;
  c.integer = v;
  return c;
}

Cell cell(int v) { return cell(static_cast<long long>(v)); }

Cell cell(std::string v) {
  Cell c;
  c.kind = Cell::Kind::Text;
  c.text = std::move(v);
  return c;
}

Cell cell(bool v) {
  Cell c;
  c.kind = Cell::Kind::Boolean;
  c.integer = v ? 1 : 0;
  return c;
}

Cell null_cell() { return {}; }

using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string render_cell_csv(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Number:
      return format_double(c.num);
    case Cell::Kind::Integer:
      return std::to_string(c.integer);
    case Cell::Kind::Text:
      return c.text;
    case Cell::Kind::Boolean:
      return c.integer ? "true" : "false";
    case Cell::Kind::Null:
      return "";
  }
  return "";
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const Row& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += render_cell_csv(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Row& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
      const Cell& c = row[i];
      switch (c.kind) {
        case Cell::Kind::Number:
          obj[t.header[i]] = c.num;
          break;
        case Cell::Kind::Integer:
          obj[t.header[i]] = c.integer;
          break;
        case Cell::Kind::Text:
          obj[t.header[i]] = c.text;
          break;
        case Cell::Kind::Boolean:
          obj[t.header[i]] = (c.integer != 0);
          break;
        case Cell::Kind::Null:
          obj[t.header[i]] = nullptr;
          break;
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Name tables.
// ---------------------------------------------------------------------------

std::string medium_name(Medium m) { return m == Medium::OneD ? "1d" : "3d"; }

std::string category_name(RootCategory c) {
  switch (c) {
    case RootCategory::BoundFirstSheet:
      return "bound_first_sheet";
    case RootCategory::Resonance:
      return "resonance";
    case RootCategory::AntiResonance:
      return "anti_resonance";
    case RootCategory::RealSecondSheet:
      return "real_second_sheet";
    case RootCategory::Degenerate:
      return "degenerate";
  }
  return "";
}

Cell branch_cell(const std::optional<SheetBranch>& b) {
  if (!b) return null_cell();
  return cell(std::string(*b == SheetBranch::Plus ? "plus" : "minus"));
}

std::string phase_name(const std::optional<PhaseLabel>& p) {
  if (!p) return "indeterminate";
  switch (*p) {
    case PhaseLabel::Stable:
      return "stable";
    case PhaseLabel::SingleResonance:
      return "single_resonance";
    case PhaseLabel::DoubleResonance:
      return "double_resonance";
  }
  return "indeterminate";
}

std::string curve_name(CurveId id) {
  switch (id) {
    case CurveId::SingleClosedForm:
      return "single_closed_form";
    case CurveId::Curve1:
      return "curve1";
    case CurveId::Curve2:
      return "curve2";
  }
  return "";
}

std::string subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::Eigs:
      return "eigs";
    case Subcommand::Sweep:
      return "sweep";
    case Subcommand::Phase:
      return "phase";
    case Subcommand::Ep:
      return "ep";
    case Subcommand::Fano:
      return "fano";
    case Subcommand::Expand:
      return "expand";
    case Subcommand::Sigma:
      return "sigma";
    case Subcommand::Jordan:
      return "jordan";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Worker pool: index-addressed gather keeps output independent of the count.
// ---------------------------------------------------------------------------

void parallel_for(std::size_t total, int n_jobs,
                  const std::function<void(std::size_t)>& fn) {
  int jobs = std::max(1, n_jobs);
  jobs = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(1, total)));
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

// ---------------------------------------------------------------------------
// Model assembly + shared validation plumbing.
// ---------------------------------------------------------------------------

ModelParams base_params(const CliConfig& cfg) {
  ModelParams p;
  p.eps_a = cfg.eps_a;
  p.eps_b = cfg.eps_b;
  p.alpha_a = cfg.alpha;
  p.alpha_b = cfg.alpha;
  p.medium = cfg.medium;
  p.n_states = cfg.single_state ? NStates::Single : NStates::Double;
  return p;
}

ModelParams with_axis(ModelParams p, const std::string& axis, double x) {
  if (axis == "eps_b") {
    p.eps_b = x;
  } else {
    p.eps_a = x;
  }
  return p;
}

void collect_warnings(const ModelParams& p, std::vector<std::string>& sink) {
  for (const std::string& w : validate(p)) {
    if (std::find(sink.begin(), sink.end(), w) == sink.end()) sink.push_back(w);
  }
}

void require_scan(const CliConfig& cfg) {
  if (!(cfg.lo < cfg.hi) || cfg.n < 2) {
    throw std::invalid_argument(
        "scan requires --lo < --hi and --n >= 2");
  }
}

double scan_point(const CliConfig& cfg, int i) {
  return cfg.lo + (cfg.hi - cfg.lo) * i / (cfg.n - 1);
}

// ---------------------------------------------------------------------------
// Subcommand table builders.
// ---------------------------------------------------------------------------

const std::vector<std::string> kSpectrumHeader = {
    "eps_a",  "eps_b", "alpha",    "medium",   "root_index", "re_z",
    "im_z",   "category", "branch", "residual", "multiplicity"};

void append_spectrum_rows(const ModelParams& p, Table& t) {
  const Spectrum s = spectrum(p);
  int index = 0;
  for (const ClassifiedRoot& r : s.roots) {
    for (int k = 0; k < r.multiplicity; ++k) {
      Row row;
      row.push_back(cell(p.eps_a));
      row.push_back(p.n_states == NStates::Double ? cell(p.eps_b) : null_cell());
      row.push_back(cell(p.alpha_a));
      row.push_back(cell(medium_name(p.medium)));
      row.push_back(cell(index++));
      row.push_back(cell(r.z.real()));
      row.push_back(cell(r.z.imag()));
      row.push_back(cell(category_name(r.category)));
      row.push_back(branch_cell(r.branch));
      row.push_back(cell(r.residual));
      row.push_back(cell(r.multiplicity));
      t.rows.push_back(std::move(row));
    }
  }
}

Table build_eigs(const CliConfig& cfg, std::vector<std::string>& warnings) {
  Table t;
  t.header = kSpectrumHeader;
  const ModelParams p = base_params(cfg);
  collect_warnings(p, warnings);
  append_spectrum_rows(p, t);
  return t;
}

Table build_sweep(const CliConfig& cfg, std::vector<std::string>& warnings) {
  require_scan(cfg);
  Table t;
  t.header = kSpectrumHeader;
  const ModelParams base = base_params(cfg);
  collect_warnings(with_axis(base, cfg.axis, cfg.lo), warnings);
  collect_warnings(with_axis(base, cfg.axis, cfg.hi), warnings);

  std::vector<Table> partial(cfg.n);
  parallel_for(static_cast<std::size_t>(cfg.n), cfg.jobs, [&](std::size_t i) {
    append_spectrum_rows(
        with_axis(base, cfg.axis, scan_point(cfg, static_cast<int>(i))),
        partial[i]);
  });
  for (Table& part : partial) {
    for (Row& row : part.rows) t.rows.push_back(std::move(row));
  }
  return t;
}

Table build_phase(const CliConfig& cfg, std::vector<std::string>& warnings) {
  if (cfg.na < 2 || cfg.nb < 2 || !(cfg.a_lo < cfg.a_hi) ||
      !(cfg.b_lo < cfg.b_hi)) {
    throw std::invalid_argument(
        "phase requires --a-lo < --a-hi, --b-lo < --b-hi, --na >= 2, --nb >= 2");
  }
  const ModelParams base = base_params(cfg);
  collect_warnings(with_axis(with_axis(base, "eps_a", cfg.a_lo), "eps_b", cfg.b_lo),
                   warnings);
  collect_warnings(with_axis(with_axis(base, "eps_a", cfg.a_hi), "eps_b", cfg.b_hi),
                   warnings);

  Table t;
  t.header = {"eps_a", "eps_b", "phase", "n_complex_pairs"};
  const std::size_t total = static_cast<std::size_t>(cfg.na) * cfg.nb;
  std::vector<Row> rows(total);
  parallel_for(total, cfg.jobs, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) % cfg.na;
    const int j = static_cast<int>(idx) / cfg.na;
    const double a = cfg.a_lo + (cfg.a_hi - cfg.a_lo) * i / (cfg.na - 1);
    const double b = cfg.b_lo + (cfg.b_hi - cfg.b_lo) * j / (cfg.nb - 1);
    ModelParams p = base;
    p.eps_a = a;
    p.eps_b = b;
    p.n_states = NStates::Double;
    const Spectrum s = spectrum(p);
    rows[idx] = Row{cell(a), cell(b), cell(phase_name(classify_phase(s))),
                    cell(s.n_complex_pairs)};
  });
  t.rows = std::move(rows);
  return t;
}

void append_ep_row(const EPPoint& e, Table& t) {
  Row row;
  row.push_back(cell(curve_name(e.curve_id)));
  row.push_back(cell(e.eps_a));
  row.push_back(e.eps_b ? cell(*e.eps_b) : null_cell());
  row.push_back(cell(e.z_c.real()));
  row.push_back(cell(e.z_c.imag()));
  t.rows.push_back(std::move(row));
}

Table build_ep(const CliConfig& cfg, std::vector<std::string>& warnings) {
  Table t;
  t.header = {"curve_id", "eps_a", "eps_b", "re_zc", "im_zc"};
  if (cfg.na >= 2 && cfg.nb >= 2) {
    const GridSpec grid{cfg.a_lo, cfg.a_hi, cfg.b_lo, cfg.b_hi, cfg.na, cfg.nb};
    const PhaseDiagram pd = phase_diagram(grid, cfg.alpha, cfg.medium, cfg.jobs);
    for (const EPCurve& c : pd.ep_curves) {
      for (const EPPoint& e : c.points) append_ep_row(e, t);
    }
    return t;
  }
  require_scan(cfg);
  const ModelParams base = base_params(cfg);
  collect_warnings(with_axis(base, cfg.axis, cfg.lo), warnings);
  collect_warnings(with_axis(base, cfg.axis, cfg.hi), warnings);
  const ScanSpec scan{cfg.axis == "eps_b" ? ScanAxis::EpsB : ScanAxis::EpsA,
                      cfg.lo, cfg.hi, cfg.n};
  for (const EPPoint& e : ep_locate_line(base, scan)) append_ep_row(e, t);
  return t;
}

Table build_fano(const CliConfig& cfg, std::vector<std::string>& warnings) {
  require_scan(cfg);
  Table t;
  if (cfg.bic) {
    t.header = {"eps_A", "alpha", "medium", "f_residual", "fprime_residual",
                "is_double_root"};
    for (int i = 0; i < cfg.n; ++i) {
      const double eps_A = scan_point(cfg, i);
      ModelParams p = base_params(cfg);
      p.eps_a = eps_A;
      p.eps_b = eps_A;
      p.n_states = NStates::Double;
      collect_warnings(p, warnings);
      const BicCertificate c = bic_check(eps_A, cfg.alpha, cfg.medium);
      t.rows.push_back(Row{cell(eps_A), cell(cfg.alpha),
                           cell(medium_name(cfg.medium)), cell(c.f_residual),
                           cell(c.fprime_residual), cell(c.is_double_root)});
    }
    return t;
  }
  t.header = {"eps_A",     "eps_D",     "alpha",      "medium",
              "p_plus_re", "p_plus_im", "p_minus_re", "p_minus_im",
              "disc_re",   "disc_im",   "gamma"};
  const double eps_A = cfg.eps_a;
  for (int i = 0; i < cfg.n; ++i) {
    const double eps_D = scan_point(cfg, i);
    const FanoDeviation d = fano_deviation(eps_A, eps_D, cfg.alpha);
    double g = std::numeric_limits<double>::quiet_NaN();
    try {
      g = gamma_fano(eps_D, eps_A - eps_D, cfg.alpha);
    } catch (const std::domain_error&) {
      // below-threshold radicand: leave the column empty
    }
    t.rows.push_back(Row{cell(eps_A), cell(eps_D), cell(cfg.alpha),
                         cell(medium_name(cfg.medium)), cell(d.p_plus.real()),
                         cell(d.p_plus.imag()), cell(d.p_minus.real()),
                         cell(d.p_minus.imag()), cell(d.discriminant.real()),
                         cell(d.discriminant.imag()), cell(g)});
  }
  return t;
}

Table build_expand(const CliConfig& cfg, std::vector<std::string>& warnings) {
  require_scan(cfg);
  Table t;
  t.header = {"parameter", "exact_re", "exact_im",
              "approx_re", "approx_im", "rel_err", "valid"};

  const auto emit = [&](double x, const ModelParams& exact_model,
                        const std::optional<ExpansionResult>& approx) {
    const Spectrum s = spectrum(exact_model);
    Row row;
    row.push_back(cell(x));
    if (approx) {
      const ClassifiedRoot exact = nearest_root(s, approx->z_plus);
      const double denom = std::abs(exact.z) > 0.0 ? std::abs(exact.z) : 1.0;
      row.push_back(cell(exact.z.real()));
      row.push_back(cell(exact.z.imag()));
      row.push_back(cell(approx->z_plus.real()));
      row.push_back(cell(approx->z_plus.imag()));
      row.push_back(cell(std::abs(approx->z_plus - exact.z) / denom));
      row.push_back(cell(approx->valid));
    } else {
      row.push_back(null_cell());
      row.push_back(null_cell());
      row.push_back(null_cell());
      row.push_back(null_cell());
      row.push_back(null_cell());
      row.push_back(cell(false));
    }
    t.rows.push_back(std::move(row));
  };

  for (int i = 0; i < cfg.n; ++i) {
    const double x = scan_point(cfg, i);
    if (cfg.expansion == "single") {
      ModelParams p = base_params(cfg);
      p.n_states = NStates::Single;
      p.eps_a = x;
      collect_warnings(p, warnings);
      emit(x, p, z_ep_single(x, cfg.alpha));
    } else if (cfg.expansion == "two") {
      ModelParams p = base_params(cfg);
      p.n_states = NStates::Double;
      p.eps_a = x;
      collect_warnings(p, warnings);
      std::optional<ExpansionResult> approx;
      try {
        approx = z_ep_two(x, p);
      } catch (const std::invalid_argument&) {
        // outside both level-ordering cases: exact roots only
      }
      emit(x, p, approx);
    } else if (cfg.expansion == "fano-small") {
      ModelParams p = base_params(cfg);
      p.n_states = NStates::Double;
      p.eps_a = cfg.eps_a + x;
      p.eps_b = cfg.eps_a - x;
      collect_warnings(p, warnings);
      std::optional<ExpansionResult> approx;
      try {
        approx = z_fano_small(cfg.eps_a, x, cfg.alpha);
      } catch (const std::domain_error&) {
        // embedded level at or below threshold: exact roots only
      }
      emit(x, p, approx);
    } else {  // polar
      const PolarCoords c{x, cfg.theta};
      ModelParams p = from_symmetric(from_polar(c), cfg.medium);
      // The gapless-medium polar formula is normalized for per-level
      // couplings alpha/sqrt(2); the band-edge formula for alpha itself.
      // Build the exact model in the matching normalization so the deviation
      // column measures truncation error rather than conventions.
      const double a = (cfg.medium == Medium::ThreeD)
                           ? cfg.alpha / std::sqrt(2.0)
                           : cfg.alpha;
      p.alpha_a = a;
      p.alpha_b = a;
      collect_warnings(p, warnings);
      emit(x, p, z_meeting_polar(c, cfg.alpha, cfg.medium));
    }
  }
  return t;
}

Table build_sigma(const CliConfig& cfg, std::vector<std::string>& warnings) {
  (void)warnings;
  require_scan(cfg);
  Table t;
  t.header = {"re_z",     "plus_re", "plus_im", "minus_re",
              "minus_im", "quad_re", "quad_im"};
  for (int i = 0; i < cfg.n; ++i) {
    const double x = scan_point(cfg, i);
    const std::complex<double> z(x, 0.0);
    Row row;
    row.push_back(cell(x));
    try {
      const std::complex<double> sp = sigma_closed(z, SheetBranch::Plus, cfg.medium);
      const std::complex<double> sm = sigma_closed(z, SheetBranch::Minus, cfg.medium);
      row.push_back(cell(sp.real()));
      row.push_back(cell(sp.imag()));
      row.push_back(cell(sm.real()));
      row.push_back(cell(sm.imag()));
    } catch (const std::domain_error&) {
      for (int k = 0; k < 4; ++k) row.push_back(null_cell());
    }
    try {
      const std::complex<double> q = sigma_quadrature(z, cfg.medium);
      row.push_back(cell(q.real()));
      row.push_back(cell(q.imag()));
    } catch (const std::exception&) {
      row.push_back(null_cell());
      row.push_back(null_cell());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table build_jordan(const CliConfig& cfg, std::vector<std::string>& warnings) {
  collect_warnings(base_params(cfg), warnings);
  const Matrix2 m = cfg.single_state
                        ? build_2x2_single(cfg.eps_a, cfg.alpha)
                        : build_2x2_two(cfg.eps_a, cfg.eps_d, cfg.alpha);
  const JordanReport r = analyze(m);
  Table t;
  t.header = {"builder", "eps_a", "eps_d", "alpha",
              "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im",
              "defective", "eigenvector_overlap", "rank_deficiency_certificate",
              "diagonalizable_degeneracy"};
  t.rows.push_back(Row{
      cell(std::string(cfg.single_state ? "single" : "two")), cell(cfg.eps_a),
      cfg.single_state ? null_cell() : cell(cfg.eps_d), cell(cfg.alpha),
      cell(r.eigenvalues[0].real()), cell(r.eigenvalues[0].imag()),
      cell(r.eigenvalues[1].real()), cell(r.eigenvalues[1].imag()),
      cell(r.defective), cell(r.eigenvector_overlap),
      cell(r.rank_deficiency_certificate), cell(r.diagonalizable_degeneracy)});
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

ParseOutcome parse_config(const std::vector<std::string>& args) {
  ParseOutcome outcome;
  CliConfig cfg;
  std::string medium_str = "1d";
  std::string format_str = "csv";

  // Seed defaults from --config before flag parsing so explicit flags win.
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
    if (path.empty()) continue;
    std::ifstream f(path);
    if (!f) {
      outcome.exit_code = 4;
      outcome.message = "error: cannot read config file '" + path + "'";
      return outcome;
    }
    nlohmann::json j;
    try {
      f >> j;
      if (!j.is_object()) throw std::runtime_error("top level must be an object");
      static const std::vector<std::string> known = {
          "alpha",  "medium", "eps_a", "eps_b", "single", "axis",  "lo",
          "hi",     "n",      "a_lo",  "a_hi",  "b_lo",   "b_hi",  "na",
          "nb",     "expansion", "theta", "eps_d", "bic", "out",  "format",
          "jobs"};
      for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
          throw std::runtime_error("unknown key '" + item.key() + "'");
        }
      }
      if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
      if (j.contains("medium")) medium_str = j.at("medium").get<std::string>();
      if (j.contains("eps_a")) cfg.eps_a = j.at("eps_a").get<double>();
      if (j.contains("eps_b")) cfg.eps_b = j.at("eps_b").get<double>();
      if (j.contains("single")) cfg.single_state = j.at("single").get<bool>();
      if (j.contains("axis")) cfg.axis = j.at("axis").get<std::string>();
      if (j.contains("lo")) cfg.lo = j.at("lo").get<double>();
      if (j.contains("hi")) cfg.hi = j.at("hi").get<double>();
      if (j.contains("n")) cfg.n = j.at("n").get<int>();
      if (j.contains("a_lo")) cfg.a_lo = j.at("a_lo").get<double>();
      if (j.contains("a_hi")) cfg.a_hi = j.at("a_hi").get<double>();
      if (j.contains("b_lo")) cfg.b_lo = j.at("b_lo").get<double>();
      if (j.contains("b_hi")) cfg.b_hi = j.at("b_hi").get<double>();
      if (j.contains("na")) cfg.na = j.at("na").get<int>();
      if (j.contains("nb")) cfg.nb = j.at("nb").get<int>();
      if (j.contains("expansion")) cfg.expansion = j.at("expansion").get<std::string>();
      if (j.contains("theta")) cfg.theta = j.at("theta").get<double>();
      if (j.contains("eps_d")) cfg.eps_d = j.at("eps_d").get<double>();
      if (j.contains("bic")) cfg.bic = j.at("bic").get<bool>();
      if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
      if (j.contains("format")) format_str = j.at("format").get<std::string>();
      if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    } catch (const std::exception& e) {
      outcome.exit_code = 2;
      outcome.message = std::string("error: malformed config file: ") + e.what();
      return outcome;
    }
  }

  CLI::App app{
      "Spectral structure of discrete levels coupled to a band continuum: "
      "complex eigenvalues, exceptional points, phase maps, and expansion "
      "validation.\n"
      "Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 I/O error."};
  app.require_subcommand(1);
  std::string config_sink;
  app.add_option("--config", config_sink, "JSON config file; flags override it");

  struct SubDef {
    const char* name;
    Subcommand id;
    const char* desc;
  };
  const std::vector<SubDef> defs = {
      {"eigs", Subcommand::Eigs, "spectrum at a single parameter point"},
      {"sweep", Subcommand::Sweep, "spectrum along a level-position scan"},
      {"phase", Subcommand::Phase, "time-symmetry phase over a level-position grid"},
      {"ep", Subcommand::Ep,
       "exceptional points along a scan (--lo/--hi/--n) or grid curves (--na/--nb)"},
      {"fano", Subcommand::Fano,
       "resonance deviation along the symmetric line (--bic for double-root certificates)"},
      {"expand", Subcommand::Expand,
       "asymptotic expansion vs exact roots (--expansion single|two|fano-small|polar)"},
      {"sigma", Subcommand::Sigma, "self-energy branches and quadrature cross-check"},
      {"jordan", Subcommand::Jordan, "local 2x2 defectiveness report"},
  };
  std::vector<CLI::App*> subs;
  for (const SubDef& d : defs) {
    CLI::App* s = app.add_subcommand(d.name, d.desc);
    s->add_option("--alpha", cfg.alpha, "coupling strength (> 0)");
    s->add_option("--medium", medium_str, "continuum dimensionality")
        ->check(CLI::IsMember({"1d", "3d"}));
    s->add_option("--eps-a", cfg.eps_a,
                  "first level position (eps_A for symmetric-line commands)");
    s->add_option("--eps-b", cfg.eps_b, "second level position");
    s->add_flag("--single,!--two", cfg.single_state, "single-level model");
    s->add_option("--axis", cfg.axis, "swept parameter")
        ->check(CLI::IsMember({"eps_a", "eps_b"}));
    s->add_option("--lo", cfg.lo, "scan start");
    s->add_option("--hi", cfg.hi, "scan end");
    s->add_option("--n", cfg.n, "scan sample count (>= 2)");
    s->add_option("--a-lo", cfg.a_lo, "grid eps_a lower bound");
    s->add_option("--a-hi", cfg.a_hi, "grid eps_a upper bound");
    s->add_option("--b-lo", cfg.b_lo, "grid eps_b lower bound");
    s->add_option("--b-hi", cfg.b_hi, "grid eps_b upper bound");
    s->add_option("--na", cfg.na, "grid size along eps_a (>= 2)");
    s->add_option("--nb", cfg.nb, "grid size along eps_b (>= 2)");
    s->add_option("--expansion", cfg.expansion, "which expansion to validate")
        ->check(CLI::IsMember({"single", "two", "fano-small", "polar"}));
    s->add_option("--theta", cfg.theta, "polar angle in radians");
    s->add_option("--eps-d", cfg.eps_d, "level detuning");
    s->add_flag("--bic", cfg.bic, "emit embedded-bound-state certificates");
    s->add_option("--out", cfg.out, "output file (stdout when omitted)");
    s->add_option("--format", format_str, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--jobs", cfg.jobs, "worker count (>= 1)")
        ->check(CLI::PositiveNumber);
    s->add_option("--config", config_sink, "JSON config file; flags override it");
    subs.push_back(s);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sout, serr;
    const int code = app.exit(e, sout, serr);
    outcome.exit_code = (code == 0) ? 0 : 2;
    outcome.message = sout.str() + serr.str();
    while (!outcome.message.empty() && outcome.message.back() == '\n') {
      outcome.message.pop_back();
    }
    return outcome;
  }

  for (std::size_t k = 0; k < defs.size(); ++k) {
    if (app.got_subcommand(defs[k].name)) cfg.subcommand = defs[k].id;
  }
  cfg.medium = (medium_str == "3d") ? Medium::ThreeD : Medium::OneD;
  cfg.format = (format_str == "json") ? OutputFormat::Json : OutputFormat::Csv;
  if (medium_str != "1d" && medium_str != "3d") {
    outcome.exit_code = 2;
    outcome.message = "error: medium must be 1d or 3d";
    return outcome;
  }
  if (format_str != "csv" && format_str != "json") {
    outcome.exit_code = 2;
    outcome.message = "error: format must be csv or json";
    return outcome;
  }
  if (!(cfg.alpha > 0.0)) {
    outcome.exit_code = 2;
    outcome.message = "error: --alpha must be positive";
    return outcome;
  }
  if (cfg.jobs < 1) {
    outcome.exit_code = 2;
    outcome.message = "error: --jobs must be >= 1";
    return outcome;
  }

  outcome.run = true;
  outcome.config = cfg;
  return outcome;
}

// ---------------------------------------------------------------------------
// Execution.
// ---------------------------------------------------------------------------

int run(const CliConfig& cfg, std::ostream& summary, std::ostream& fallback_rows) {
  Table table;
  std::vector<std::string> warnings;
  try {
    switch (cfg.subcommand) {
      case Subcommand::Eigs:
        table = build_eigs(cfg, warnings);
        break;
      case Subcommand::Sweep:
        table = build_sweep(cfg, warnings);
        break;
      case Subcommand::Phase:
        table = build_phase(cfg, warnings);
        break;
      case Subcommand::Ep:
        table = build_ep(cfg, warnings);
        break;
      case Subcommand::Fano:
        table = build_fano(cfg, warnings);
        break;
      case Subcommand::Expand:
        table = build_expand(cfg, warnings);
        break;
      case Subcommand::Sigma:
        table = build_sigma(cfg, warnings);
        break;
      case Subcommand::Jordan:
        table = build_jordan(cfg, warnings);
        break;
    }
  } catch (const std::invalid_argument& e) {
    summary << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    summary << "error: " << e.what() << '\n';
    return 3;
  }

  const std::string rendered =
      (cfg.format == OutputFormat::Csv) ? to_csv(table) : to_json(table);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      summary << "error: cannot open output file '" << cfg.out << "'\n";
      return 4;
    }
    f << rendered;
    f.flush();
    if (!f) {
      summary << "error: failed writing output file '" << cfg.out << "'\n";
      return 4;
    }
  } else {
    fallback_rows << rendered;
  }

  summary << subcommand_name(cfg.subcommand) << ": " << table.rows.size()
          << " rows";
  if (!cfg.out.empty()) summary << " -> " << cfg.out;
  summary << " (" << (cfg.format == OutputFormat::Csv ? "csv" : "json") << ")";
  for (const std::string& w : warnings) summary << "; " << w;
  summary << '\n';
  return 0;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const ParseOutcome outcome = parse_config(args);
  if (!outcome.run) {
    if (!outcome.message.empty()) {
      ((outcome.exit_code == 0) ? std::cout : std::cerr) << outcome.message << '\n';
    }
    return outcome.exit_code;
  }
  // Rows are data (stdout); the summary and warnings are diagnostics
  // (stderr), so piped CSV/JSON stays machine-readable.
  return run(outcome.config, std::cerr, std::cout);
}

}  // namespace contspec::cli
