#pragma once

// Table/report builders behind the fgauss command line, and their CSV and
// JSON writers. Floats are written as the shortest decimal that round-trips.

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "fgauss/dynamics.hpp"
#include "fgauss/error.hpp"
#include "fgauss/hilbert.hpp"
#include "fgauss/lattice.hpp"
#include "fgauss/spectral.hpp"
#include "fgauss/theta.hpp"
#include "fgauss/wigner.hpp"

namespace fgauss {

enum class Format { csv, json };

struct RunConfig {
  int d = 31;
  double kappa = 1.0;
  double term_tol = default_term_tol;
  double eig_tol = eig_residual_tol;
  double rel_tol = 1e-9;
  std::int64_t max_den = 1'000'000;
  Format format = Format::csv;
  std::string output_path;  ///< empty means stdout

  void validate() const {
    Dimension{d};
    detail::require_positive(kappa, "kappa");
    detail::require(term_tol > 0.0 && term_tol < 1.0, Errc::invalid_parameter,
                    "term_tol must lie in (0, 1)");
    detail::require_positive(eig_tol, "eig_tol");
    detail::require_positive(rel_tol, "rel_tol");
    detail::require(max_den >= 1, Errc::invalid_parameter, "max_den must be >= 1");
  }
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Output of one command: a table or a flat key/value record, plus an exit
/// status and a diagnostic for failures detected after computing.
struct Report {
  Table table;
  nlohmann::ordered_json record;  ///< used when `is_record`
  bool is_record = false;
  nlohmann::ordered_json extras;  ///< side values (e.g. --check); stderr in CSV mode
  int exit_code = 0;
  std::string diagnostic;
};

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline std::string json_text(const nlohmann::ordered_json& j) {
  return j.is_number_float() ? format_double(j.get<double>())
                             : (j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Report& r) {
  if (r.is_record) {
    os << "key,value\n";
    for (const auto& [k, v] : r.record.items()) os << k << ',' << detail::json_text(v) << '\n';
    return;
  }
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) {
    os << (i ? "," : "") << r.table.columns[i];
  }
  os << '\n';
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::cell_text(row[i]);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Report& r) {
  nlohmann::ordered_json out;
  if (r.is_record) {
    out = r.record;
  } else {
    out = nlohmann::ordered_json::object();
    out["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[r.table.columns[i]] = detail::cell_json(row[i]);
      out["rows"].push_back(std::move(obj));
    }
  }
  for (const auto& [k, v] : r.extras.items()) out[k] = v;
  os << out.dump(2) << '\n';
}

/// Columns n, g, g_plus, naive.
inline Report cmd_gauss(const RunConfig& cfg) {
  const Dimension dim(cfg.d);
  const FiniteGaussian g = finite_gaussian(dim, cfg.kappa, cfg.term_tol);
  const FiniteGaussian gp = shifted_finite_gaussian(dim, cfg.kappa, cfg.term_tol);
  const RealVector naive = naive_gaussian(dim, cfg.kappa);
  Report r;
  r.table.columns = {"n", "g", "g_plus", "naive"};
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    r.table.rows.push_back({std::int64_t{n}, g(n), gp(n), naive(n)});
  }
  return r;
}

/// Im(eta_k) of the [Q,P] eigenvalues, ascending.
inline Report cmd_commutator(const RunConfig& cfg) {
  const Dimension dim(cfg.d);
  const Eigen::VectorXd eta = commutator_spectrum(dim);
  Report r;
  r.table.columns = {"k", "im_eta"};
  for (Eigen::Index k = 0; k < eta.size(); ++k) {
    r.table.rows.push_back({static_cast<std::int64_t>(k), eta(k)});
  }
  return r;
}

inline Report cmd_uncertainty(const RunConfig& cfg, const std::vector<int>& d_list) {
  Report r;
  r.table.columns = {"d", "kappa", "dq", "dp", "product", "half_comm", "gap"};
  for (int d : d_list) {
    const UncertaintyReport u = uncertainty_product(Dimension(d), cfg.kappa, cfg.term_tol);
    r.table.rows.push_back(
        {std::int64_t{d}, u.kappa, u.dq, u.dp, u.product, u.half_comm, u.gap});
  }
  return r;
}

enum class HamiltonianKind { osc, free };

inline OperatorMatrix make_hamiltonian(const Dimension& dim, HamiltonianKind kind) {
  return kind == HamiltonianKind::osc ? oscillator_hamiltonian(dim) : free_hamiltonian(dim);
}

namespace detail {

inline void check_eig_residual(const Spectrum& sp, const OperatorMatrix& h, double eig_tol) {
  if (sp.residual > eig_tol * max_abs(h.matrix())) {
    throw Error(Errc::numerical_failure, "eigen-decomposition residual above --eig-tol",
                sp.residual);
  }
}

}  // namespace detail

/// Eigenvalues descending with the gap to the next lower level.
inline Report cmd_spectrum(const RunConfig& cfg, HamiltonianKind kind) {
  const Dimension dim(cfg.d);
  const OperatorMatrix h = make_hamiltonian(dim, kind);
  const Spectrum sp = hermitian_eig(h);
  detail::check_eig_residual(sp, h, cfg.eig_tol);
  Report r;
  r.table.columns = {"k", "eigenvalue", "gap"};
  const Eigen::Index d = sp.eigenvalues.size();
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index k = d - 1 - i;
    Cell gap;
    if (k > 0) gap = sp.eigenvalues(k) - sp.eigenvalues(k - 1);
    r.table.rows.push_back({static_cast<std::int64_t>(k), sp.eigenvalues(k), gap});
  }
  return r;
}

/// lambda and the residual (H g_1 - lambda g_1)(n) for n = 1..s.
inline Report cmd_quasi(const RunConfig& cfg) {
  const Dimension dim(cfg.d);
  const QuasiEigenResidual q = quasi_eigen_residual(dim, cfg.term_tol);
  Report r;
  r.table.columns = {"d", "lambda", "n", "residual"};
  for (int n = 1; n <= dim.s(); ++n) {
    r.table.rows.push_back({std::int64_t{cfg.d}, q.lambda, std::int64_t{n}, q.residual(n)});
  }
  return r;
}

inline constexpr double wigner_check_tol = 1e-12;  ///< relative to max|W|

/// d x d grid: one row per n, one column per m. With `check`, also the
/// largest |definition - closed_form|.
inline Report cmd_wigner(const RunConfig& cfg, WignerSource source, bool check) {
  const Dimension dim(cfg.d);
  if (source == WignerSource::theta_form && cfg.kappa != 1.0) {
    throw Error(Errc::invalid_parameter, "the theta form is defined for kappa = 1 only");
  }
  const WignerGrid w = source == WignerSource::definition ? wigner_definition(dim, cfg.kappa, cfg.term_tol)
                       : source == WignerSource::closed_form
                           ? wigner_closed_form(dim, cfg.kappa, cfg.term_tol)
                           : wigner_theta_form(dim, cfg.term_tol);
  Report r;
  r.table.columns = {"n"};
  for (int m = -dim.s(); m <= dim.s(); ++m) r.table.columns.push_back(std::to_string(m));
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    std::vector<Cell> row{std::int64_t{n}};
    for (int m = -dim.s(); m <= dim.s(); ++m) row.emplace_back(w(n, m));
    r.table.rows.push_back(std::move(row));
  }
  r.extras = nlohmann::ordered_json::object();
  r.extras["source"] = to_string(source);
  if (w.fitted_scale) r.extras["fitted_scale"] = *w.fitted_scale;
  // central peak, the two edge peaks and the corner anti-peak
  const int s = dim.s();
  r.extras["w_origin"] = w(0, 0);
  r.extras["w_edge_m"] = w(0, s);
  r.extras["w_edge_n"] = w(s, 0);
  r.extras["w_corner"] = w(s, s);
  if (check) {
    const WignerGrid def = source == WignerSource::definition ? w : wigner_definition(dim, cfg.kappa, cfg.term_tol);
    const WignerGrid closed = wigner_closed_form(dim, cfg.kappa, cfg.term_tol);
    const double diff = max_abs_diff(def, closed);
    const double scale = def.max_abs();
    r.extras["check_max_abs_diff"] = diff;
    r.extras["check_max_abs_w"] = scale;
    if (diff > wigner_check_tol * scale) {
      r.exit_code = 3;
      r.diagnostic = "definition and closed form disagree by " + format_double(diff);
    }
  }
  return r;
}

struct StateSpec {
  enum class Kind { gauss, coherent, delta } kind = Kind::gauss;
  int a = 0;
  int b = 0;
};

inline StateVector make_state(const Dimension& dim, const StateSpec& spec, double term_tol) {
  switch (spec.kind) {
    case StateSpec::Kind::gauss:
      return StateVector(finite_gaussian(dim, 1.0, term_tol).values).normalized();
    case StateSpec::Kind::coherent:
      return coherent_state(dim, {spec.a, spec.b}, term_tol);
    case StateSpec::Kind::delta: {
      detail::require(dim.contains(spec.a), Errc::out_of_range, "delta index outside {-s..s}");
      StateVector psi(dim);
      psi(spec.a) = 1.0;
      return psi;
    }
  }
  return StateVector(dim);
}

/// Revival analysis of the chosen state, certified by direct evolution.
inline Report cmd_revival(const RunConfig& cfg, HamiltonianKind kind, const StateSpec& state,
                          double weight_floor = 1e-12) {
  const Dimension dim(cfg.d);
  const OperatorMatrix h = make_hamiltonian(dim, kind);
  const Propagator prop(h);
  detail::check_eig_residual(prop.spectrum(), h, cfg.eig_tol);
  const StateVector psi = make_state(dim, state, cfg.term_tol);
  const Eigen::VectorXd w = prop.weights(psi);
  const Eigen::VectorXd& ev = prop.spectrum().eigenvalues;

  RevivalOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_den = cfg.max_den;
  opt.weight_floor = weight_floor;
  const RevivalReport rep = detect_revival(std::vector<double>(ev.begin(), ev.end()),
                                           std::vector<double>(w.begin(), w.end()), opt);

  Report r;
  r.is_record = true;
  auto& j = r.record;
  j["kind"] = to_string(rep.kind);
  j["period"] = rep.period ? nlohmann::ordered_json(*rep.period) : nlohmann::ordered_json(nullptr);
  j["m"] = rep.m ? nlohmann::ordered_json(*rep.m) : nlohmann::ordered_json(nullptr);
  j["populated_levels"] = rep.level_subset.size();
  j["zero_level_excluded"] = rep.zero_level_excluded;
  j["rel_tol"] = rep.tol_used;
  if (rep.period) {
    const Certification c = certify_period(prop, psi, *rep.period);
    j["certified"] = c.certified;
    j["defect"] = c.defect;
    j["autocorrelation"] = c.min_autocorrelation;
    if (!c.certified) {
      r.exit_code = 3;
      r.diagnostic = "period " + format_double(*rep.period) + " failed certification, defect " +
                     format_double(c.defect);
    }
  } else {
    j["certified"] = false;
  }
  j["note"] = rep.note;
  return r;
}

}  // namespace fgauss
