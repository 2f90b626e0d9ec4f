#pragma once

// Time evolution under a hermitian Hamiltonian, autocorrelation series and
// revival periods for commensurate or equidistant populated levels.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fgauss/error.hpp"
#include "fgauss/hilbert.hpp"
#include "fgauss/rational.hpp"
#include "fgauss/spectral.hpp"

namespace fgauss {

/// H = P^2 / 2, eigenvalues pi n^2 / d.
inline OperatorMatrix free_hamiltonian(const Dimension& dim) {
  const Eigen::MatrixXcd p = momentum_operator(dim).matrix();
  Eigen::MatrixXcd h = 0.5 * p * p;
  return OperatorMatrix(dim, std::move(h), OperatorKind::hermitian);
}

/// e^{-itH} for all t from one eigendecomposition.
class Propagator {
 public:
  explicit Propagator(const OperatorMatrix& h) : dim_(h.dim()), spectrum_(hermitian_eig(h)) {}

  const Dimension& dim() const noexcept { return dim_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }

  StateVector evolve(const StateVector& psi, double t) const {
    detail::require(psi.dim() == dim_, Errc::dim_mismatch, "state/Hamiltonian dimension mismatch");
    const Eigen::MatrixXcd& v = spectrum_.eigenvectors;
    Eigen::VectorXcd c = v.adjoint() * psi.amps();
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      c(k) *= std::polar(1.0, -t * spectrum_.eigenvalues(k));
    }
    return StateVector(dim_, v * c);
  }

  /// |<v_k|psi>|^2 per eigenvector, in spectrum order.
  Eigen::VectorXd weights(const StateVector& psi) const {
    detail::require(psi.dim() == dim_, Errc::dim_mismatch, "state/Hamiltonian dimension mismatch");
    return (spectrum_.eigenvectors.adjoint() * psi.amps()).cwiseAbs2();
  }

 private:
  Dimension dim_;
  Spectrum spectrum_;
};

inline StateVector evolve(const OperatorMatrix& h, const StateVector& psi, double t) {
  return Propagator(h).evolve(psi, t);
}

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// |<psi|e^{-itH}|psi>| at each requested time. psi must be normalized.
inline TimeSeries autocorrelation(const OperatorMatrix& h, const StateVector& psi,
                                  const std::vector<double>& times) {
  detail::require(std::abs(psi.norm() - 1.0) <= 1e-12, Errc::invalid_parameter,
                  "autocorrelation needs a normalized state");
  const Propagator prop(h);
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) out.values.push_back(std::abs(psi.inner(prop.evolve(psi, t))));
  return out;
}

enum class RevivalKind { commensurate, equidistant, none };

inline const char* to_string(RevivalKind kind) noexcept {
  switch (kind) {
    case RevivalKind::commensurate: return "commensurate";
    case RevivalKind::equidistant: return "equidistant";
    case RevivalKind::none: return "none";
  }
  return "none";
}

struct RevivalReport {
  RevivalKind kind = RevivalKind::none;
  std::optional<double> period;
  std::optional<std::int64_t> m;     ///< LCM of denominators (commensurate only)
  std::vector<int> level_subset;     ///< indices of populated input levels
  double tol_used = 0.0;
  bool zero_level_excluded = false;  ///< a populated zero level was left out of the ratios
  std::string note;
};

struct RevivalOptions {
  double rel_tol = 1e-9;
  std::int64_t max_den = 1'000'000;
  double weight_floor = 1e-12;
};

namespace detail {

// Sorted distinct values, merging anything within tol of the previous
// cluster's first member.
inline std::vector<double> distinct_levels(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Revival period for a state with level populations `weights`.
///
/// Equidistant branch: the distinct levels between the lowest and highest
/// populated one are evenly spaced by g; the period is 2 pi / (g * k) where
/// k is the gcd of the populated offsets in units of g. Commensurate branch:
/// every nonzero populated level is a rational multiple p_j/q_j of the
/// smallest one eps_1, and the period is 2 m pi / |eps_1| with m = lcm(q_j).
inline RevivalReport detect_revival(const std::vector<double>& levels,
                                    const std::vector<double>& weights,
                                    const RevivalOptions& opt = {}) {
  detail::require(levels.size() == weights.size(), Errc::dim_mismatch,
                  "levels and weights differ in length");
  detail::require_positive(opt.rel_tol, "rel_tol");
  detail::require(opt.max_den >= 1, Errc::invalid_parameter, "max_den must be >= 1");

  RevivalReport rep;
  rep.tol_used = opt.rel_tol;
  double scale = 0.0;
  for (double e : levels) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) scale = 1.0;
  const double merge_tol = opt.rel_tol * scale;

  std::vector<double> populated;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (weights[j] > opt.weight_floor) {
      rep.level_subset.push_back(static_cast<int>(j));
      populated.push_back(levels[j]);
    }
  }
  if (populated.empty()) throw Error(Errc::no_levels, "no level is populated above the weight floor");

  const std::vector<double> all = detail::distinct_levels(levels, merge_tol);
  const std::vector<double> pop = detail::distinct_levels(populated, merge_tol);

  if (pop.size() == 1) {
    // Stationary state: any time is a period up to phase; report the shortest
    // beat with a neighbouring level so the value stays meaningful.
    double gap = 0.0;
    for (double e : all) {
      const double dist = std::abs(e - pop.front());
      if (dist > merge_tol && (gap == 0.0 || dist < gap)) gap = dist;
    }
    rep.kind = RevivalKind::equidistant;
    rep.period = 2.0 * std::numbers::pi / (gap > 0.0 ? gap : 1.0);
    rep.note = "single populated level: stationary state";
    return rep;
  }

  // Equidistant branch.
  std::vector<double> span;
  for (double e : all) {
    if (e >= pop.front() - merge_tol && e <= pop.back() + merge_tol) span.push_back(e);
  }
  if (span.size() >= 3) {
    const double g = (span.back() - span.front()) / static_cast<double>(span.size() - 1);
    bool even = g > 0.0;
    for (std::size_t k = 1; even && k < span.size(); ++k) {
      even = std::abs((span[k] - span[k - 1]) - g) <= opt.rel_tol * g;
    }
    if (even) {
      std::int64_t step = 0;
      for (double e : pop) {
        step = std::gcd(step, static_cast<std::int64_t>(std::llround((e - pop.front()) / g)));
      }
      rep.kind = RevivalKind::equidistant;
      rep.period = 2.0 * std::numbers::pi / (g * static_cast<double>(step));
      if (step > 1) rep.note = "populated levels skip every " + std::to_string(step) + " steps";
      return rep;
    }
  }

  // Commensurate branch.
  std::vector<double> nonzero;
  for (double e : pop) {
    if (std::abs(e) <= merge_tol) {
      rep.zero_level_excluded = true;
    } else {
      nonzero.push_back(e);
    }
  }
  if (nonzero.empty()) {
    rep.note = "only the zero level is populated";
    return rep;
  }
  const double eps1 = *std::min_element(nonzero.begin(), nonzero.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  std::int64_t m = 1;
  for (double e : nonzero) {
    const auto frac = rational_approx(e / eps1, opt.rel_tol, opt.max_den);
    if (!frac) {
      rep.note = "level ratio has no convergent within tolerance";
      return rep;
    }
    m = checked_lcm(m, frac->q);
  }
  rep.kind = RevivalKind::commensurate;
  rep.m = m;
  rep.period = 2.0 * static_cast<double>(m) * std::numbers::pi / std::abs(eps1);
  if (rep.zero_level_excluded) rep.note = "zero level excluded from ratio analysis";
  return rep;
}

struct Certification {
  bool certified = false;
  double defect = 0.0;  ///< worst max_n |Psi(t0+T) - e^{i phi} Psi(t0)| over the t0 tried
  double min_autocorrelation = 0.0;  ///< |<Psi(0)|Psi(T)>| for the normalized state
};

inline constexpr double certify_tol = 1e-8;

/// Direct check that T is a period up to a global phase, fitted from the
/// largest component, at t0 = 0 and t0 = 0.7.
inline Certification certify_period(const Propagator& prop, const StateVector& psi, double period,
                                    double tol = certify_tol) {
  Certification out;
  for (double t0 : {0.0, 0.7}) {
    const StateVector a = prop.evolve(psi, t0);
    const StateVector b = prop.evolve(psi, t0 + period);
    Eigen::Index k = 0;
    a.amps().cwiseAbs().maxCoeff(&k);
    const cplx ratio = b.amps()(k) / a.amps()(k);
    const cplx phase = ratio / std::abs(ratio);
    out.defect = std::max(out.defect, (b.amps() - phase * a.amps()).cwiseAbs().maxCoeff());
  }
  const StateVector unit = psi.normalized();
  out.min_autocorrelation = std::abs(unit.inner(prop.evolve(unit, period)));
  out.certified = out.defect <= tol;
  return out;
}

}  // namespace fgauss
