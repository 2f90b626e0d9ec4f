#pragma once

// Discrete Wigner function of the finite Gaussian g_kappa on Z_d x Z_d.
//
//   W(n,m) = (1/d) sum_k exp(4 pi i m k / d) g(n-k) g(n+k)
//
// evaluated from the definition, from the closed form as products of finite
// Gaussians, and (kappa = 1, up to a constant) from theta functions.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "fgauss/error.hpp"
#include "fgauss/lattice.hpp"
#include "fgauss/theta.hpp"

namespace fgauss {

enum class WignerSource { definition, closed_form, theta_form };

inline const char* to_string(WignerSource s) noexcept {
  switch (s) {
    case WignerSource::definition: return "definition";
    case WignerSource::closed_form: return "closed_form";
    case WignerSource::theta_form: return "theta_form";
  }
  return "definition";
}

/// Row-major d x d grid, rows n = -s..s, columns m = -s..s.
class WignerGrid {
 public:
  WignerGrid(Dimension dim, double kappa, WignerSource source)
      : dim_(dim), kappa_(kappa), source_(source),
        values_(static_cast<std::size_t>(dim.d()) * static_cast<std::size_t>(dim.d()), 0.0) {}

  const Dimension& dim() const noexcept { return dim_; }
  double kappa() const noexcept { return kappa_; }
  WignerSource source() const noexcept { return source_; }

  double& operator()(int n, int m) { return values_[index(n, m)]; }
  double operator()(int n, int m) const { return values_[index(n, m)]; }

  const std::vector<double>& values() const noexcept { return values_; }

  double max_abs() const {
    double out = 0.0;
    for (double v : values_) out = std::max(out, std::abs(v));
    return out;
  }

  /// Largest |Im| discarded from the defining sum (definition source only).
  double imag_residue = 0.0;
  /// Least-squares constant c with W' ~ c W (theta form only).
  std::optional<double> fitted_scale;

 private:
  std::size_t index(int n, int m) const {
    return dim_.offset(n) * static_cast<std::size_t>(dim_.d()) + dim_.offset(m);
  }

  Dimension dim_;
  double kappa_;
  WignerSource source_;
  std::vector<double> values_;
};

inline constexpr double wigner_imag_tol = 1e-13;  ///< relative to max|W|

inline WignerGrid wigner_definition(const Dimension& dim, double kappa,
                                    double term_tol = default_term_tol) {
  detail::require_positive(kappa, "kappa");
  const FiniteGaussian g = finite_gaussian(dim, kappa, term_tol);
  WignerGrid w(dim, kappa, WignerSource::definition);
  double imag = 0.0;
  const double inv_d = 1.0 / dim.d();
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    for (int m = -dim.s(); m <= dim.s(); ++m) {
      cplx acc = 0.0;
      for (int k = -dim.s(); k <= dim.s(); ++k) {
        acc += unit_root(2LL * m * k, dim) * (g.wrapped(n - k) * g.wrapped(n + k));
      }
      acc *= inv_d;
      w(n, m) = acc.real();
      imag = std::max(imag, std::abs(acc.imag()));
    }
  }
  w.imag_residue = imag;
  if (imag > wigner_imag_tol * w.max_abs()) {
    throw Error(Errc::numerical_failure, "Wigner defining sum has a non-negligible imaginary part",
                imag);
  }
  return w;
}

/// (1/sqrt(2 kappa d)) [g_{2k}(n) (g_{2/k} + g_{2/k}^+)(m) + g_{2k}^+(n) (g_{2/k} - g_{2/k}^+)(m)]
inline WignerGrid wigner_closed_form(const Dimension& dim, double kappa,
                                     double term_tol = default_term_tol) {
  detail::require_positive(kappa, "kappa");
  const FiniteGaussian a = finite_gaussian(dim, 2.0 * kappa, term_tol);
  const FiniteGaussian a_plus = shifted_finite_gaussian(dim, 2.0 * kappa, term_tol);
  const FiniteGaussian b = finite_gaussian(dim, 2.0 / kappa, term_tol);
  const FiniteGaussian b_plus = shifted_finite_gaussian(dim, 2.0 / kappa, term_tol);
  const double pre = 1.0 / std::sqrt(2.0 * kappa * dim.d());
  WignerGrid w(dim, kappa, WignerSource::closed_form);
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    for (int m = -dim.s(); m <= dim.s(); ++m) {
      w(n, m) = pre * (a(n) * (b(m) + b_plus(m)) + a_plus(n) * (b(m) - b_plus(m)));
    }
  }
  return w;
}

/// theta3(n/d, 1/(2d)) theta3(2m/d, 2/d) + theta4(n/d, 1/(2d)) theta2(2m/d, 2/d),
/// the kappa = 1 Wigner function up to a constant. The constant fitted against
/// the defining sum is stored in `fitted_scale`.
inline WignerGrid wigner_theta_form(const Dimension& dim, double term_tol = default_term_tol) {
  WignerGrid w(dim, 1.0, WignerSource::theta_form);
  const double d = dim.d();
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    const double t3n = theta(ThetaKind::theta3, n / d, 1.0 / (2.0 * d), term_tol);
    const double t4n = theta(ThetaKind::theta4, n / d, 1.0 / (2.0 * d), term_tol);
    for (int m = -dim.s(); m <= dim.s(); ++m) {
      const double t3m = theta(ThetaKind::theta3, 2.0 * m / d, 2.0 / d, term_tol);
      const double t2m = theta(ThetaKind::theta2, 2.0 * m / d, 2.0 / d, term_tol);
      w(n, m) = t3n * t3m + t4n * t2m;
    }
  }
  const WignerGrid ref = wigner_definition(dim, 1.0, term_tol);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < w.values().size(); ++i) {
    num += w.values()[i] * ref.values()[i];
    den += ref.values()[i] * ref.values()[i];
  }
  w.fitted_scale = num / den;
  return w;
}

struct WignerMarginals {
  RealVector pos;  ///< sum over m
  RealVector mom;  ///< sum over n
};

inline WignerMarginals wigner_marginals(const WignerGrid& w) {
  const Dimension& dim = w.dim();
  WignerMarginals out{RealVector(dim), RealVector(dim)};
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    for (int m = -dim.s(); m <= dim.s(); ++m) {
      out.pos(n) += w(n, m);
      out.mom(m) += w(n, m);
    }
  }
  return out;
}

/// max |a - b| entrywise.
inline double max_abs_diff(const WignerGrid& a, const WignerGrid& b) {
  detail::require(a.dim() == b.dim(), Errc::dim_mismatch, "Wigner grids differ in dimension");
  double out = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    out = std::max(out, std::abs(a.values()[i] - b.values()[i]));
  }
  return out;
}

}  // namespace fgauss
