#pragma once

// Wrapped (finite) Gaussians on Z_d and the Jacobi theta kernels on the
// imaginary-modulus axis.
//
//   g_k(n)  = sum_a exp(-k*pi*(a*d + n)^2 / d)
//   g_k+(n) = sum_a exp(-k*pi*((a + 1/2)*d + n)^2 / d)
//
// All infinite sums are cut to a symmetric window and accumulated from the
// outermost pair inward, so each value is a sum of terms in increasing
// magnitude and g(-n) == g(n) holds bit for bit.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fgauss/error.hpp"
#include "fgauss/lattice.hpp"

namespace fgauss {

inline constexpr double default_term_tol = 1e-18;

enum class ThetaKind { theta2, theta3, theta4 };

struct FiniteGaussian {
  Dimension dim;
  double kappa;
  bool shifted;
  RealVector values;
  double term_tol;
  int window;  ///< outermost |alpha| (unshifted) or |alpha + 1/2| - 1/2 (shifted) summed

  double operator()(int n) const { return values(n); }
  double wrapped(long long n) const { return values.wrapped(n); }
};

namespace detail {

inline constexpr int max_window = 1'000'000;

inline void check_term_tol(double term_tol) {
  if (!(term_tol > 0.0 && term_tol < 1.0)) {
    throw Error(Errc::invalid_parameter, "term_tol must lie in (0, 1)");
  }
}

// Smallest A such that the first excluded term at the worst lattice point is
// below term_tol/4 times a lower bound on the peak value (1 for the centered
// sum, exp(-kappa*pi/(4d)) for the shifted one). The tail beyond it is then
// bounded by term_tol in both absolute and peak-relative terms.
inline int wrap_window(const Dimension& dim, double kappa, bool shifted, double term_tol) {
  const double d = dim.d();
  const double s = dim.s();
  const double log_peak_floor = shifted ? -kappa * std::numbers::pi / (4.0 * d) : 0.0;
  const double log_bound = std::log(term_tol / 4.0) + log_peak_floor;
  const double offset = shifted ? 1.5 : 1.0;
  for (int a = 0; a <= max_window; ++a) {
    const double x = (a + offset) * d - s;
    if (-kappa * std::numbers::pi * x * x / d < log_bound) return a;
  }
  throw Error(Errc::numerical_failure, "wrapped-sum window exceeds capacity; kappa too small");
}

// Twice the offset (a + shift)*d + n as an exact integer, shift in {0, 1/2}.
inline double doubled_offset(long long a, bool shifted, const Dimension& dim, long long n) {
  return static_cast<double>(2 * a * dim.d() + (shifted ? dim.d() : 0) + 2 * n);
}

inline double gauss_term(double kappa, double doubled, int d) {
  return std::exp(-kappa * std::numbers::pi * (doubled * doubled) / (4.0 * d));
}

// Sum over the symmetric window at one lattice point (any integer n).
inline double wrapped_sum_at(const Dimension& dim, double kappa, bool shifted, int window,
                             long long n) {
  double acc = 0.0;
  if (shifted) {
    // half-integers h = a + 1/2, paired as (h, -h) = (a, -a-1)
    for (long long a = window; a >= 0; --a) {
      const double hi = gauss_term(kappa, doubled_offset(a, true, dim, n), dim.d());
      const double lo = gauss_term(kappa, doubled_offset(-a - 1, true, dim, n), dim.d());
      acc += hi + lo;
    }
  } else {
    for (long long a = window; a >= 1; --a) {
      const double hi = gauss_term(kappa, doubled_offset(a, false, dim, n), dim.d());
      const double lo = gauss_term(kappa, doubled_offset(-a, false, dim, n), dim.d());
      acc += hi + lo;
    }
    acc += gauss_term(kappa, doubled_offset(0, false, dim, n), dim.d());
  }
  return acc;
}

inline FiniteGaussian make_finite_gaussian(const Dimension& dim, double kappa, double term_tol,
                                           bool shifted) {
  require_positive(kappa, "kappa");
  check_term_tol(term_tol);
  const int window = wrap_window(dim, kappa, shifted, term_tol);
  RealVector values(dim);
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    values(n) = wrapped_sum_at(dim, kappa, shifted, window, n);
  }
  return FiniteGaussian{dim, kappa, shifted, std::move(values), term_tol, window};
}

}  // namespace detail

/// Centered finite Gaussian g_kappa.
inline FiniteGaussian finite_gaussian(const Dimension& dim, double kappa,
                                      double term_tol = default_term_tol) {
  return detail::make_finite_gaussian(dim, kappa, term_tol, false);
}

/// Half-period-shifted finite Gaussian g_kappa^+; peaks at n = +-s.
inline FiniteGaussian shifted_finite_gaussian(const Dimension& dim, double kappa,
                                              double term_tol = default_term_tol) {
  return detail::make_finite_gaussian(dim, kappa, term_tol, true);
}

/// Finite Gaussian evaluated with an explicitly chosen window, bypassing the
/// truncation rule. Used to check that the rule is sound.
inline FiniteGaussian finite_gaussian_with_window(const Dimension& dim, double kappa,
                                                  bool shifted, int window) {
  detail::require_positive(kappa, "kappa");
  detail::require(window >= 0, Errc::invalid_parameter, "window must be non-negative");
  RealVector values(dim);
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    values(n) = detail::wrapped_sum_at(dim, kappa, shifted, window, n);
  }
  return FiniteGaussian{dim, kappa, shifted, std::move(values), 0.0, window};
}

namespace detail {

// Poisson-dual form, used for t < 1 where the cosine series cancels badly:
//   theta3(z|t) = t^-1/2 sum_k exp(-pi (z + k)^2 / t)
//   theta4(z|t) = t^-1/2 sum_k exp(-pi (z + 1/2 + k)^2 / t)
//   theta2(z|t) = t^-1/2 sum_k (-1)^k exp(-pi (z + k)^2 / t)
inline double theta_dual(ThetaKind kind, double z, double t, double term_tol) {
  const double pi = std::numbers::pi;
  // reduce z mod 1 before applying the half shift; both subtractions are exact
  const double n0 = std::round(z);
  double r = z - n0;  // |r| <= 1/2
  if (kind == ThetaKind::theta4) {
    r += 0.5;
    r -= std::round(r);
  }
  // peak term is at least exp(-pi/(4t)); excluded terms have |r + j| >= W + 1/2
  const double log_bound = std::log(term_tol / 4.0) - pi / (4.0 * t);
  int window = 0;
  while (-pi * (window + 0.5) * (window + 0.5) / t >= log_bound) ++window;
  const bool alternating = kind == ThetaKind::theta2;
  // theta2 sign of the term at x = r + j is (-1)^(j - n0)
  const bool odd_n0 = std::fmod(std::abs(n0), 2.0) == 1.0;
  auto term = [&](int j) {
    const double x = r + j;
    const double v = std::exp(-pi * x * x / t);
    return alternating && (odd_n0 != (std::abs(j) % 2 == 1)) ? -v : v;
  };
  double acc = 0.0;
  for (int j = window; j >= 1; --j) acc += term(j) + term(-j);
  acc += term(0);
  return acc / std::sqrt(t);
}

}  // namespace detail

/// theta_kind(z, i*t) for real z and t > 0. For t >= 1 this is the cosine
/// series (the imaginary part cancels pairwise and is never formed); for
/// t < 1 the equivalent Poisson-dual sum is used, whose terms do not cancel.
inline double theta(ThetaKind kind, double z, double t, double term_tol = default_term_tol) {
  detail::require_positive(t, "t");
  detail::check_term_tol(term_tol);
  if (t < 1.0) return detail::theta_dual(kind, z, t, term_tol);
  const double pi = std::numbers::pi;
  const double log_bound = std::log(term_tol / 4.0);
  const double offset = kind == ThetaKind::theta2 ? 1.5 : 1.0;
  int window = 0;
  while (-pi * t * (window + offset) * (window + offset) >= log_bound) ++window;

  double acc = 0.0;
  if (kind == ThetaKind::theta2) {
    for (int a = window; a >= 0; --a) {
      const double h = a + 0.5;
      acc += 2.0 * std::exp(-pi * t * h * h) * std::cos(2.0 * pi * h * z);
    }
    return acc;
  }
  for (int a = window; a >= 1; --a) {
    double term = 2.0 * std::exp(-pi * t * a * a) * std::cos(2.0 * pi * a * z);
    if (kind == ThetaKind::theta4 && (a % 2 == 1)) term = -term;
    acc += term;
  }
  return acc + 1.0;
}

/// Plain restriction exp(-kappa*pi*n^2/d) of the Gaussian to the lattice,
/// without wrapping.
inline RealVector naive_gaussian(const Dimension& dim, double kappa) {
  detail::require_positive(kappa, "kappa");
  RealVector out(dim);
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    out(n) = std::exp(-kappa * std::numbers::pi * n * n / dim.d());
  }
  return out;
}

/// Phi(n) = sum_a sample(sqrt(2*pi/d) * (a*d + n)).
///
/// Shells a = 1, 2, ... are added until two consecutive shells are below
/// term_tol relative to the largest partial value seen; convergence of the
/// series is the caller's responsibility.
template <class Sample>
RealVector periodize(Sample&& sample, const Dimension& dim, double term_tol = default_term_tol) {
  detail::check_term_tol(term_tol);
  const std::size_t d = static_cast<std::size_t>(dim.d());
  const double h = dim.spacing();
  auto at = [&](long long a, int n) {
    return static_cast<double>(sample(h * static_cast<double>(a * dim.d() + n)));
  };

  std::vector<double> center(d);
  double scale = 0.0;
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    center[dim.offset(n)] = at(0, n);
    scale = std::max(scale, std::abs(center[dim.offset(n)]));
  }

  // shells[a-1][offset] = sample at +a plus sample at -a
  std::vector<std::vector<double>> shells;
  int quiet = 0;
  for (long long a = 1; quiet < 2; ++a) {
    if (a > detail::max_window) {
      throw Error(Errc::numerical_failure, "periodization did not converge");
    }
    std::vector<double> shell(d);
    double shell_max = 0.0;
    for (int n = -dim.s(); n <= dim.s(); ++n) {
      const double hi = at(a, n);
      const double lo = at(-a, n);
      shell[dim.offset(n)] = hi + lo;
      shell_max = std::max({shell_max, std::abs(hi), std::abs(lo)});
    }
    shells.push_back(std::move(shell));
    scale = std::max(scale, shell_max);
    const double floor = scale > 0.0 ? term_tol * scale : term_tol;
    quiet = shell_max <= floor ? quiet + 1 : 0;
  }

  RealVector out(dim);
  for (std::size_t k = 0; k < d; ++k) {
    double acc = 0.0;
    for (auto it = shells.rbegin(); it != shells.rend(); ++it) acc += (*it)[k];
    out.values()[k] = acc + center[k];
  }
  return out;
}

}  // namespace fgauss
