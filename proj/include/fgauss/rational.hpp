#pragma once

// Continued-fraction rational reconstruction of floating-point ratios.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "fgauss/error.hpp"

namespace fgauss {

struct Fraction {
  std::int64_t p = 0;
  std::int64_t q = 1;  ///< always >= 1

  double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Convergents p_k/q_k of the simple continued fraction of x, in order, up to
/// the last one with q_k <= max_den. Stops early once the expansion terminates
/// in floating point.
inline std::vector<Fraction> convergents(double x, std::int64_t max_den) {
  detail::require(std::isfinite(x), Errc::invalid_parameter, "cannot expand a non-finite value");
  detail::require(max_den >= 1, Errc::invalid_parameter, "max_den must be >= 1");
  constexpr double limit = 9.0e18;
  std::vector<Fraction> out;
  // (p_{-1}, q_{-1}) = (1, 0), (p_{-2}, q_{-2}) = (0, 1)
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p_prev2 = 0, q_prev2 = 1;
  double rem = x;
  for (int iter = 0; iter < 100; ++iter) {
    const double a_floor = std::floor(rem);
    if (std::abs(a_floor) > limit) break;
    const auto a = static_cast<std::int64_t>(a_floor);
    std::int64_t p, q;
    if (__builtin_mul_overflow(a, p_prev, &p) || __builtin_add_overflow(p, p_prev2, &p) ||
        __builtin_mul_overflow(a, q_prev, &q) || __builtin_add_overflow(q, q_prev2, &q)) {
      break;
    }
    if (q > max_den) break;
    out.push_back({p, q});
    const double frac = rem - a_floor;
    if (frac <= 0.0 || frac < 1e-300) break;
    rem = 1.0 / frac;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  return out;
}

/// First convergent of x with |p/q - x| <= rel_tol * |x| and q <= max_den.
/// x == 0 maps to 0/1.
inline std::optional<Fraction> rational_approx(double x, double rel_tol, std::int64_t max_den) {
  detail::require_positive(rel_tol, "rel_tol");
  if (x == 0.0) return Fraction{0, 1};
  for (const Fraction& c : convergents(x, max_den)) {
    if (std::abs(c.value() - x) <= rel_tol * std::abs(x)) return c;
  }
  return std::nullopt;
}

/// lcm(a, b) for positive a, b; throws capacity-exceeded when the result does
/// not fit in a signed 64-bit integer.
inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  detail::require(a > 0 && b > 0, Errc::invalid_parameter, "lcm arguments must be positive");
  const std::int64_t g = std::gcd(a, b);
  std::int64_t out;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw Error(Errc::capacity_exceeded, "lcm of denominators exceeds 2^63");
  }
  return out;
}

}  // namespace fgauss
