#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "fgauss/error.hpp"

namespace fgauss {

using cplx = std::complex<double>;

/// Odd lattice size d = 2s+1 of Z_d. Elements of Z_d are always carried as
/// their centered representatives {-s, ..., s}.
class Dimension {
 public:
  explicit Dimension(int d) : d_(d), s_((d - 1) / 2) {
    detail::require(d >= 3 && d % 2 == 1, Errc::invalid_dimension,
                    "dimension must be odd and >= 3, got " + std::to_string(d));
  }

  int d() const noexcept { return d_; }
  int s() const noexcept { return s_; }

  /// sqrt(2*pi/d): the lattice spacing of the position/momentum spectra.
  double spacing() const noexcept { return std::sqrt(2.0 * std::numbers::pi / d_); }

  bool contains(long long n) const noexcept { return n >= -s_ && n <= s_; }

  /// Centered representative of n mod d.
  int reduce(long long n) const noexcept {
    long long r = n % d_;
    if (r < 0) r += d_;
    if (r > s_) r -= d_;
    return static_cast<int>(r);
  }

  std::size_t offset(int n) const noexcept { return static_cast<std::size_t>(n + s_); }
  int index_at(std::size_t offset) const noexcept { return static_cast<int>(offset) - s_; }

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  int d_;
  int s_;
};

/// exp(2*pi*i*k/d), with k reduced mod d first so the angle stays in
/// [-pi, pi] regardless of how large k is.
inline cplx unit_root(long long k, const Dimension& dim) {
  const double angle = 2.0 * std::numbers::pi * dim.reduce(k) / dim.d();
  return {std::cos(angle), std::sin(angle)};
}

/// Function Z_d -> T stored by centered index.
template <class T>
class ZdVector {
 public:
  explicit ZdVector(Dimension dim) : dim_(dim), data_(static_cast<std::size_t>(dim.d())) {}
  ZdVector(Dimension dim, std::vector<T> data) : dim_(dim), data_(std::move(data)) {
    detail::require(data_.size() == static_cast<std::size_t>(dim_.d()), Errc::dim_mismatch,
                    "vector length does not match dimension");
  }

  const Dimension& dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  /// n must be a centered representative.
  T& operator()(int n) { return data_[dim_.offset(n)]; }
  const T& operator()(int n) const { return data_[dim_.offset(n)]; }

  /// Any integer; reduced mod d.
  const T& wrapped(long long n) const { return data_[dim_.offset(dim_.reduce(n))]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

 private:
  Dimension dim_;
  std::vector<T> data_;
};

using RealVector = ZdVector<double>;

}  // namespace fgauss
