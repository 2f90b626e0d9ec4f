#pragma once

// The d-dimensional Hilbert space over Z_d: states, the finite Fourier
// transform, the position/momentum pair, Weyl displacements and the coherent
// tight frame built on g_1.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fgauss/error.hpp"
#include "fgauss/lattice.hpp"
#include "fgauss/theta.hpp"

namespace fgauss {

/// Complex amplitudes psi(n), n in {-s..s}, stored at offset n+s. No
/// implicit normalization anywhere.
class StateVector {
 public:
  explicit StateVector(Dimension dim) : dim_(dim), amps_(Eigen::VectorXcd::Zero(dim.d())) {}
  StateVector(Dimension dim, Eigen::VectorXcd amps) : dim_(dim), amps_(std::move(amps)) {
    detail::require(amps_.size() == dim_.d(), Errc::dim_mismatch,
                    "amplitude vector length does not match dimension");
  }
  template <class T>
  explicit StateVector(const ZdVector<T>& f) : StateVector(f.dim()) {
    for (int n = -dim_.s(); n <= dim_.s(); ++n) (*this)(n) = f(n);
  }

  const Dimension& dim() const noexcept { return dim_; }
  const Eigen::VectorXcd& amps() const noexcept { return amps_; }
  Eigen::VectorXcd& amps() noexcept { return amps_; }

  cplx& operator()(int n) { return amps_(static_cast<Eigen::Index>(dim_.offset(n))); }
  const cplx& operator()(int n) const { return amps_(static_cast<Eigen::Index>(dim_.offset(n))); }

  double norm() const { return amps_.norm(); }

  StateVector normalized() const {
    const double nrm = norm();
    detail::require(nrm > 0.0 && std::isfinite(nrm), Errc::invalid_parameter,
                    "cannot normalize a zero or non-finite state");
    return StateVector(dim_, amps_ / nrm);
  }

  cplx inner(const StateVector& other) const {
    detail::require(dim_ == other.dim_, Errc::dim_mismatch, "inner product across dimensions");
    return amps_.dot(other.amps_);  // conjugate-linear in *this
  }

 private:
  Dimension dim_;
  Eigen::VectorXcd amps_;
};

enum class OperatorKind { hermitian, unitary, general };

inline const char* to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::hermitian: return "hermitian";
    case OperatorKind::unitary: return "unitary";
    case OperatorKind::general: return "general";
  }
  return "general";
}

inline double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Dense d x d matrix in the position basis, tagged with a kind whose
/// defining property is checked on construction.
class OperatorMatrix {
 public:
  static constexpr double hermitian_tol = 1e-13;  ///< relative to max|M|
  static constexpr double unitary_tol = 1e-12;

  OperatorMatrix(Dimension dim, Eigen::MatrixXcd entries, OperatorKind kind)
      : dim_(dim), m_(std::move(entries)), kind_(kind) {
    detail::require(m_.rows() == dim_.d() && m_.cols() == dim_.d(), Errc::dim_mismatch,
                    "operator shape does not match dimension");
    if (kind_ == OperatorKind::hermitian) {
      const double defect = max_abs(m_ - m_.adjoint());
      if (defect > hermitian_tol * max_abs(m_)) {
        throw Error(Errc::kind_mismatch, "matrix is not hermitian", defect);
      }
    } else if (kind_ == OperatorKind::unitary) {
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim_.d(), dim_.d());
      const double defect = max_abs(m_.adjoint() * m_ - id);
      if (defect > unitary_tol) throw Error(Errc::kind_mismatch, "matrix is not unitary", defect);
    }
  }

  const Dimension& dim() const noexcept { return dim_; }
  OperatorKind kind() const noexcept { return kind_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  /// Entry <j|M|l> with centered indices.
  cplx operator()(int j, int l) const {
    return m_(static_cast<Eigen::Index>(dim_.offset(j)), static_cast<Eigen::Index>(dim_.offset(l)));
  }

  StateVector apply(const StateVector& psi) const {
    detail::require(psi.dim() == dim_, Errc::dim_mismatch, "operator/state dimension mismatch");
    return StateVector(dim_, m_ * psi.amps());
  }

 private:
  Dimension dim_;
  Eigen::MatrixXcd m_;
  OperatorKind kind_;
};

struct PhasePoint {
  int alpha = 0;
  int beta = 0;
};

namespace detail {

inline void require_in_range(const Dimension& dim, const PhasePoint& p) {
  if (!dim.contains(p.alpha) || !dim.contains(p.beta)) {
    throw Error(Errc::out_of_range, "phase point (" + std::to_string(p.alpha) + "," +
                                        std::to_string(p.beta) + ") outside {-s..s}^2");
  }
}

// Matrix entry position for centered indices.
inline Eigen::Index at(const Dimension& dim, int n) {
  return static_cast<Eigen::Index>(dim.offset(n));
}

}  // namespace detail

/// F_{n'n} = exp(2*pi*i*n'*n/d) / sqrt(d).
inline OperatorMatrix fourier_matrix(const Dimension& dim) {
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim.d()));
  Eigen::MatrixXcd f(dim.d(), dim.d());
  for (int r = -dim.s(); r <= dim.s(); ++r) {
    for (int c = -dim.s(); c <= dim.s(); ++c) {
      f(detail::at(dim, r), detail::at(dim, c)) = unit_root(1LL * r * c, dim) * norm;
    }
  }
  return OperatorMatrix(dim, std::move(f), OperatorKind::unitary);
}

/// Forward: out(k) = d^{-1/2} sum_n exp(2*pi*i*k*n/d) psi(n). The inverse
/// uses the conjugate kernel.
inline StateVector fourier_apply(const StateVector& psi, bool inverse = false) {
  const Dimension& dim = psi.dim();
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim.d()));
  const long long sign = inverse ? -1 : 1;
  StateVector out(dim);
  for (int k = -dim.s(); k <= dim.s(); ++k) {
    cplx acc = 0.0;
    for (int n = -dim.s(); n <= dim.s(); ++n) acc += unit_root(sign * k * n, dim) * psi(n);
    out(k) = acc * norm;
  }
  return out;
}

/// Q = sqrt(2*pi/d) * diag(n).
inline OperatorMatrix position_operator(const Dimension& dim) {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    q(detail::at(dim, n), detail::at(dim, n)) = dim.spacing() * n;
  }
  return OperatorMatrix(dim, std::move(q), OperatorKind::hermitian);
}

/// P = F Q F^+ in closed form:
/// p_jl = -(i/2) sqrt(2*pi/d) (-1)^(j-l) / sin(pi*(j-l)/d) off the diagonal.
inline OperatorMatrix momentum_operator(const Dimension& dim) {
  const double pi = std::numbers::pi;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int j = -dim.s(); j <= dim.s(); ++j) {
    for (int l = -dim.s(); l <= dim.s(); ++l) {
      if (j == l) continue;
      // (-1)^r / sin(pi r / d) is d-periodic in r; the centered r keeps the
      // sine argument away from +-pi.
      const int r = dim.reduce(j - l);
      const double sign = (r % 2 == 0) ? 1.0 : -1.0;
      p(detail::at(dim, j), detail::at(dim, l)) =
          cplx(0.0, -0.5 * dim.spacing() * sign / std::sin(pi * r / dim.d()));
    }
  }
  return OperatorMatrix(dim, std::move(p), OperatorKind::hermitian);
}

/// A^power with A|l> = |l+1> (cyclic).
inline OperatorMatrix weyl_shift(const Dimension& dim, int power = 1) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int l = -dim.s(); l <= dim.s(); ++l) {
    a(detail::at(dim, dim.reduce(1LL * l + power)), detail::at(dim, l)) = 1.0;
  }
  return OperatorMatrix(dim, std::move(a), OperatorKind::unitary);
}

/// B^power with B|l> = exp(2*pi*i*l/d)|l>.
inline OperatorMatrix weyl_clock(const Dimension& dim, int power = 1) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int l = -dim.s(); l <= dim.s(); ++l) {
    b(detail::at(dim, l), detail::at(dim, l)) = unit_root(1LL * power * l, dim);
  }
  return OperatorMatrix(dim, std::move(b), OperatorKind::unitary);
}

/// D(alpha, beta) = exp(i*pi*alpha*beta/d) A^alpha B^beta.
inline OperatorMatrix displacement(const Dimension& dim, PhasePoint p) {
  detail::require_in_range(dim, p);
  const double half_angle = std::numbers::pi * p.alpha * p.beta / dim.d();
  const cplx phase(std::cos(half_angle), std::sin(half_angle));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int l = -dim.s(); l <= dim.s(); ++l) {
    m(detail::at(dim, dim.reduce(1LL * l + p.alpha)), detail::at(dim, l)) =
        phase * unit_root(1LL * p.beta * l, dim);
  }
  return OperatorMatrix(dim, std::move(m), OperatorKind::unitary);
}

/// |alpha, beta> = D(alpha, beta) g_1 / ||g_1||, built entrywise:
/// exp(-i*pi*alpha*beta/d) exp(2*pi*i*beta*j/d) g_1(j - alpha) / ||g_1||.
inline StateVector coherent_state(const Dimension& dim, PhasePoint p,
                                  double term_tol = default_term_tol) {
  detail::require_in_range(dim, p);
  const FiniteGaussian g = finite_gaussian(dim, 1.0, term_tol);
  double norm_sq = 0.0;
  for (double v : g.values) norm_sq += v * v;
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  const double half_angle = -std::numbers::pi * p.alpha * p.beta / dim.d();
  const cplx phase(std::cos(half_angle), std::sin(half_angle));
  StateVector out(dim);
  for (int j = -dim.s(); j <= dim.s(); ++j) {
    out(j) = phase * unit_root(1LL * p.beta * j, dim) * g.wrapped(1LL * j - p.alpha) * inv_norm;
  }
  return out;
}

/// max |(1/d) sum_{alpha,beta} |alpha,beta><alpha,beta| - I|.
inline double frame_resolution_residual(const Dimension& dim) {
  const Eigen::Index d = dim.d();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (int a = -dim.s(); a <= dim.s(); ++a) {
    for (int b = -dim.s(); b <= dim.s(); ++b) {
      const StateVector cs = coherent_state(dim, {a, b});
      acc.noalias() += cs.amps() * cs.amps().adjoint();
    }
  }
  acc /= static_cast<double>(d);
  return max_abs(acc - Eigen::MatrixXcd::Identity(d, d));
}

/// Physicists' Hermite polynomial H_k(x).
inline double hermite(int k, double x) {
  detail::require(k >= 0, Errc::invalid_parameter, "Hermite order must be non-negative");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 2.0 * x;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline constexpr int max_fourier_eigen_order = 6;

/// Hermite-Gaussian eigenvector of the finite Fourier transform
/// f_k(n) = sum_a exp(-pi (a d + n)^2 / d) H_k(sqrt(2 pi / d) (a d + n)),
/// unnormalized. F f_k = i^k f_k.
inline StateVector fourier_eigenvector(const Dimension& dim, int k,
                                     double term_tol = default_term_tol) {
  detail::require(k >= 0, Errc::invalid_parameter, "order must be non-negative");
  if (k > max_fourier_eigen_order) {
    throw Error(Errc::unsupported_order,
                "order " + std::to_string(k) + " exceeds " + std::to_string(max_fourier_eigen_order));
  }
  const RealVector f = periodize(
      [k](double x) { return std::exp(-0.5 * x * x) * hermite(k, x); }, dim, term_tol);
  StateVector out(f);
  const double nrm = out.norm();
  if (nrm < 1e-10) {
    throw Error(Errc::degenerate_vector,
                "f_" + std::to_string(k) + " vanishes for d=" + std::to_string(dim.d()),
                nrm);
  }
  return out;
}

}  // namespace fgauss
