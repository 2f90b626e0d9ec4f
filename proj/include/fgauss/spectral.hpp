#pragma once

// Hermitian eigendecomposition and the spectral quantities built on it:
// the [Q,P] spectrum, the finite oscillator H = (P^2 + Q^2)/2, the g_1
// quasi-eigenstate residual and the uncertainty products of g_kappa.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "fgauss/error.hpp"
#include "fgauss/hilbert.hpp"
#include "fgauss/lattice.hpp"
#include "fgauss/theta.hpp"

namespace fgauss {

/// Eigenvalues ascending; column k of `eigenvectors` belongs to
/// eigenvalues(k) and has its largest-magnitude component real positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  double residual = 0.0;  ///< max_k ||M v_k - lambda_k v_k||
};

inline constexpr double eig_residual_tol = 1e-10;  ///< relative to max|M|

/// Backed by Eigen's SelfAdjointEigenSolver (tridiagonalization followed by
/// implicit-shift QR).
inline Spectrum hermitian_eig(const OperatorMatrix& m) {
  if (m.kind() != OperatorKind::hermitian) {
    throw Error(Errc::kind_mismatch,
                std::string("hermitian_eig needs a hermitian operator, got ") + to_string(m.kind()));
  }
  const Eigen::MatrixXcd& a = m.matrix();
  const Eigen::Index d = a.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::numerical_failure, "hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& vals = solver.eigenvalues();
  Eigen::MatrixXcd vecs = solver.eigenvectors();

  // Phase convention: first component of (near-)maximal modulus made real positive.
  std::vector<Eigen::Index> pivot(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    const double top = vecs.col(k).cwiseAbs().maxCoeff();
    Eigen::Index p = 0;
    while (std::abs(vecs(p, k)) < top * (1.0 - 1e-12)) ++p;
    pivot[static_cast<std::size_t>(k)] = p;
    const double mag = std::abs(vecs(p, k));
    vecs.col(k) *= std::conj(vecs(p, k)) / mag;
    vecs(p, k) = mag;  // exactly real, not merely to rounding
  }

  const double scale = max_abs(a);
  const double tie = 1e-12 * std::max(1.0, scale);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Eigen already returns ascending values; runs of near-equal values are
  // reordered by pivot index.
  for (Eigen::Index lo = 0; lo < d;) {
    Eigen::Index hi = lo + 1;
    while (hi < d && vals(hi) - vals(hi - 1) <= tie) ++hi;
    std::stable_sort(order.begin() + lo, order.begin() + hi, [&](Eigen::Index x, Eigen::Index y) {
      return pivot[static_cast<std::size_t>(x)] < pivot[static_cast<std::size_t>(y)];
    });
    lo = hi;
  }

  Spectrum out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = vals(src);
    out.eigenvectors.col(k) = vecs.col(src);
  }
  for (Eigen::Index k = 0; k < d; ++k) {
    const double r =
        (a * out.eigenvectors.col(k) - out.eigenvalues(k) * out.eigenvectors.col(k)).norm();
    out.residual = std::max(out.residual, r);
  }
  if (out.residual > eig_residual_tol * std::max(scale, 1e-300)) {
    throw Error(Errc::numerical_failure, "eigen-decomposition residual too large", out.residual);
  }
  return out;
}

/// exp(i * scale * H) through the eigen-decomposition of H; unitary to rounding.
inline OperatorMatrix unitary_exp(const OperatorMatrix& h, double scale) {
  const Spectrum sp = hermitian_eig(h);
  Eigen::VectorXcd phases(sp.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, scale * sp.eigenvalues(k));
  }
  Eigen::MatrixXcd u = sp.eigenvectors * phases.asDiagonal() * sp.eigenvectors.adjoint();
  return OperatorMatrix(h.dim(), std::move(u), OperatorKind::unitary);
}

/// [Q,P]_jl = -i (pi (j-l)/d) (-1)^(j-l) / sin(pi (j-l)/d) off the diagonal;
/// anti-hermitian, so tagged general.
inline OperatorMatrix commutator_qp(const Dimension& dim) {
  const double pi = std::numbers::pi;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int j = -dim.s(); j <= dim.s(); ++j) {
    for (int l = -dim.s(); l <= dim.s(); ++l) {
      if (j == l) continue;
      const int r = j - l;
      const int rc = dim.reduce(r);  // (-1)^r / sin(pi r/d) is d-periodic in r
      const double sign = (rc % 2 == 0) ? 1.0 : -1.0;
      c(detail::at(dim, j), detail::at(dim, l)) =
          cplx(0.0, -(pi * r / dim.d()) * sign / std::sin(pi * rc / dim.d()));
    }
  }
  return OperatorMatrix(dim, std::move(c), OperatorKind::general);
}

/// Spectrum of the hermitian matrix -i[Q,P]; these are the imaginary parts
/// of the commutator eigenvalues, ascending.
inline Eigen::VectorXd commutator_spectrum(const Dimension& dim) {
  const Eigen::MatrixXcd herm = cplx(0.0, -1.0) * commutator_qp(dim).matrix();
  return hermitian_eig(OperatorMatrix(dim, herm, OperatorKind::hermitian)).eigenvalues;
}

/// Large-d approximation i (-1)^(j-l) (delta_jl - 1) of [Q,P]. Exact
/// eigenvalues: i with multiplicity d-1 and (1-d) i.
inline OperatorMatrix commutator_approx(const Dimension& dim) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim.d(), dim.d());
  for (int j = -dim.s(); j <= dim.s(); ++j) {
    for (int l = -dim.s(); l <= dim.s(); ++l) {
      if (j == l) continue;
      const double sign = ((j - l) % 2 == 0) ? 1.0 : -1.0;
      c(detail::at(dim, j), detail::at(dim, l)) = cplx(0.0, -sign);
    }
  }
  return OperatorMatrix(dim, std::move(c), OperatorKind::general);
}

/// H = (P^2 + Q^2) / 2.
inline OperatorMatrix oscillator_hamiltonian(const Dimension& dim) {
  const Eigen::MatrixXcd p = momentum_operator(dim).matrix();
  const Eigen::MatrixXcd q = position_operator(dim).matrix();
  Eigen::MatrixXcd h = 0.5 * (p * p + q * q);
  return OperatorMatrix(dim, std::move(h), OperatorKind::hermitian);
}

struct QuasiEigenResidual {
  double lambda;
  RealVector residual;  ///< (H g_1 - lambda g_1)(n)
};

/// g_1 as an approximate eigenvector of the oscillator, with
/// lambda = (H g_1)(0) / g_1(0).
inline QuasiEigenResidual quasi_eigen_residual(const Dimension& dim,
                                               double term_tol = default_term_tol) {
  const FiniteGaussian g = finite_gaussian(dim, 1.0, term_tol);
  const StateVector hg = oscillator_hamiltonian(dim).apply(StateVector(g.values));
  const double lambda = hg(0).real() / g(0);
  RealVector residual(dim);
  for (int n = -dim.s(); n <= dim.s(); ++n) residual(n) = hg(n).real() - lambda * g(n);
  return {lambda, std::move(residual)};
}

struct UncertaintyReport {
  int d;
  double kappa;
  double dq;
  double dp;
  double product;    ///< dq * dp
  double half_comm;  ///< |<[Q,P]>| / 2 from the closed double sum
  double half_comm_quadratic;  ///< same quantity from <g|[Q,P]|g>/<g|g>
  double gap;        ///< product - half_comm
};

namespace detail {

inline double position_spread_sq(const FiniteGaussian& g) {
  const Dimension& dim = g.dim;
  double num = 0.0;
  double den = 0.0;
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    const double w = g(n) * g(n);
    num += static_cast<double>(n) * n * w;
    den += w;
  }
  return 2.0 * std::numbers::pi / dim.d() * num / den;
}

}  // namespace detail

/// Dispersions of Q and P in the state g_kappa (P via F[g_kappa] ~ g_{1/kappa})
/// and the commutator bound they are compared against.
inline UncertaintyReport uncertainty_product(const Dimension& dim, double kappa,
                                             double term_tol = default_term_tol) {
  detail::require_positive(kappa, "kappa");
  const FiniteGaussian g = finite_gaussian(dim, kappa, term_tol);
  const FiniteGaussian g_dual = finite_gaussian(dim, 1.0 / kappa, term_tol);
  const double dq = std::sqrt(detail::position_spread_sq(g));
  const double dp = std::sqrt(detail::position_spread_sq(g_dual));

  const double pi = std::numbers::pi;
  double norm_sq = 0.0;
  for (double v : g.values) norm_sq += v * v;
  double lower = 0.0;
  for (int j = -dim.s() + 1; j <= dim.s(); ++j) {
    for (int l = -dim.s(); l < j; ++l) {
      const int r = j - l;
      const int rc = dim.reduce(r);
      const double sign = (rc % 2 == 0) ? 1.0 : -1.0;
      lower += sign * (pi * r / dim.d()) / std::sin(pi * rc / dim.d()) * g(j) * g(l);
    }
  }
  const double half_comm = std::abs(lower) / norm_sq;  // (1/2) * |2 i lower / norm_sq|

  const StateVector gs(g.values);
  const cplx quad = gs.inner(commutator_qp(dim).apply(gs)) / norm_sq;
  const double half_comm_quadratic = 0.5 * std::abs(quad);
  if (std::abs(half_comm - half_comm_quadratic) > 1e-12) {
    throw Error(Errc::numerical_failure, "closed-form <[Q,P]> disagrees with quadratic form",
                std::abs(half_comm - half_comm_quadratic));
  }

  const double product = dq * dp;
  return {dim.d(), kappa, dq, dp, product, half_comm, half_comm_quadratic, product - half_comm};
}

}  // namespace fgauss
