#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fgauss/theta.hpp"
#include "oracles.hpp"

using namespace fgauss;

namespace {

const double kappas[] = {0.25, 1.0 / 3.0, 1.0, 3.0, 4.0};

void expect_error(Errc code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Dimension, RejectsEvenAndSmall) {
  for (int d : {-3, 0, 1, 2, 4, 10}) expect_error(Errc::invalid_dimension, [d] { Dimension{d}; });
  const Dimension dim(7);
  EXPECT_EQ(dim.s(), 3);
  EXPECT_EQ(dim.reduce(4), -3);
  EXPECT_EQ(dim.reduce(-4), 3);
  EXPECT_EQ(dim.reduce(21), 0);
  EXPECT_EQ(dim.reduce(-1000003), oracle::mod_centered(-1000003, 7));
}

TEST(FiniteGaussian, PeakAndTailAtD31) {
  const FiniteGaussian g = finite_gaussian(Dimension(31), 1.0);
  EXPECT_NEAR(g(0), 1.0, 1e-15);
  EXPECT_LT(g(15), 1e-9);
  EXPECT_LT(g(-15), 1e-9);
  EXPECT_FALSE(g.shifted);
}

TEST(FiniteGaussian, SymmetricBitExact) {
  for (int d = 3; d <= 41; d += 2) {
    for (double k : kappas) {
      for (bool shifted : {false, true}) {
        const Dimension dim(d);
        const FiniteGaussian g = shifted ? shifted_finite_gaussian(dim, k) : finite_gaussian(dim, k);
        for (int n = 1; n <= dim.s(); ++n) ASSERT_EQ(g(n), g(-n)) << d << " " << k << " " << n;
      }
    }
  }
}

TEST(FiniteGaussian, PositiveWithCentralMaximum) {
  for (int d : {3, 9, 31}) {
    for (double k : kappas) {
      const FiniteGaussian g = finite_gaussian(Dimension(d), k);
      for (double v : g.values) {
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, g(0));
      }
      const FiniteGaussian gp = shifted_finite_gaussian(Dimension(d), k);
      for (double v : gp.values) EXPECT_GT(v, 0.0);
    }
  }
}

TEST(FiniteGaussian, MatchesWideWindowOracle) {
  const Dimension dim(5);
  const FiniteGaussian g = finite_gaussian(dim, 2.0);
  for (int n = -2; n <= 2; ++n) EXPECT_NEAR(g(n), oracle::wrapped(5, 2.0, n, false), 1e-15);

  for (int d : {3, 7, 15, 31}) {
    for (double k : kappas) {
      const FiniteGaussian a = finite_gaussian(Dimension(d), k);
      const FiniteGaussian b = shifted_finite_gaussian(Dimension(d), k);
      for (int n = -a.dim.s(); n <= a.dim.s(); ++n) {
        EXPECT_NEAR(a(n), oracle::wrapped(d, k, n, false), 2e-15 * std::max(1.0, a(0)));
        EXPECT_NEAR(b(n), oracle::wrapped(d, k, n, true), 2e-15 * std::max(1.0, a(0)));
      }
    }
  }
}

TEST(FiniteGaussian, WindowStaysSmall) {
  for (int d = 3; d <= 101; d += 2) {
    for (double k : kappas) {
      EXPECT_LE(finite_gaussian(Dimension(d), k).window, 5) << d << " " << k;
      EXPECT_LE(shifted_finite_gaussian(Dimension(d), k).window, 5) << d << " " << k;
    }
  }
}

TEST(FiniteGaussian, TruncationSound) {
  for (double tol : {1e-18, 1e-10, 1e-6, 1e-3}) {
    for (int d : {3, 5, 11, 31, 101}) {
      for (double k : {0.25, 1.0 / 3.0, 0.5, 1.0, 4.0}) {
        for (bool shifted : {false, true}) {
          const Dimension dim(d);
          const FiniteGaussian g =
              shifted ? shifted_finite_gaussian(dim, k, tol) : finite_gaussian(dim, k, tol);
          const FiniteGaussian wide = finite_gaussian_with_window(dim, k, shifted, g.window + 2);
          for (int n = -dim.s(); n <= dim.s(); ++n) {
            EXPECT_LE(std::abs(wide(n) - g(n)), tol) << tol << " " << d << " " << k << " " << n;
          }
        }
      }
    }
  }
}

TEST(FiniteGaussian, RejectsBadParameters) {
  const Dimension dim(5);
  expect_error(Errc::invalid_parameter, [&] { finite_gaussian(dim, 0.0); });
  expect_error(Errc::invalid_parameter, [&] { finite_gaussian(dim, -1.0); });
  expect_error(Errc::invalid_parameter, [&] { finite_gaussian(dim, std::nan("")); });
  expect_error(Errc::invalid_parameter, [&] { shifted_finite_gaussian(dim, -2.0); });
  expect_error(Errc::invalid_parameter, [&] { finite_gaussian(dim, 1.0, 0.0); });
  expect_error(Errc::invalid_parameter, [&] { finite_gaussian(dim, 1.0, 1.0); });
  expect_error(Errc::numerical_failure, [&] { finite_gaussian(dim, 1e-12); });
}

TEST(ShiftedGaussian, EdgeMaximaAtD31) {
  const FiniteGaussian g = shifted_finite_gaussian(Dimension(31), 8.0 / 3.0);
  EXPECT_TRUE(g.shifted);
  for (int n = -14; n <= 14; ++n) {
    EXPECT_LT(g(n), g(15));
    EXPECT_LT(g(n), g(-15));
  }
  EXPECT_EQ(g(15), g(-15));
}

TEST(ShiftedGaussian, IsHalfPeriodTranslate) {
  // g_k^+(n) = G_k(n + s + 1/2) with G_k(x) = sum_a exp(-k pi (a d + x)^2 / d)
  for (int d : {3, 9, 31}) {
    const Dimension dim(d);
    for (double k : kappas) {
      const FiniteGaussian gp = shifted_finite_gaussian(dim, k);
      for (int n = -dim.s(); n <= dim.s(); ++n) {
        long double acc = 0.0L;
        const long double x = n + dim.s() + 0.5L;
        for (int a = -50; a <= 50; ++a) {
          const long double y = static_cast<long double>(a) * d + x;
          acc += std::exp(-k * oracle::pi_l * y * y / d);
        }
        EXPECT_NEAR(gp(n), static_cast<double>(acc), 2e-15 * std::max(1.0, gp(dim.s())));
      }
    }
  }
}

TEST(WrappedIdentities, SplittingAtD7) {
  const Dimension dim(7);
  const FiniteGaussian g = finite_gaussian(dim, 1.0);
  const FiniteGaussian g4 = finite_gaussian(dim, 4.0);
  const FiniteGaussian g4p = shifted_finite_gaussian(dim, 4.0);
  for (int n = -3; n <= 3; ++n) EXPECT_NEAR(g.wrapped(2 * n), g4(n) + g4p(n), 1e-15);
}

TEST(WrappedIdentities, SplittingAndAlternatingGrid) {
  for (int d = 3; d <= 101; d += 2) {
    const Dimension dim(d);
    for (double k : kappas) {
      const FiniteGaussian g = finite_gaussian(dim, k);
      const FiniteGaussian g4 = finite_gaussian(dim, 4.0 * k);
      const FiniteGaussian g4p = shifted_finite_gaussian(dim, 4.0 * k);
      for (int n = -dim.s(); n <= dim.s(); ++n) {
        ASSERT_LE(std::abs(g.wrapped(2 * n) - (g4(n) + g4p(n))), 1e-13) << d << " " << k << " " << n;
        // 2n is not reduced: the sign (-1)^a depends on the representative.
        const double alt = oracle::alternating(d, k, 2LL * n);
        ASSERT_LE(std::abs(alt - (g4(n) - g4p(n))), 1e-13) << d << " " << k << " " << n;
      }
    }
  }
}

TEST(Theta, Theta3AtZero) {
  for (double t : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0}) EXPECT_GT(theta(ThetaKind::theta3, 0.0, t), 1.0);
  EXPECT_EQ(theta(ThetaKind::theta3, 0.0, 50.0), 1.0);
  EXPECT_LT(theta(ThetaKind::theta3, 0.0, 10.0) - 1.0, 1e-13);
}

TEST(Theta, WrappedGaussianIsTheta3) {
  const Dimension dim(9);
  const FiniteGaussian g = finite_gaussian(dim, 1.0);
  for (int n : {0, 1, 4}) {
    const double th = theta(ThetaKind::theta3, n / 9.0, 1.0 / 9.0) / std::sqrt(9.0);
    EXPECT_NEAR(g(n), th, 1e-14) << n;
  }
}

TEST(Theta, MatchesBruteForceSeries) {
  const struct {
    ThetaKind kind;
    oracle::Theta ref;
  } kinds[] = {{ThetaKind::theta2, oracle::Theta::t2},
               {ThetaKind::theta3, oracle::Theta::t3},
               {ThetaKind::theta4, oracle::Theta::t4}};
  for (const auto& k : kinds) {
    for (int zi = 0; zi <= 9; ++zi) {
      const double z = zi / 10.0;
      for (double t : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(theta(k.kind, z, t), oracle::theta(k.ref, z, t), 1e-15)
            << static_cast<int>(k.kind) << " z=" << z << " t=" << t;
      }
    }
  }
}

TEST(Theta, SmallModulusMatchesWrappedSums) {
  // theta3(n/d | 1/(2d)) = sqrt(2d) g_2(n), theta4(n/d | 1/(2d)) = sqrt(2d) g+_2(n).
  // The cosine series cancels down to these values, so compare relatively
  // against the wide-window sums.
  for (int d : {9, 21, 31, 63}) {
    const int s = (d - 1) / 2;
    const double t = 1.0 / (2.0 * d);
    const double scale = std::sqrt(2.0 * d);
    for (int n = -s; n <= s; ++n) {
      const double z = static_cast<double>(n) / d;
      const double g = oracle::wrapped(d, 2.0, n, false);
      const double gp = oracle::wrapped(d, 2.0, n, true);
      EXPECT_NEAR(theta(ThetaKind::theta3, z, t) / (scale * g), 1.0, 1e-13) << d << " " << n;
      EXPECT_NEAR(theta(ThetaKind::theta4, z, t) / (scale * gp), 1.0, 1e-13) << d << " " << n;
    }
  }
}

TEST(Theta, SmallModulusTheta2IsAlternatingSum) {
  // theta2(2m/d | 2/d) = sqrt(d/2) sum_a (-1)^a exp(-pi (a d + 2m)^2 / (2d))
  for (int d : {9, 31}) {
    const int s = (d - 1) / 2;
    for (int m = -s; m <= s; ++m) {
      const double want = std::sqrt(d / 2.0) * oracle::alternating(d, 0.5, 2LL * m);
      EXPECT_NEAR(theta(ThetaKind::theta2, 2.0 * m / d, 2.0 / d), want, 1e-14 * std::sqrt(d / 2.0))
          << d << " " << m;
    }
  }
}

TEST(Theta, RejectsNonPositiveT) {
  expect_error(Errc::invalid_parameter, [] { theta(ThetaKind::theta3, 0.0, 0.0); });
  expect_error(Errc::invalid_parameter, [] { theta(ThetaKind::theta2, 0.0, -1.0); });
}

TEST(NaiveGaussian, UnitPeak) {
  for (int d : {3, 5, 31}) {
    for (double k : kappas) EXPECT_EQ(naive_gaussian(Dimension(d), k)(0), 1.0);
  }
}

TEST(NaiveGaussian, AgreesAtLargeDAndNotAtSmallD) {
  auto gap = [](int d) {
    const Dimension dim(d);
    const RealVector f = naive_gaussian(dim, 1.0);
    const FiniteGaussian g = finite_gaussian(dim, 1.0);
    double out = 0.0;
    for (int n = -dim.s(); n <= dim.s(); ++n) out = std::max(out, std::abs(f(n) - g(n)));
    return out;
  };
  EXPECT_LT(gap(31), 1e-8);
  EXPECT_GT(gap(3), 1e-3);
}

TEST(Periodize, GaussianSampleIsFiniteGaussian) {
  for (int d : {3, 9, 31}) {
    for (double k : kappas) {
      const Dimension dim(d);
      const RealVector p = periodize([k](double x) { return std::exp(-k * x * x / 2.0); }, dim);
      const FiniteGaussian g = finite_gaussian(dim, k);
      for (int n = -dim.s(); n <= dim.s(); ++n) EXPECT_NEAR(p(n), g(n), 1e-15 * std::max(1.0, g(0)));
    }
  }
}

TEST(Periodize, HermiteWeightedSample) {
  const int d = 9;
  const Dimension dim(d);
  const double h = std::sqrt(2.0 * std::numbers::pi / d);
  const RealVector p = periodize([](double x) { return 2.0 * x * std::exp(-x * x / 2.0); }, dim);
  for (int n = -dim.s(); n <= dim.s(); ++n) {
    long double acc = 0.0L;
    for (int a = -50; a <= 50; ++a) {
      const long double x = h * (static_cast<long double>(a) * d + n);
      acc += 2.0L * x * std::exp(-x * x / 2.0L);
    }
    EXPECT_NEAR(p(n), static_cast<double>(acc), 1e-15);
  }
  EXPECT_EQ(p(0), 0.0);
}

TEST(Periodize, CompactSupportInsideOnePeriod) {
  const Dimension dim(11);
  const double h = dim.spacing();
  auto bump = [h](double x) { return std::abs(x) < 3.5 * h ? 1.0 + x * x : 0.0; };
  const RealVector p = periodize(bump, dim);
  for (int n = -5; n <= 5; ++n) EXPECT_EQ(p(n), bump(h * n)) << n;
}
