#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stefan/kummer.hpp"
#include "support/oracles.hpp"

namespace stefan {
namespace {

using test::rel_err;

TEST(KummerM, Examples) {
  const auto at_zero = kummer_m(3.2, 0.5, 0.0);
  EXPECT_EQ(at_zero.value, 1.0);
  EXPECT_TRUE(at_zero.converged);

  EXPECT_NEAR(kummer_m(0.0, 1.5, -2.7).value, 1.0, 1e-15);

  // z M(1, 3/2, z^2) = (sqrt(pi)/2) e^{z^2} erf(z) at z = 1, erf by quadrature.
  const double oracle = 0.5 / std::numbers::inv_sqrtpi * std::exp(1.0) * test::erf_by_quadrature(1.0);
  EXPECT_LE(rel_err(kummer_m(1.0, 1.5, 1.0).value, oracle), 1e-15);
  EXPECT_NEAR(kummer_m(1.0, 1.5, 1.0).value, 2.030078469278705, 1e-14);
}

TEST(KummerM, MethodTags) {
  EXPECT_EQ(kummer_m(0.3, 1.5, 2.0).method, KummerMethod::DirectSeries);
  EXPECT_EQ(kummer_m(0.3, 1.5, -2.0).method, KummerMethod::TransformedSeries);
  EXPECT_EQ(kummer_m(0.3, 1.5, -200.0).method, KummerMethod::TransformedSeries);
  EXPECT_EQ(kummer_m(0.3, 1.5, 45.0).method, KummerMethod::LargeZAsymptotic);
  // Terminating series stay exact sums at any size.
  EXPECT_EQ(kummer_m(-3.0, 1.5, 45.0).method, KummerMethod::DirectSeries);
}

TEST(KummerM, TruncationRuleAndTermCount) {
  const auto e = kummer_m(0.5, 1.5, 10.0);
  EXPECT_TRUE(e.converged);
  EXPECT_GT(e.terms_used, 10u);
  EXPECT_LE(e.terms_used, kSeriesMaxTerms);
  // Polynomial: terminates after a+s hits zero.
  EXPECT_LE(kummer_m(-2.0, 0.5, 3.0).terms_used, 5u);
}

TEST(KummerM, InvalidB) {
  for (double b : {0.0, -1.0, -7.0}) {
    try {
      kummer_m(1.0, b, 0.5);
      FAIL() << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidB);
    }
  }
}

TEST(KummerM, NotConvergedPastTermCap) {
  try {
    kummer_m(1e4, 1.0, 30.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotConverged);
  }
}

TEST(KummerM, AgreesWithRawSeriesForSmallArguments) {
  auto gen = test::rng(7);
  std::uniform_real_distribution<double> da(-4.0, 4.0), db(0.1, 4.0), dz(-3.0, 3.0);
  for (int i = 0; i < 400; ++i) {
    const double a = da(gen), b = db(gen), z = dz(gen);
    const double want = test::raw_kummer_series(a, b, z);
    EXPECT_LE(std::abs(kummer_m(a, b, z).value - want), 1e-13 * std::max(1.0, std::abs(want)))
        << a << " " << b << " " << z;
  }
}

TEST(KummerM, LargeArgumentMatchesSeries) {
  for (double a : {0.5, 1.0, 1.5, 2.85}) {
    for (double b : {0.5, 1.5}) {
      for (double z : {31.0, 40.0, 60.0}) {
        const double want = test::raw_kummer_series(a, b, z, 400);
        EXPECT_LE(rel_err(kummer_m(a, b, z).value, want), 1e-12) << a << " " << b << " " << z;
      }
    }
  }
}

TEST(KummerM, LogScaleBeyondOverflow) {
  const auto lm = log_kummer_m(1.5, 1.5, 900.0);  // M = e^z exactly
  EXPECT_EQ(lm.sign, 1);
  EXPECT_LE(rel_err(lm.log_abs, 900.0), 1e-15);
  const auto neg = log_kummer_m(1.0, 1.5, -900.0);
  EXPECT_TRUE(std::isfinite(neg.log_abs));
}

TEST(KummerDz, Examples) {
  EXPECT_EQ(kummer_m_dz(0.0, 1.5, 2.0), 0.0);
  EXPECT_NEAR(kummer_m_dz(1.0, 1.5, 0.0), 2.0 / 3.0, 1e-16);
  const double h = 1e-5;
  const double fd = (kummer_m(1.5, 0.5, 0.8 + h).value - kummer_m(1.5, 0.5, 0.8 - h).value) / (2 * h);
  EXPECT_NEAR(kummer_m_dz(1.5, 0.5, 0.8), fd, 1e-6);
}

TEST(KummerU, MatchesIntegralRepresentation) {
  // U(a,b,z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt
  const double a = 1.0, b = 0.5, z = 1.0;
  const double want = test::integrate_to_infinity(
                          [&](double t) { return std::exp(-z * t) * std::pow(t, a - 1) *
                                                 std::pow(1 + t, b - a - 1); },
                          0.0) /
                      std::tgamma(a);
  EXPECT_LE(rel_err(kummer_u(a, b, z), want), 1e-12);
}

TEST(KummerU, IncompleteGammaCase) {
  // U(a,a,z) = e^z Gamma(1-a, z); for a = 1/2 that is e^z sqrt(pi) erfc(sqrt(z)).
  const double z = 0.3;
  const double want = std::exp(z) / std::numbers::inv_sqrtpi * std::erfc(std::sqrt(z));
  EXPECT_LE(rel_err(kummer_u(0.5, 0.5, z), want), 1e-13);
}

TEST(KummerU, SolvesKummerEquation) {
  const double h = 1e-4;
  for (auto [a, b, z] : {std::tuple{0.7, 0.3, 1.2}, std::tuple{-0.35, 0.5, 2.0},
                         std::tuple{1.25, 1.5, 0.6}}) {
    auto u = [&](double x) { return kummer_u(a, b, x); };
    const double d2 = (u(z + h) - 2 * u(z) + u(z - h)) / (h * h);
    const double d1 = (u(z + h) - u(z - h)) / (2 * h);
    EXPECT_LE(std::abs(z * d2 + (b - z) * d1 - a * u(z)), 1e-6 * std::max(1.0, std::abs(u(z))))
        << a << " " << b << " " << z;
  }
}

TEST(KummerU, SingularCombination) {
  for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{-1.0, 0.5}, std::pair{-0.5, 0.5}}) {
    try {
      kummer_u(a, b, 1.0);
      FAIL() << a << " " << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::SingularCombination);
    }
  }
  EXPECT_THROW(kummer_u(1.0, 0.5, 0.0), Error);
}

// Identity suite.

TEST(KummerIdentities, KummerTransform) {
  auto gen = test::rng(11);
  std::uniform_real_distribution<double> da(-5.0, 5.0), db(0.05, 5.0), dz(-25.0, 25.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = da(gen), b = db(gen), z = dz(gen);
    const double lhs = kummer_m(a, b, z).value;
    const double rhs = std::exp(z) * kummer_m(b - a, b, -z).value;
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)))
        << a << " " << b << " " << z;
  }
}

// The two products are up to ~1e8 times e^{-xi^2} at alpha = 3.7, xi = 3, so
// one-ulp errors in double-valued M already exceed 1e-10 there; the identity
// is checked in extended precision.
TEST(KummerIdentities, ExpIdentity) {
  using ld = long double;
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.7}) {
    const ld al = alpha;
    for (int i = 1; i <= 60; ++i) {
      const double xi = 0.05 * i;
      const ld z = static_cast<ld>(xi) * xi;
      const ld rhs = -2 * al * z * kummer_m_extended(-al / 2 + 0.5L, 1.5L, -z) *
                         kummer_m_extended(-al / 2 + 1, 1.5L, -z) +
                     kummer_m_extended(-al / 2, 0.5L, -z) * kummer_m_extended(-al / 2 + 0.5L, 0.5L, -z);
      EXPECT_LE(rel_err(static_cast<double>(rhs), std::exp(-xi * xi)), 1e-10) << alpha << " " << xi;
    }
  }
}

TEST(KummerExtended, AgreesWithDouble) {
  auto gen = test::rng(5);
  std::uniform_real_distribution<double> da(-4.0, 4.0), db(0.1, 4.0), dz(-20.0, 20.0);
  for (int i = 0; i < 300; ++i) {
    const double a = da(gen), b = db(gen), z = dz(gen);
    const double m = kummer_m(a, b, z).value;
    EXPECT_LE(std::abs(static_cast<double>(kummer_m_extended(a, b, z)) - m),
              1e-12 * std::max(1.0, std::abs(m)));
  }
}

TEST(KummerIdentities, Reflection) {
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.7}) {
    for (double xi = 0.05; xi <= 3.0 + 1e-12; xi += 0.05) {
      const double z = xi * xi;
      const double lhs = kummer_m(-alpha / 2 + 0.5, 1.5, -z).value;
      const double rhs = std::exp(-z) * kummer_m(alpha / 2 + 1, 1.5, z).value;
      EXPECT_LE(rel_err(lhs, rhs), 1e-12) << alpha << " " << xi;
    }
  }
}

TEST(KummerIdentities, DerivativeIdentity) {
  const double h = 1e-5;
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.7}) {
    auto g = [&](double y) { return y * kummer_m(alpha / 2 + 1, 1.5, y * y).value; };
    for (double z = 0.1; z <= 3.0; z += 0.1) {
      const double fd = (g(z + h) - g(z - h)) / (2 * h);
      EXPECT_LE(rel_err(fd, kummer_m(alpha / 2 + 1, 0.5, z * z).value), 1e-6) << alpha << " " << z;
    }
  }
}

TEST(KummerIdentities, IntegerInerfcBridges) {
  for (int n = 0; n <= 6; ++n) {
    const double c_even = std::pow(2.0, n - 1) * std::tgamma(n / 2.0 + 1.0);
    const double c_odd = std::pow(2.0, n - 2) * std::tgamma(n / 2.0 + 0.5);
    for (double z = -3.0; z <= 3.0 + 1e-12; z += 0.125) {
      const double even = kummer_m(-n / 2.0, 0.5, -z * z).value;
      const double even_want = c_even * (inerfc(n, z) + inerfc(n, -z));
      EXPECT_LE(rel_err(even, even_want), 1e-9) << n << " " << z;

      if (z == 0.0) continue;
      const double odd = z * kummer_m(-n / 2.0 + 0.5, 1.5, -z * z).value;
      const double odd_want = c_odd * (inerfc(n, -z) - inerfc(n, z));
      EXPECT_LE(rel_err(odd, odd_want), 1e-9) << n << " " << z;
    }
  }
}

TEST(KummerIdentities, AlphaZeroClosedForm) {
  for (double z = 0.05; z <= 5.0 + 1e-12; z += 0.05) {
    const double lhs = z * kummer_m(1.0, 1.5, z * z).value;
    const double rhs = 0.5 / std::numbers::inv_sqrtpi * std::exp(z * z) * std::erf(z);
    EXPECT_LE(rel_err(lhs, rhs), 1e-12) << z;
  }
}

TEST(KummerIdentities, GeneralSolutionOfSimilarityOde) {
  auto gen = test::rng(3);
  std::uniform_real_distribution<double> dc(-3.0, 3.0);
  const double h = 1e-4;
  for (double alpha : {0.3, 1.0, 2.0, 2.5}) {
    for (int trial = 0; trial < 5; ++trial) {
      const double c1 = dc(gen), c2 = dc(gen);
      // Double-valued M puts the h^-2 rounding floor at ~1e-6 near eta = 2.5.
      using ld = long double;
      const ld al = alpha, lh = h;
      auto phi = [&](ld eta) {
        return c1 * kummer_m_extended(-al / 2, 0.5L, -eta * eta) +
               c2 * eta * kummer_m_extended(-al / 2 + 0.5L, 1.5L, -eta * eta);
      };
      for (int i = 1; i <= 25; ++i) {
        const ld eta = 0.1L * i;
        const ld d2 = (phi(eta + lh) - 2 * phi(eta) + phi(eta - lh)) / (lh * lh);
        const ld d1 = (phi(eta + lh) - phi(eta - lh)) / (2 * lh);
        const double res = static_cast<double>(d2 + 2 * eta * d1 - 2 * al * phi(eta));
        EXPECT_LE(std::abs(res), 1e-6 * (std::abs(c1) + std::abs(c2)))
            << alpha << " " << static_cast<double>(eta);
      }
    }
  }
}

}  // namespace
}  // namespace stefan
