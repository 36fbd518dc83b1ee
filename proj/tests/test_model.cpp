#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stefan/model.hpp"
#include "support/oracles.hpp"

namespace stefan {
namespace {

using test::rel_err;

StefanProblem unit(double beta, double delta, double T0 = 1.0, double k = 1.0) {
  return StefanProblem{k, 1.0, T0, 1.0, beta, delta};
}

const StefanProblem kWater = StefanProblem::from_diffusivity(0.58, 1.39e-7, 1.0, 1.0, 0.0, 0.0);

// Valid pairs used for property sweeps.
const std::vector<std::pair<double, double>> kValidPairs{
    {0, 0}, {0, -1}, {1, 0}, {0.5, -0.5}, {2, 0.5}, {1, -1}, {2, -1}, {0.5, 0.5}, {-0.5, -0.5}};

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(unit(0, 0)).empty());
  EXPECT_TRUE(validate(unit(0, -1)).empty());
  const auto v = validate(unit(0, 0.5));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("alpha ≥ 0 fails"), std::string::npos);
}

TEST(Validate, UniquenessRegion) {
  const auto v = validate(unit(-1, -1.5));  // alpha = 0.5, beta + delta + 1 = -1.5
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("beta + delta + 1 ≥ 0 fails"), std::string::npos);

  for (double beta = -2; beta <= 2; beta += 0.25) {
    for (double delta = -2; delta <= 2; delta += 0.25) {
      const bool expect = beta >= std::max(delta, -delta - 1);
      EXPECT_EQ(is_valid(unit(beta, delta)), expect) << beta << " " << delta;
    }
  }
}

TEST(Validate, PositivityAndRange) {
  auto p = unit(0, 0);
  p.k = 0;
  EXPECT_FALSE(is_valid(p));
  p = unit(0, 0);
  p.T0 = -1;
  EXPECT_FALSE(is_valid(p));
  p = unit(0, 0);
  p.a = 1e-200;
  p.beta = 2;  // a^(beta+delta+2) underflows
  EXPECT_FALSE(is_valid(p));
  EXPECT_THROW(require_valid(unit(0, 0.5)), Error);
  EXPECT_NO_THROW(require_valid(kWater));
}

TEST(LatentHeat, Examples) {
  auto p = unit(0, 0);
  p.gamma = 3.5;
  EXPECT_EQ(latent_heat(p, 0.7, 12.0), 3.5);
  EXPECT_EQ(latent_heat(unit(1, 0), 2.0, 0.3), 2.0);
  EXPECT_EQ(latent_heat(unit(0, -1), 1.7, 0.5), 2.0);
  try {
    latent_heat(p, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveArgument);
  }
  EXPECT_THROW(latent_heat(p, 1.0, -1.0), Error);
}

TEST(FOf, Examples) {
  EXPECT_NEAR(f_of(1.0, 1.0), std::exp(-1.0), 1e-15);
  const double want = 2.0 * std::numbers::inv_sqrtpi / (std::exp(1.0) * test::erf_by_quadrature(1.0));
  EXPECT_LE(rel_err(f_of(0.0, 1.0), want), 1e-14);
  for (double z : {1e-3, 1e-5, 1e-8}) EXPECT_LE(rel_err(f_of(2.0, z) * z, 1.0), 1e-5) << z;
  EXPECT_THROW(f_of(1.0, 0.0), Error);
}

TEST(FOf, LargeArgumentClosedForm) {
  // alpha = 1: f = e^{-z^2}/z on both sides of the asymptotic switch.
  for (double z : {5.0, 5.6, 6.0, 10.0, 20.0}) {
    EXPECT_LE(rel_err(f_of(1.0, z), std::exp(-z * z) / z), 1e-12) << z;
  }
  // alpha = 0: f = 2 e^{-z^2} / (sqrt(pi) erf z)
  for (double z : {5.0, 8.0}) {
    EXPECT_LE(rel_err(f_of(0.0, z), 2 * std::numbers::inv_sqrtpi * std::exp(-z * z) / std::erf(z)),
              1e-12)
        << z;
  }
}

TEST(StefanCoefficient, Examples) {
  EXPECT_DOUBLE_EQ(stefan_coefficient(unit(0, 0)), 0.5);
  EXPECT_DOUBLE_EQ(stefan_coefficient(unit(0, -1, 1.0, 2.0)), 1.0);
  EXPECT_LE(rel_err(stefan_coefficient(kWater), 0.58 / (2 * 1.39e-7)), 1e-14);
}

TEST(HOf, SignsAndRoot) {
  for (auto [b, d] : kValidPairs) {
    const auto p = unit(b, d);
    EXPECT_GT(h_of(p, 1e-6), 0.0) << b << " " << d;
    EXPECT_LT(h_of(p, 10.0), 0.0) << b << " " << d;
  }
  EXPECT_GT(h_of(kWater, 1e-6), 0.0);
  EXPECT_LT(h_of(kWater, 10.0), 0.0);

  // Independent Neumann root of sqrt(pi) z erf(z) e^{z^2} = 1.
  const double root = test::bisect_decreasing(
      [](double z) {
        return 1.0 - 0.5 / std::numbers::inv_sqrtpi * 2 * z * std::erf(z) * std::exp(z * z);
      },
      0.1, 2.0);
  EXPECT_NEAR(root, 0.62006, 1e-5);
  EXPECT_NEAR(h_of(unit(0, 0), root), 0.0, 1e-14);
}

TEST(HPrime, MatchesCentralDifference) {
  for (auto [b, d] : kValidPairs) {
    const auto p = unit(b, d);
    for (double z : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double h = 1e-6 * z;
      const double fd = (h_of(p, z + h) - h_of(p, z - h)) / (2 * h);
      EXPECT_LE(std::abs(h_prime(p, z) - fd), 1e-6 * std::max(1.0, std::abs(fd))) << b << " " << d << " " << z;
    }
  }
}

TEST(HPrime, Edges) {
  // beta + delta + 1 = 0: constant right side, H' = C f'.
  const auto p = unit(0, -1);
  EXPECT_EQ(h_prime(p, 0.8), stefan_coefficient(p) * f_prime(p.alpha(), 0.8));
  EXPECT_LT(h_prime(unit(0, 0), 1.0), 0.0);
}

TEST(FPrime, FormulaMatchesHighOrderDifference) {
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    for (double z : {0.05, 0.3, 1.0, 2.0, 3.5, 5.0, 7.0}) {
      // f varies on a length scale ~ 1/(2z) once z is large.
      const double h = 1e-3 * std::min(z, 1.0 / z);
      auto f = [&](double x) { return f_of(alpha, x); };
      const double fd = (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h);
      const double fp = f_prime(alpha, z);
      EXPECT_LE(std::abs(fp - fd), 1e-8 * std::abs(fp)) << alpha << " " << z;
      const double ff = f_of(alpha, z);
      EXPECT_LE(std::abs(fp + ff * ff * kummer_m(alpha / 2 + 1, 0.5, z * z).value), 1e-12 * std::abs(fp));
    }
  }
}

TEST(Monotonicity, LeftSideStrictlyDecreasing) {
  for (auto [b, d] : kValidPairs) {
    const auto p = unit(b, d);
    const double c = stefan_coefficient(p);
    double prev = c * f_of(p.alpha(), 0.01);
    for (double z = 0.02; z <= 5.0 + 1e-12; z += 0.01) {
      const double cur = c * f_of(p.alpha(), z);
      EXPECT_LT(cur, prev) << b << " " << d << " " << z;
      prev = cur;
    }
  }
}

TEST(Monotonicity, RightSideNonDecreasing) {
  for (auto [b, d] : kValidPairs) {
    const auto p = unit(b, d);
    double prev = h_sides(p, 0.01).rhs;
    for (double z = 0.02; z <= 5.0; z += 0.01) {
      const double cur = h_sides(p, z).rhs;
      if (p.rhs_exponent() > 0) {
        EXPECT_GT(cur, prev);
      } else {
        EXPECT_EQ(cur, prev);
      }
      prev = cur;
    }
  }
}

TEST(Scaling, LargerT0RaisesH) {
  for (auto [b, d] : kValidPairs) {
    for (double T0 : {1.0, 5.0}) {
      const auto lo = unit(b, d, T0), hi = unit(b, d, T0 * 2);
      EXPECT_GT(stefan_coefficient(hi), stefan_coefficient(lo));
      for (double z : {0.1, 0.7, 2.0, 4.0}) EXPECT_GT(h_of(hi, z), h_of(lo, z));
    }
  }
}

}  // namespace
}  // namespace stefan
