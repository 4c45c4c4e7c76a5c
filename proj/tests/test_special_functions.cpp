#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "fracstoch/errors.hpp"
#include "fracstoch/special_functions.hpp"

using namespace fracstoch;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Values below were computed offline at 40 digits (tests/oracles/special_values.py).
constexpr double kGammaQuarter = 3.6256099082219083119;
constexpr double kGammaMinusThreeQuarters = -4.8341465442958777492;
constexpr double kMl075At2 = 0.084363572245660564019;      // E_{0.75,0.75}(-2)
constexpr double kPrimitive075 = 0.75631795427982742304;   // G(2), alpha 0.75, a -1

}  // namespace

TEST(Gamma, ClosedFormValues) {
  EXPECT_LE(rel_err(gamma_real(0.5), std::sqrt(std::numbers::pi)), 1e-15);
  EXPECT_EQ(gamma_real(1.0), 1.0);
  EXPECT_LE(rel_err(gamma_real(0.25), kGammaQuarter), 1e-14);
}

TEST(Gamma, NegativeArgumentMatchesRecurrence) {
  EXPECT_LE(rel_err(gamma_real(-0.75), kGammaMinusThreeQuarters), 1e-14);
  EXPECT_LE(rel_err(gamma_real(-0.75), gamma_real(0.25) / -0.75), 1e-14);
}

TEST(Gamma, RecurrenceHoldsAwayFromPoles) {
  for (double x = -4.93; x < 49.0; x += 0.173) {
    if (std::fabs(x - std::nearbyint(x)) < 1e-3 && x <= 0.0) continue;
    EXPECT_LE(rel_err(gamma_real(x + 1.0), x * gamma_real(x)), 1e-12) << "x = " << x;
  }
}

TEST(Gamma, PolesThrow) {
  EXPECT_THROW(gamma_real(0.0), PoleError);
  EXPECT_THROW(gamma_real(-3.0), PoleError);
  EXPECT_THROW(gamma_real(-2.0 + 5e-13), PoleError);
  EXPECT_NO_THROW(gamma_real(-2.0 + 1e-8));
}

TEST(Gamma, ReciprocalVanishesAtPoles) {
  EXPECT_EQ(reciprocal_gamma(0.0), 0.0);
  EXPECT_EQ(reciprocal_gamma(-7.0), 0.0);
  EXPECT_LE(rel_err(reciprocal_gamma(-0.75), 1.0 / kGammaMinusThreeQuarters), 1e-14);
}

TEST(MittagLeffler, ExponentialCases) {
  EXPECT_LE(rel_err(mittag_leffler({1.0, 1.0}, 1.0).value, std::numbers::e), 1e-15);
  EXPECT_LE(rel_err(mittag_leffler({1.0, 2.0}, 1.0).value, std::numbers::e - 1.0), 1e-15);
}

TEST(MittagLeffler, FrozenSeriesValue) {
  const EvalResult r = mittag_leffler({0.75, 0.75}, -2.0);
  EXPECT_NEAR(r.value, kMl075At2, 1e-13);
  EXPECT_EQ(r.branch, MlBranch::series);
  EXPECT_GE(r.abs_error_bound, 0.0);
}

// 276 points at 30 digits: alpha in [0.55, 1], beta in {alpha, 1, alpha + 1},
// x from -1e6 to 20 (tests/oracles/ml_table.py).
TEST(MittagLeffler, ReferenceTable) {
  std::ifstream in(FRACSTOCH_TEST_DATA "/ml_reference.txt");
  ASSERT_TRUE(in) << "missing reference table";
  double alpha, beta, x;
  std::string ref_text;
  int rows = 0;
  while (in >> alpha >> beta >> x >> ref_text) {
    ++rows;
    const long double ref = std::stold(ref_text);
    const EvalResult r = mittag_leffler({alpha, beta}, x);
    const double err = std::fabs(static_cast<double>(r.value - ref));
    const double scale = std::max(1.0, std::fabs(static_cast<double>(ref)));
    SCOPED_TRACE("alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta) +
                 " x=" + std::to_string(x) + " branch=" + std::string(to_string(r.branch)));
    EXPECT_LE(err, kMlTarget * scale);
    EXPECT_LE(err, r.abs_error_bound);
    EXPECT_TRUE(meets_target(r));
  }
  EXPECT_EQ(rows, 276);
}

// Where |x|^(1/alpha) is between 16 and 20 both the series (still carrying enough
// digits in extended precision) and the asymptotic expansion are usable; they
// must agree within their combined reported bounds.
TEST(MittagLeffler, SeriesAndAsymptoticAgreeOnOverlap) {
  for (double alpha : {0.6, 0.75, 0.9}) {
    for (double root = 16.0; root <= 20.0; root += 0.25) {
      const double x = -std::pow(root, alpha);
      const EvalResult s = ml_series({alpha, alpha}, x);
      const EvalResult a = ml_asymptotic({alpha, alpha}, x);
      const double bound = s.abs_error_bound + a.abs_error_bound;
      EXPECT_LE(bound, 2e-6) << "alpha=" << alpha << " x=" << x;
      EXPECT_LE(std::fabs(s.value - a.value), bound) << "alpha=" << alpha << " x=" << x;
    }
  }
}

TEST(MittagLeffler, PositiveAndDecreasingOnNegativeAxis) {
  for (double alpha : {0.55, 0.6, 0.75, 0.9, 0.99}) {
    double prev = ml_value({alpha, alpha}, 0.0);
    EXPECT_GT(prev, 0.0);
    for (double x = 1e-3; x <= 1e6; x *= 1.07) {
      const double v = ml_value({alpha, alpha}, -x);
      ASSERT_GT(v, 0.0) << "alpha=" << alpha << " x=" << x;
      ASSERT_LT(v, prev) << "alpha=" << alpha << " x=" << x;
      prev = v;
    }
  }
}

TEST(MittagLeffler, ContourRegimeIsReported) {
  EXPECT_EQ(mittag_leffler({0.75, 0.75}, -5.0).branch, MlBranch::contour);
  EXPECT_EQ(mittag_leffler({0.75, 0.75}, -1e3).branch, MlBranch::asymptotic);
}

TEST(MittagLeffler, UnreachableTargetRaisesAccuracyError) {
  // alpha > 1 is covered by the series only; at x = -100 it cancels catastrophically
  const EvalResult r = mittag_leffler({1.5, 1.0}, -100.0);
  EXPECT_FALSE(meets_target(r));
  EXPECT_THROW(ml_value({1.5, 1.0}, -100.0), AccuracyError);
}

TEST(MittagLeffler, CoshIdentityForAlphaTwo) {
  for (double x : {-5.0, -1.0, 0.5, 1.0, 5.0}) {
    const double want = x >= 0 ? std::cosh(std::sqrt(x)) : std::cos(std::sqrt(-x));
    EXPECT_LE(std::fabs(ml_value({2.0, 1.0}, x) - want), 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST(KernelPrimitive, Values) {
  EXPECT_EQ(kernel_primitive(0.8, -1.0, 0.0), 0.0);
  EXPECT_LE(rel_err(kernel_primitive(1.0, -1.0, 1.0), 1.0 - std::exp(-1.0)), 1e-14);
  EXPECT_LE(rel_err(kernel_primitive(0.75, -1.0, 2.0), kPrimitive075), 1e-10);
  EXPECT_THROW(kernel_primitive(0.75, -1.0, -0.1), DomainError);
}

TEST(KernelPrimitive, DifferenceQuotientConvergesAtFirstOrder) {
  const double alpha = 0.7, a = -1.3;
  for (double s : {0.3, 1.0, 2.5}) {
    const double exact = std::pow(s, alpha - 1.0) * ml_value({alpha, alpha}, a * std::pow(s, alpha));
    auto quotient_error = [&](double h) {
      return std::fabs((kernel_primitive(alpha, a, s + h) - kernel_primitive(alpha, a, s)) / h - exact);
    };
    const double e1 = quotient_error(1e-3), e2 = quotient_error(5e-4);
    EXPECT_LT(e2, 1e-3);
    EXPECT_NEAR(e1 / e2, 2.0, 0.2) << "s=" << s;
  }
}
