#ifndef FRACSTOCH_SPECIAL_FUNCTIONS_HPP
#define FRACSTOCH_SPECIAL_FUNCTIONS_HPP

#include <string_view>

namespace fracstoch {

/// Gamma function on the real line. Throws PoleError within 1e-12 of a
/// non-positive integer.
double gamma_real(double x);

/// 1/Gamma(x), an entire function: exactly 0 at non-positive integers.
double reciprocal_gamma(double x);

/// Parameters (alpha, beta) of the two-parameter Mittag-Leffler function
/// E_{alpha,beta}(x) = sum_k x^k / Gamma(alpha k + beta).
struct MlOrder {
  double alpha;
  double beta;
};

enum class MlBranch { series, asymptotic, contour };

std::string_view to_string(MlBranch branch);

struct EvalResult {
  double value = 0.0;
  double abs_error_bound = 0.0;
  MlBranch branch = MlBranch::series;
};

/// Accuracy demanded of every regime: abs_error_bound <= target * max(1, |value|).
inline constexpr double kMlTarget = 1e-10;

inline bool meets_target(const EvalResult& r, double target = kMlTarget) {
  const double scale = r.value > 1.0 || r.value < -1.0 ? (r.value < 0 ? -r.value : r.value) : 1.0;
  return r.abs_error_bound <= target * scale;
}

struct MlOptions {
  /// |x| below which the power series is tried first on the negative axis.
  double switch_radius = 10.0;
  double target = kMlTarget;
};

// Individual regimes; each reports an honest error estimate (possibly +inf).
//
// Series: partial sums accumulated in extended precision with a geometric
// remainder bound. Asymptotic: optimally truncated algebraic expansion on the
// negative axis, plus the exponential term on the positive axis (alpha < 2).
// Contour: trapezoidal rule for the inverse Laplace transform
// s^(alpha-beta) / (s^alpha - x) on a parabolic Hankel contour, valid for
// x <= 0 and alpha <= 1 where the transform has no poles off the branch cut.
EvalResult ml_series(MlOrder order, double x);
EvalResult ml_asymptotic(MlOrder order, double x);
EvalResult ml_contour(MlOrder order, double x);

/// E_{alpha,beta}(x) for alpha in (0, 1] (alpha in (1, 2] only where the
/// series converges accurately). Never throws on accuracy: the returned bound
/// is honest and `meets_target` tells whether it reached `opts.target`.
EvalResult mittag_leffler(MlOrder order, double x, const MlOptions& opts = {});

/// Value of E_{alpha,beta}(x); throws AccuracyError if no regime reached the target.
double ml_value(MlOrder order, double x);

/// G(s) = s^alpha E_{alpha,alpha+1}(a s^alpha), the antiderivative of
/// s^(alpha-1) E_{alpha,alpha}(a s^alpha) with G(0) = 0.
double kernel_primitive(double alpha, double a, double s);

}  // namespace fracstoch

#endif  // FRACSTOCH_SPECIAL_FUNCTIONS_HPP
