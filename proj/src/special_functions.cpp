#include "fracstoch/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracstoch/errors.hpp"

namespace fracstoch {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr long double kEpsLong = std::numeric_limits<long double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSeriesTerms = 6000;
constexpr int kMaxAsymptoticTerms = 400;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

long double reciprocal_gamma_long(long double x) {
  if (x <= 0.0L && x == std::nearbyint(x)) return 0.0L;
  if (x > 1700.0L) return 0.0L;
  return 1.0L / std::tgamma(x);
}

std::string describe(MlOrder o, double x) {
  std::ostringstream os;
  os.precision(17);
  os << "E_{" << o.alpha << "," << o.beta << "}(" << x << ")";
  return os.str();
}

void check_order(MlOrder o) {
  if (!(o.alpha > 0.0) || !std::isfinite(o.alpha) || !std::isfinite(o.beta))
    throw DomainError("Mittag-Leffler order needs alpha > 0 and finite beta");
}

// Optimally truncated algebraic expansion -sum_{k>=1} x^{-k} / Gamma(beta - alpha k).
// The error estimate uses the envelope |x|^{-k} Gamma(1 - beta + alpha k) / pi,
// which bounds each term through the reflection formula and does not vanish
// when beta - alpha k happens to sit on a Gamma pole.
struct AlgebraicTail {
  double sum = 0.0;
  double bound = kInf;
  double abs_sum = 0.0;  // sum of |term| weighted by its rounding factor
};

// sin(pi * v) with exact reduction of v modulo 2.
double sin_pi(double v) {
  const double r = std::fmod(v, 2.0);
  if (r == std::nearbyint(r)) return 0.0;
  return std::sin(std::numbers::pi * r);
}

AlgebraicTail algebraic_tail(MlOrder o, double x) {
  AlgebraicTail out;
  const double ax = std::fabs(x);
  const double log_ax = std::log(ax);
  double best_envelope = kInf;
  double partial = 0.0;
  double partial_abs = 0.0;
  for (int k = 1; k <= kMaxAsymptoticTerms; ++k) {
    const double arg = o.beta - o.alpha * k;
    const double reflected = 1.0 - arg;
    const double sign_power = (x < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    double term;
    double envelope;
    // relative rounding of exp(log-magnitude) grows with the size of its argument
    double rounding = 4.0 + k * std::fabs(log_ax);
    if (reflected > 0.5) {
      rounding += std::fabs(std::lgamma(reflected));
      // 1/Gamma(arg) = Gamma(1 - arg) sin(pi arg) / pi, kept in log form
      envelope = std::exp(std::lgamma(reflected) - k * log_ax) / std::numbers::pi;
      term = -sign_power * envelope * sin_pi(arg);
    } else {
      term = -sign_power * std::exp(-k * log_ax) * reciprocal_gamma(arg);
      envelope = std::fabs(term);
    }
    if (envelope >= best_envelope) break;
    // Term k is now the smallest seen; it becomes the first omitted term if
    // the next envelope grows.
    best_envelope = envelope;
    out.sum = partial;
    out.abs_sum = partial_abs;
    out.bound = envelope;
    partial += term;
    partial_abs += std::fabs(term) * rounding;
  }
  return out;
}

}  // namespace

std::string_view to_string(MlBranch branch) {
  switch (branch) {
    case MlBranch::series: return "series";
    case MlBranch::asymptotic: return "asymptotic";
    case MlBranch::contour: return "contour";
  }
  return "unknown";
}

double gamma_real(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_real: non-finite argument");
  if (x <= 0.0) {
    const double nearest = std::nearbyint(x);
    if (std::fabs(x - nearest) <= 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "gamma_real: argument " << x << " is at a pole";
      throw PoleError(os.str());
    }
  }
  return std::tgamma(x);
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return 0.0;
  if (x < -170.0) return std::tgamma(1.0 - x) * sin_pi(x) / std::numbers::pi;
  return 1.0 / std::tgamma(x);
}

EvalResult ml_series(MlOrder o, double x) {
  check_order(o);
  EvalResult out;
  out.branch = MlBranch::series;
  if (x == 0.0) {
    out.value = reciprocal_gamma(o.beta);
    out.abs_error_bound = 2.0 * kEps * std::fabs(out.value);
    return out;
  }
  const long double xl = x;
  const long double ax = std::fabs(xl);
  long double power = 1.0L;
  long double sum = 0.0L;
  long double weighted_abs = 0.0L;  // sum of |t_k| (k + 5): first-order rounding model
  long double remainder = std::numeric_limits<long double>::infinity();
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const long double arg = static_cast<long double>(o.alpha) * k + o.beta;
    const long double term = power * reciprocal_gamma_long(arg);
    sum += term;
    weighted_abs += std::fabs(term) * (k + 5);
    // Gamma(y) / Gamma(y + alpha) decreases for y > 2, so once the ratio of
    // successive term magnitudes drops below 1/2 the tail is dominated by a
    // geometric series.
    if (arg > 2.0L) {
      const long double ratio =
          ax * std::exp(std::lgamma(arg) - std::lgamma(arg + static_cast<long double>(o.alpha)));
      if (ratio < 0.5L) {
        const long double tail = std::fabs(term) * ratio / (1.0L - ratio);
        if (tail <= 1e-18L * std::max(1.0L, std::fabs(sum))) {
          remainder = tail;
          break;
        }
      }
    }
    power *= xl;
    if (!std::isfinite(static_cast<double>(power)) && power != 0.0L) break;
  }
  out.value = static_cast<double>(sum);
  if (!std::isfinite(static_cast<double>(remainder)) || !std::isfinite(out.value)) {
    out.abs_error_bound = kInf;
    return out;
  }
  out.abs_error_bound = static_cast<double>(remainder + 4.0L * kEpsLong * weighted_abs) +
                        kEps * std::fabs(out.value);
  return out;
}

EvalResult ml_asymptotic(MlOrder o, double x) {
  check_order(o);
  EvalResult out;
  out.branch = MlBranch::asymptotic;
  if (x == 0.0 || o.alpha >= 2.0) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.abs_error_bound = kInf;
    return out;
  }
  const AlgebraicTail tail = algebraic_tail(o, x);
  if (x < 0.0) {
    if (o.alpha > 1.0) {
      // exponential contributions from complex saddle points are not modelled
      out.value = tail.sum;
      out.abs_error_bound = kInf;
      return out;
    }
    // Beyond-all-orders remainder ~ exp(-|x|^(1/alpha)); it dominates the
    // algebraic envelope when alpha is close to 1.
    const double root = std::pow(-x, 1.0 / o.alpha);
    const double beyond = 2.0 / o.alpha * std::pow(root, 1.0 - o.beta) * std::exp(-root);
    out.value = tail.sum;
    out.abs_error_bound = tail.bound + beyond + kEps * (tail.abs_sum + 2.0 * std::fabs(tail.sum));
    return out;
  }
  const double root = std::pow(x, 1.0 / o.alpha);
  const double exponential =
      std::pow(x, (1.0 - o.beta) / o.alpha) * std::exp(root) / o.alpha;
  out.value = exponential + tail.sum;
  out.abs_error_bound = 2.0 * (root + 4.0) * kEps * std::fabs(exponential) + tail.bound +
                        kEps * tail.abs_sum;
  if (!std::isfinite(out.value)) out.abs_error_bound = kInf;
  return out;
}

EvalResult ml_contour(MlOrder o, double x) {
  check_order(o);
  EvalResult out;
  out.branch = MlBranch::contour;
  if (x > 0.0 || o.alpha > 1.0) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.abs_error_bound = kInf;
    return out;
  }
  using C = std::complex<double>;
  // Parabola s(u) = mu (1 + iu)^2 at t = 1; for x <= 0 and alpha <= 1 all
  // singularities of the transform lie on the closed negative real axis.
  auto integrate = [&](int n, double& abs_total) {
    const double mu = std::numbers::pi * n / 12.0;
    const double h = 3.0 / n;
    const double u_max = std::sqrt(1.0 + 45.0 / mu);
    double total = 0.0;
    abs_total = 0.0;
    for (int k = 0;; ++k) {
      const double u = k * h;
      if (u > u_max) break;
      const C w(1.0, u);
      const C s = mu * w * w;
      const C log_s = std::log(s);
      const C s_alpha = std::exp(o.alpha * log_s);
      const C g = std::exp(s + (o.alpha - o.beta) * log_s) / (s_alpha - x) * w;
      const double weight = k == 0 ? 1.0 : 2.0;
      total += weight * g.real();
      abs_total += weight * std::abs(g);
    }
    const double scale = mu * h / std::numbers::pi;
    abs_total *= scale;
    return scale * total;
  };
  double abs_fine = 0.0;
  double abs_coarse = 0.0;
  const double fine = integrate(36, abs_fine);
  const double coarse = integrate(28, abs_coarse);
  out.value = fine;
  out.abs_error_bound = std::fabs(fine - coarse) + 64.0 * kEps * abs_fine;
  if (!std::isfinite(out.value)) out.abs_error_bound = kInf;
  return out;
}

EvalResult mittag_leffler(MlOrder order, double x, const MlOptions& opts) {
  check_order(order);
  if (!std::isfinite(x)) throw DomainError("mittag_leffler: non-finite argument");
  EvalResult best;
  best.abs_error_bound = kInf;
  best.value = std::numeric_limits<double>::quiet_NaN();
  auto consider = [&](const EvalResult& r) {
    if (r.abs_error_bound < best.abs_error_bound || !std::isfinite(best.value)) best = r;
    return meets_target(r, opts.target);
  };

  if (x >= 0.0) {
    // Positive terms: the series is accurate in relative terms until the
    // exponential growth makes the asymptotic form cheaper and sharper.
    const bool small = order.alpha > 1.0 ? x <= opts.switch_radius
                                          : std::pow(x, 1.0 / order.alpha) <= 50.0;
    if (small) {
      if (consider(ml_series(order, x))) return best;
      if (order.alpha < 2.0) consider(ml_asymptotic(order, x));
    } else {
      if (consider(ml_asymptotic(order, x))) return best;
      consider(ml_series(order, x));
    }
    return best;
  }

  if (-x <= opts.switch_radius) {
    // Once |x|^(1/alpha) passes a few units the alternating series gets long
    // and loses digits; the contour integral is cheaper at the same target.
    if (order.alpha > 1.0 || std::pow(-x, 1.0 / order.alpha) <= 4.0) {
      if (consider(ml_series(order, x))) return best;
    }
    if (order.alpha <= 1.0) {
      if (consider(ml_contour(order, x))) return best;
      if (consider(ml_asymptotic(order, x))) return best;
      consider(ml_series(order, x));
    }
    return best;
  }
  if (order.alpha <= 1.0) {
    if (consider(ml_asymptotic(order, x))) return best;
    if (consider(ml_contour(order, x))) return best;
  }
  consider(ml_series(order, x));
  return best;
}

double ml_value(MlOrder order, double x) {
  const EvalResult r = mittag_leffler(order, x);
  if (!meets_target(r)) {
    std::ostringstream os;
    os.precision(3);
    os << describe(order, x) << ": best error bound " << r.abs_error_bound << " via "
       << to_string(r.branch) << " misses target " << kMlTarget;
    throw AccuracyError(os.str());
  }
  return r.value;
}

double kernel_primitive(double alpha, double a, double s) {
  if (!(s >= 0.0)) throw DomainError("kernel_primitive: s must be non-negative");
  if (s == 0.0) return 0.0;
  const double s_alpha = std::pow(s, alpha);
  return s_alpha * ml_value({alpha, alpha + 1.0}, a * s_alpha);
}

}  // namespace fracstoch
