#include "fracstoch/moment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracstoch/errors.hpp"
#include "fracstoch/kernels.hpp"
#include "fracstoch/special_functions.hpp"

namespace fracstoch {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::MeanSquareDecaying: return "MeanSquareDecaying";
    case Verdict::NonDecaying: return "NonDecaying";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

MomentCurve moment_curve(double alpha, double a, double b_noise, double y0, const TimeGrid& grid,
                         bool allow_classical) {
  validate_order(alpha, allow_classical);
  if (!std::isfinite(a) || !std::isfinite(b_noise) || !std::isfinite(y0))
    throw ConfigError("moment_curve: coefficients must be finite");
  if (y0 < 0.0) throw ConfigError("moment_curve: initial second moment must be non-negative");

  const Eigen::Index n_steps = grid.n_steps();
  const Eigen::VectorXd decay = decay_curve(alpha, a, grid);
  Eigen::VectorXd y(n_steps + 1);
  y[0] = y0;
  const double b2 = b_noise * b_noise;
  if (b2 == 0.0) {
    for (Eigen::Index n = 1; n <= n_steps; ++n) y[n] = decay[n] * decay[n] * y0;
    return {grid, std::move(y), MomentSource::volterra};
  }

  const Eigen::VectorXd w = squared_kernel_weights(alpha, a, grid);
  // Linear y on each cell: node j (0 < j < n) collects half of the weights of
  // the two adjacent cells; both are lags of the same uniform kernel.
  Eigen::VectorXd pair_rev(n_steps);  // pair_rev[N - m] = (w_m + w_{m+1}) / 2
  for (Eigen::Index m = 1; m < n_steps; ++m) pair_rev[n_steps - m] = 0.5 * (w[m] + w[m + 1]);
  if (n_steps >= 1) pair_rev[0] = 0.5 * w[n_steps];

  const double denominator = 1.0 - 0.5 * b2 * w[1];
  if (!(denominator > 0.0)) {
    std::ostringstream os;
    os << "implicit step denominator " << denominator << " <= 0 at delta = " << grid.delta()
       << "; refine the time grid";
    throw StepTooCoarse(os.str());
  }

  for (Eigen::Index n = 1; n <= n_steps; ++n) {
    double memory = 0.5 * w[n] * y[0];
    if (n > 1) memory += detail::lagged_dot(pair_rev.data() + (n_steps - n + 1), y.data() + 1, n - 1);
    y[n] = (decay[n] * decay[n] * y0 + b2 * memory) / denominator;
  }
  return {grid, std::move(y), MomentSource::volterra};
}

MomentCurve moment_curve(const SfdeParams& params, const TimeGrid& grid, bool allow_classical) {
  return moment_curve(params.alpha, params.a, params.b_noise, params.eta * params.eta, grid,
                      allow_classical);
}

namespace {

// Product rule for int_0^S s^(2 alpha - 2) E_{alpha,alpha}(-s^alpha)^2 ds on the
// quadratically graded mesh s_i = S (i / cells)^2.
double squared_kernel_quadrature(double alpha, double upper, Eigen::Index cells) {
  const double p = 2.0 * alpha - 1.0;
  double total = 0.0;
  double left = 0.0;
  for (Eigen::Index i = 1; i <= cells; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(cells);
    const double right = upper * r * r;
    const double mid = 0.5 * (left + right);
    const double e = ml_value({alpha, alpha}, -std::pow(mid, alpha));
    const double right_p = std::pow(right, p);
    // right^p - left^p, accurate when the cell is thin relative to its position
    const double power_weight = left > 0.0 ? -right_p * std::expm1(p * std::log(left / right)) : right_p;
    total += e * e * power_weight / p;
    left = right;
  }
  return total;
}

struct TailSum {
  double value;
  double first_omitted;
};

TailSum squared_kernel_tail(double alpha, double upper) {
  constexpr int kMaxTerms = 16;
  double d[kMaxTerms + 2] = {};
  const double u = std::pow(upper, -alpha);
  int last = 2;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= kMaxTerms + 1; ++k) {
    d[k] = (k % 2 == 0 ? -1.0 : 1.0) * reciprocal_gamma(alpha - alpha * k);
    const double size = std::fabs(d[k]) * std::pow(u, k);
    if (k > 2 && size > prev) break;  // optimal truncation of the divergent expansion
    if (size != 0.0) prev = size;
    last = k;
  }
  auto cross = [&](int k, int l) {
    const double e = alpha * (k + l) - 2.0 * alpha + 1.0;
    return d[k] * d[l] * std::pow(upper, -e) / e;
  };
  double value = 0.0;
  for (int k = 2; k <= last; ++k)
    for (int l = 2; l <= last; ++l) value += cross(k, l);
  const int next = std::min(last + 1, kMaxTerms + 1);
  d[next] = (next % 2 == 0 ? -1.0 : 1.0) * reciprocal_gamma(alpha - alpha * next);
  return {value, 2.0 * std::fabs(cross(2, next))};
}

}  // namespace

StabilityReport stability_index(double alpha, double a, double b_noise,
                                const StabilityOptions& opts) {
  validate_order(alpha, opts.allow_classical);
  if (!(a < 0.0)) throw DomainError("stability_index requires a < 0");
  if (!std::isfinite(a) || !std::isfinite(b_noise))
    throw ConfigError("stability_index: coefficients must be finite");
  if (opts.cells < 16) throw ConfigError("stability_index: too few quadrature cells");

  // Substituting s = scale * sigma maps the kernel to a = -1 and multiplies the
  // integral by scale^(2 alpha - 1).
  const double scale = std::pow(-a, -1.0 / alpha);
  const double upper_s = std::max(20.0, scale * 50.0);
  const double upper = upper_s / scale;
  const double jacobian = std::pow(scale, 2.0 * alpha - 1.0);

  const double coarse = squared_kernel_quadrature(alpha, upper, opts.cells);
  const double fine = squared_kernel_quadrature(alpha, upper, 2 * opts.cells);

  // Beyond the truncation point E_{alpha,alpha}(-s^alpha) ~ sum_{k>=2} d_k s^(-alpha k)
  // with d_k = (-1)^(k+1) / Gamma(alpha - alpha k); the squared series is
  // integrated term by term. The k = 2 term alone gives the familiar
  // S^(-2 alpha - 1) / ((2 alpha + 1) Gamma(-alpha)^2).
  const auto [tail, next_tail] = squared_kernel_tail(alpha, upper);

  StabilityReport out;
  out.alpha = alpha;
  out.a = a;
  out.integral_value = jacobian * (fine + tail);
  out.tail_estimate = jacobian * tail;
  out.truncation_point = upper_s;
  out.quadrature_error =
      jacobian * (std::fabs(fine - coarse) + next_tail + 2.0 * kMlTarget * fine);
  out.critical_b = 1.0 / std::sqrt(out.integral_value);
  return with_noise(out, b_noise);
}

StabilityReport with_noise(StabilityReport report, double b_noise) {
  if (!std::isfinite(b_noise)) throw ConfigError("with_noise: b must be finite");
  report.b_noise = b_noise;
  report.kappa = b_noise * b_noise * report.integral_value;
  report.verdict = classify(report);
  return report;
}

double critical_gamma(double alpha, double lambda1, double beta, const StabilityOptions& opts) {
  if (!(beta < lambda1)) throw DomainError("critical_gamma requires beta < lambda1");
  return stability_index(alpha, -(lambda1 - beta), 0.0, opts).critical_b;
}

Verdict classify(const StabilityReport& report) {
  const double tol = std::max(1e-6, report.quadrature_error);
  if (report.kappa < 1.0 - tol) return Verdict::MeanSquareDecaying;
  if (report.kappa > 1.0 + tol) return Verdict::NonDecaying;
  return Verdict::Inconclusive;
}

DecayProbe decay_probe(const MomentCurve& curve, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("decay_probe: delta must lie in (0, 1)");
  if (curve.source != MomentSource::volterra)
    throw ConfigError("decay_probe expects a Volterra moment curve");
  DecayProbe out;
  out.delta = delta;
  Eigen::Index argmax = 0;
  const Eigen::Index last = curve.grid.n_steps();
  double value_last = 0.0;
  for (Eigen::Index n = 0; n <= last; ++n) {
    const double t = curve.grid.node(n);
    const double v = std::pow(t, delta) * curve.y[n];
    if (v > out.sup_value) {
      out.sup_value = v;
      argmax = n;
    }
    if (n == last) value_last = v;
  }
  out.argmax_t = curve.grid.node(argmax);
  out.interior_max = argmax > 0 && argmax < last;
  out.tail_ratio = out.sup_value > 0.0 ? value_last / out.sup_value : 0.0;
  return out;
}

TailMinima tail_minima(const MomentCurve& curve) {
  const double t_end = curve.grid.t_max();
  TailMinima out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (Eigen::Index n = 0; n <= curve.grid.n_steps(); ++n) {
    const double t = curve.grid.node(n);
    if (t >= 0.25 * t_end && t <= 0.5 * t_end) out.quarter_to_half = std::min(out.quarter_to_half, curve.y[n]);
    if (t >= 0.5 * t_end) out.half_to_end = std::min(out.half_to_end, curve.y[n]);
  }
  return out;
}

}  // namespace fracstoch
