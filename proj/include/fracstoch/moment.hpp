#ifndef FRACSTOCH_MOMENT_HPP
#define FRACSTOCH_MOMENT_HPP

#include <Eigen/Dense>
#include <string_view>

#include "fracstoch/grid.hpp"
#include "fracstoch/sfde.hpp"

namespace fracstoch {

enum class MomentSource { volterra, monte_carlo };

/// Second moment y(t) = E x(t)^2 on a grid.
struct MomentCurve {
  TimeGrid grid;
  Eigen::VectorXd y;
  MomentSource source = MomentSource::volterra;
};

/// Solves
///   y(t) = E_alpha(a t^alpha)^2 y0 + b^2 int_0^t (t-s)^(2 alpha-2) E_{alpha,alpha}(a (t-s)^alpha)^2 y(s) ds
/// by product integration: the Mittag-Leffler factor is frozen at cell
/// midpoints, the power is integrated exactly and y is linear on each cell,
/// which makes every step a scalar implicit solve. Throws StepTooCoarse when
/// the implicit denominator is not positive.
MomentCurve moment_curve(double alpha, double a, double b_noise, double y0, const TimeGrid& grid,
                         bool allow_classical = false);

/// Same with y0 = eta^2.
MomentCurve moment_curve(const SfdeParams& params, const TimeGrid& grid,
                         bool allow_classical = false);

enum class Verdict { MeanSquareDecaying, NonDecaying, Inconclusive };

std::string_view to_string(Verdict v);

struct StabilityReport {
  double alpha = 0.0;
  double a = 0.0;
  double b_noise = 0.0;
  double kappa = 0.0;           // b^2 * integral_value
  double integral_value = 0.0;  // int_0^inf s^(2 alpha-2) E_{alpha,alpha}(a s^alpha)^2 ds
  double tail_estimate = 0.0;   // closed-form contribution beyond the truncation point
  double truncation_point = 0.0;
  double quadrature_error = 0.0;
  double critical_b = 0.0;      // noise level with kappa = 1
  Verdict verdict = Verdict::Inconclusive;
};

struct StabilityOptions {
  /// Product-rule cells on [0, S] for the coarse pass; the fine pass doubles them.
  Eigen::Index cells = 8000;
  bool allow_classical = false;
};

/// Mean-square stability index of the scalar equation. Requires a < 0.
StabilityReport stability_index(double alpha, double a, double b_noise,
                                const StabilityOptions& opts = {});

/// The same report for another noise amplitude. I(alpha, a) does not depend on
/// b, so scanning b needs only one quadrature.
StabilityReport with_noise(StabilityReport report, double b_noise);

/// Noise level gamma at which the elliptic problem with first eigenvalue
/// lambda1 and reaction coefficient beta switches from decay to non-decay.
double critical_gamma(double alpha, double lambda1, double beta, const StabilityOptions& opts = {});

/// kappa vs 1 with tolerance band max(1e-6, quadrature_error).
Verdict classify(const StabilityReport& report);

struct DecayProbe {
  double delta = 0.0;
  double sup_value = 0.0;
  double argmax_t = 0.0;
  double tail_ratio = 0.0;  // t_N^delta y(t_N) / sup_value
  bool interior_max = false;
};

/// Grid maximum of t^delta y(t). Evidence over a finite horizon, not a proof.
DecayProbe decay_probe(const MomentCurve& curve, double delta);

struct TailMinima {
  double quarter_to_half = 0.0;  // min y over [T/4, T/2]
  double half_to_end = 0.0;      // min y over [T/2, T]
  bool non_decaying() const { return half_to_end >= quarter_to_half; }
};

/// Running minima used as the non-decay witness.
TailMinima tail_minima(const MomentCurve& curve);

}  // namespace fracstoch

#endif  // FRACSTOCH_MOMENT_HPP
