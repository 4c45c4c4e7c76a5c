#ifndef FRACSTOCH_KERNELS_HPP
#define FRACSTOCH_KERNELS_HPP

#include <Eigen/Dense>

#include "fracstoch/grid.hpp"

namespace fracstoch {

// Weights of the Mittag-Leffler resolvent kernel on a uniform grid. All
// vectors are indexed by the lag m = n - k in cells, entry 0 unused (zero).

/// E_alpha(a t_n^alpha) for n = 0..N.
Eigen::VectorXd decay_curve(double alpha, double a, const TimeGrid& grid);

/// D_m = G(m delta) - G((m-1) delta): exact cell integral of
/// s^(alpha-1) E_{alpha,alpha}(a s^alpha).
Eigen::VectorXd primitive_differences(double alpha, double a, const TimeGrid& grid);

/// Left-point kernel values (m delta)^(alpha-1) E_{alpha,alpha}(a (m delta)^alpha).
Eigen::VectorXd left_point_kernel(double alpha, double a, const TimeGrid& grid);

/// Product-rule weights for the squared kernel s^(2 alpha - 2) E_{alpha,alpha}(a s^alpha)^2:
/// the smooth factor frozen at the cell midpoint, the power integrated exactly.
Eigen::VectorXd squared_kernel_weights(double alpha, double a, const TimeGrid& grid);

namespace detail {

/// sum_i w[i] v[i] with four interleaved accumulators in a fixed order, so
/// results do not depend on buffer alignment or vector width.
inline double lagged_dot(const double* w, const double* v, Eigen::Index n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  Eigen::Index i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += w[i] * v[i];
    s1 += w[i + 1] * v[i + 1];
    s2 += w[i + 2] * v[i + 2];
    s3 += w[i + 3] * v[i + 3];
  }
  for (; i < n; ++i) s0 += w[i] * v[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace detail

}  // namespace fracstoch

#endif  // FRACSTOCH_KERNELS_HPP
