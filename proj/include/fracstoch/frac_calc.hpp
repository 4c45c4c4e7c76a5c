#ifndef FRACSTOCH_FRAC_CALC_HPP
#define FRACSTOCH_FRAC_CALC_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "fracstoch/errors.hpp"
#include "fracstoch/grid.hpp"

namespace fracstoch {

/// Product-rectangle Riemann-Liouville integral of order alpha at every node.
///
/// On each cell [t_k, t_{k+1}] the sampled function is replaced by the mean of
/// its endpoint values and the weight (t - tau)^(alpha-1) / Gamma(alpha) is
/// integrated exactly. Node 0 is 0.
template <typename Scalar, typename Derived>
Vector<Scalar> rl_integral(Scalar alpha, const BasicGrid<Scalar>& grid,
                           const Eigen::MatrixBase<Derived>& values) {
  if (!(alpha > Scalar(0) && alpha <= Scalar(1)))
    throw ConfigError("rl_integral: alpha must lie in (0, 1]");
  if (values.size() != grid.size()) throw GridMismatchError("rl_integral: size mismatch");
  const Eigen::Index n_steps = grid.n_steps();
  const Scalar scale = std::pow(grid.delta(), alpha) / std::tgamma(alpha + Scalar(1));

  // weights[m] integrates the kernel over the cell whose far end lies m cells back
  Vector<Scalar> weights(n_steps + 1);
  weights[0] = Scalar(0);
  for (Eigen::Index m = 1; m <= n_steps; ++m)
    weights[m] = scale * (std::pow(Scalar(m), alpha) - std::pow(Scalar(m - 1), alpha));

  Vector<Scalar> cell_means(n_steps);
  for (Eigen::Index k = 0; k < n_steps; ++k)
    cell_means[k] = (values[k] + values[k + 1]) / Scalar(2);

  Vector<Scalar> out = Vector<Scalar>::Zero(grid.size());
  for (Eigen::Index n = 1; n <= n_steps; ++n) {
    Scalar acc(0);
    for (Eigen::Index k = 0; k < n; ++k) acc += weights[n - k] * cell_means[k];
    out[n] = acc;
  }
  return out;
}

template <typename Scalar>
BasicSampledFunction<Scalar> rl_integral(Scalar alpha, const BasicSampledFunction<Scalar>& f) {
  return {f.grid, rl_integral(alpha, f.grid, f.values)};
}

/// L1 discretisation of the Caputo derivative of order alpha in (0, 1).
///
/// Node 0 carries a quiet NaN: the scheme has no value there.
template <typename Scalar, typename Derived>
Vector<Scalar> caputo_l1(Scalar alpha, const BasicGrid<Scalar>& grid,
                         const Eigen::MatrixBase<Derived>& values) {
  if (!(alpha > Scalar(0) && alpha < Scalar(1)))
    throw ConfigError("caputo_l1: alpha must lie in (0, 1)");
  if (grid.n_steps() < 2) throw ConfigError("caputo_l1: needs at least two steps");
  if (values.size() != grid.size()) throw GridMismatchError("caputo_l1: size mismatch");
  const Eigen::Index n_steps = grid.n_steps();
  const Scalar one_minus = Scalar(1) - alpha;
  const Scalar scale = std::pow(grid.delta(), -alpha) / std::tgamma(Scalar(2) - alpha);

  Vector<Scalar> b(n_steps);
  for (Eigen::Index j = 0; j < n_steps; ++j)
    b[j] = std::pow(Scalar(j + 1), one_minus) - std::pow(Scalar(j), one_minus);

  Vector<Scalar> out(grid.size());
  out[0] = std::numeric_limits<Scalar>::quiet_NaN();
  for (Eigen::Index n = 1; n <= n_steps; ++n) {
    Scalar acc(0);
    for (Eigen::Index j = 0; j < n; ++j) acc += b[j] * (values[n - j] - values[n - j - 1]);
    out[n] = scale * acc;
  }
  return out;
}

template <typename Scalar>
BasicSampledFunction<Scalar> caputo_l1(Scalar alpha, const BasicSampledFunction<Scalar>& f) {
  return {f.grid, caputo_l1(alpha, f.grid, f.values)};
}

}  // namespace fracstoch

#endif  // FRACSTOCH_FRAC_CALC_HPP
