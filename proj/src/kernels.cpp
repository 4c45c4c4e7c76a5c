#include "fracstoch/kernels.hpp"

#include <cmath>

#include "fracstoch/errors.hpp"
#include "fracstoch/special_functions.hpp"

namespace fracstoch {

namespace {

// m^p - (m-1)^p without cancellation for large m.
double power_difference(double m, double p) {
  if (m <= 1.0) return std::pow(m, p);
  return -std::pow(m, p) * std::expm1(p * std::log1p(-1.0 / m));
}

}  // namespace

Eigen::VectorXd decay_curve(double alpha, double a, const TimeGrid& grid) {
  Eigen::VectorXd out(grid.size());
  for (Eigen::Index n = 0; n < grid.size(); ++n)
    out[n] = ml_value({alpha, 1.0}, a * std::pow(grid.node(n), alpha));
  return out;
}

Eigen::VectorXd primitive_differences(double alpha, double a, const TimeGrid& grid) {
  const Eigen::Index n_steps = grid.n_steps();
  Eigen::VectorXd primitive(n_steps + 1);
  for (Eigen::Index m = 0; m <= n_steps; ++m)
    primitive[m] = kernel_primitive(alpha, a, static_cast<double>(m) * grid.delta());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_steps + 1);
  for (Eigen::Index m = 1; m <= n_steps; ++m) out[m] = primitive[m] - primitive[m - 1];
  return out;
}

Eigen::VectorXd left_point_kernel(double alpha, double a, const TimeGrid& grid) {
  const Eigen::Index n_steps = grid.n_steps();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_steps + 1);
  for (Eigen::Index m = 1; m <= n_steps; ++m) {
    const double s = static_cast<double>(m) * grid.delta();
    const double s_alpha = std::pow(s, alpha);
    out[m] = s_alpha / s * ml_value({alpha, alpha}, a * s_alpha);
  }
  return out;
}

Eigen::VectorXd squared_kernel_weights(double alpha, double a, const TimeGrid& grid) {
  if (!(alpha > 0.5)) throw ConfigError("squared kernel is not integrable for alpha <= 1/2");
  const Eigen::Index n_steps = grid.n_steps();
  const double p = 2.0 * alpha - 1.0;
  const double scale = std::pow(grid.delta(), p) / p;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_steps + 1);
  for (Eigen::Index m = 1; m <= n_steps; ++m) {
    const double mid = (static_cast<double>(m) - 0.5) * grid.delta();
    const double e = ml_value({alpha, alpha}, a * std::pow(mid, alpha));
    out[m] = e * e * scale * power_difference(static_cast<double>(m), p);
  }
  return out;
}

}  // namespace fracstoch
