#include "fracstoch/sfde.hpp"

#include <cmath>
#include <sstream>

#include "fracstoch/ensemble.hpp"
#include "fracstoch/errors.hpp"
#include "fracstoch/kernels.hpp"
#include "fracstoch/philox.hpp"

namespace fracstoch {

void validate_order(double alpha, bool allow_classical) {
  if (alpha == 1.0 && allow_classical) return;
  if (!(alpha > 0.5 && alpha < 1.0)) {
    std::ostringstream os;
    os << "fractional order " << alpha << " outside (1/2, 1)";
    if (alpha == 1.0) os << "; alpha = 1 needs the classical validation mode";
    throw ConfigError(os.str());
  }
}

void validate(const SfdeParams& params, bool allow_classical) {
  validate_order(params.alpha, allow_classical);
  if (!std::isfinite(params.a) || !std::isfinite(params.b_noise) || !std::isfinite(params.eta))
    throw ConfigError("equation coefficients must be finite");
}

NoisePath brownian_increments(const TimeGrid& grid, std::uint64_t seed, std::uint64_t path_id) {
  NoisePath out{grid, Eigen::VectorXd(grid.n_steps()), seed, path_id};
  const double scale = std::sqrt(grid.delta());
  for (Eigen::Index k = 0; k < grid.n_steps(); k += 2) {
    const auto [z0, z1] = philox_normal_pair(seed, path_id, static_cast<std::uint32_t>(k / 2));
    out.increments[k] = scale * z0;
    if (k + 1 < grid.n_steps()) out.increments[k + 1] = scale * z1;
  }
  return out;
}

PathKernel PathKernel::build(double alpha, double a, const TimeGrid& grid, KernelWeight weight) {
  const Eigen::Index n_steps = grid.n_steps();
  PathKernel k{grid, alpha, a, decay_curve(alpha, a, grid), Eigen::VectorXd(n_steps),
               Eigen::VectorXd(n_steps)};
  const Eigen::VectorXd drift = primitive_differences(alpha, a, grid);
  const Eigen::VectorXd noise = weight == KernelWeight::subinterval_mean
                                    ? Eigen::VectorXd(drift / grid.delta())
                                    : left_point_kernel(alpha, a, grid);
  for (Eigen::Index m = 1; m <= n_steps; ++m) {
    k.drift_rev[n_steps - m] = drift[m];
    k.noise_rev[n_steps - m] = noise[m];
  }
  return k;
}

namespace {

// Left-point variation-of-constants recursion; x_n only reads cells k < n.
template <bool kHasDrift, typename DriftFn, typename DiffusionFn>
SampledFunction run_scheme(const PathKernel& kernel, DriftFn&& drift, DiffusionFn&& diffusion,
                           double eta, const NoisePath& noise) {
  require_same_grid(kernel.grid, noise.grid, "path simulation");
  const TimeGrid& grid = kernel.grid;
  const Eigen::Index n_steps = grid.n_steps();
  Eigen::VectorXd x(n_steps + 1);
  Eigen::VectorXd drift_terms(n_steps);
  Eigen::VectorXd noise_terms(n_steps);
  const double* drift_w = kernel.drift_rev.data();
  const double* noise_w = kernel.noise_rev.data();

  for (Eigen::Index n = 0; n <= n_steps; ++n) {
    double value = kernel.decay[n] * eta;
    if (n > 0) {
      if constexpr (kHasDrift)
        value += detail::lagged_dot(drift_w + (n_steps - n), drift_terms.data(), n);
      value += detail::lagged_dot(noise_w + (n_steps - n), noise_terms.data(), n);
    }
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "path " << noise.path_id << " became non-finite at node " << n << " (t = "
         << grid.node(n) << ")";
      throw NonFiniteError(os.str());
    }
    x[n] = value;
    if (n == n_steps) break;
    const double t = grid.node(n);
    if constexpr (kHasDrift) drift_terms[n] = drift(t, value);
    noise_terms[n] = diffusion(t, value) * noise.increments[n];
  }
  return {grid, std::move(x)};
}

}  // namespace

SampledFunction simulate_linear_path(const PathKernel& kernel, double b_noise, double eta,
                                     const NoisePath& noise) {
  return run_scheme<false>(
      kernel, [](double, double) { return 0.0; },
      [b_noise](double, double x) { return b_noise * x; }, eta, noise);
}

SampledFunction simulate_linear_path(const SfdeParams& params, const NoisePath& noise,
                                     const SimulationOptions& opts) {
  validate(params, opts.allow_classical);
  const PathKernel kernel = PathKernel::build(params.alpha, params.a, noise.grid, opts.weight);
  return simulate_linear_path(kernel, params.b_noise, params.eta, noise);
}

SampledFunction simulate_nonlinear_path(const PathKernel& kernel, const StateFunction& drift,
                                        const StateFunction& diffusion, double eta,
                                        const NoisePath& noise) {
  return run_scheme<true>(kernel, drift, diffusion, eta, noise);
}

SampledFunction simulate_nonlinear_path(double alpha, double a, const StateFunction& drift,
                                        const StateFunction& diffusion, double eta,
                                        const NoisePath& noise, const SimulationOptions& opts) {
  validate({alpha, a, 0.0, eta}, opts.allow_classical);
  const PathKernel kernel = PathKernel::build(alpha, a, noise.grid, opts.weight);
  return simulate_nonlinear_path(kernel, drift, diffusion, eta, noise);
}

std::pair<SampledFunction, SampledFunction> linear_inhomogeneous_moments(
    double alpha, double a, const SampledFunction& b_of_t, const SampledFunction& sigma_of_t,
    double eta, bool allow_classical) {
  validate({alpha, a, 0.0, eta}, allow_classical);
  require_same_grid(b_of_t.grid, sigma_of_t.grid, "linear_inhomogeneous_moments");
  const TimeGrid& grid = b_of_t.grid;
  const Eigen::Index n_steps = grid.n_steps();
  const Eigen::VectorXd decay = decay_curve(alpha, a, grid);
  const Eigen::VectorXd drift = primitive_differences(alpha, a, grid);
  const Eigen::VectorXd squared = squared_kernel_weights(alpha, a, grid);
  const Eigen::VectorXd sigma_sq = sigma_of_t.values.array().square();

  Eigen::VectorXd mean(n_steps + 1);
  Eigen::VectorXd variance(n_steps + 1);
  for (Eigen::Index n = 0; n <= n_steps; ++n) {
    double m = decay[n] * eta;
    double v = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      m += drift[n - k] * b_of_t.values[k];
      v += squared[n - k] * sigma_sq[k];
    }
    mean[n] = m;
    variance[n] = v;
  }
  return {SampledFunction{grid, std::move(mean)}, SampledFunction{grid, std::move(variance)}};
}

PathEnsembleStats estimate_mean_square(const SfdeParams& params, const TimeGrid& grid,
                                       std::uint64_t n_paths, std::uint64_t seed,
                                       const SimulationOptions& opts) {
  validate(params, opts.allow_classical);
  if (n_paths < 2) throw ConfigError("estimate_mean_square needs at least two paths");
  const PathKernel kernel = PathKernel::build(params.alpha, params.a, grid, opts.weight);
  const EnsembleMoments m =
      run_ensemble(n_paths, grid.size(), opts.threads, [&](std::uint64_t p, Eigen::VectorXd& out) {
        const NoisePath noise = brownian_increments(grid, seed, p);
        const SampledFunction x = simulate_linear_path(kernel, params.b_noise, params.eta, noise);
        out = x.values.array().square();
      });
  return {grid, m.mean, m.std_error, m.n_paths};
}

}  // namespace fracstoch
