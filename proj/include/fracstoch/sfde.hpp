#ifndef FRACSTOCH_SFDE_HPP
#define FRACSTOCH_SFDE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>

#include "fracstoch/grid.hpp"

namespace fracstoch {

/// Scalar equation  D^alpha x = a x + b x dW/dt,  x(0) = eta  (Caputo derivative).
struct SfdeParams {
  double alpha;
  double a;
  double b_noise;
  double eta;
};

/// alpha must lie in (1/2, 1); alpha = 1 passes only when `allow_classical` is set.
void validate(const SfdeParams& params, bool allow_classical = false);
void validate_order(double alpha, bool allow_classical);

struct NoisePath {
  TimeGrid grid;
  Eigen::VectorXd increments;  // dW_k over [t_k, t_{k+1}], k = 0..N-1
  std::uint64_t seed = 0;
  std::uint64_t path_id = 0;
};

/// Gaussian increments with variance delta drawn from the Philox stream keyed
/// by (seed, path_id). Regeneration is bit-identical.
NoisePath brownian_increments(const TimeGrid& grid, std::uint64_t seed, std::uint64_t path_id);

enum class KernelWeight {
  subinterval_mean,  // (G(t_n - t_k) - G(t_n - t_{k+1})) / delta
  left_point,        // kernel evaluated at t_n - t_k
};

struct SimulationOptions {
  KernelWeight weight = KernelWeight::subinterval_mean;
  bool allow_classical = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Precomputed weights of the variation-of-constants scheme for fixed
/// (alpha, a, grid); shared across all paths of an ensemble.
struct PathKernel {
  TimeGrid grid;
  double alpha;
  double a;
  Eigen::VectorXd decay;        // E_alpha(a t_n^alpha)
  Eigen::VectorXd drift_rev;    // drift_rev[N - m] = D_m
  Eigen::VectorXd noise_rev;    // noise_rev[N - m] = stochastic weight for lag m

  static PathKernel build(double alpha, double a, const TimeGrid& grid,
                          KernelWeight weight = KernelWeight::subinterval_mean);
};

/// x_n = E_alpha(a t_n^alpha) eta + b sum_{k<n} K_{n-k} x_k dW_k.
SampledFunction simulate_linear_path(const SfdeParams& params, const NoisePath& noise,
                                     const SimulationOptions& opts = {});
SampledFunction simulate_linear_path(const PathKernel& kernel, double b_noise, double eta,
                                     const NoisePath& noise);

using StateFunction = std::function<double(double t, double x)>;

/// Variation-of-constants scheme with drift and diffusion frozen at the left
/// end of each cell. Throws NonFiniteError naming the first bad node.
SampledFunction simulate_nonlinear_path(double alpha, double a, const StateFunction& drift,
                                        const StateFunction& diffusion, double eta,
                                        const NoisePath& noise, const SimulationOptions& opts = {});
SampledFunction simulate_nonlinear_path(const PathKernel& kernel, const StateFunction& drift,
                                        const StateFunction& diffusion, double eta,
                                        const NoisePath& noise);

/// Mean and variance of the linear equation with time-only forcing b(t) and
/// noise intensity sigma(t); both samples must live on the same grid.
std::pair<SampledFunction, SampledFunction> linear_inhomogeneous_moments(
    double alpha, double a, const SampledFunction& b_of_t, const SampledFunction& sigma_of_t,
    double eta, bool allow_classical = false);

struct PathEnsembleStats {
  TimeGrid grid;
  Eigen::VectorXd mean_square;
  Eigen::VectorXd std_error;
  std::uint64_t n_paths;
};

/// Sample mean of x(t_n)^2 over paths 0..n_paths-1 and its standard error.
/// Independent of the thread count bit for bit.
PathEnsembleStats estimate_mean_square(const SfdeParams& params, const TimeGrid& grid,
                                       std::uint64_t n_paths, std::uint64_t seed,
                                       const SimulationOptions& opts = {});

}  // namespace fracstoch

#endif  // FRACSTOCH_SFDE_HPP
