#ifndef FRACSTOCH_SPDE_HPP
#define FRACSTOCH_SPDE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "fracstoch/grid.hpp"
#include "fracstoch/moment.hpp"
#include "fracstoch/sfde.hpp"

namespace fracstoch {

enum class SpectrumSource { analytic_laplacian, finite_difference, user_supplied };

/// Eigenpairs of a symmetric uniformly elliptic operator on (0, L) with
/// Dirichlet ends. Eigenvalues are increasing and positive.
struct Spectrum {
  SpectrumSource source = SpectrumSource::user_supplied;
  Eigen::VectorXd eigenvalues;
  double domain_length = 1.0;
  std::optional<SpaceGrid> grid;  // finite_difference only
  Eigen::MatrixXd nodal_basis;    // finite_difference: e_j at every grid node (ends are 0)
  double min_p = 1.0;             // ellipticity constant seen on the grid
  double min_q = 0.0;

  Eigen::Index size() const { return eigenvalues.size(); }

  /// Columns e_1..e_n at the nodes of `space`. Analytic spectra evaluate the
  /// sines; finite-difference spectra require their own grid.
  Eigen::MatrixXd basis_on(const SpaceGrid& space, Eigen::Index n_modes) const;
};

/// lambda_j = (j pi / L)^2, e_j = sqrt(2/L) sin(j pi x / L).
Spectrum laplacian_1d_spectrum(double length, Eigen::Index n_modes);

/// Lowest eigenpairs of -(p u')' + q u with u(0) = u(L) = 0, three-point
/// finite differences with p taken at cell midpoints. Eigenvectors are
/// normalized in the grid inner product h * sum_i u_i v_i.
Spectrum sturm_liouville_spectrum(const SampledFunction& p_values, const SampledFunction& q_values,
                                  Eigen::Index n_modes);

/// Spectrum given only by its eigenvalues (no basis); enough for moment
/// assembly and stability, not for projection or snapshots.
Spectrum spectrum_from_eigenvalues(Eigen::VectorXd eigenvalues, double domain_length = 1.0);

/// f_j = <f, e_j> by the trapezoid rule on the grid of `f`.
Eigen::VectorXd project_initial_data(const SampledFunction& f, const Spectrum& spectrum,
                                     Eigen::Index n_modes);

/// D^alpha u = -L u + beta u + gamma u dW/dt on the first n_modes modes.
struct SpdeConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  Spectrum spectrum;
  Eigen::Index n_modes = 0;
  Eigen::VectorXd f_coeffs;
  bool allow_classical = false;
};

void validate(const SpdeConfig& config);

struct FieldMeanSquare {
  TimeGrid grid;
  Eigen::VectorXd total;     // E ||u(t)||^2
  Eigen::MatrixXd per_mode;  // row j: E y_j(t)^2
  double truncation_indicator = 0.0;  // last-mode share at the final node; a heuristic
};

FieldMeanSquare spde_mean_square(const SpdeConfig& config, const TimeGrid& grid);

struct FieldSnapshot {
  double t;
  Eigen::VectorXd u;  // at the nodes of SpdeSamples::space
};

struct SpdeSamples {
  PathEnsembleStats norm_squared;  // statistics of ||u(t)||^2
  std::optional<SpaceGrid> space;
  std::vector<FieldSnapshot> snapshots;  // path 0
};

struct SpdeSampleOptions {
  KernelWeight weight = KernelWeight::subinterval_mean;
  unsigned threads = 0;
  Eigen::Index space_cells = 200;  // snapshot grid for analytic spectra
};

/// All modes of one path share a single scalar Brownian path.
SpdeSamples spde_sample_paths(const SpdeConfig& config, const TimeGrid& grid,
                              std::uint64_t n_paths, std::uint64_t seed,
                              const std::vector<double>& snapshot_times,
                              const SpdeSampleOptions& opts = {});

/// Stability index of the first mode, a = -(lambda_1 - beta), b = gamma.
StabilityReport spde_stability(const SpdeConfig& config, const StabilityOptions& opts = {});

}  // namespace fracstoch

#endif  // FRACSTOCH_SPDE_HPP
