#include "fracstoch/spde.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracstoch/ensemble.hpp"
#include "fracstoch/errors.hpp"

namespace fracstoch {

namespace {

// Shifted symmetric tridiagonal solve (T - shift I) x = b with partial
// pivoting, as in LAPACK gttrf/gttrs. A zero pivot is nudged, which is what
// inverse iteration wants at an exact eigenvalue.
class ShiftedTridiagonal {
 public:
  ShiftedTridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double shift)
      : d_(diag.array() - shift), dl_(off), du_(off), du2_(Eigen::VectorXd::Zero(off.size())),
        swapped_(off.size(), false) {
    const Eigen::Index n = d_.size();
    const double tiny = std::numeric_limits<double>::epsilon() *
                        std::max(diag.cwiseAbs().maxCoeff(), off.size() ? off.cwiseAbs().maxCoeff() : 0.0);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    if (d_[n - 1] == 0.0) d_[n - 1] = tiny;
  }

  void solve(Eigen::VectorXd& b) const {
    const Eigen::Index n = d_.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl_[i] * b[i];
    }
    b[n - 1] /= d_[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (Eigen::Index i = n - 3; i >= 0; --i)
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  }

 private:
  Eigen::VectorXd d_, dl_, du_, du2_;
  std::vector<bool> swapped_;
};

void check_mode_count(Eigen::Index n_modes, Eigen::Index available) {
  if (n_modes < 1 || n_modes > available) {
    std::ostringstream os;
    os << "requested " << n_modes << " modes, spectrum has " << available;
    throw ConfigError(os.str());
  }
}

}  // namespace

Eigen::MatrixXd Spectrum::basis_on(const SpaceGrid& space, Eigen::Index n_modes) const {
  check_mode_count(n_modes, size());
  switch (source) {
    case SpectrumSource::analytic_laplacian: {
      if (std::fabs(space.length() - domain_length) > 1e-12 * domain_length)
        throw GridMismatchError("space grid does not span the spectrum's domain");
      Eigen::MatrixXd out(space.size(), n_modes);
      const double scale = std::sqrt(2.0 / domain_length);
      for (Eigen::Index j = 0; j < n_modes; ++j)
        for (Eigen::Index i = 0; i < space.size(); ++i)
          out(i, j) = scale * std::sin(static_cast<double>(j + 1) * std::numbers::pi *
                                       (static_cast<double>(i) / static_cast<double>(space.n_steps())));
      return out;
    }
    case SpectrumSource::finite_difference:
      require_same_grid(*grid, space, "finite-difference basis");
      return nodal_basis.leftCols(n_modes);
    case SpectrumSource::user_supplied:
      break;
  }
  throw ConfigError("spectrum given by eigenvalues only has no basis functions");
}

Spectrum laplacian_1d_spectrum(double length, Eigen::Index n_modes) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("domain length must be positive");
  if (n_modes < 1) throw ConfigError("need at least one mode");
  Spectrum s;
  s.source = SpectrumSource::analytic_laplacian;
  s.domain_length = length;
  s.eigenvalues.resize(n_modes);
  for (Eigen::Index j = 0; j < n_modes; ++j) {
    const double k = static_cast<double>(j + 1) * std::numbers::pi / length;
    s.eigenvalues[j] = k * k;
  }
  return s;
}

Spectrum sturm_liouville_spectrum(const SampledFunction& p_values, const SampledFunction& q_values,
                                  Eigen::Index n_modes) {
  require_same_grid(p_values.grid, q_values.grid, "sturm_liouville_spectrum");
  const SpaceGrid& grid = p_values.grid;
  const Eigen::Index interior = grid.n_steps() - 1;
  if (interior < 2) throw ConfigError("space grid needs at least two interior nodes");
  check_mode_count(n_modes, interior);

  const double min_p = p_values.values.minCoeff();
  const double min_q = q_values.values.minCoeff();
  if (!(min_p > 0.0)) {
    std::ostringstream os;
    os << "p must be positive on the grid, min p = " << min_p;
    throw EllipticityError(os.str());
  }
  if (min_q < 0.0) {
    std::ostringstream os;
    os << "q must be non-negative on the grid, min q = " << min_q;
    throw SignError(os.str());
  }
  if (!p_values.values.allFinite() || !q_values.values.allFinite())
    throw ConfigError("coefficient samples must be finite");

  const double h = grid.delta();
  const double inv_h2 = 1.0 / (h * h);
  const Eigen::VectorXd& p = p_values.values;
  // interior node i (1..M-1) is row i-1
  Eigen::VectorXd diag(interior), off(interior - 1);
  for (Eigen::Index i = 1; i <= interior; ++i) {
    const double left = 0.5 * (p[i - 1] + p[i]);
    const double right = 0.5 * (p[i] + p[i + 1]);
    diag[i - 1] = (left + right) * inv_h2 + q_values.values[i];
    if (i < interior) off[i - 1] = -right * inv_h2;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConfigError("tridiagonal eigensolver did not converge");

  Spectrum s;
  s.source = SpectrumSource::finite_difference;
  s.domain_length = grid.length();
  s.grid = grid;
  s.min_p = min_p;
  s.min_q = min_q;
  s.eigenvalues = solver.eigenvalues().head(n_modes);
  s.nodal_basis = Eigen::MatrixXd::Zero(grid.size(), n_modes);

  // Eigenvectors by inverse iteration at the computed eigenvalues.
  for (Eigen::Index j = 0; j < n_modes; ++j) {
    const ShiftedTridiagonal lu(diag, off, s.eigenvalues[j]);
    Eigen::VectorXd v(interior);
    for (Eigen::Index i = 0; i < interior; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + 1));
    for (int iter = 0; iter < 4; ++iter) {
      lu.solve(v);
      for (Eigen::Index k = 0; k < j; ++k) {
        const auto prev = s.nodal_basis.col(k).segment(1, interior);
        v -= (h * prev.dot(v)) * prev;
      }
      v /= std::sqrt(h * v.squaredNorm());
    }
    if (v[0] < 0.0) v = -v;
    s.nodal_basis.col(j).segment(1, interior) = v;
  }
  return s;
}

Spectrum spectrum_from_eigenvalues(Eigen::VectorXd eigenvalues, double domain_length) {
  if (eigenvalues.size() < 1) throw ConfigError("need at least one eigenvalue");
  if (!eigenvalues.allFinite()) throw ConfigError("eigenvalues must be finite");
  if (!(eigenvalues[0] > 0.0)) throw EllipticityError("first eigenvalue must be positive");
  for (Eigen::Index j = 1; j < eigenvalues.size(); ++j)
    if (eigenvalues[j] < eigenvalues[j - 1]) throw ConfigError("eigenvalues must be non-decreasing");
  Spectrum s;
  s.source = SpectrumSource::user_supplied;
  s.eigenvalues = std::move(eigenvalues);
  s.domain_length = domain_length;
  return s;
}

Eigen::VectorXd project_initial_data(const SampledFunction& f, const Spectrum& spectrum,
                                     Eigen::Index n_modes) {
  const Eigen::MatrixXd basis = spectrum.basis_on(f.grid, n_modes);
  Eigen::VectorXd weighted = f.values * f.grid.delta();
  weighted[0] *= 0.5;
  weighted[weighted.size() - 1] *= 0.5;
  return basis.transpose() * weighted;
}

void validate(const SpdeConfig& config) {
  validate_order(config.alpha, config.allow_classical);
  if (!std::isfinite(config.beta) || !std::isfinite(config.gamma))
    throw ConfigError("beta and gamma must be finite");
  check_mode_count(config.n_modes, config.spectrum.size());
  if (config.f_coeffs.size() != config.n_modes)
    throw ConfigError("initial coefficients must have one entry per mode");
  if (!config.f_coeffs.allFinite()) throw ConfigError("initial coefficients must be finite");
  if (!(config.beta < config.spectrum.eigenvalues[0])) {
    std::ostringstream os;
    os.precision(17);
    os << "beta = " << config.beta << " must lie below lambda_1 = " << config.spectrum.eigenvalues[0];
    throw DomainError(os.str());
  }
}

FieldMeanSquare spde_mean_square(const SpdeConfig& config, const TimeGrid& grid) {
  validate(config);
  FieldMeanSquare out{grid, Eigen::VectorXd::Zero(grid.size()),
                      Eigen::MatrixXd::Zero(config.n_modes, grid.size()), 0.0};
  for (Eigen::Index j = 0; j < config.n_modes; ++j) {
    const double fj = config.f_coeffs[j];
    if (fj == 0.0) continue;  // linear homogeneous: the mode stays identically zero
    const double a = -(config.spectrum.eigenvalues[j] - config.beta);
    out.per_mode.row(j) =
        moment_curve(config.alpha, a, config.gamma, fj * fj, grid, config.allow_classical).y.transpose();
  }
  for (Eigen::Index n = 0; n < grid.size(); ++n) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < config.n_modes; ++j) s += out.per_mode(j, n);
    out.total[n] = s;
  }
  const double last_total = out.total[grid.n_steps()];
  if (last_total > 0.0)
    out.truncation_indicator = out.per_mode(config.n_modes - 1, grid.n_steps()) / last_total;
  return out;
}

SpdeSamples spde_sample_paths(const SpdeConfig& config, const TimeGrid& grid,
                              std::uint64_t n_paths, std::uint64_t seed,
                              const std::vector<double>& snapshot_times,
                              const SpdeSampleOptions& opts) {
  validate(config);
  if (n_paths < 2) throw ConfigError("need at least two paths");

  std::vector<Eigen::Index> snapshot_nodes;
  for (double t : snapshot_times) {
    const double k = t / grid.delta();
    const double nearest = std::nearbyint(k);
    if (!(nearest >= 0.0 && nearest <= static_cast<double>(grid.n_steps())) ||
        std::fabs(k - nearest) > 1e-9 * std::max(1.0, k)) {
      std::ostringstream os;
      os.precision(17);
      os << "snapshot time " << t << " is not a grid node";
      throw ConfigError(os.str());
    }
    snapshot_nodes.push_back(static_cast<Eigen::Index>(nearest));
  }

  std::vector<Eigen::Index> active;
  std::vector<PathKernel> kernels;
  for (Eigen::Index j = 0; j < config.n_modes; ++j) {
    if (config.f_coeffs[j] == 0.0) continue;
    active.push_back(j);
    kernels.push_back(PathKernel::build(config.alpha, -(config.spectrum.eigenvalues[j] - config.beta),
                                        grid, opts.weight));
  }

  auto simulate_modes = [&](std::uint64_t path_id) {
    const NoisePath noise = brownian_increments(grid, seed, path_id);
    Eigen::MatrixXd modes = Eigen::MatrixXd::Zero(config.n_modes, grid.size());
    for (std::size_t m = 0; m < active.size(); ++m) {
      const Eigen::Index j = active[m];
      modes.row(j) =
          simulate_linear_path(kernels[m], config.gamma, config.f_coeffs[j], noise).values.transpose();
    }
    return modes;
  };

  const EnsembleMoments stats =
      run_ensemble(n_paths, grid.size(), opts.threads, [&](std::uint64_t p, Eigen::VectorXd& out) {
        const Eigen::MatrixXd modes = simulate_modes(p);
        for (Eigen::Index n = 0; n < grid.size(); ++n) {
          double s = 0.0;
          for (Eigen::Index j = 0; j < config.n_modes; ++j) s += modes(j, n) * modes(j, n);
          out[n] = s;
        }
      });

  SpdeSamples result{{grid, stats.mean, stats.std_error, stats.n_paths}, std::nullopt, {}};
  if (snapshot_nodes.empty()) return result;

  SpaceGrid space = config.spectrum.grid ? *config.spectrum.grid
                                         : SpaceGrid(config.spectrum.domain_length, opts.space_cells);
  const Eigen::MatrixXd basis = config.spectrum.basis_on(space, config.n_modes);
  const Eigen::MatrixXd modes = simulate_modes(0);
  result.space = space;
  for (std::size_t i = 0; i < snapshot_nodes.size(); ++i)
    result.snapshots.push_back({snapshot_times[i], basis * modes.col(snapshot_nodes[i])});
  return result;
}

StabilityReport spde_stability(const SpdeConfig& config, const StabilityOptions& opts) {
  validate(config);
  StabilityOptions o = opts;
  o.allow_classical = o.allow_classical || config.allow_classical;
  return stability_index(config.alpha, -(config.spectrum.eigenvalues[0] - config.beta), config.gamma, o);
}

}  // namespace fracstoch
