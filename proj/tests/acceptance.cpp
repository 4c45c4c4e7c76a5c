// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fracstoch/cli.hpp"
#include "fracstoch/frac_calc.hpp"
#include "fracstoch/kernels.hpp"
#include "fracstoch/moment.hpp"
#include "fracstoch/sfde.hpp"
#include "fracstoch/special_functions.hpp"
#include "fracstoch/spde.hpp"

using namespace fracstoch;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Mittag-Leffler identities
Outcome ml_identities() {
  double worst = 0.0;
  for (double x : {-5.0, -1.0, 0.5, 1.0, 5.0}) {
    const double e = std::exp(x);
    const double c = x >= 0 ? std::cosh(std::sqrt(x)) : std::cos(std::sqrt(-x));
    worst = std::max(worst, std::fabs(ml_value({1, 1}, x) - e) / std::fabs(e));
    worst = std::max(worst, std::fabs(ml_value({1, 2}, x) - std::expm1(x) / x) / std::fabs(std::expm1(x) / x));
    worst = std::max(worst, std::fabs(ml_value({2, 1}, x) - c) / std::fabs(c));
  }
  return {worst <= 1e-10, "max relative error " + fmt("%.3g", worst)};
}

// 2. Classical stability boundary
Outcome classical_boundary() {
  StabilityOptions o;
  o.allow_classical = true;
  double worst = 0.0;
  for (double a : {-0.5, -1.0, -2.0, -4.0}) {
    const StabilityReport base = stability_index(1.0, a, 1.0, o);
    for (double b : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      const StabilityReport r = with_noise(base, b);
      const double want = -b * b / (2.0 * a);
      worst = std::max(worst, std::fabs(r.kappa - want) / want);
    }
  }
  const double crit = stability_index(1.0, -1.0, std::sqrt(2.0), o).critical_b;
  const double crit_err = std::fabs(crit - std::sqrt(2.0)) / std::sqrt(2.0);
  return {worst <= 1e-6 && crit_err <= 1e-6,
          "kappa rel err " + fmt("%.3g", worst) + ", critical_b(-1) rel err " + fmt("%.3g", crit_err)};
}

// 3. b = 0 exactness and convergence under halving
Outcome moment_exactness() {
  double worst = 0.0;
  for (double alpha : {0.6, 0.8}) {
    for (double a : {-1.0, -3.0}) {
      const TimeGrid g(5.0, 2048);
      const Eigen::VectorXd y = moment_curve(alpha, a, 0.0, 1.0, g).y;
      const Eigen::VectorXd d = decay_curve(alpha, a, g);
      for (Eigen::Index n = 0; n <= 2048; ++n)
        worst = std::max(worst, std::fabs(y[n] - d[n] * d[n]) / (d[n] * d[n]));
    }
  }
  // At b = 0 the error is rounding only, so the halving ratio is measured on a noisy curve.
  auto solve = [](Eigen::Index n) { return moment_curve(0.8, -1.0, 0.5, 1.0, TimeGrid(5.0, n)).y; };
  const Eigen::VectorXd y1 = solve(1024), y2 = solve(2048), y4 = solve(4096);
  double d1 = 0.0, d2 = 0.0;
  for (Eigen::Index n = 0; n <= 1024; ++n) {
    d1 = std::max(d1, std::fabs(y1[n] - y2[2 * n]));
    d2 = std::max(d2, std::fabs(y2[2 * n] - y4[4 * n]));
  }
  return {worst <= 1e-3 && d1 / d2 >= 1.3,
          "b=0 max rel deviation " + fmt("%.3g", worst) + ", halving ratio at b=0.5 " + fmt("%.3f", d1 / d2)};
}

// 4. Monte Carlo against the Volterra curve
Outcome monte_carlo_oracle() {
  const SfdeParams p{0.8, -1.0, 0.5, 1.0};
  const TimeGrid g(5.0, 512);
  const PathEnsembleStats mc = estimate_mean_square(p, g, 10000, 20240501);
  const Eigen::VectorXd y = moment_curve(p, g).y;
  double worst = 0.0;
  for (Eigen::Index n = 16; n <= 512; n += 16)
    worst = std::max(worst, std::fabs(mc.mean_square[n] - y[n]) / mc.std_error[n]);
  return {worst <= 3.0, "max |MC - Volterra| / SE " + fmt("%.3f", worst)};
}

// 5. Decay probe on [0, 200]
Outcome decay_probe_check() {
  const MomentCurve c = moment_curve(SfdeParams{0.8, -1.0, 0.5, 1.0}, TimeGrid(200.0, 8192));
  const DecayProbe p = decay_probe(c, 0.5);
  return {p.interior_max && p.tail_ratio < 0.9,
          "argmax t " + fmt("%.4g", p.argmax_t) + ", value at T / sup " + fmt("%.3g", p.tail_ratio)};
}

// 6. Non-decay at 1.2x the critical noise
Outcome non_decay() {
  const double crit = critical_gamma(0.8, kPi * kPi, 1.0);
  const double gamma = 1.2 * crit;
  const MomentCurve c = moment_curve(0.8, -(kPi * kPi - 1.0), gamma, 1.0, TimeGrid(100.0, 4096));
  const TailMinima m = tail_minima(c);
  // the curve grows exponentially and leaves the double range; inf compares correctly
  return {m.non_decaying(), "critical gamma " + fmt("%.9f", crit) + ", min[T/4,T/2] " +
                                fmt("%.3g", m.quarter_to_half) + ", min[T/2,T] " + fmt("%.3g", m.half_to_end)};
}

// 7. SPDE single-mode equivalence and gamma = 0 assembly
Outcome spde_equivalence() {
  const TimeGrid g(5.0, 1024);
  SpdeConfig c;
  c.alpha = 0.8;
  c.beta = 1.0;
  c.gamma = 2.0;
  c.n_modes = 8;
  c.spectrum = laplacian_1d_spectrum(1.0, 8);
  c.f_coeffs = Eigen::VectorXd::Zero(8);
  c.f_coeffs[0] = 1.0;
  const Eigen::VectorXd scalar = moment_curve(0.8, -(kPi * kPi - 1.0), 2.0, 1.0, g).y;
  const double single = (spde_mean_square(c, g).total - scalar).cwiseAbs().maxCoeff();

  c.gamma = 0.0;
  for (Eigen::Index j = 0; j < 8; ++j) c.f_coeffs[j] = 1.0 / (j + 1);
  const Eigen::VectorXd total = spde_mean_square(c, g).total;
  double free_err = 0.0;
  for (Eigen::Index n = 0; n <= 1024; ++n) {
    double want = 0.0;
    for (Eigen::Index j = 0; j < 8; ++j) {
      const double e = ml_value({0.8, 1.0}, -(c.spectrum.eigenvalues[j] - 1.0) * std::pow(g.node(n), 0.8));
      want += e * e * c.f_coeffs[j] * c.f_coeffs[j];
    }
    free_err = std::max(free_err, std::fabs(total[n] - want));
  }
  return {single <= 1e-12 && free_err <= 1e-10,
          "single-mode max diff " + fmt("%.3g", single) + ", gamma=0 max diff " + fmt("%.3g", free_err)};
}

// 8. Sturm-Liouville finite-difference spectrum
Outcome sturm_liouville() {
  auto errors = [](Eigen::Index interior) {
    const SpaceGrid g(1.0, interior + 1);
    const Spectrum s = sturm_liouville_spectrum(SampledFunction::sample(g, [](double) { return 1.0; }),
                                                SampledFunction::sample(g, [](double) { return 0.0; }), 5);
    Eigen::VectorXd e(5);
    for (Eigen::Index j = 0; j < 5; ++j) {
      const double exact = std::pow((j + 1) * kPi, 2);
      e[j] = std::fabs(s.eigenvalues[j] - exact) / exact;
    }
    return e;
  };
  const Eigen::VectorXd coarse = errors(2000), fine = errors(4001);  // 2001 -> 4002 cells
  const double min_ratio = (coarse.array() / fine.array()).minCoeff();
  return {coarse.maxCoeff() <= 1e-3 && min_ratio >= 3.0,
          "max rel err " + fmt("%.3g", coarse.maxCoeff()) + ", min doubling ratio " + fmt("%.3f", min_ratio)};
}

// 9. Caputo L1 residual of the deterministic solution
Outcome caputo_residual() {
  const double alpha = 0.8, a = -1.0, t_max = 2.0;
  std::vector<double> res;
  for (Eigen::Index n : {128, 256, 512, 1024}) {
    const TimeGrid g(t_max, n);
    const Eigen::VectorXd x = decay_curve(alpha, a, g);
    const Eigen::VectorXd d = caputo_l1(alpha, g, x);
    double r = 0.0;
    for (Eigen::Index k = n / 4; k <= n; ++k) r = std::max(r, std::fabs(d[k] - a * x[k]));
    res.push_back(r);
  }
  double min_ratio = 1e300;
  for (std::size_t i = 1; i < res.size(); ++i) min_ratio = std::min(min_ratio, res[i - 1] / res[i]);
  return {min_ratio >= 1.3, "residual on [T/4,T] " + fmt("%.3g", res.front()) + " -> " + fmt("%.3g", res.back()) +
                                ", min ratio " + fmt("%.3f", min_ratio)};
}

// 10. Determinism of the stochastic subcommands
int cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"fracstoch"};
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

double max_column_diff(const std::string& a, const std::string& b, int column) {
  std::istringstream ia(a), ib(b);
  std::string la, lb;
  std::getline(ia, la);
  std::getline(ib, lb);
  double worst = 0.0;
  while (std::getline(ia, la) && std::getline(ib, lb)) {
    auto cell = [column](const std::string& line) {
      std::istringstream ls(line);
      std::string c;
      for (int i = 0; i <= column; ++i) std::getline(ls, c, ',');
      return std::stod(c);
    };
    worst = std::max(worst, std::fabs(cell(la) - cell(lb)));
  }
  return worst;
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "fracstoch_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto simulate = [&](const std::string& threads, const std::string& name) {
    return cli({"simulate", "--alpha", "0.8", "--a", "-1", "--b", "0.5", "--eta", "1", "--t-max", "5", "--steps",
                "256", "--paths", "2000", "--seed", "99", "--threads", threads, "--out", (dir / name).string()});
  };
  bool ok = simulate("1", "s1a.csv") == 0 && simulate("1", "s1b.csv") == 0 && simulate("8", "s8a.csv") == 0 &&
            simulate("8", "s8b.csv") == 0;

  std::ofstream(dir / "spde.json") << R"({"alpha": 0.8, "beta": 1.0, "gamma": 2.0, "n_modes": 6,
    "operator": {"type": "laplacian", "length": 1.0},
    "initial": {"type": "coefficients", "values": [1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125]},
    "time": {"t_max": 2.0, "steps": 128},
    "monte_carlo": {"paths": 1000, "seed": 5, "snapshots": [1.0]}})";
  auto spde = [&](const std::string& threads, const std::string& name) {
    return cli({"spde", "--config", (dir / "spde.json").string(), "--out-dir", (dir / name).string(), "--threads",
                threads});
  };
  ok = ok && spde("1", "p1a") == 0 && spde("1", "p1b") == 0 && spde("8", "p8a") == 0 && spde("8", "p8b") == 0;
  if (!ok) return {false, "a subcommand failed"};

  const std::string s1a = slurp(dir / "s1a.csv"), s8a = slurp(dir / "s8a.csv");
  const std::string p1a = slurp(dir / "p1a" / "monte_carlo.csv"), p8a = slurp(dir / "p8a" / "monte_carlo.csv");
  const bool same_bytes = s1a == slurp(dir / "s1b.csv") && s8a == slurp(dir / "s8b.csv") &&
                          p1a == slurp(dir / "p1b" / "monte_carlo.csv") &&
                          p8a == slurp(dir / "p8b" / "monte_carlo.csv") &&
                          slurp(dir / "p1a" / "snapshots.csv") == slurp(dir / "p1b" / "snapshots.csv");
  const double diff = std::max(max_column_diff(s1a, s8a, 1), max_column_diff(p1a, p8a, 1));
  fs::remove_all(dir);
  return {same_bytes && diff <= 1e-12,
          std::string("repeat runs byte-identical: ") + (same_bytes ? "yes" : "no") +
              ", max mean-square diff threads 1 vs 8 " + fmt("%.3g", diff)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0: no stated limit
  };
  const std::vector<Criterion> criteria{
      {"Mittag-Leffler identities", ml_identities, 1},
      {"classical stability boundary", classical_boundary, 1},
      {"moment solver at b=0", moment_exactness, 10},
      {"Monte Carlo vs Volterra", monte_carlo_oracle, 120},
      {"decay probe", decay_probe_check, 0},
      {"non-decay above critical noise", non_decay, 0},
      {"SPDE mode assembly", spde_equivalence, 0},
      {"Sturm-Liouville spectrum", sturm_liouville, 0},
      {"Caputo L1 residual", caputo_residual, 0},
      {"determinism", determinism, 0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_s > 0 && secs > criteria[i].budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", criteria[i].budget_s) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %-32s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
