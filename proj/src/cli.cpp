#include "fracstoch/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "fracstoch/errors.hpp"
#include "fracstoch/frac_calc.hpp"
#include "fracstoch/kernels.hpp"
#include "fracstoch/moment.hpp"
#include "fracstoch/sfde.hpp"
#include "fracstoch/spde.hpp"
#include "fracstoch/special_functions.hpp"

#ifndef FRACSTOCH_VERSION
#define FRACSTOCH_VERSION "unknown"
#endif

namespace fracstoch::cli {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw ConfigError("SHA-256 digest failed");
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  if (!f) throw ConfigError("write failed for " + path.string());
}

// Whitespace/comma separated numbers, '#' starts a comment line.
Eigen::VectorXd read_samples(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == ';') c = ' ';
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw ConfigError(path.string() + " line " + std::to_string(line_no) + ": bad number '" +
                          token + "'");
      values.push_back(v);
    }
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

struct Manifest {
  std::string subcommand;
  Json inputs;
  std::string extra;  // bytes of referenced input files
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;

  void write(const fs::path& path) const {
    Json doc;
    doc["subcommand"] = subcommand;
    doc["config_digest"] = sha256_hex(inputs.dump() + extra);
    doc["seed"] = seed;
    doc["tool_version"] = FRACSTOCH_VERSION;
    doc["outputs"] = outputs;
    doc["inputs"] = inputs;
    write_file(path, doc.dump(2) + "\n");
  }
};

Json report_json(const StabilityReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["a"] = r.a;
  j["b_noise"] = r.b_noise;
  j["kappa"] = r.kappa;
  j["integral_value"] = r.integral_value;
  j["tail_estimate"] = r.tail_estimate;
  j["truncation_point"] = r.truncation_point;
  j["quadrature_error"] = r.quadrature_error;
  j["critical_b"] = r.critical_b;
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

std::string curve_csv(const TimeGrid& grid, const std::vector<std::string>& header,
                      const std::vector<const Eigen::VectorXd*>& columns) {
  std::string s;
  s += "t";
  for (const auto& h : header) s += "," + h;
  s += "\n";
  for (Eigen::Index n = 0; n < grid.size(); ++n) {
    s += format_double(grid.node(n));
    for (const auto* c : columns) s += "," + format_double((*c)[n]);
    s += "\n";
  }
  return s;
}

// ---- ml ---------------------------------------------------------------------

struct MlArgs {
  double alpha = 0, beta = 0, x = 0;
};

int cmd_ml(const MlArgs& a, std::ostream& out, std::ostream& err) {
  const EvalResult r = mittag_leffler({a.alpha, a.beta}, a.x);
  out << "value " << shortest(r.value) << "\n"
      << "abs_error_bound " << shortest(r.abs_error_bound) << "\n"
      << "branch " << to_string(r.branch) << "\n";
  if (!meets_target(r)) {
    err << "AccuracyError: error bound " << r.abs_error_bound << " misses target " << kMlTarget << "\n";
    return kExitAccuracy;
  }
  return kExitOk;
}

// ---- stability --------------------------------------------------------------

struct StabilityArgs {
  double alpha = 0;
  std::optional<double> a, b, lambda1, beta, gamma;
  long cells = StabilityOptions{}.cells;
  bool allow_classical = false;
};

int cmd_stability(const StabilityArgs& s, std::ostream& out) {
  StabilityOptions opts;
  opts.cells = s.cells;
  opts.allow_classical = s.allow_classical;
  const bool scalar_form = s.a || s.b;
  const bool mode_form = s.lambda1 || s.beta || s.gamma;
  if (scalar_form == mode_form)
    throw ConfigError("give either --a and --b, or --lambda1, --beta and --gamma");
  Json j;
  if (scalar_form) {
    if (!s.a || !s.b) throw ConfigError("--a and --b are both required");
    j = report_json(stability_index(s.alpha, *s.a, *s.b, opts));
  } else {
    if (!s.lambda1 || !s.beta || !s.gamma)
      throw ConfigError("--lambda1, --beta and --gamma are all required");
    if (!(*s.beta < *s.lambda1)) throw DomainError("beta must lie below lambda1");
    const StabilityReport r = stability_index(s.alpha, -(*s.lambda1 - *s.beta), *s.gamma, opts);
    j = report_json(r);
    j["lambda1"] = *s.lambda1;
    j["beta"] = *s.beta;
    j["gamma"] = *s.gamma;
    j["critical_gamma"] = r.critical_b;
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ---- moment -----------------------------------------------------------------

struct MomentArgs {
  double alpha = 0, a = 0, b = 0, y0 = 0, t_max = 0;
  long steps = 0;
  std::string out;
  std::optional<double> probe_delta;
  bool allow_classical = false;
};

int cmd_moment(const MomentArgs& m, std::ostream& out, std::ostream& err) {
  const TimeGrid grid(m.t_max, m.steps);
  const MomentCurve curve = moment_curve(m.alpha, m.a, m.b, m.y0, grid, m.allow_classical);
  const std::string csv = curve_csv(grid, {"y"}, {&curve.y});
  Json inputs{{"alpha", m.alpha}, {"a", m.a},         {"b", m.b},
              {"y0", m.y0},       {"t_max", m.t_max}, {"steps", m.steps},
              {"allow_classical", m.allow_classical}};
  if (m.out.empty()) {
    out << csv;
  } else {
    write_file(m.out, csv);
    Manifest{"moment", inputs, "", 0, {m.out}}.write(m.out + ".manifest.json");
  }
  if (m.probe_delta) {
    const DecayProbe p = decay_probe(curve, *m.probe_delta);
    const TailMinima tm = tail_minima(curve);
    Json j;
    j["note"] = "finite-horizon evidence over the computed grid, not a proof of decay";
    j["delta"] = p.delta;
    j["sup_value"] = p.sup_value;
    j["argmax_t"] = p.argmax_t;
    j["tail_ratio"] = p.tail_ratio;
    j["interior_max"] = p.interior_max;
    j["min_quarter_to_half"] = tm.quarter_to_half;
    j["min_half_to_end"] = tm.half_to_end;
    j["running_minimum_non_decaying"] = tm.non_decaying();
    // the CSV owns stdout when no file is given
    (m.out.empty() ? err : out) << j.dump(2) << "\n";
  }
  return kExitOk;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  double alpha = 0, a = 0, b = 0, eta = 0, t_max = 0;
  long steps = 0;
  std::uint64_t paths = 0, seed = 0;
  unsigned threads = 0;
  std::string weight = "mean";
  std::string out;
  bool allow_classical = false;
};

int cmd_simulate(const SimulateArgs& s, std::ostream& out) {
  const TimeGrid grid(s.t_max, s.steps);
  SimulationOptions opts;
  opts.weight = s.weight == "left" ? KernelWeight::left_point : KernelWeight::subinterval_mean;
  opts.allow_classical = s.allow_classical;
  opts.threads = s.threads;
  const PathEnsembleStats stats =
      estimate_mean_square({s.alpha, s.a, s.b, s.eta}, grid, s.paths, s.seed, opts);
  const std::string csv = curve_csv(grid, {"mean_square", "std_error"}, {&stats.mean_square, &stats.std_error});
  // thread count is deliberately not an input: results do not depend on it
  Json inputs{{"alpha", s.alpha}, {"a", s.a},         {"b", s.b},         {"eta", s.eta},
              {"t_max", s.t_max}, {"steps", s.steps}, {"paths", s.paths}, {"seed", s.seed},
              {"weight", s.weight}, {"allow_classical", s.allow_classical}};
  if (s.out.empty()) {
    out << csv;
  } else {
    write_file(s.out, csv);
    Manifest{"simulate", inputs, "", s.seed, {s.out}}.write(s.out + ".manifest.json");
  }
  return kExitOk;
}

// ---- spde -------------------------------------------------------------------

class ConfigReader {
 public:
  ConfigReader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {}

  const Json& field(const char* name) const {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
    const auto it = j_.find(name);
    if (it == j_.end()) throw ConfigError(where_ + ": missing field '" + name + "'");
    return *it;
  }
  bool has(const char* name) const { return j_.is_object() && j_.contains(name); }
  double number(const char* name) const {
    const Json& v = field(name);
    if (!v.is_number()) throw ConfigError(where_ + "." + name + ": expected a number");
    return v.get<double>();
  }
  long integer(const char* name) const {
    const Json& v = field(name);
    if (!v.is_number_integer()) throw ConfigError(where_ + "." + name + ": expected an integer");
    return v.get<long>();
  }
  std::string text(const char* name) const {
    const Json& v = field(name);
    if (!v.is_string()) throw ConfigError(where_ + "." + name + ": expected a string");
    return v.get<std::string>();
  }
  ConfigReader child(const char* name) const { return {field(name), where_ + "." + name}; }
  std::vector<double> numbers(const char* name) const {
    const Json& v = field(name);
    if (!v.is_array()) throw ConfigError(where_ + "." + name + ": expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number())
        throw ConfigError(where_ + "." + name + "[" + std::to_string(i) + "]: expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  const Json& j_;
  std::string where_;
};

Json parse_config(const std::string& text, const std::string& name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // translate the byte offset into line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(name + " line " + std::to_string(line) + " column " + std::to_string(col) +
                      ": malformed JSON (" + e.what() + ")");
  }
}

struct SpdeArgs {
  std::string config;
  std::string out_dir;
  unsigned threads = 0;
  bool allow_classical = false;
};

int cmd_spde(const SpdeArgs& s, std::ostream& out) {
  const fs::path config_path(s.config);
  const fs::path base = config_path.parent_path();
  const std::string text = read_file(config_path);
  const Json doc = parse_config(text, config_path.string());
  const ConfigReader cfg(doc, "config");
  std::string referenced;  // contents of auxiliary files, part of the digest

  SpdeConfig config;
  config.alpha = cfg.number("alpha");
  config.beta = cfg.number("beta");
  config.gamma = cfg.number("gamma");
  config.n_modes = cfg.integer("n_modes");
  config.allow_classical =
      s.allow_classical || (cfg.has("allow_classical") && cfg.field("allow_classical").get<bool>());

  const ConfigReader op = cfg.child("operator");
  const std::string op_type = op.text("type");
  if (op_type == "laplacian") {
    config.spectrum = laplacian_1d_spectrum(op.number("length"), config.n_modes);
  } else if (op_type == "sturm_liouville") {
    const long interior = op.integer("space_points");
    const double length = op.has("length") ? op.number("length") : 1.0;
    const SpaceGrid space(length, interior + 1);
    const fs::path p_file = base / op.text("p_file");
    const fs::path q_file = base / op.text("q_file");
    referenced += read_file(p_file) + read_file(q_file);
    config.spectrum = sturm_liouville_spectrum({space, read_samples(p_file)},
                                               {space, read_samples(q_file)}, config.n_modes);
  } else if (op_type == "eigenvalues") {
    const std::vector<double> v = op.numbers("values");
    config.spectrum = spectrum_from_eigenvalues(
        Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())),
        op.has("length") ? op.number("length") : 1.0);
  } else {
    throw ConfigError("config.operator.type: unknown operator '" + op_type + "'");
  }
  if (config.n_modes < 1 || config.n_modes > config.spectrum.size())
    throw ConfigError("config.n_modes: must lie in [1, " + std::to_string(config.spectrum.size()) + "]");

  const ConfigReader init = cfg.child("initial");
  const std::string init_type = init.text("type");
  if (init_type == "mode") {
    const long index = init.integer("index");
    if (index < 1 || index > config.n_modes)
      throw ConfigError("config.initial.index: must lie in [1, n_modes]");
    config.f_coeffs = Eigen::VectorXd::Zero(config.n_modes);
    config.f_coeffs[index - 1] = init.number("amplitude");
  } else if (init_type == "samples") {
    const fs::path file = base / init.text("file");
    referenced += read_file(file);
    const Eigen::VectorXd v = read_samples(file);
    if (v.size() < 2) throw ConfigError("config.initial.file: need at least two samples");
    const SpaceGrid space(config.spectrum.domain_length, v.size() - 1);
    config.f_coeffs = project_initial_data({space, v}, config.spectrum, config.n_modes);
  } else if (init_type == "coefficients") {
    const std::vector<double> v = init.numbers("values");
    if (static_cast<Eigen::Index>(v.size()) != config.n_modes)
      throw ConfigError("config.initial.values: need one coefficient per mode");
    config.f_coeffs = Eigen::Map<const Eigen::VectorXd>(v.data(), config.n_modes);
  } else {
    throw ConfigError("config.initial.type: unknown initial data '" + init_type + "'");
  }

  const ConfigReader time = cfg.child("time");
  const TimeGrid grid(time.number("t_max"), time.integer("steps"));

  fs::create_directories(s.out_dir);
  const fs::path dir(s.out_dir);
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;

  const FieldMeanSquare ms = spde_mean_square(config, grid);
  {
    std::vector<std::string> header{"total"};
    std::vector<Eigen::VectorXd> rows;
    for (Eigen::Index j = 0; j < config.n_modes; ++j) {
      header.push_back("mode_" + std::to_string(j + 1));
      rows.push_back(ms.per_mode.row(j).transpose());
    }
    std::vector<const Eigen::VectorXd*> cols{&ms.total};
    for (const auto& r : rows) cols.push_back(&r);
    write_file(dir / "mean_square.csv", curve_csv(grid, header, cols));
    outputs.push_back((dir / "mean_square.csv").string());
  }

  Json report = report_json(spde_stability(config));
  report["lambda1"] = config.spectrum.eigenvalues[0];
  report["beta"] = config.beta;
  report["gamma"] = config.gamma;
  report["critical_gamma"] = report["critical_b"];
  report["truncation_indicator"] = ms.truncation_indicator;
  report["truncation_note"] = "last-mode share of E||u||^2 at t_max; heuristic";
  write_file(dir / "stability.json", report.dump(2) + "\n");
  outputs.push_back((dir / "stability.json").string());

  if (cfg.has("monte_carlo")) {
    const ConfigReader mc = cfg.child("monte_carlo");
    seed = static_cast<std::uint64_t>(mc.integer("seed"));
    const long paths = mc.integer("paths");
    if (paths < 2) throw ConfigError("config.monte_carlo.paths: need at least two");
    const std::vector<double> snaps = mc.has("snapshots") ? mc.numbers("snapshots") : std::vector<double>{};
    SpdeSampleOptions opts;
    opts.threads = s.threads;
    const SpdeSamples samples =
        spde_sample_paths(config, grid, static_cast<std::uint64_t>(paths), seed, snaps, opts);
    write_file(dir / "monte_carlo.csv",
               curve_csv(grid, {"mean_square", "std_error"},
                         {&samples.norm_squared.mean_square, &samples.norm_squared.std_error}));
    outputs.push_back((dir / "monte_carlo.csv").string());
    if (!samples.snapshots.empty()) {
      std::string csv = "x";
      for (const auto& snap : samples.snapshots) csv += ",u_t=" + format_double(snap.t);
      csv += "\n";
      for (Eigen::Index i = 0; i < samples.space->size(); ++i) {
        csv += format_double(samples.space->node(i));
        for (const auto& snap : samples.snapshots) csv += "," + format_double(snap.u[i]);
        csv += "\n";
      }
      write_file(dir / "snapshots.csv", csv);
      outputs.push_back((dir / "snapshots.csv").string());
    }
  }

  Json inputs{{"config", doc}, {"allow_classical", config.allow_classical}};
  Manifest{"spde", inputs, referenced, seed, outputs}.write(dir / "manifest.json");
  for (const auto& o : outputs) out << o << "\n";
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string solver;
  double alpha = 0, a = 0, eta = 1, t_max = 0;
  long steps = 0;
  int levels = 4;
};

int cmd_verify(const VerifyArgs& v, std::ostream& out) {
  // The deterministic decay curve x = eta E_alpha(a t^alpha) solves both
  // D^alpha x = a x and x = eta + a I^alpha x. Near t = 0 the solution behaves
  // like t^alpha and the L1 scheme has an O(1) error at the first node, so the
  // convergence residual is measured on the fixed window [T/4, T].
  const double window_start = 0.25 * v.t_max;
  Json levels = Json::array();
  double prev_caputo = 0.0, prev_rl = 0.0;
  for (int l = 0; l < v.levels; ++l) {
    const TimeGrid grid(v.t_max, v.steps << l);
    const Eigen::VectorXd x = decay_curve(v.alpha, v.a, grid) * v.eta;
    const Eigen::VectorXd d = caputo_l1(v.alpha, grid, x);
    const Eigen::VectorXd i = rl_integral(v.alpha, grid, x);
    double caputo = 0.0, rl = 0.0;
    for (Eigen::Index n = 1; n < grid.size(); ++n) {
      if (grid.node(n) < window_start) continue;
      caputo = std::max(caputo, std::fabs(d[n] - v.a * x[n]));
      rl = std::max(rl, std::fabs(x[n] - v.eta - v.a * i[n]));
    }
    Json row{{"steps", grid.n_steps()},
             {"caputo_max_residual", caputo},
             {"rl_max_residual", rl},
             {"caputo_first_node_residual", std::fabs(d[1] - v.a * x[1])}};
    if (l > 0) {
      row["caputo_ratio"] = prev_caputo / caputo;
      row["rl_ratio"] = prev_rl / rl;
    }
    levels.push_back(row);
    prev_caputo = caputo;
    prev_rl = rl;
  }
  Json doc{{"solver", v.solver}, {"alpha", v.alpha},   {"a", v.a},
           {"eta", v.eta},       {"window_start", window_start}, {"levels", levels}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-fractional stochastic differential equations: special functions, "
               "moments, stability and simulation",
               "fracstoch"};
  app.set_version_flag("--version", FRACSTOCH_VERSION);
  app.require_subcommand(1, 1);

  MlArgs ml;
  auto* ml_cmd = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_{alpha,beta}(x)");
  ml_cmd->add_option("--alpha", ml.alpha)->required();
  ml_cmd->add_option("--beta", ml.beta)->required();
  ml_cmd->add_option("--x", ml.x)->required();

  StabilityArgs st;
  auto* st_cmd = app.add_subcommand("stability", "Mean-square stability index (JSON report)");
  st_cmd->add_option("--alpha", st.alpha)->required();
  st_cmd->add_option("--a", st.a);
  st_cmd->add_option("--b", st.b);
  st_cmd->add_option("--lambda1", st.lambda1);
  st_cmd->add_option("--beta", st.beta);
  st_cmd->add_option("--gamma", st.gamma);
  st_cmd->add_option("--cells", st.cells, "quadrature cells of the coarse pass")->capture_default_str();
  st_cmd->add_flag("--allow-classical", st.allow_classical, "accept alpha = 1");

  MomentArgs mo;
  auto* mo_cmd = app.add_subcommand("moment", "Second-moment curve y(t) = E x(t)^2 (CSV: t,y)");
  mo_cmd->add_option("--alpha", mo.alpha)->required();
  mo_cmd->add_option("--a", mo.a)->required();
  mo_cmd->add_option("--b", mo.b)->required();
  mo_cmd->add_option("--y0", mo.y0)->required();
  mo_cmd->add_option("--t-max", mo.t_max)->required();
  mo_cmd->add_option("--steps", mo.steps)->required();
  mo_cmd->add_option("--out", mo.out, "CSV file (stdout when omitted)");
  mo_cmd->add_option("--probe-delta", mo.probe_delta, "report sup of t^delta y(t)");
  mo_cmd->add_flag("--allow-classical", mo.allow_classical, "accept alpha = 1");

  SimulateArgs si;
  auto* si_cmd = app.add_subcommand("simulate", "Monte Carlo mean square (CSV: t,mean_square,std_error)");
  si_cmd->add_option("--alpha", si.alpha)->required();
  si_cmd->add_option("--a", si.a)->required();
  si_cmd->add_option("--b", si.b)->required();
  si_cmd->add_option("--eta", si.eta, "initial value")->required();
  si_cmd->add_option("--t-max", si.t_max)->required();
  si_cmd->add_option("--steps", si.steps)->required();
  si_cmd->add_option("--paths", si.paths)->required();
  si_cmd->add_option("--seed", si.seed)->required();
  si_cmd->add_option("--threads", si.threads, "worker threads, 0 = all")->envname("FRACSTOCH_THREADS");
  si_cmd->add_option("--weight", si.weight, "stochastic kernel weight")
      ->check(CLI::IsMember({"mean", "left"}))
      ->capture_default_str();
  si_cmd->add_option("--out", si.out, "CSV file (stdout when omitted)");
  si_cmd->add_flag("--allow-classical", si.allow_classical, "accept alpha = 1");

  SpdeArgs sp;
  auto* sp_cmd = app.add_subcommand("spde", "Spectral pipeline driven by a JSON configuration");
  sp_cmd->add_option("--config", sp.config)->required()->check(CLI::ExistingFile);
  sp_cmd->add_option("--out-dir", sp.out_dir)->required();
  sp_cmd->add_option("--threads", sp.threads, "worker threads, 0 = all")->envname("FRACSTOCH_THREADS");
  sp_cmd->add_flag("--allow-classical", sp.allow_classical, "accept alpha = 1");

  VerifyArgs ve;
  auto* ve_cmd = app.add_subcommand("verify", "Fractional-calculus residuals of a solver under grid halving");
  ve_cmd->add_option("--solver", ve.solver)->required()->check(CLI::IsMember({"decay"}));
  ve_cmd->add_option("--alpha", ve.alpha)->required();
  ve_cmd->add_option("--a", ve.a)->required();
  ve_cmd->add_option("--eta", ve.eta)->capture_default_str();
  ve_cmd->add_option("--t-max", ve.t_max)->required();
  ve_cmd->add_option("--steps", ve.steps)->required();
  ve_cmd->add_option("--levels", ve.levels)->check(CLI::Range(2, 12))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ConfigError: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*ml_cmd) return cmd_ml(ml, out, err);
    if (*st_cmd) return cmd_stability(st, out);
    if (*mo_cmd) return cmd_moment(mo, out, err);
    if (*si_cmd) return cmd_simulate(si, out);
    if (*sp_cmd) return cmd_spde(sp, out);
    if (*ve_cmd) return cmd_verify(ve, out);
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return e.is_accuracy_failure() ? kExitAccuracy : kExitConfig;
  } catch (const Json::exception& e) {
    err << "ConfigError: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "ConfigError: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace fracstoch::cli
