#include "landauer_lab/cli.hpp"

#include "landauer_lab/concentration.hpp"
#include "landauer_lab/errors.hpp"
#include "landauer_lab/experiments.hpp"
#include "landauer_lab/fit.hpp"
#include "landauer_lab/geometry.hpp"
#include "landauer_lab/io.hpp"
#include "landauer_lab/selftest.hpp"
#include "landauer_lab/stats.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

namespace lab::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string experiment;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out = "out";
};

struct GammaOptions {
  Common common{"gamma"};
  Index d_s = 2;
  Index d_r = 2;
  double beta = 1.0;
  std::string rho_s = "induced-hs";
  std::string correction = "zero";
  std::string mode = "haar";
  std::string conservation = "total";
  std::uint64_t index = 0;
};

struct LevyOptions {
  Common common{"levy"};
  Index d_s = 2;
  Index d_r = 16;
  double beta = 1.0;
  std::size_t n = 2000;
  double eps_min = 0.01;
  double eps_max = 1.5;
  std::size_t eps_points = 16;
  std::string keep = "system";
};

struct PurityOptions {
  Common common{"purity"};
  Index d_s = 2;
  Index d_r = 2;
  double beta = 1.0;
  std::size_t n = 5000;
  std::string tau = "pure";
};

struct SweepOptions {
  Common common{"sweep"};
  Index d_s = 2;
  Index d_r = 2;
  std::string regime = "mid";
  double tmin = 0.1;
  double tmax = 10.0;
  std::size_t points = 12;
  std::size_t n = 100;
  std::string rho_s = "induced-hs";
  std::string correction = "zero";
  std::string mode = "haar";
  std::string conservation = "total";
  std::string two_level_mid = "reject";
};

struct BoundsOptions {
  Common common{"bounds"};
  Index d_s = 2;
  Index d_r = 2;
  std::string regime = "high";
  double t_tilde = 1.0;
  std::size_t n = 1000;
  std::string rho_s = "induced-hs";
  std::string correction = "zero";
  std::string mode = "haar";
  std::string conservation = "total";
  std::string two_level_mid = "reject";
  double target = 0.95;
};

struct SelftestOptions {
  std::uint64_t seed = 2024;
  unsigned workers = 1;
};

const CLI::Validator kCorrection(
    [](std::string& value) {
      try {
        Correction::parse(value);
        return std::string{};
      } catch (const std::exception& e) {
        return std::string(e.what());
      }
    },
    "zero|constant:<value>", "correction");

const CLI::Validator kCsvSafe(
    [](std::string& value) {
      if (value.empty()) return std::string("must not be empty");
      if (value.find_first_of(",\"\r\n") != std::string::npos) {
        return std::string("must not contain commas, quotes or newlines");
      }
      return std::string{};
    },
    "NAME", "csv-safe");

EnergyConservation parse_conservation(std::string_view name) {
  if (name == "total") return EnergyConservation::total;
  if (name == "local") return EnergyConservation::local;
  throw InvalidInput("unknown conservation mode '" + std::string(name) + "'");
}

void add_common(CLI::App* sub, Common& c, bool with_out) {
  sub->add_option("--experiment", c.experiment, "Experiment name (keys the random streams)")
      ->check(kCsvSafe);
  sub->add_option("--seed", c.seed, "Master seed")->envname("LANDAUER_LAB_SEED");
  sub->add_option("--workers", c.workers, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  if (with_out) sub->add_option("--out", c.out, "Output directory");
}

void add_config_flag(CLI::App* sub) {
  // Consumed before parsing; declared so that --help lists it.
  sub->add_option("--config", "Flat key = value file mirroring the long flags");
}

// Long flag name and effective value of every option, for the manifest.
std::vector<std::pair<std::string, std::string>> config_echo(const CLI::App* sub) {
  std::vector<std::pair<std::string, std::string>> echo;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    std::string value = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
    echo.emplace_back(name, value);
  }
  return echo;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class Writer>
fs::path write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  writer(out);
  out.flush();
  if (!out) throw InvalidInput("failed writing " + path.string());
  return path;
}

class Run {
 public:
  Run(const CLI::App* sub, const Common& common)
      : start_(std::chrono::steady_clock::now()), dir_(common.out) {
    manifest_.command = sub->get_name();
    manifest_.config = config_echo(sub);
    manifest_.metadata.emplace_back("version", kVersion);
    manifest_.metadata.emplace_back("started_utc", utc_now());
    fs::create_directories(dir_);
  }

  fs::path path(std::string_view name) const { return dir_ / name; }
  void add_file(fs::path p) { manifest_.files.push_back(std::move(p)); }
  void note(std::string key, std::string value) {
    manifest_.metadata.emplace_back(std::move(key), std::move(value));
  }

  fs::path finish() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    note("wall_clock_seconds", io::format_double(seconds));
    const fs::path p = path("manifest.txt");
    manifest_.write(p);
    return p;
  }

 private:
  std::chrono::steady_clock::time_point start_;
  fs::path dir_;
  io::RunManifest manifest_;
};

// Reservoir (and mirrored system) Hamiltonians extracted from one Haar
// unitary on its own stream, so tail and purity runs share a definite H_r.
LocalHamiltonians reference_hamiltonians(const Common& c, Index d_s, Index d_r) {
  RandomStream stream(experiment_seed(c.seed, c.experiment + ":hamiltonians"), 0);
  return extract_hamiltonians(haar_unitary(d_s * d_r, stream), d_s, d_r);
}

void note_conventions(Run& run) {
  run.note("heat_sign", "Q = E_final - E_initial of the reservoir");
  run.note("hamiltonians", "i tr_other[log U] with principal log, symmetrized, t = 1");
  run.note("streams", "stream index = sample ordinal; each sample evaluated at every grid point");
}

int do_gamma(const CLI::App* sub, const GammaOptions& o, std::ostream& out) {
  RandomStream stream(experiment_seed(o.common.seed, o.common.experiment), o.index);
  UnitaryMatrix u = haar_unitary(o.d_s * o.d_r, stream);
  const DensityMatrix rho_s =
      random_density_matrix(o.d_s, stream, parse_state_sampling(o.rho_s));
  const auto h = extract_hamiltonians(u, o.d_s, o.d_r);
  if (parse_process_mode(o.mode) == ProcessMode::thermal) {
    u = thermal_operation(h.system, h.reservoir, stream, parse_conservation(o.conservation));
  }
  const LandauerProcess p(rho_s, h.reservoir, o.beta, u, h.system);
  const Correction correction = Correction::parse(o.correction);
  const ProcessStats s = process_stats(p, correction);
  const HeatDistribution heat = heat_distribution(p);

  const std::pair<const char*, std::string> fields[] = {
      {"d_s", std::to_string(o.d_s)},
      {"d_r", std::to_string(o.d_r)},
      {"beta", io::format_double(o.beta)},
      {"rho_s_method", o.rho_s},
      {"mode", o.mode},
      {"correction", correction.name},
      {"Q_avg", io::format_double(s.q_avg)},
      {"delta_S", io::format_double(s.delta_s)},
      {"Gamma", io::format_double(s.gamma)},
      {"gamma", io::format_double(s.gamma_bound)},
      {"mu", io::format_double(s.mu)},
      {"mutual_info", io::format_double(s.mutual_info)},
      {"rel_entropy", io::format_double(s.rel_entropy)},
      {"landauer_bound", io::format_double(s.landauer_bound)},
      {"omega", io::format_double(s.rw_bound)},
      {"rw_residual", io::format_double(s.rw_residual)},
      {"heat_atoms", std::to_string(heat.atoms.size())},
  };
  std::ostringstream record;
  for (const auto& [key, value] : fields) record << key << '=' << value << '\n';
  out << record.str();

  if (sub->count("--out") > 0) {
    Run run(sub, o.common);
    note_conventions(run);
    run.add_file(write_file(run.path("gamma.txt"), [&](std::ostream& f) { f << record.str(); }));
    run.finish();
  }
  return kExitOk;
}

int do_levy(const CLI::App* sub, const LevyOptions& o, std::ostream& out) {
  const auto grid = stats::log_grid(o.eps_min, o.eps_max, o.eps_points);
  const Subsystem keep = o.keep == "system" ? Subsystem::system : Subsystem::reservoir;
  Run run(sub, o.common);
  const auto h = reference_hamiltonians(o.common, o.d_s, o.d_r);
  const std::uint64_t seed = experiment_seed(o.common.seed, o.common.experiment);

  TailReport report;
  if (keep == Subsystem::system) {
    const DensityMatrix tau = DensityMatrix::assume_valid(tensor_product(
        DensityMatrix::maximally_mixed(o.d_s).matrix(),
        gibbs_state(h.reservoir, o.beta).state().matrix()));
    report = tail_experiment(o.d_s, o.d_r, tau, keep, "maximally-mixed x gibbs(H_r)", o.n, grid,
                             seed, o.common.workers);
  } else {
    const DensityMatrix tau = DensityMatrix::assume_valid(
        tensor_product(gibbs_state(h.system, o.beta).state().matrix(),
                       DensityMatrix::maximally_mixed(o.d_r).matrix()));
    report = tail_experiment(o.d_s, o.d_r, tau, keep, "gibbs(H_s) x maximally-mixed", o.n, grid,
                             seed, o.common.workers);
  }
  run.add_file(write_file(run.path("levy.csv"),
                          [&](std::ostream& f) { io::write_levy(f, report, o.beta); }));
  run.note("tau", report.tau_description);
  run.note("offset_sqrt_dkeep_over_dother", io::format_double(report.offset));
  run.note("mean_distance", io::format_double(report.mean_distance));
  run.note("mean_distance_stderr", io::format_double(report.mean_distance_stderr));
  note_conventions(run);
  run.finish();

  out << "levy: " << report.points.size() << " epsilon points, " << report.samples
      << " samples; mean distance " << io::format_double(report.mean_distance) << " +- "
      << io::format_double(report.mean_distance_stderr) << " vs offset "
      << io::format_double(report.offset) << '\n';
  return kExitOk;
}

int do_purity(const CLI::App* sub, const PurityOptions& o, std::ostream& out) {
  Run run(sub, o.common);
  const std::uint64_t seed = experiment_seed(o.common.seed, o.common.experiment);
  const Index d = o.d_s * o.d_r;
  std::vector<PurityReport> reports;
  if (o.tau == "pure" || o.tau == "both") {
    // The Haar orbit of every pure state is the same, so a basis state suffices.
    ComplexVector psi = ComplexVector::Zero(d);
    psi(0) = 1.0;
    reports.push_back(purity_experiment(o.d_s, o.d_r, DensityMatrix::pure(psi), "pure", o.n,
                                        seed, o.common.workers));
  }
  if (o.tau == "mixed" || o.tau == "both") {
    const auto h = reference_hamiltonians(o.common, o.d_s, o.d_r);
    const DensityMatrix tau = DensityMatrix::assume_valid(
        tensor_product(DensityMatrix::maximally_mixed(o.d_s).matrix(),
                       gibbs_state(h.reservoir, o.beta).state().matrix()));
    reports.push_back(
        purity_experiment(o.d_s, o.d_r, tau, "mixed", o.n, seed, o.common.workers));
  }
  run.add_file(
      write_file(run.path("purity.csv"), [&](std::ostream& f) { io::write_purity(f, reports); }));
  run.note("tau_mixed", "maximally-mixed x gibbs(H_r) at the given beta");
  note_conventions(run);
  run.finish();
  for (const auto& r : reports) {
    out << "purity[" << r.tau_description << "]: " << io::format_double(r.mean_purity) << " +- "
        << io::format_double(r.purity_stderr) << " (pure-orbit value "
        << io::format_double(r.pure_orbit_prediction) << ")\n";
  }
  return kExitOk;
}

int do_sweep(const CLI::App* sub, const SweepOptions& o, std::ostream& out) {
  SweepConfig c;
  c.experiment = o.common.experiment;
  c.d_s = o.d_s;
  c.d_r = o.d_r;
  c.regime = parse_regime(o.regime);
  c.t_grid = stats::log_grid(o.tmin, o.tmax, o.points);
  c.n = o.n;
  c.rho_s_method = parse_state_sampling(o.rho_s);
  c.correction = Correction::parse(o.correction);
  c.mode = parse_process_mode(o.mode);
  c.conservation = parse_conservation(o.conservation);
  c.two_level_mid = parse_two_level_mid(o.two_level_mid);
  c.master_seed = o.common.seed;
  c.workers = o.common.workers;

  Run run(sub, o.common);
  const auto records = temperature_sweep(c);
  std::vector<FitPoint> points;
  for (const auto& r : records) {
    if (!r.skipped) points.push_back({r.t_tilde, r.mu});
  }
  std::vector<io::FitRow> fits;
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.t);
  if (distinct.size() >= 3) {
    fits.push_back({c.experiment, c.d_s, c.d_r, c.regime, fit_saturating_exponential(points)});
  }

  run.add_file(
      write_file(run.path("trials.csv"), [&](std::ostream& f) { io::write_trials(f, records); }));
  run.add_file(write_file(run.path("fit.csv"), [&](std::ostream& f) { io::write_fits(f, fits); }));
  const std::size_t skipped = count_skipped(records);
  run.note("records", std::to_string(records.size()));
  run.note("skipped", std::to_string(skipped));
  run.note("correction", c.correction.name);
  run.note("fit_input", "all non-skipped (T_tilde, mu) rows");
  note_conventions(run);
  run.finish();

  out << "sweep: " << records.size() << " trial rows (" << skipped << " skipped)";
  if (!fits.empty()) {
    out << "; fit a = " << io::format_double(fits[0].fit.a)
        << ", b = " << io::format_double(fits[0].fit.b)
        << (fits[0].fit.converged ? " (converged)" : " (NOT converged)");
  } else {
    out << "; no fit (fewer than 3 distinct temperatures)";
  }
  out << '\n';
  return kExitOk;
}

int do_bounds(const CLI::App* sub, const BoundsOptions& o, std::ostream& out) {
  BoundConfig c;
  c.experiment = o.common.experiment;
  c.d_s = o.d_s;
  c.d_r = o.d_r;
  c.regime = parse_regime(o.regime);
  c.t_tilde = o.t_tilde;
  c.n = o.n;
  c.rho_s_method = parse_state_sampling(o.rho_s);
  c.correction = Correction::parse(o.correction);
  c.mode = parse_process_mode(o.mode);
  c.conservation = parse_conservation(o.conservation);
  c.two_level_mid = parse_two_level_mid(o.two_level_mid);
  c.master_seed = o.common.seed;
  c.workers = o.common.workers;

  Run run(sub, o.common);
  const auto records = bound_compare_sweep(c);
  std::vector<Point2> scatter;
  std::vector<double> tightness;
  for (const auto& r : records) {
    if (r.skipped) continue;
    scatter.push_back({r.gamma_minus_omega, r.betaq_minus_gamma});
    tightness.push_back(r.betaq_minus_gamma);
  }
  if (scatter.empty()) throw DomainError("bounds: every trial was skipped");
  const HullPeel peel = convex_hull_peel(scatter, o.target);
  const double fraction = fraction_gpm_above_landauer(records);

  run.add_file(
      write_file(run.path("trials.csv"), [&](std::ostream& f) { io::write_trials(f, records); }));
  run.add_file(write_file(run.path("hull.csv"),
                          [&](std::ostream& f) { io::write_hull(f, c.experiment, peel); }));
  run.note("records", std::to_string(records.size()));
  run.note("skipped", std::to_string(count_skipped(records)));
  run.note("correction", c.correction.name);
  run.note("hull_axes", "x = gamma - omega, y = beta Q_avg - gamma");
  run.note("confidence_polytope_layer", std::to_string(peel.layers.size() + 1));
  run.note("polytope_retained_fraction", io::format_double(peel.polytope.retained_fraction));
  run.note("polytope_degenerate", peel.degenerate ? "1" : "0");
  run.note("bivariate_median", "coordinate-wise: (" + io::format_double(peel.median.x) + ", " +
                                   io::format_double(peel.median.y) + ")");
  run.note("fraction_gamma_above_delta_S", io::format_double(fraction));
  note_conventions(run);
  run.finish();

  out << "bounds: " << records.size() << " trial rows; fraction with gamma > delta_S = "
      << io::format_double(fraction) << " (R = " << c.correction.name
      << "); median beta Q_avg - gamma = " << io::format_double(stats::median(tightness))
      << "; " << peel.layers.size() << " hull layers peeled\n";
  return kExitOk;
}

int do_selftest(const SelftestOptions& o, std::ostream& out) {
  bool ok = true;
  for (const auto& r : run_selftest(o.seed, o.workers)) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  out << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

// Splices `--config FILE` entries in as flags right after the subcommand
// name, so anything given explicitly (later on the line) takes precedence.
// A `command` key names the subcommand when the line does not.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  static const std::set<std::string, std::less<>> kSubcommands{"gamma", "levy",  "purity",
                                                                "sweep", "bounds", "selftest"};
  std::vector<std::string> rest;
  std::vector<std::string> injected;
  std::string command;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string file;
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw CLI::ArgumentMismatch("--config requires a file name");
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(file);
    if (!in) throw CLI::FileError::Missing(file);
    for (const auto& [key, value] : io::parse_config(in)) {
      if (key == "command") {
        command = value;
        continue;
      }
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  if (injected.empty() && command.empty()) return rest;
  const auto named = std::find_if(rest.begin(), rest.end(),
                                  [](const std::string& a) { return kSubcommands.contains(a); });
  std::vector<std::string> out;
  if (named != rest.end()) {
    out.assign(rest.begin(), named + 1);
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), named + 1, rest.end());
  } else {
    if (command.empty()) throw CLI::ArgumentMismatch("--config: no subcommand given");
    out.push_back(command);
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

}  // namespace

std::string version() { return kVersion; }

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo laboratory for heat fluctuations in random Landauer processes",
               "landauer_lab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const std::vector<std::string> regimes{"low", "mid", "high"};
  const std::vector<std::string> methods{"pure-haar", "induced-hs", "maximally-mixed"};
  const std::vector<std::string> modes{"haar", "thermal"};
  const std::vector<std::string> conservations{"total", "local"};
  const std::vector<std::string> mid_policies{"reject", "single-gap"};
  const auto dim = CLI::Range(Index{1}, Index{256});

  GammaOptions g;
  auto* gamma = app.add_subcommand("gamma", "Statistics of one sampled process, printed as key=value");
  gamma->add_option("--ds", g.d_s, "System dimension")->check(dim);
  gamma->add_option("--dr", g.d_r, "Reservoir dimension")->check(dim);
  gamma->add_option("--beta", g.beta, "Inverse temperature")->check(CLI::NonNegativeNumber);
  gamma->add_option("--rho-s", g.rho_s, "System state sampling")->check(CLI::IsMember(methods));
  gamma->add_option("--correction", g.correction, "R(delta_S, d_r)")->check(kCorrection);
  gamma->add_option("--mode", g.mode, "Unitary kind")->check(CLI::IsMember(modes));
  gamma->add_option("--conservation", g.conservation, "Thermal-operation constraint")
      ->check(CLI::IsMember(conservations));
  gamma->add_option("--index", g.index, "Stream index of the sample");
  add_common(gamma, g.common, true);
  add_config_flag(gamma);

  LevyOptions l;
  auto* levy = app.add_subcommand("levy", "Tail probabilities of reduced-state distances");
  levy->add_option("--ds", l.d_s, "System dimension")->check(dim);
  levy->add_option("--dr", l.d_r, "Reservoir dimension")->check(dim);
  levy->add_option("--beta", l.beta, "Inverse temperature of the fixed Gibbs factor")
      ->check(CLI::NonNegativeNumber);
  levy->add_option("--n", l.n, "Samples (>= 100)")->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
  levy->add_option("--eps-min", l.eps_min, "Smallest epsilon")->check(CLI::PositiveNumber);
  levy->add_option("--eps-max", l.eps_max, "Largest epsilon")->check(CLI::PositiveNumber);
  levy->add_option("--eps-points", l.eps_points, "Log-spaced epsilon points")->check(CLI::PositiveNumber);
  levy->add_option("--keep", l.keep, "Subsystem whose reduced state is measured")
      ->check(CLI::IsMember({"system", "reservoir"}));
  add_common(levy, l.common, true);
  add_config_flag(levy);

  PurityOptions pu;
  auto* purity = app.add_subcommand("purity", "Mean purity and trace distance of reduced states");
  purity->add_option("--ds", pu.d_s, "System dimension")->check(dim);
  purity->add_option("--dr", pu.d_r, "Reservoir dimension")->check(dim);
  purity->add_option("--beta", pu.beta, "Inverse temperature for the mixed orbit")
      ->check(CLI::NonNegativeNumber);
  purity->add_option("--n", pu.n, "Samples (>= 1000)")->check(CLI::Range(std::size_t{1000}, std::size_t{100000000}));
  purity->add_option("--tau", pu.tau, "Orbit: pure, mixed or both")
      ->check(CLI::IsMember({"pure", "mixed", "both"}));
  add_common(purity, pu.common, true);
  add_config_flag(purity);

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "Scaled-temperature sweep with a saturating fit");
  sweep->add_option("--ds", sw.d_s, "System dimension")->check(dim);
  sweep->add_option("--dr", sw.d_r, "Reservoir dimension")->check(CLI::Range(Index{2}, Index{256}));
  sweep->add_option("--regime", sw.regime, "Scaled-temperature regime")->check(CLI::IsMember(regimes));
  sweep->add_option("--tmin", sw.tmin, "Smallest scaled temperature")->check(CLI::PositiveNumber);
  sweep->add_option("--tmax", sw.tmax, "Largest scaled temperature")->check(CLI::PositiveNumber);
  sweep->add_option("--points", sw.points, "Log-spaced grid points")->check(CLI::PositiveNumber);
  sweep->add_option("--n", sw.n, "Samples per grid point")->check(CLI::PositiveNumber);
  sweep->add_option("--rho-s", sw.rho_s, "System state sampling")->check(CLI::IsMember(methods));
  sweep->add_option("--correction", sw.correction, "R(delta_S, d_r)")->check(kCorrection);
  sweep->add_option("--mode", sw.mode, "Unitary kind")->check(CLI::IsMember(modes));
  sweep->add_option("--conservation", sw.conservation, "Thermal-operation constraint")
      ->check(CLI::IsMember(conservations));
  sweep->add_option("--two-level-mid", sw.two_level_mid, "Mid regime with d_r = 2")
      ->check(CLI::IsMember(mid_policies));
  add_common(sweep, sw.common, true);
  add_config_flag(sweep);

  BoundsOptions bo;
  auto* bounds_cmd = app.add_subcommand("bounds", "Bound comparison scatter with hull peeling");
  bounds_cmd->add_option("--ds", bo.d_s, "System dimension")->check(dim);
  bounds_cmd->add_option("--dr", bo.d_r, "Reservoir dimension")->check(CLI::Range(Index{2}, Index{256}));
  bounds_cmd->add_option("--regime", bo.regime, "Scaled-temperature regime")
      ->check(CLI::IsMember(regimes));
  bounds_cmd->add_option("--t-tilde", bo.t_tilde, "Scaled temperature")->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--n", bo.n, "Samples")->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--rho-s", bo.rho_s, "System state sampling")->check(CLI::IsMember(methods));
  bounds_cmd->add_option("--correction", bo.correction, "R(delta_S, d_r)")->check(kCorrection);
  bounds_cmd->add_option("--mode", bo.mode, "Unitary kind")->check(CLI::IsMember(modes));
  bounds_cmd->add_option("--conservation", bo.conservation, "Thermal-operation constraint")
      ->check(CLI::IsMember(conservations));
  bounds_cmd->add_option("--two-level-mid", bo.two_level_mid, "Mid regime with d_r = 2")
      ->check(CLI::IsMember(mid_policies));
  bounds_cmd->add_option("--target", bo.target, "Retained fraction that stops hull peeling")
      ->check(CLI::Range(0.0, 1.0));
  add_common(bounds_cmd, bo.common, true);
  add_config_flag(bounds_cmd);

  SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "Randomized invariant suite");
  selftest->add_option("--seed", st.seed, "Master seed")->envname("LANDAUER_LAB_SEED");
  selftest->add_option("--workers", st.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    const std::vector<std::string> args = expand_config(raw_args);
    std::vector<const char*> argv{"landauer_lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help / --version
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "landauer_lab: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gamma->parsed()) return do_gamma(gamma, g, out);
    if (levy->parsed()) return do_levy(levy, l, out);
    if (purity->parsed()) return do_purity(purity, pu, out);
    if (sweep->parsed()) return do_sweep(sweep, sw, out);
    if (bounds_cmd->parsed()) return do_bounds(bounds_cmd, bo, out);
    if (selftest->parsed()) return do_selftest(st, out);
  } catch (const InvalidInput& e) {
    err << "landauer_lab: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "landauer_lab: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace lab::cli
