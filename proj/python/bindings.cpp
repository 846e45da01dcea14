#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "landauer_lab/cli.hpp"
#include "landauer_lab/concentration.hpp"
#include "landauer_lab/errors.hpp"
#include "landauer_lab/experiments.hpp"
#include "landauer_lab/fit.hpp"
#include "landauer_lab/geometry.hpp"
#include "landauer_lab/io.hpp"
#include "landauer_lab/landauer.hpp"
#include "landauer_lab/selftest.hpp"
#include "landauer_lab/temperature.hpp"

#include <algorithm>
#include <sstream>

namespace py = pybind11;

namespace {

using lab::ComplexMatrix;
using lab::Index;

lab::Subsystem parse_keep(const std::string& keep) {
  if (keep == "system") return lab::Subsystem::system;
  if (keep == "reservoir") return lab::Subsystem::reservoir;
  throw lab::InvalidInput("keep must be 'system' or 'reservoir'");
}

lab::LandauerProcess make_process(const ComplexMatrix& rho_s, const ComplexMatrix& h_r,
                                  double beta, const ComplexMatrix& u) {
  return {lab::DensityMatrix(rho_s), lab::HermitianMatrix(h_r), beta, lab::UnitaryMatrix(u)};
}

py::dict stats_dict(const lab::ProcessStats& s) {
  py::dict d;
  d["Q_avg"] = s.q_avg;
  d["delta_S"] = s.delta_s;
  d["Gamma"] = s.gamma;
  d["gamma"] = s.gamma_bound;
  d["mu"] = s.mu;
  d["mutual_info"] = s.mutual_info;
  d["rel_entropy"] = s.rel_entropy;
  d["landauer_bound"] = s.landauer_bound;
  d["omega"] = s.rw_bound;
  d["rw_residual"] = s.rw_residual;
  return d;
}

py::dict record_dict(const lab::TrialRecord& r) {
  py::dict d;
  d["experiment"] = r.experiment;
  d["trial"] = r.trial;
  d["d_s"] = r.d_s;
  d["d_r"] = r.d_r;
  d["regime"] = lab::to_string(r.regime);
  d["T_tilde"] = r.t_tilde;
  d["beta"] = r.beta;
  d["rho_s_method"] = lab::to_string(r.rho_s_method);
  d["Q_avg"] = r.q_avg;
  d["delta_S"] = r.delta_s;
  d["Gamma"] = r.gamma;
  d["gamma"] = r.gamma_bound;
  d["mu"] = r.mu;
  d["omega"] = r.omega;
  d["betaQ_minus_gamma"] = r.betaq_minus_gamma;
  d["gamma_minus_omega"] = r.gamma_minus_omega;
  d["skipped"] = r.skipped;
  return d;
}

py::dict layer_dict(const lab::HullLayer& layer) {
  py::dict d;
  d["indices"] = layer.indices;
  py::list vertices;
  for (const auto& v : layer.vertices) vertices.append(py::make_tuple(v.x, v.y));
  d["vertices"] = vertices;
  d["retained_fraction"] = layer.retained_fraction;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random Landauer processes: heat statistics, concentration checks and sweeps.";
  m.attr("__version__") = lab::cli::version();

  m.def("haar_unitary",
        [](Index d, std::uint64_t seed, std::uint64_t index) {
          lab::RandomStream stream(seed, index);
          return lab::haar_unitary(d, stream).matrix();
        },
        py::arg("d"), py::arg("seed"), py::arg("index") = 0);
  m.def("random_density_matrix",
        [](Index d, std::uint64_t seed, std::uint64_t index, const std::string& method) {
          lab::RandomStream stream(seed, index);
          return lab::random_density_matrix(d, stream, lab::parse_state_sampling(method)).matrix();
        },
        py::arg("d"), py::arg("seed"), py::arg("index") = 0, py::arg("method") = "induced-hs");

  m.def("tensor_product", &lab::tensor_product, py::arg("a"), py::arg("b"));
  m.def("partial_trace",
        [](const ComplexMatrix& a, Index d_s, Index d_r, const std::string& keep) {
          return lab::partial_trace(a, d_s, d_r, parse_keep(keep));
        },
        py::arg("m"), py::arg("d_s"), py::arg("d_r"), py::arg("keep") = "system");
  m.def("matrix_log_unitary",
        [](const ComplexMatrix& u) { return lab::matrix_log_unitary(lab::UnitaryMatrix(u)); },
        py::arg("u"));
  m.def("trace_norm", [](const ComplexMatrix& a) { return lab::trace_norm(lab::HermitianMatrix(a)); },
        py::arg("a"));

  m.def("gibbs_state",
        [](const ComplexMatrix& h, double beta) {
          return lab::gibbs_state(lab::HermitianMatrix(h), beta).state().matrix();
        },
        py::arg("h"), py::arg("beta"));
  m.def("von_neumann_entropy",
        [](const ComplexMatrix& rho) { return lab::von_neumann_entropy(lab::DensityMatrix(rho)); },
        py::arg("rho"));
  m.def("relative_entropy",
        [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
          return lab::relative_entropy(lab::DensityMatrix(rho), lab::DensityMatrix(sigma));
        },
        py::arg("rho"), py::arg("sigma"));
  m.def("mutual_information",
        [](const ComplexMatrix& rho, Index d_s, Index d_r) {
          return lab::mutual_information(lab::DensityMatrix(rho), d_s, d_r);
        },
        py::arg("rho_sr"), py::arg("d_s"), py::arg("d_r"));
  m.def("purity", [](const ComplexMatrix& rho) { return lab::purity(lab::DensityMatrix(rho)); },
        py::arg("rho"));

  m.def("extract_hamiltonians",
        [](const ComplexMatrix& u, Index d_s, Index d_r) {
          const auto h = lab::extract_hamiltonians(lab::UnitaryMatrix(u), d_s, d_r);
          return py::make_tuple(h.system.matrix(), h.reservoir.matrix());
        },
        py::arg("u"), py::arg("d_s"), py::arg("d_r"));
  m.def("process_stats",
        [](const ComplexMatrix& rho_s, const ComplexMatrix& h_r, double beta,
           const ComplexMatrix& u, const std::string& correction) {
          return stats_dict(lab::process_stats(make_process(rho_s, h_r, beta, u),
                                               lab::Correction::parse(correction)));
        },
        py::arg("rho_s"), py::arg("h_r"), py::arg("beta"), py::arg("u"),
        py::arg("correction") = "zero");
  m.def("gamma_direct",
        [](const ComplexMatrix& rho_s, const ComplexMatrix& h_r, double beta, const ComplexMatrix& u) {
          return lab::gamma_direct(make_process(rho_s, h_r, beta, u));
        },
        py::arg("rho_s"), py::arg("h_r"), py::arg("beta"), py::arg("u"));
  m.def("heat_distribution",
        [](const ComplexMatrix& rho_s, const ComplexMatrix& h_r, double beta, const ComplexMatrix& u) {
          std::vector<std::pair<double, double>> atoms;
          for (const auto& a : lab::heat_distribution(make_process(rho_s, h_r, beta, u)).atoms) {
            atoms.emplace_back(a.q, a.probability);
          }
          return atoms;
        },
        py::arg("rho_s"), py::arg("h_r"), py::arg("beta"), py::arg("u"));

  m.def("levy_bound", &lab::levy_bound, py::arg("epsilon"), py::arg("d_s"), py::arg("d_r"));
  m.def("scaled_temperature",
        [](const lab::RealVector& energies, double beta, const std::string& regime,
           const std::string& two_level_mid) {
          lab::RealVector sorted = energies;
          std::sort(sorted.begin(), sorted.end());
          return lab::scaled_temperature(sorted, beta, lab::parse_regime(regime),
                                         lab::parse_two_level_mid(two_level_mid));
        },
        py::arg("energies"), py::arg("beta"), py::arg("regime"), py::arg("two_level_mid") = "reject");
  m.def("beta_for_target",
        [](const lab::RealVector& energies, const std::string& regime, double t_tilde,
           const std::string& two_level_mid) {
          lab::RealVector sorted = energies;
          std::sort(sorted.begin(), sorted.end());
          return lab::beta_for_target(
              sorted, {lab::parse_regime(regime), t_tilde, lab::parse_two_level_mid(two_level_mid)});
        },
        py::arg("energies"), py::arg("regime"), py::arg("t_tilde"), py::arg("two_level_mid") = "reject");

  m.def("fit_saturating_exponential",
        [](const std::vector<double>& t, const std::vector<double>& mu) {
          if (t.size() != mu.size()) throw lab::InvalidInput("t and mu differ in length");
          std::vector<lab::FitPoint> points;
          for (std::size_t i = 0; i < t.size(); ++i) points.push_back({t[i], mu[i]});
          const auto f = lab::fit_saturating_exponential(points);
          py::dict d;
          d["a"] = f.a;
          d["b"] = f.b;
          d["cov"] = std::vector<std::vector<double>>{{f.cov_aa, f.cov_ab}, {f.cov_ab, f.cov_bb}};
          d["residual_norm"] = f.residual_norm;
          d["iterations"] = f.iterations;
          d["converged"] = f.converged;
          d["degenerate"] = f.degenerate;
          return d;
        },
        py::arg("t"), py::arg("mu"));

  m.def("convex_hull_peel",
        [](const std::vector<std::pair<double, double>>& xy, double target) {
          std::vector<lab::Point2> points;
          for (const auto& [x, y] : xy) points.push_back({x, y});
          const auto peel = lab::convex_hull_peel(points, target);
          py::list layers;
          for (const auto& layer : peel.layers) layers.append(layer_dict(layer));
          py::dict d;
          d["layers"] = layers;
          d["polytope"] = layer_dict(peel.polytope);
          d["median"] = py::make_tuple(peel.median.x, peel.median.y);
          d["degenerate"] = peel.degenerate;
          return d;
        },
        py::arg("points"), py::arg("target_fraction") = 0.95);

  m.def("temperature_sweep",
        [](Index d_s, Index d_r, const std::string& regime, const std::vector<double>& t_grid,
           std::size_t n, std::uint64_t seed, const std::string& rho_s_method,
           const std::string& correction, const std::string& mode, const std::string& two_level_mid,
           const std::string& experiment, unsigned workers) {
          lab::SweepConfig c;
          c.experiment = experiment;
          c.d_s = d_s;
          c.d_r = d_r;
          c.regime = lab::parse_regime(regime);
          c.t_grid = t_grid;
          c.n = n;
          c.master_seed = seed;
          c.rho_s_method = lab::parse_state_sampling(rho_s_method);
          c.correction = lab::Correction::parse(correction);
          c.mode = lab::parse_process_mode(mode);
          c.two_level_mid = lab::parse_two_level_mid(two_level_mid);
          c.workers = workers;
          std::vector<lab::TrialRecord> records;
          {
            py::gil_scoped_release release;
            records = lab::temperature_sweep(c);
          }
          py::list out;
          for (const auto& r : records) out.append(record_dict(r));
          return out;
        },
        py::arg("d_s"), py::arg("d_r"), py::arg("regime"), py::arg("t_grid"), py::arg("n"),
        py::arg("seed"), py::arg("rho_s_method") = "induced-hs", py::arg("correction") = "zero",
        py::arg("mode") = "haar", py::arg("two_level_mid") = "reject",
        py::arg("experiment") = "sweep", py::arg("workers") = 1);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          int code = 0;
          {
            py::gil_scoped_release release;
            code = lab::cli::run(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");

  m.def("selftest",
        [](std::uint64_t seed) {
          std::vector<std::tuple<std::string, bool, std::string>> out;
          for (const auto& r : lab::run_selftest(seed)) out.emplace_back(r.name, r.passed, r.detail);
          return out;
        },
        py::arg("seed") = 2024);
}
