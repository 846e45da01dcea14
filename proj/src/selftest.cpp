#include "landauer_lab/selftest.hpp"

#include "landauer_lab/concentration.hpp"
#include "landauer_lab/errors.hpp"
#include "landauer_lab/experiments.hpp"
#include "landauer_lab/fit.hpp"
#include "landauer_lab/geometry.hpp"
#include "landauer_lab/io.hpp"
#include "landauer_lab/landauer.hpp"
#include "landauer_lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace lab {

namespace {

// Each check returns its worst defect; it passes when that is within `limit`.
struct Check {
  std::string name;
  double limit;
  std::function<double()> worst;
};

ComplexMatrix random_hermitian(Index d, RandomStream& stream) {
  const ComplexMatrix g = ginibre_matrix(d, stream);
  return (g + g.adjoint()) / 2.0;
}

// exp(L) for anti-Hermitian L through the spectrum of the Hermitian -iL.
ComplexMatrix exp_anti_hermitian(const ComplexMatrix& l) {
  const auto eig = hermitian_eig(HermitianMatrix::symmetrized(Complex(0, -1) * l));
  ComplexVector phases(eig.values.size());
  for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, eig.values(k));
  const auto& v = eig.vectors.matrix();
  return v * phases.asDiagonal() * v.adjoint();
}

LandauerProcess random_process(Index d_s, Index d_r, double beta, RandomStream& stream) {
  const UnitaryMatrix u = haar_unitary(d_s * d_r, stream);
  const auto h = extract_hamiltonians(u, d_s, d_r);
  return {random_density_matrix(d_s, stream, StateSampling::induced_hs), h.reservoir, beta, u,
          h.system};
}

// Repeated hull removal using only the "inside a triangle of others" test.
std::vector<std::vector<std::size_t>> brute_force_layers(const std::vector<Point2>& pts,
                                                         double target) {
  auto vertex = [&](std::size_t i, const std::vector<std::size_t>& set) {
    auto cross = [](Point2 o, Point2 a, Point2 b) {
      return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    for (const auto a : set) {
      for (const auto b : set) {
        for (const auto c : set) {
          if (a == i || b == i || c == i || a >= b || b >= c) continue;
          const double c1 = cross(pts[a], pts[b], pts[i]);
          const double c2 = cross(pts[b], pts[c], pts[i]);
          const double c3 = cross(pts[c], pts[a], pts[i]);
          if ((c1 >= 0 && c2 >= 0 && c3 >= 0) || (c1 <= 0 && c2 <= 0 && c3 <= 0)) return false;
        }
      }
    }
    return true;
  };
  std::vector<std::size_t> remaining(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) remaining[i] = i;
  std::vector<std::vector<std::size_t>> layers;
  const auto total = static_cast<double>(pts.size());
  while (!remaining.empty() && static_cast<double>(remaining.size()) / total > target) {
    std::vector<std::size_t> layer;
    std::vector<std::size_t> rest;
    for (const auto i : remaining) (vertex(i, remaining) ? layer : rest).push_back(i);
    layers.push_back(layer);
    remaining = rest;
  }
  std::vector<std::size_t> polytope;
  for (const auto i : remaining) {
    if (vertex(i, remaining)) polytope.push_back(i);
  }
  layers.push_back(polytope);
  return layers;
}

std::vector<Check> checks(std::uint64_t seed, unsigned workers) {
  std::vector<Check> list;

  list.push_back({"eigendecomposition reconstruction (d = 8, 64, 256)", 1e-9, [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 1);
                    for (const Index d : {8, 64, 256}) {
                      const HermitianMatrix a(random_hermitian(d, stream));
                      const auto e = hermitian_eig(a);
                      const auto& v = e.vectors.matrix();
                      const double residual =
                          (a.matrix() * v - v * e.values.cast<Complex>().asDiagonal()).norm();
                      worst = std::max(worst, residual / std::max(1.0, a.matrix().norm()));
                    }
                    return worst;
                  }});

  list.push_back({"principal log of Haar unitaries exponentiates back", 1e-8, [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 2);
                    for (const Index d : {2, 6, 16}) {
                      const UnitaryMatrix u = haar_unitary(d, stream);
                      const ComplexMatrix l = matrix_log_unitary(u);
                      worst = std::max(worst, (l + l.adjoint()).norm());
                      worst = std::max(worst, (exp_anti_hermitian(l) - u.matrix()).norm());
                    }
                    return worst;
                  }});

  list.push_back({"partial trace inverts the tensor product", 1e-12, [seed] {
                    RandomStream stream(seed, 3);
                    const DensityMatrix a = random_density_matrix(3, stream, StateSampling::induced_hs);
                    const DensityMatrix b = random_density_matrix(4, stream, StateSampling::induced_hs);
                    const ComplexMatrix ab = tensor_product(a.matrix(), b.matrix());
                    return std::max(
                        (partial_trace(ab, 3, 4, Subsystem::system) - a.matrix()).norm(),
                        (partial_trace(ab, 3, 4, Subsystem::reservoir) - b.matrix()).norm());
                  }});

  list.push_back({"entropy unitary invariance and Klein inequality", 1e-9, [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 4);
                    for (int i = 0; i < 20; ++i) {
                      const DensityMatrix rho = random_density_matrix(5, stream, StateSampling::induced_hs);
                      const DensityMatrix sigma = random_density_matrix(5, stream, StateSampling::induced_hs);
                      const ComplexMatrix u = haar_unitary(5, stream).matrix();
                      const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
                      worst = std::max(worst, std::abs(von_neumann_entropy(rotated) -
                                                       von_neumann_entropy(rho)));
                      worst = std::max(worst, -relative_entropy(rho, sigma));
                    }
                    return worst;
                  }});

  list.push_back({"four-way Gamma agreement, RW equality, Jensen and trace-norm chains", 1e-8,
                  [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 5);
                    const std::pair<Index, Index> dims[] = {{2, 2}, {2, 8}, {4, 4}, {3, 5}};
                    for (const auto& [d_s, d_r] : dims) {
                      for (const double beta : {0.1, 1.0, 5.0}) {
                        const auto p = random_process(d_s, d_r, beta, stream);
                        const double g = gamma_direct(p);
                        const auto m = reduced_operators(p);
                        const double g_s = static_cast<double>(d_s) *
                                           (m.system.matrix() * p.rho_s().matrix()).trace().real();
                        const double g_r =
                            static_cast<double>(d_r) *
                            (m.reservoir.matrix() * p.rho_r().state().matrix()).trace().real();
                        const double g_q = heat_distribution(p).exponential_average(beta);
                        worst = std::max({worst, std::abs(g - g_s), std::abs(g - g_r),
                                          std::abs(g - g_q)});
                        worst = std::max(worst, std::abs(rw_equality_residual(p)));
                        worst = std::max(worst, gpm_bound(g) - beta * average_heat(p));
                        const auto dist = [](const ComplexMatrix& a, Index d) {
                          return trace_norm(HermitianMatrix::symmetrized(
                              a - ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
                        };
                        const double ms = dist(m.system.matrix(), d_s);
                        worst = std::max(worst, mu(g) - static_cast<double>(d_s) * ms);
                        worst = std::max(worst, ms - dist(p.rho_r().state().matrix(), d_r));
                      }
                    }
                    return worst;
                  }});

  list.push_back({"multi-temperature kernel matches direct evaluation", 1e-9, [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 6);
                    for (const auto& [d_s, d_r] : {std::pair<Index, Index>{2, 4}, {3, 3}}) {
                      const auto p = random_process(d_s, d_r, 1.0, stream);
                      const ProcessKernel kernel(p.unitary(), p.rho_s(), hermitian_eig(p.h_r()));
                      for (const double beta : {0.0, 0.3, 2.0}) {
                        const LandauerProcess q(p.rho_s(), p.h_r(), beta, p.unitary());
                        const auto v = kernel.evaluate(beta);
                        worst = std::max({worst, std::abs(v.gamma - gamma_direct(q)),
                                          std::abs(v.q_avg - average_heat(q)),
                                          std::abs(v.delta_s - entropy_change(q))});
                      }
                    }
                    return worst;
                  }});

  list.push_back({"Gamma = 1 for maximally mixed rho_s or beta = 0", 1e-12, [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 7);
                    for (int i = 0; i < 10; ++i) {
                      const auto p = random_process(2, 4, 1.3, stream);
                      const LandauerProcess mixed(DensityMatrix::maximally_mixed(2), p.h_r(), 1.3,
                                                  p.unitary());
                      const LandauerProcess hot(p.rho_s(), p.h_r(), 0.0, p.unitary());
                      worst = std::max({worst, std::abs(gamma_direct(mixed) - 1.0),
                                        std::abs(gamma_direct(hot) - 1.0)});
                    }
                    return worst;
                  }});

  list.push_back({"thermal operations commute with H_s + H_r and give Gamma = 1", 1e-8, [seed] {
                    double worst = 0.0;
                    RandomStream stream(seed, 8);
                    for (int i = 0; i < 10; ++i) {
                      const auto h = extract_hamiltonians(haar_unitary(8, stream), 2, 4);
                      const UnitaryMatrix u = thermal_operation(h.system, h.reservoir, stream);
                      const ComplexMatrix total =
                          tensor_product(h.system.matrix(), ComplexMatrix::Identity(4, 4)) +
                          tensor_product(ComplexMatrix::Identity(2, 2), h.reservoir.matrix());
                      worst = std::max(worst, (u.matrix() * total - total * u.matrix()).norm());
                      const LandauerProcess p(
                          random_density_matrix(2, stream, StateSampling::induced_hs), h.reservoir,
                          0.2 + stream.uniform() * 3.0, u);
                      worst = std::max(worst, std::abs(gamma_direct(p) - 1.0));
                    }
                    return worst;
                  }});

  list.push_back({"Haar second moment E|U_00|^2 = 1/4 (d = 4, 2000 draws, 4 stderr)", 4.0, [seed] {
                    std::vector<double> v;
                    for (std::uint64_t k = 0; k < 2000; ++k) {
                      RandomStream stream(seed ^ 0x5eed, k);
                      v.push_back(std::norm(haar_unitary(4, stream).matrix()(0, 0)));
                    }
                    return std::abs(stats::mean(v) - 0.25) / stats::standard_error(v);
                  }});

  list.push_back({"hull peeling matches the brute-force oracle", 0.0, [seed] {
                    double mismatches = 0.0;
                    for (std::uint64_t set = 0; set < 10; ++set) {
                      RandomStream stream(seed, 100 + set);
                      std::vector<Point2> pts(20);
                      for (auto& p : pts) p = {stream.normal(), stream.normal()};
                      const auto peel = convex_hull_peel(pts, 0.5);
                      const auto oracle = brute_force_layers(pts, 0.5);
                      std::vector<std::vector<std::size_t>> got;
                      for (const auto& l : peel.layers) got.push_back(l.indices);
                      got.push_back(peel.polytope.indices);
                      if (got.size() != oracle.size()) {
                        ++mismatches;
                        continue;
                      }
                      for (std::size_t i = 0; i < got.size(); ++i) {
                        std::sort(got[i].begin(), got[i].end());
                        if (got[i] != oracle[i]) ++mismatches;
                      }
                    }
                    return mismatches;
                  }});

  list.push_back({"saturating-exponential fit recovers noiseless parameters", 1e-6, [] {
                    std::vector<FitPoint> pts;
                    for (const double t : stats::log_grid(0.1, 10.0, 20)) {
                      pts.push_back({t, 0.5 * (1.0 - std::exp(-2.0 / t))});
                    }
                    const auto fit = fit_saturating_exponential(pts);
                    if (!fit.converged) return 1.0;
                    return std::max(std::abs(fit.a - 0.5), std::abs(fit.b - 2.0));
                  }});

  list.push_back({"Levy tail bound holds within 3 stderr (2 x 16, 200 draws)", 0.0, [seed, workers] {
                    RandomStream stream(seed, 9);
                    const auto h = extract_hamiltonians(haar_unitary(32, stream), 2, 16);
                    const auto report = tail_experiment(2, gibbs_state(h.reservoir, 1.0).state(),
                                                        200, default_epsilon_grid(), seed, workers);
                    double worst = 0.0;
                    for (const auto& p : report.points) {
                      worst = std::max(worst, p.empirical_tail - p.bound - 3 * p.standard_error);
                    }
                    return worst;
                  }});

  list.push_back({"sweep output is independent of the worker count", 0.0, [seed, workers] {
                    SweepConfig c;
                    c.experiment = "selftest";
                    c.d_s = 2;
                    c.d_r = 4;
                    c.regime = Regime::low;
                    c.t_grid = {0.5, 2.0};
                    c.n = 16;
                    c.master_seed = seed;
                    c.workers = 1;
                    std::ostringstream serial;
                    std::ostringstream threaded;
                    io::write_trials(serial, temperature_sweep(c));
                    c.workers = std::max(3u, workers);
                    io::write_trials(threaded, temperature_sweep(c));
                    return serial.str() == threaded.str() ? 0.0 : 1.0;
                  }});

  return list;
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed, unsigned workers) {
  std::vector<CheckResult> results;
  for (const auto& check : checks(seed, workers)) {
    CheckResult r{check.name, false, {}};
    try {
      const double worst = check.worst();
      r.passed = worst <= check.limit;
      r.detail = "worst " + io::format_double(worst) + " (limit " + io::format_double(check.limit) + ")";
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace lab
