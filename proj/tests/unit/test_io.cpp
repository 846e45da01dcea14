#include "landauer_lab/errors.hpp"
#include "landauer_lab/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace lab {
namespace {

namespace fs = std::filesystem;

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("landauer_lab_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(FormatDouble, RoundTripsExactly) {
  for (const double x : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23,
                         std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()}) {
    EXPECT_EQ(io::parse_double(io::format_double(x)), x) << io::format_double(x);
  }
  EXPECT_TRUE(std::isnan(io::parse_double(io::format_double(std::nan("")))));
  EXPECT_EQ(io::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_THROW(io::parse_double("1.0x"), InvalidInput);
  EXPECT_THROW(io::parse_double(""), InvalidInput);
}

TEST(Headers, ExactColumnNames) {
  EXPECT_EQ(io::kTrialsHeader,
            "experiment,trial,d_s,d_r,regime,T_tilde,beta,rho_s_method,Q_avg,delta_S,Gamma,gamma,"
            "mu,omega,betaQ_minus_gamma,gamma_minus_omega,skipped");
  EXPECT_EQ(io::kFitHeader, "experiment,d_s,d_r,regime,a,b,cov_aa,cov_ab,cov_bb,residual_norm,converged");
  EXPECT_EQ(io::kLevyHeader, "d_s,d_r,beta,epsilon,empirical_tail,stderr,bound,n");
  EXPECT_EQ(io::kHullHeader, "experiment,layer,vertex_index,x,y,retained_fraction");
}

TEST(WriteTrials, RoundTripsThroughReadTrials) {
  SweepConfig c;
  c.d_s = 2;
  c.d_r = 3;
  c.t_grid = {0.5, 2.0};
  c.n = 5;
  c.master_seed = 4;
  auto records = temperature_sweep(c);
  records[3].skipped = true;
  records[3].gamma = std::numeric_limits<double>::quiet_NaN();
  std::ostringstream out;
  io::write_trials(out, records);
  EXPECT_EQ(first_line(out.str()), io::kTrialsHeader);
  EXPECT_EQ(line_count(out.str()), 11u);

  std::istringstream in(out.str());
  const auto back = io::read_trials(in);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].trial, records[i].trial);
    EXPECT_EQ(back[i].t_tilde, records[i].t_tilde);
    EXPECT_EQ(back[i].beta, records[i].beta);
    EXPECT_EQ(back[i].q_avg, records[i].q_avg);
    EXPECT_EQ(back[i].mu, records[i].mu);
    EXPECT_EQ(back[i].skipped, records[i].skipped);
    EXPECT_EQ(back[i].rho_s_method, records[i].rho_s_method);
  }
  EXPECT_TRUE(std::isnan(back[3].gamma));

  std::ostringstream again;
  io::write_trials(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(ReadTrials, RejectsWrongHeaderAndRaggedRows) {
  std::istringstream wrong("experiment,trial\nx,1\n");
  EXPECT_THROW(io::read_trials(wrong), InvalidInput);
  std::istringstream ragged("a,b,c\n1,2,3\n1,2\n");
  EXPECT_THROW(io::read_csv(ragged), InvalidInput);
  std::istringstream ok("a,b\n1,2\n\n3,4\n");
  const auto t = io::read_csv(ok);
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_THROW(t.column("c"), InvalidInput);
}

TEST(WriteFits, OneRowPerFit) {
  FitResult f;
  f.a = 0.25;
  f.b = 1.5;
  f.converged = true;
  const std::vector<io::FitRow> rows = {{"sweep", 2, 2, Regime::mid, f}};
  std::ostringstream out;
  io::write_fits(out, rows);
  std::istringstream in(out.str());
  const auto t = io::read_csv(in);
  EXPECT_EQ(t.header.size(), 11u);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][t.column("a")], "0.25");
  EXPECT_EQ(t.rows[0][t.column("regime")], "mid");
  EXPECT_EQ(t.rows[0][t.column("converged")], "1");
}

TEST(WriteLevy, OneRowPerEpsilon) {
  TailReport r;
  r.d_s = 2;
  r.d_r = 16;
  r.samples = 100;
  r.points = {{0.1, 0.45, 0.2, 0.04, 1.5}, {0.2, 0.55, 0.0, 0.0, 1.2}};
  std::ostringstream out;
  io::write_levy(out, r, 1.0);
  std::istringstream in(out.str());
  const auto t = io::read_csv(in);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][t.column("epsilon")], "0.20000000000000001");
  EXPECT_EQ(t.rows[1][t.column("n")], "100");
}

TEST(WriteHull, PolytopeIsTheLastLayer) {
  std::vector<Point2> p = {{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 1}, {3, 1}, {2, 3}, {2, 2}};
  const auto peel = convex_hull_peel(p, 0.9);
  ASSERT_EQ(peel.layers.size(), 1u);
  std::ostringstream out;
  io::write_hull(out, "bounds", peel);
  std::istringstream in(out.str());
  const auto t = io::read_csv(in);
  ASSERT_EQ(t.rows.size(), 4u + 3u);
  EXPECT_EQ(t.rows.front()[t.column("layer")], "1");
  EXPECT_EQ(t.rows.back()[t.column("layer")], "2");
  EXPECT_EQ(t.rows.back()[t.column("retained_fraction")], "0.5");
  EXPECT_THROW(io::write_hull(out, "a,b", peel), InvalidInput);
}

TEST(WritePurity, HeaderAndValues) {
  PurityReport r;
  r.d_s = 2;
  r.d_r = 8;
  r.tau_description = "pure";
  r.samples = 1000;
  r.pure_orbit_prediction = 10.0 / 17.0;
  std::ostringstream out;
  io::write_purity(out, std::vector<PurityReport>{r});
  EXPECT_EQ(first_line(out.str()), io::kPurityHeader);
  EXPECT_EQ(line_count(out.str()), 2u);
}

TEST(ParseConfig, KeyValueLinesAndComments) {
  std::istringstream in("# comment\n\n ds = 4 \nregime=high\nexperiment = a b\n");
  const auto e = io::parse_config(in);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0], (std::pair<std::string, std::string>{"ds", "4"}));
  EXPECT_EQ(e[1], (std::pair<std::string, std::string>{"regime", "high"}));
  EXPECT_EQ(e[2].second, "a b");
  std::istringstream bad("ds 4\n");
  EXPECT_THROW(io::parse_config(bad), InvalidInput);
  std::istringstream empty_key(" = 4\n");
  EXPECT_THROW(io::parse_config(empty_key), InvalidInput);
}

TEST(Sha256File, KnownDigest) {
  const fs::path dir = scratch_dir("sha");
  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  EXPECT_EQ(io::sha256_file(dir / "abc.txt"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  std::ofstream(dir / "empty.txt", std::ios::binary).close();
  EXPECT_EQ(io::sha256_file(dir / "empty.txt"),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_THROW(io::sha256_file(dir / "missing"), InvalidInput);
}

TEST(RunManifest, ConfigLinesParseBackAndChecksumsAreComments) {
  const fs::path dir = scratch_dir("manifest");
  std::ofstream(dir / "data.csv") << "abc";
  io::RunManifest m;
  m.command = "sweep";
  m.config = {{"ds", "2"}, {"seed", "7"}};
  m.metadata = {{"version", "0.1.0"}};
  m.files = {dir / "data.csv"};
  m.write(dir / "manifest.txt");
  std::ifstream in(dir / "manifest.txt");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NE(text.str().find("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"),
            std::string::npos);
  std::istringstream again(text.str());
  auto expected = m.config;
  expected.insert(expected.begin(), {"command", "sweep"});
  EXPECT_EQ(io::parse_config(again), expected);
}

}  // namespace
}  // namespace lab
