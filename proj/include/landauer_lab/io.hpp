#pragma once

// CSV persistence for sweep records, fits, tail reports and hull layers, plus
// run manifests. Numbers are written with 17 significant digits, '.' radix and
// no locale, so every double round-trips exactly.

#include "landauer_lab/concentration.hpp"
#include "landauer_lab/experiments.hpp"
#include "landauer_lab/fit.hpp"
#include "landauer_lab/geometry.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lab::io {

inline constexpr std::string_view kTrialsHeader =
    "experiment,trial,d_s,d_r,regime,T_tilde,beta,rho_s_method,Q_avg,delta_S,Gamma,gamma,mu,"
    "omega,betaQ_minus_gamma,gamma_minus_omega,skipped";
inline constexpr std::string_view kFitHeader =
    "experiment,d_s,d_r,regime,a,b,cov_aa,cov_ab,cov_bb,residual_norm,converged";
inline constexpr std::string_view kLevyHeader = "d_s,d_r,beta,epsilon,empirical_tail,stderr,bound,n";
inline constexpr std::string_view kHullHeader = "experiment,layer,vertex_index,x,y,retained_fraction";
inline constexpr std::string_view kPurityHeader =
    "d_s,d_r,tau,n,mean_purity,stderr,expected_pure_orbit,mean_trace_distance,"
    "trace_distance_stderr,sqrt_ds_over_dr";

std::string format_double(double value);
double parse_double(std::string_view text);

struct FitRow {
  std::string experiment;
  Index d_s;
  Index d_r;
  Regime regime;
  FitResult fit;
};

void write_trials(std::ostream& out, std::span<const TrialRecord> records);
void write_fits(std::ostream& out, std::span<const FitRow> fits);
void write_levy(std::ostream& out, const TailReport& report, double beta);
void write_purity(std::ostream& out, std::span<const PurityReport> reports);
/// Peeled layers are numbered 1, 2, ...; the confidence polytope follows as
/// the last layer number.
void write_hull(std::ostream& out, std::string_view experiment, const HullPeel& peel);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws InvalidInput if absent
};

/// Plain comma-separated reader (no quoting), rejects ragged rows.
CsvTable read_csv(std::istream& in);

/// Inverse of write_trials; the header must match exactly.
std::vector<TrialRecord> read_trials(std::istream& in);

/// Flat config format: `key = value` per line, '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // re-runnable via --config
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::filesystem::path> files;

  /// `command = <subcommand>` and the config lines first, then '#' metadata
  /// and checksum lines.
  void write(const std::filesystem::path& path) const;
};

/// Checks that an identifier can be written unquoted into a CSV field.
void require_csv_safe(std::string_view field, std::string_view what);

}  // namespace lab::io
