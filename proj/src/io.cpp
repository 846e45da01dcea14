#include "landauer_lab/io.hpp"

#include "landauer_lab/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

namespace lab::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class Int>
Int parse_int(std::string_view text) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInput("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_flag(std::string_view text) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw InvalidInput("not a 0/1 flag: '" + std::string(text) + "'");
}

std::string d(double v) { return format_double(v); }

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw InternalError("format_double: buffer too small");
  return {buf.data(), ptr};
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void require_csv_safe(std::string_view field, std::string_view what) {
  if (field.find_first_of(",\"\r\n") != std::string_view::npos) {
    throw InvalidInput(std::string(what) + " must not contain commas, quotes or newlines");
  }
}

void write_trials(std::ostream& out, std::span<const TrialRecord> records) {
  out << kTrialsHeader << '\n';
  for (const auto& r : records) {
    require_csv_safe(r.experiment, "experiment name");
    out << r.experiment << ',' << r.trial << ',' << r.d_s << ',' << r.d_r << ','
        << to_string(r.regime) << ',' << d(r.t_tilde) << ',' << d(r.beta) << ','
        << to_string(r.rho_s_method) << ',' << d(r.q_avg) << ',' << d(r.delta_s) << ','
        << d(r.gamma) << ',' << d(r.gamma_bound) << ',' << d(r.mu) << ',' << d(r.omega) << ','
        << d(r.betaq_minus_gamma) << ',' << d(r.gamma_minus_omega) << ','
        << (r.skipped ? 1 : 0) << '\n';
  }
}

void write_fits(std::ostream& out, std::span<const FitRow> fits) {
  out << kFitHeader << '\n';
  for (const auto& f : fits) {
    require_csv_safe(f.experiment, "experiment name");
    out << f.experiment << ',' << f.d_s << ',' << f.d_r << ',' << to_string(f.regime) << ','
        << d(f.fit.a) << ',' << d(f.fit.b) << ',' << d(f.fit.cov_aa) << ',' << d(f.fit.cov_ab)
        << ',' << d(f.fit.cov_bb) << ',' << d(f.fit.residual_norm) << ','
        << (f.fit.converged ? 1 : 0) << '\n';
  }
}

void write_levy(std::ostream& out, const TailReport& report, double beta) {
  out << kLevyHeader << '\n';
  for (const auto& p : report.points) {
    out << report.d_s << ',' << report.d_r << ',' << d(beta) << ',' << d(p.epsilon) << ','
        << d(p.empirical_tail) << ',' << d(p.standard_error) << ',' << d(p.bound) << ','
        << report.samples << '\n';
  }
}

void write_purity(std::ostream& out, std::span<const PurityReport> reports) {
  out << kPurityHeader << '\n';
  for (const auto& r : reports) {
    require_csv_safe(r.tau_description, "tau description");
    out << r.d_s << ',' << r.d_r << ',' << r.tau_description << ',' << r.samples << ','
        << d(r.mean_purity) << ',' << d(r.purity_stderr) << ',' << d(r.pure_orbit_prediction)
        << ',' << d(r.mean_trace_distance) << ',' << d(r.trace_distance_stderr) << ','
        << d(r.trace_distance_bound) << '\n';
  }
}

void write_hull(std::ostream& out, std::string_view experiment, const HullPeel& peel) {
  require_csv_safe(experiment, "experiment name");
  out << kHullHeader << '\n';
  auto emit = [&](const HullLayer& layer, std::size_t number) {
    for (std::size_t v = 0; v < layer.vertices.size(); ++v) {
      out << experiment << ',' << number << ',' << v << ',' << d(layer.vertices[v].x) << ','
          << d(layer.vertices[v].y) << ',' << d(layer.retained_fraction) << '\n';
    }
  };
  for (std::size_t i = 0; i < peel.layers.size(); ++i) emit(peel.layers[i], i + 1);
  emit(peel.polytope, peel.layers.size() + 1);
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidInput("missing CSV column '" + std::string(name) + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("CSV input is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw InvalidInput("CSV row " + std::to_string(table.rows.size() + 1) + " has " +
                         std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

std::vector<TrialRecord> read_trials(std::istream& in) {
  const CsvTable table = read_csv(in);
  std::ostringstream header;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    header << (i ? "," : "") << table.header[i];
  }
  if (header.str() != kTrialsHeader) throw InvalidInput("trials CSV header mismatch");

  std::vector<TrialRecord> records;
  records.reserve(table.rows.size());
  for (const auto& f : table.rows) {
    TrialRecord r;
    r.experiment = f[0];
    r.trial = parse_int<std::size_t>(f[1]);
    r.d_s = parse_int<Index>(f[2]);
    r.d_r = parse_int<Index>(f[3]);
    r.regime = parse_regime(f[4]);
    r.t_tilde = parse_double(f[5]);
    r.beta = parse_double(f[6]);
    r.rho_s_method = parse_state_sampling(f[7]);
    r.q_avg = parse_double(f[8]);
    r.delta_s = parse_double(f[9]);
    r.gamma = parse_double(f[10]);
    r.gamma_bound = parse_double(f[11]);
    r.mu = parse_double(f[12]);
    r.omega = parse_double(f[13]);
    r.betaq_minus_gamma = parse_double(f[14]);
    r.gamma_minus_omega = parse_double(f[15]);
    r.skipped = parse_flag(f[16]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string raw;
  std::size_t line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("config line " + std::to_string(line_number) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw InvalidInput("config line " + std::to_string(line_number) + ": empty key");
    }
    entries.emplace_back(std::string(key), std::string(value));
  }
  return entries;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw InternalError("sha256: digest initialisation failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0 && EVP_DigestUpdate(ctx.get(), buf.data(),
                                            static_cast<std::size_t>(in.gcount())) != 1) {
      throw InternalError("sha256: digest update failed");
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
    throw InternalError("sha256: digest finalisation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << "# landauer_lab run manifest\ncommand = " << command << '\n';
  for (const auto& [key, value] : config) out << key << " = " << value << '\n';
  for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << '\n';
  for (const auto& file : files) {
    out << "# sha256 " << file.filename().string() << " = " << sha256_file(file) << '\n';
  }
  if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace lab::io
