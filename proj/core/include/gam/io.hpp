#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gam/constellation.hpp"
#include "gam/optimizer.hpp"

namespace gam::io {

/// Canonical constellation document:
/// {"scheme": str, "index_offset": int, "avg_power": float,
///  "points": [{"re": float, "im": float, "p": float}, ...]}
/// Doubles are printed with 17 significant digits.
std::string constellation_to_json(const Constellation& c);
/// Parses and validates; throws PreconditionError on malformed input.
Constellation constellation_from_json(std::string_view text);

void write_constellation(const std::filesystem::path& path, const Constellation& c);
Constellation read_constellation(const std::filesystem::path& path);

/// Optimization config. Keys mirror OptimizationProblem; SNR is given as
/// "snr_db", an optional PAPR bound as "papr_cap" (linear) or "papr_cap_db".
OptimizationProblem problem_from_json(std::string_view text);
std::string problem_to_json(const OptimizationProblem& p);

/// {mi_bits, iterations, converged, trace, residuals: {power, papr}, ...}
std::string diagnostics_to_json(const OptimizationProblem& p, const OptimizationResult& r);

/// One results-CSV row. Empty optionals are written as empty fields.
struct ResultRow {
  double snr_db = 0.0;
  std::string scheme;
  std::int64_t n_points = 0;
  std::optional<double> mi_bits;
  std::optional<double> mi_stderr;
  std::string method;
  double entropy_bits = 0.0;
  double papr_db = 0.0;
  std::optional<double> ser;
  std::optional<double> ser_stderr;
  std::uint64_t seed = 0;
  std::int64_t k_mc = 0;
};

inline constexpr std::string_view kCsvHeader =
    "snr_db,scheme,n_points,mi_bits,mi_stderr,method,entropy_bits,papr_db,ser,ser_stderr,seed,k_mc";

std::string format_row(const ResultRow& row);
ResultRow parse_row(std::string_view line);

/// Deterministic text for an SNR in dB, used in CSV rows and sweep keys.
std::string format_snr_db(double snr_db);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace gam::io
