#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gam/constellation.hpp"

namespace gam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the `gam` command line. Never throws; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a", "a,b,c" or "start:step:stop" (inclusive) in dB.
std::vector<double> parse_snr_list(std::string_view text);

/// Scheme descriptor shared by gen, ser and sweep.
struct SchemeArgs {
  std::string scheme;
  std::int64_t n = 0;
  std::int64_t n_low = 0;
  std::int64_t n_high = 0;
  std::optional<double> entropy_bits;
  std::optional<double> xi;
  double power = 1.0;
};

Constellation make_scheme(const SchemeArgs& a);

}  // namespace gam::cli
