#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qthermo::cli {

enum class Subcommand { bound, machine, simulate, box };
enum class Format { json, csv };
enum class Protocol { repeatability, reset, rand, perpetuum };

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;      // domain, structural, convergence
inline constexpr int kExitViolation = 2;  // audit flag raised
inline constexpr int kExitUsage = 64;

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr double kDefaultTemperature = 300.0;

struct RunConfig {
  Subcommand subcommand = Subcommand::bound;
  Format format = Format::json;
  std::uint64_t seed = kDefaultSeed;
  double temperature = kDefaultTemperature;

  // bound
  int n = 1;
  std::optional<int> n_to;  // inclusive upper end of a table over n

  // machine / simulate
  std::optional<int> dyadic;
  std::optional<std::string> file;
  std::optional<std::string> emit;
  std::uint64_t steps = 1'000'000;
  std::uint64_t start = 0;
  std::uint64_t resamples = 200;

  // box
  Protocol protocol = Protocol::perpetuum;
  bool honest = true;
  std::uint64_t trials = 1;
  bool summary_only = false;
};

// Thrown by parse_args for unknown subcommands, flags, or bad values.
struct usage_error {
  std::string message;
  bool help = false;
};

RunConfig parse_args(int argc, const char* const* argv);

// Executes a parsed config, writing the report to `out` and diagnostics to
// `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run, mapping usage errors to kExitUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qthermo::cli
