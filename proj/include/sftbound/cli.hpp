#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace sftb::cli {

enum class Command { analyze, entropy, pinsker, transfer_decay, verify, hole, model_dim };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  Command command = Command::analyze;
  std::string matrix_path;
  std::string model_path;     // preset name or model file
  std::string measure_path;   // optional, `entropy`
  std::string function_path;  // optional, `verify`
  std::string word;           // optional, `hole`
  double theta = 2.0;
  int depth = 2;
  int samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string output_path;  // writes <out>.json and <out>.csv when set
  int max_hole_depth = 3;
  double x0 = 0.0;
  double delta = 0.125;
};

/// Runs one command. The summary JSON goes to `out`; diagnostics to `err`.
/// Returns 0 on success, 1 when an asserted inequality fails, 2 on bad input.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sftb::cli
