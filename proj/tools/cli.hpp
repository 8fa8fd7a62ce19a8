#pragma once

// Command-line front end: one verb per construction, JSON on stdout, a
// structured error line on stderr, exit 0/1 for yes/no decisions and 2 for
// errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "pmdiam/matching.hpp"

namespace pmdiam::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

struct CommandConfig {
  std::string command;  // "mdiam", "gadget tower", "solve cover", ...
  std::optional<std::string> input;   // absent or "-" reads standard input
  std::optional<std::string> output;  // absent writes standard output
  std::optional<int> height;
  std::optional<int> towers;
  std::size_t cap_matchings = kDefaultMatchingCap;
  std::optional<std::size_t> cap_search;  // solver caps; module defaults when absent
  std::string format = "json";            // json | dot | lp (circuits only)
  std::uint64_t seed = 1;
  std::string method = "cycles";  // circuit source: cycles | support
  std::optional<std::string> edge;  // "v,w" base edge for tower commands
};

/// Every subcommand, in the order the help text lists them.
const std::vector<std::string>& command_names();

/// Throws pmdiam::Error(invalid_parameter) when the config breaks its
/// invariants (unknown command, out-of-range numbers, unsupported format).
void validate(const CommandConfig& config);

/// Executes one command. `in` is read when no input path is given.
int run(const CommandConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs the selected command.
int main_entry(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pmdiam::cli
