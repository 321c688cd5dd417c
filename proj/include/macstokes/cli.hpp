#ifndef MACSTOKES_CLI_HPP
#define MACSTOKES_CLI_HPP

/// \file cli.hpp
/// \brief Command-line front end: configuration, argument parsing and the
/// four commands (identities, spectrum, solve, taylor).
///
/// Exit codes: 0 success, 1 failed identity check, 2 usage error, 3 I/O error.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "macstokes/grid.hpp"

namespace macstokes {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Identities, Spectrum, Solve, Taylor };

std::string_view to_string(Command c);
Command parse_command(std::string_view name);

/// Every setting of one run. String-valued enums keep the spelling the user
/// gave so that a config echoes back unchanged.
struct RunConfig {
  Command command = Command::Taylor;
  int nx = 64;
  int ny = 64;
  std::string bc = "dirichlet";
  double rho = 1.0;
  double mu = 1.0;
  double dt = 0.5;
  std::string precond = "p1";
  std::string side = "auto";
  double tol = 1e-10;
  int max_iters = 500;
  std::string output_dir = "out";
  bool export_matrices = false;
  std::vector<double> eps2_list;
  std::uint64_t seed = 0;
  /// taylor: run every cell of the iteration table instead of one.
  bool table = false;
  int steps = 3;

  /// Throws UsageError on out-of-range values or unknown enum names.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Keys accepted in config files, in serialization order.
const std::vector<std::string>& config_keys();

/// Applies one key=value setting; throws UsageError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// One `key=value` per line; blank lines and lines starting with '#' are ignored.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
std::string serialize_config(const RunConfig& cfg);

/// Thrown by parse_args when help was requested; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `<command> [--config file] [--key value ...]`. Values from --config are
/// applied first and flags override them.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes the configured command, writing outputs under output_dir.
int run(const RunConfig& cfg, std::ostream& out);

/// parse_args + run with every error mapped to its exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct IdentityCheck {
  std::string name;
  double error = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// Algebraic identities of the assembled operators on one grid.
std::vector<IdentityCheck> check_identities(const GridSpec& spec);

}  // namespace macstokes

#endif  // MACSTOKES_CLI_HPP
