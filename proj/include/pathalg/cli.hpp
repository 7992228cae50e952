// Command runner behind the pathalg executable: one verb over one workspace
// file, reported as text or as stable `key = value` lines.
#ifndef PATHALG_CLI_HPP
#define PATHALG_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathalg/errors.hpp"
#include "pathalg/linalg.hpp"

namespace pathalg {

enum class ReportFormat { Text, Machine };

struct CommandOptions {
  ReportFormat format = ReportFormat::Text;
  std::optional<std::string> algebra;      // restrict to one algebra
  std::optional<std::string> quiver;       // restrict to one quiver
  std::optional<std::string> rep;          // rep-convert: one representation
  std::optional<std::string> idempotents;  // decompose / present: one shipped set
  std::optional<Index> m;                  // grade
  std::optional<Index> max_paths;
  bool basis = false;                      // include basis data
  bool adjoin_unity = false;               // radical of algebras without unity
  std::uint64_t seed = 1;                  // randomized splitter
};

struct CommandResult {
  int exit_code = 0;
  std::string report;
};

/// Exit codes: 0 pass, 1 certificate false, 2 input error, 3 unsupported.
constexpr int kExitPass = 0;
constexpr int kExitCertificate = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;

int exit_code_of(const Error& e);

const std::vector<std::string>& command_verbs();

/// Runs verb on the workspace text; errors become a report and an exit code.
CommandResult run_command_text(const std::string& verb, const std::string& workspace_text, const CommandOptions& options);
CommandResult run_command(const std::string& verb, const std::string& path, const CommandOptions& options);

/// GPA_SEED when set (decimal), else the default seed.
std::uint64_t seed_from_env(std::uint64_t fallback = 1);

}  // namespace pathalg

#endif  // PATHALG_CLI_HPP
