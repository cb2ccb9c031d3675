#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "roeflow/errors.hpp"

namespace roeflow::cli {

/// A malformed or inconsistent experiment configuration (exit code 2).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr const char* kSubcommands[] = {
    "coarse-check",     "ql-profile",      "flow-profile",  "cocycle-verify",
    "diagonalize",      "expander-preflow", "rigidity-probe"};

/// A validated experiment. `doc` is the effective configuration (with any
/// command-line seed override applied); it is what the config hash covers.
struct ExperimentConfig {
  nlohmann::json doc;
  std::string subcommand;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::filesystem::path base_dir;  // relative file paths resolve against this
};

ExperimentConfig parse_config(nlohmann::json doc, std::filesystem::path base_dir = {},
                              std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

/// FNV-1a 64 of the canonical (sorted-key, compact) JSON dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Runs the experiment and returns the files written into out_dir.
std::vector<std::filesystem::path> run(const ExperimentConfig& config,
                                       const std::filesystem::path& out_dir);

/// The command-line front end. Returns the process exit code: 0 success,
/// 2 config error, 3 size-guard refusal, 4 numeric-validation failure,
/// 1 anything else (I/O). Errors are reported as one line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace roeflow::cli
