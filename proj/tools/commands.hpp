#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace holonomy::cli {

struct Flags {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> csv;
  bool assume_flat = false;
  bool verify_ad = false;
  std::string group = "Z";
  std::optional<std::string> path;
  std::optional<std::string> i0;
  std::optional<std::string> matrix;
};

struct CommandResult {
  int exit_code = 0;
  std::string report;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Dispatches one of flatness, transport, monodromy, abphase, wong, vacua,
/// ym-energy, verify. Errors are caught and mapped to exit codes.
CommandResult run_subcommand(const std::string& name, const std::optional<SceneConfig>& config,
                             const Flags& flags);

/// 1 for numerical breakdowns, 2 for everything the caller could fix.
int exit_code_for(ErrorCode code);

}  // namespace holonomy::cli
