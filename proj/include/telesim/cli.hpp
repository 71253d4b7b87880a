#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "telesim/engine.hpp"

namespace telesim {

// Exit codes: 0 completed, 1 engine error, 2 attack blocked as designed
// (enforce mode), 64 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEngineError = 1;
inline constexpr int kExitBlocked = 2;
inline constexpr int kExitUsage = 64;

struct RunConfig {
  std::string scenario;
  std::uint64_t seed = 1;
  SimTime duration = 0;  // 0 means the scenario default
  std::string out_dir = ".";
  WatcherMode watcher = WatcherMode::Off;
};

int cmd_list(std::ostream& out);
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_detect(const std::string& trace_path, const std::string& policy_path,
               std::ostream& out, std::ostream& err);
int cmd_msc(const std::string& trace_path, const std::optional<std::string>& node,
            const std::optional<std::string>& kind, std::ostream& out,
            std::ostream& err);

}  // namespace telesim
