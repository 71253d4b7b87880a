#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "telesim/agents.hpp"
#include "telesim/time_types.hpp"

namespace telesim {

// Run-wide measurement state: named counters plus per-channel stats keyed
// by workload/channel label.
struct Metrics {
  SimTime duration = 0;
  std::map<std::string, std::uint64_t> counters;
  std::map<std::string, ChannelStats> channels;

  void count(const std::string& key, std::uint64_t n = 1) { counters[key] += n; }
  std::uint64_t get(const std::string& key) const {
    auto it = counters.find(key);
    return it == counters.end() ? 0 : it->second;
  }
};

// Derived report: per-channel goodput (payload bits over the run),
// channel rate (encapsulated Packet-in bytes), loss fraction, jitter, and
// every raw counter. Sorted key=value lines.
std::vector<std::pair<std::string, std::string>> metrics_summary(const Metrics& m);
std::string metrics_to_text(const Metrics& m);

}  // namespace telesim
