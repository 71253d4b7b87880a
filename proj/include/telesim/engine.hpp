#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "telesim/metrics.hpp"
#include "telesim/scenario.hpp"
#include "telesim/trace.hpp"
#include "telesim/watcher.hpp"

namespace telesim {

enum class WatcherMode : std::uint8_t { Off, Observe, Enforce };

std::string watcher_mode_to_string(WatcherMode m);
WatcherMode watcher_mode_parse(std::string_view text);

struct DiscoveryEvent {
  std::size_t agent = 0;
  std::size_t peer = 0;
  MacAddr evidence_mac;   // path update: the deleted X(i,j)
  std::uint64_t evidence_dpid = 0;  // switch identification
  SimTime t = 0;
};

struct RunResult {
  TraceLog trace;
  Metrics metrics;
  std::vector<Alert> alerts;
  std::string audit_report;

  std::uint64_t waypoint_denies = 0;
  bool attack_blocked = false;  // enforce mode suppressed at least one delivery

  // Agent-side outcomes for the rendezvous and channel scenarios.
  std::map<std::size_t, std::set<std::size_t>> discovered;  // agent -> peers
  std::vector<DiscoveryEvent> discoveries;
  std::string path_reset_decoded;             // bit string seen by the receiver
  std::map<std::string, std::vector<std::uint8_t>> host_rx_payloads;
  std::vector<std::uint8_t> oob_received;     // reassembled channel payload
  std::map<std::string, ConnState> final_conn;  // switch connection states
  std::map<std::string, std::uint64_t> fw_drops;
};

// Executes the scenario deterministically until the given sim time.
// Identical (scenario, seed, until) triples produce byte-identical traces.
RunResult run_scenario(const Scenario& scn, SimTime until,
                       WatcherMode mode = WatcherMode::Off);

}  // namespace telesim
