#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "telesim/flow.hpp"
#include "telesim/trace.hpp"

namespace telesim {

enum class AlertKind : std::uint8_t {
  WaypointViolation,
  MovingMac,
  PacketInWithLiveFlow,
  DpidCollision,
  UncorrelatedPacketOut,
  StealthOob,
};

std::string alert_kind_to_string(AlertKind k);

struct Alert {
  SimTime t = 0;
  AlertKind kind = AlertKind::MovingMac;
  std::string subject;                // MAC, dpid, or node the alert is about
  std::vector<std::size_t> evidence;  // indices of the cited trace records
};

struct PolicyHost {
  MacAddr mac;
  std::string attached_switch;
  PortId port = 0;
  std::string zone;
};

// Zone partition over hosts plus the waypoints mandated between zones.
// Requirements are symmetric unless marked directed.
struct WaypointPolicy {
  std::map<std::string, PolicyHost> hosts;  // host id -> placement and zone

  struct Requirement {
    std::string zone_a;
    std::string zone_b;
    std::vector<std::string> waypoints;
    bool directed = false;
  };
  std::vector<Requirement> required;

  std::optional<std::string> zone_of_mac(const MacAddr& mac) const;
  std::optional<std::string> zone_of_port(const std::string& sw, PortId port) const;
  std::vector<std::string> waypoints_between(const std::string& from_zone,
                                             const std::string& to_zone) const;
  bool empty() const { return hosts.empty() && required.empty(); }
};

enum class WaypointVerdict : std::uint8_t { Allow, Deny };

struct PacketOutContext {
  std::string origin_switch;  // switch that raised the causal Packet-in
  MacAddr origin_src;         // frame source as reported there
  std::string egress_switch;
  PortId egress_port = 0;
  MacAddr frame_dst;
};

// Fail-closed waypoint check: a direct Packet-out can never satisfy a
// waypoint requirement, and unresolvable endpoints deny.
WaypointVerdict enforce_waypoint(const WaypointPolicy& policy,
                                 const PacketOutContext& ctx);

struct WatcherConfig {
  WaypointPolicy policy;
  // A Packet-in/Packet-out pair with no Flow-mod inside
  // [t_packet_in, t_packet_out + stealth_window] is flagged.
  SimTime stealth_window = 5 * kMillisecond;
};

// Control-channel watcher. Consumes trace records in order (online it taps
// both directions of every connection; offline it replays a trace file) and
// produces the same alerts either way.
class Watcher {
 public:
  explicit Watcher(WatcherConfig cfg) : cfg_(std::move(cfg)) {}

  // Feed one record; returns any alerts it completed. Record times must be
  // non-decreasing.
  std::vector<Alert> observe(const TraceRecord& rec);

  // Flush pending correlation windows at end of trace.
  std::vector<Alert> finish();

  const std::vector<Alert>& alerts() const { return alerts_; }

  // Alerts grouped by kind plus per-technique detection verdicts,
  // line-delimited key=value, deterministic order.
  std::string audit_report() const;

 private:
  struct WatchedRule {
    std::uint64_t cookie = 0;
    std::uint16_t priority = 0;
    MatchFields match;
    bool zombie = false;  // removed by an unexpected Flow-removed delete
  };
  struct PendingPair {
    SimTime t_in = 0;
    SimTime window_end = 0;
    std::size_t rec_in = 0;
    std::size_t rec_out = 0;
    std::string subject;
  };

  void raise(std::vector<Alert>& out, SimTime t, AlertKind kind,
             std::string subject, std::vector<std::size_t> evidence);
  MatchFields parse_match(const std::map<std::string, std::string>& kv) const;
  Frame parse_frame(const std::map<std::string, std::string>& kv) const;
  void expire_pairs(SimTime now, std::vector<Alert>& out);

  WatcherConfig cfg_;
  SimTime last_t_ = -1;
  std::size_t rec_index_ = 0;
  std::vector<Alert> alerts_;

  std::map<MacAddr, std::pair<std::string, PortId>> mac_seen_at_;
  std::map<std::string, std::vector<WatchedRule>> rules_;   // by switch node
  std::map<std::uint64_t, std::set<std::string>> dpid_claims_;
  // Packet-ins waiting for their Packet-out, keyed by (digest, len).
  std::map<std::pair<std::string, std::uint64_t>,
           std::deque<std::tuple<SimTime, std::size_t, std::string>>>
      pending_in_;
  std::vector<PendingPair> pending_pairs_;
  std::deque<SimTime> recent_flow_mods_;
};

// Helper shared by the engine and offline mode: run a whole trace through a
// fresh watcher and return every alert.
std::vector<Alert> watch_trace(const std::vector<TraceRecord>& records,
                               const WatcherConfig& cfg);

}  // namespace telesim
