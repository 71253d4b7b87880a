#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "telesim/messages.hpp"
#include "telesim/table.hpp"
#include "telesim/time_types.hpp"

namespace telesim {

enum class ConnState : std::uint8_t { Disconnected, Connecting, Connected };

// What a compromised switch is allowed to do on top of the benign state
// machine. Behavior itself lives in the agent callbacks, never in forked
// switch code.
struct MaliciousSwitchFlags {
  bool inject_packet_in = false;
  bool ignore_rules = false;
  std::vector<std::uint64_t> claim_dpid;  // identities it may claim
  bool local_rewrite_rules = false;       // may hold operator-installed rules
};

struct SwitchState {
  std::string id;      // node id, e.g. "s1"
  DatapathId dpid;     // the claimed id
  std::vector<PortId> ports;
  FlowTable table;
  ConnState conn = ConnState::Disconnected;
  Role role = Role::Equal;
  MaliciousSwitchFlags malicious;

  bool has_port(PortId p) const;
};

struct ObservedDelete {
  std::uint64_t cookie = 0;
  std::uint16_t priority = 0;
  MatchFields match;
};

struct ObservedAdd {
  FlowRule rule;
  bool redundant = false;  // identical (priority, match) was already present
};

// Everything one dataplane step asked its surroundings to do. The engine
// turns these into scheduled events; agents read the observation lists.
struct SwitchEffects {
  std::vector<std::pair<PortId, Frame>> data_out;
  std::vector<ControlMessage> to_controller;
  std::vector<std::string> notes;
  std::vector<ObservedDelete> deletes_observed;
  std::vector<ObservedAdd> adds_observed;
};

// Frame arrival on a switch port: flow-table lookup with at most one
// resubmit pass; a table miss becomes a full-frame Packet-in.
SwitchEffects switch_ingress(SwitchState& sw, PortId port, const Frame& frame,
                             SimTime now);

// Controller-to-switch message processing. DeleteStrict removes exactly the
// identified rule and emits no Flow-removed. A DeleteStrict miss is a trace
// note, not a failure.
SwitchEffects switch_handle_control(SwitchState& sw, const ControlMessage& m,
                                    SimTime now);

// Local (operator or agent initiated) removal of a rule. Unlike a
// controller DeleteStrict this one notifies the controller.
SwitchEffects switch_local_delete(SwitchState& sw, std::uint16_t priority,
                                  const MatchFields& match, SimTime now);

// Removes every rule whose idle timeout elapsed (now - last_hit >= timeout)
// and returns the Flow-removed notifications, ordered by cookie ascending.
std::vector<msg::FlowRemoved> expire_idle(SwitchState& sw, SimTime now);

// Earliest pending idle expiry, if any rule has a timeout.
std::optional<SimTime> next_expiry(const SwitchState& sw);

struct HostMaliciousFlags {
  bool masquerade_macs = false;
  bool arbitrary_ethertype = false;
};

struct HostState {
  std::string id;
  MacAddr mac;
  std::string attached_switch;
  PortId attached_port = 0;
  HostMaliciousFlags malicious;
};

// A benign host only ever sources frames from its own MAC with a
// recognized ethertype; violations are caught at send time.
void validate_host_send(const HostState& h, const Frame& f);

enum class Verdict : std::uint8_t { Accept, Drop };

struct FirewallRule {
  std::optional<MacAddr> src;
  std::optional<EtherType> ethertype;
  Verdict verdict = Verdict::Drop;
  std::uint64_t hits = 0;
};

// Transparent bump-in-the-wire filter on one link. First matching rule
// decides; the default verdict applies otherwise.
struct FirewallState {
  std::string id;
  std::vector<FirewallRule> rules;
  Verdict default_verdict = Verdict::Drop;
  std::uint64_t default_hits = 0;

  std::uint64_t drop_count() const;
  std::uint64_t accept_count() const;
};

Verdict firewall_filter(FirewallState& fw, const Frame& frame);

// Passive FIN-scan detector attached to a link (observe only, never drops).
struct NidsState {
  std::string id;
  std::uint64_t alerts = 0;
  std::vector<SimTime> alert_times;

  bool observe(const Frame& frame, SimTime now);
};

}  // namespace telesim
