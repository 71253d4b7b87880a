#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "telesim/messages.hpp"
#include "telesim/time_types.hpp"

namespace telesim {

struct HostLocation {
  std::uint64_t dpid = 0;
  PortId port = 0;
  SimTime learn_time = 0;
  bool operator==(const HostLocation&) const = default;
};

// Scenario-declared switch graph. Links are undirected; mutation happens
// only at admission/disconnection and scenario setup.
struct Topology {
  std::set<std::uint64_t> switches;

  struct Link {
    std::uint64_t a_dpid;
    PortId a_port;
    std::uint64_t b_dpid;
    PortId b_port;
  };
  std::vector<Link> links;

  void add_link(std::uint64_t a, PortId ap, std::uint64_t b, PortId bp);
  // Neighbors of a switch in ascending dpid order, with the local egress port.
  std::vector<std::pair<std::uint64_t, PortId>> neighbors(std::uint64_t dpid) const;
  std::optional<PortId> port_toward(std::uint64_t from, std::uint64_t to) const;
};

// Shortest path by hop count, breadth-first, expanding neighbors in
// ascending dpid order so equal-length ties resolve deterministically.
// Returns the inclusive dpid list, or nullopt if disconnected.
std::optional<std::vector<std::uint64_t>> compute_path(const Topology& topo,
                                                       std::uint64_t src_dpid,
                                                       std::uint64_t dst_dpid);

enum class AdmissionPolicy : std::uint8_t {
  DenySecond,
  ReplaceFirst,
  CoexistRoles
};

std::string admission_policy_to_string(AdmissionPolicy p);
AdmissionPolicy admission_policy_parse(std::string_view text);

enum class IntentState : std::uint8_t { Installed, Failed };

struct PavedRule {
  std::uint64_t cookie = 0;
  std::uint64_t dpid = 0;
  FlowRule rule;  // priority/match/actions/idle as sent in the FlowMod
};

struct IntentRecord {
  MacAddr a;  // normalized: a < b
  MacAddr b;
  IntentState state = IntentState::Failed;
  std::vector<PavedRule> paved;  // empty iff state == Failed
  SimTime expire_at = 0;
};

struct ControllerConfig {
  AdmissionPolicy policy = AdmissionPolicy::DenySecond;
  std::set<std::uint16_t> recognized = default_recognized_ethertypes();
  std::uint16_t paved_priority = 100;
  SimTime paved_idle = 10 * kSecond;
  bool distributed = false;
};

// A command addressed to one switch connection.
struct Command {
  std::string target_node;
  ControlMessage msg;
};

struct CommandBatch {
  std::vector<Command> commands;
  std::vector<std::string> notes;
};

enum class AdmissionOutcome : std::uint8_t { Accept, Deny, ReplaceAndAccept };

struct AdmissionResult {
  AdmissionOutcome outcome = AdmissionOutcome::Accept;
  Role role = Role::Master;  // role granted to the claimant when accepted
  CommandBatch batch;
};

// The trusted, logically centralized control plane. In distributed mode two
// frontends share this one store with zero visibility latency.
class ControllerCluster {
 public:
  explicit ControllerCluster(ControllerConfig config) : config_(std::move(config)) {}

  const ControllerConfig& config() const { return config_; }
  Topology& topology() { return topo_; }
  const Topology& topology() const { return topo_; }

  // Switch admission after Hello/Features-request completed. Applies the
  // configured collision policy; every decision carries the Role-request
  // (or Disconnect) messages for the affected connections.
  AdmissionResult admit_switch(const std::string& node, DatapathId claimed,
                               const std::string& frontend);

  void drop_connection(const std::string& node);
  bool is_admitted_node(const std::string& node) const;
  std::optional<std::uint64_t> dpid_of(const std::string& node) const;
  std::optional<std::string> master_node(std::uint64_t dpid) const;

  // Reactive core: learn/refresh the source location, then either relocate
  // (path update), deliver without rules (unrecognized ethertype), pave,
  // or reset an existing path.
  CommandBatch on_packet_in(std::uint64_t dpid, const msg::PacketIn& pkt,
                            SimTime now);

  // Repair: if the removed rule belongs to an installed intent, re-issue
  // its FlowMod Add on that switch.
  CommandBatch on_flow_removed(std::uint64_t dpid, const msg::FlowRemoved& rm,
                               SimTime now);

  // Relocates a learned host: deletes every rule referencing the MAC at the
  // old switch, re-adds rules for its active peers at the new one, and (when
  // a triggering frame is supplied) delivers it toward its destination.
  CommandBatch update_host_location(const MacAddr& mac, HostLocation new_loc,
                                    SimTime now,
                                    const std::optional<Frame>& trigger = {});

  const std::map<MacAddr, HostLocation>& hosts() const { return hosts_; }
  void learn_host(const MacAddr& mac, HostLocation loc) { hosts_[mac] = loc; }

  std::optional<IntentRecord> intent_between(const MacAddr& x, const MacAddr& y) const;
  std::size_t installed_intent_count() const;
  std::size_t failed_intent_count() const;

  // Counters for metrics.
  std::uint64_t packet_ins_handled = 0;
  std::uint64_t flow_mods_sent = 0;
  std::uint64_t packet_outs_sent = 0;

 private:
  using IntentKey = std::pair<MacAddr, MacAddr>;
  static IntentKey key_of(const MacAddr& x, const MacAddr& y);

  struct Member {
    std::string node;
    std::string frontend;
    Role role;
  };

  void deliver_packet_out(CommandBatch& batch, const Frame& frame,
                          const std::string& why);
  bool pave_pair(CommandBatch& batch, const MacAddr& src, const MacAddr& dst,
                 SimTime now);
  void emit_flow_mod(CommandBatch& batch, std::uint64_t dpid, FlowModOp op,
                     const FlowRule& rule);
  void count_batch(const CommandBatch& batch);

  ControllerConfig config_;
  Topology topo_;
  std::map<MacAddr, HostLocation> hosts_;
  std::map<std::uint64_t, std::vector<Member>> admitted_;
  std::map<std::string, std::uint64_t> node_dpid_;
  std::map<IntentKey, IntentRecord> intents_;
  std::map<std::uint64_t, IntentKey> cookie_intent_;
  std::uint64_t next_cookie_ = 1;
  // Per-event FlowMod dedupe: (dpid, priority, match) seen in current batch.
  std::set<std::tuple<std::uint64_t, std::uint16_t, MatchFields>> batch_seen_;
};

}  // namespace telesim
