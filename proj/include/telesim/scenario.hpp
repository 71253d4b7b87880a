#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telesim/controller.hpp"
#include "telesim/dataplane.hpp"
#include "telesim/watcher.hpp"

namespace telesim {

struct SwitchSpec {
  std::string id;
  std::uint64_t dpid = 0;
  std::uint64_t claim = 0;  // dpid announced at connect; 0 means the real one
  std::string frontend = "c0";
  SimTime connect_at = kMillisecond;
  MaliciousSwitchFlags malicious;
  std::vector<FlowRule> preinstalled;  // operator rules present before connect
};

struct HttpServerSpec {
  std::uint16_t port = 80;
  std::string body = "<html>good</html>";
  SimTime delay = kMillisecond;
};

// Colluding host: substitutes bytes in diverted traffic and re-injects it
// toward the real destination under the original source MAC.
struct MitmHostSpec {
  std::string find = "good";
  std::string replace_with = "evil";
  MacAddr forward_src;
  MacAddr forward_dst;
  SimTime delay = kMillisecond;
};

struct HostSpec {
  std::string id;
  MacAddr mac;
  std::string attached_switch;
  PortId port = 0;
  HostMaliciousFlags malicious;
  std::optional<HttpServerSpec> http_server;
  std::optional<MitmHostSpec> mitm;
};

struct LinkSpec {
  std::string a;
  PortId a_port = 0;
  std::string b;
  PortId b_port = 0;
  std::string middlebox;  // firewall or nids id; empty for a bare link
};

struct FirewallSpec {
  std::string id;
  std::vector<FirewallRule> rules;
  Verdict default_verdict = Verdict::Drop;
};

struct NidsSpec {
  std::string id;
};

struct WorkloadSpec {
  enum class Kind : std::uint8_t { Announce, Ping, UdpStream, FinScan, HttpRequest };
  Kind kind = Kind::Ping;
  std::string label;
  std::string src_host;
  MacAddr dst;
  SimTime start = 0;
  SimTime interval = kMillisecond;
  std::size_t count = 1;
  std::size_t payload_bytes = 56;
  SimTime duration = 0;         // UdpStream
  double pps = 0.0;             // UdpStream
  std::uint16_t port_from = 0;  // FinScan
  std::uint16_t port_to = 0;
  std::optional<MacAddr> masq_base;  // FinScan with rotating spoofed sources
};

// Out-of-band forwarding channel driven by a malicious host.
struct OobTransferSpec {
  std::string src_host;
  MacAddr dst;
  MacAddr masq_base;
  bool stealth = false;
  std::size_t chunk_bytes = 1024;
  std::size_t payload_bytes = 0;  // random payload of this size (from seed)...
  std::string payload_hex;        // ...unless an explicit payload is given
  SimTime start = 50 * kMillisecond;
  SimTime frame_interval = 5 * kMillisecond;
  std::size_t repeat = 1;         // resend count (identical frames)
};

struct PathUpdateAgentSpec {
  std::size_t agent_id = 0;  // row index in the secret matrix
  std::string switch_id;
  std::string local_host;
  SimTime start = 100 * kMillisecond;
};

struct PathUpdateChannelSpec {
  std::size_t m = 2;
  std::uint64_t salt = 0x7e1e;
  SimTime announce_gap = 2 * kMillisecond;
  std::vector<PathUpdateAgentSpec> agents;
};

struct PathResetChannelSpec {
  std::string sender_switch;
  std::string receiver_switch;
  MacAddr flow_src;  // the paved pair whose rule the sender deletes
  MacAddr flow_dst;
  std::string bits = "1011";  // msb first
  SimTime slot = 100 * kMillisecond;
  SimTime first_slot = 200 * kMillisecond;
};

struct SwitchIdAgentSpec {
  std::string switch_id;
  std::size_t agent_id = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> dpid_peers;
};

struct Scenario {
  std::string name;
  std::string description;
  std::uint64_t seed = 1;
  SimTime default_duration = kSecond;

  std::vector<std::string> frontends = {"c0"};
  ControllerConfig controller;
  std::vector<SwitchSpec> switches;
  std::vector<HostSpec> hosts;
  std::vector<LinkSpec> links;
  std::vector<FirewallSpec> firewalls;
  std::vector<NidsSpec> nids;
  std::vector<WorkloadSpec> workloads;

  std::optional<PathUpdateChannelSpec> path_update;
  std::optional<PathResetChannelSpec> path_reset;
  std::vector<SwitchIdAgentSpec> switch_id_agents;
  std::optional<OobTransferSpec> oob;

  WaypointPolicy policy;
  std::optional<double> control_capacity_bps;  // token bucket; off by default

  SimTime data_latency = kMillisecond;
  SimTime ctrl_latency = 500 * kMicrosecond;
  std::size_t event_bound = 1000000;

  const HostSpec* host(const std::string& id) const;
  const HostSpec* host_by_mac(const MacAddr& mac) const;
};

struct CatalogEntry {
  std::string name;
  std::string description;
};

// Stable catalog order; one entry per reproduced attack plus the channel
// benchmark.
const std::vector<CatalogEntry>& scenario_catalog();

Scenario build_scenario(const std::string& name);

// Benign cross-check workload on the two-switch topology; used as the
// false-positive control for the watcher. Not part of the catalog.
Scenario build_benign_scenario();

// Declarative text forms. The policy file shares the same syntax.
std::string scenario_to_text(const Scenario& scn);
std::string policy_to_text(const WaypointPolicy& policy);
WaypointPolicy parse_policy_text(const std::string& text);

}  // namespace telesim
