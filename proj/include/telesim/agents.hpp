#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "telesim/messages.hpp"
#include "telesim/secret.hpp"
#include "telesim/time_types.hpp"

namespace telesim {

enum class Technique : std::uint8_t { PathUpdate, PathReset, SwitchId, OobForward };

std::string technique_to_string(Technique t);

// Byte accounting for one covert channel. control_bytes_in sums
// payload+110 over the channel's Packet-ins, control_bytes_out sums
// payload+108 over its Packet-outs.
struct ChannelStats {
  std::uint64_t payload_bytes = 0;
  std::uint64_t control_bytes_in = 0;
  std::uint64_t control_bytes_out = 0;
  std::uint64_t packets_in = 0;
  std::uint64_t packets_out = 0;
  std::uint64_t offered = 0;
  std::uint64_t delivered = 0;
  std::uint64_t lost = 0;
  std::vector<SimTime> arrival_times;
  std::vector<SimTime> latency_samples;

  // Mean absolute deviation of inter-arrival deltas.
  double jitter_ns() const;
};

struct CapacityEstimate {
  double packets_per_second = 0.0;
  std::size_t control_bytes_per_packet_in = 0;
  std::size_t control_bytes_per_packet_out = 0;
};

// Sustainable Packet-in rate for a given channel rate and frame payload:
// pps = rate / (8 * (payload + 110)).
CapacityEstimate oob_capacity(double goodput_bps, std::size_t payload_bytes);

// ---------------------------------------------------------------------------
// Path update rendezvous (flow re-configuration, implicit channel).
//
// Agent i announces its row and column of the pre-shared MAC matrix; a
// Flow-delete for a row MAC X(i,j) means j stole it, so j exists. The agent
// re-announces the stolen MAC, and on a first detection also announces
// X(j,i) so the peer's own row sees a delete in turn.
// ---------------------------------------------------------------------------
class PathUpdateAgent {
 public:
  PathUpdateAgent(std::size_t id, const SecretMatrix* matrix)
      : id_(id), matrix_(matrix) {}

  std::size_t id() const { return id_; }

  // Announcements for the 2m-1 distinct MACs of row i and column i, row
  // first. Requires a learned local host to piggyback on.
  std::vector<MacAddr> start(bool local_host_learned);

  struct Reaction {
    std::vector<MacAddr> announce;
    std::optional<std::size_t> discovered_peer;
  };

  // Handler for an observed Flow-delete. Deletes outside row i are a no-op.
  Reaction on_flow_delete(const MacAddr& deleted, SimTime now);

  const std::set<std::size_t>& discovered() const { return discovered_; }

 private:
  std::size_t id_;
  const SecretMatrix* matrix_;
  std::set<std::size_t> discovered_;
  // A steal deletes both directions of the pair rules in one controller
  // event; react once per MAC per event time.
  std::map<MacAddr, SimTime> last_reaction_;
};

// ---------------------------------------------------------------------------
// Path reset channel (implicit, time slotted on/off keying).
// ---------------------------------------------------------------------------
enum class ResetAction : std::uint8_t { DeleteOwnRule, Silence };

// bit=1 removes the sender's on-path rule at the slot start, provoking a
// Flow-removed plus a table-miss driven path reset; bit=0 stays quiet.
ResetAction pr_send_bit(bool bit);

struct SlotEvent {
  bool flow_add = false;
  bool redundant = false;  // Add for a rule already present and unexpired
};

// 1 iff the receiver saw a redundant Flow-mod Add during the slot.
bool pr_decode_slot(const std::vector<SlotEvent>& events);

// Receiver-side slot bookkeeping driven by the simulation clock.
class PathResetReceiver {
 public:
  PathResetReceiver(SimTime first_slot_start, SimTime slot_length,
                    std::size_t bit_count)
      : start_(first_slot_start), slot_(slot_length), bits_(bit_count) {}

  void on_flow_add(bool redundant, SimTime now);
  std::vector<bool> decoded() const;

 private:
  SimTime start_;
  SimTime slot_;
  std::size_t bits_;
  std::map<std::size_t, std::vector<SlotEvent>> events_;
};

// ---------------------------------------------------------------------------
// Switch identification rendezvous (implicit).
// ---------------------------------------------------------------------------
struct SiOutcome {
  enum class Kind : std::uint8_t { Denied, Replaced, RoleAssigned };
  Kind kind = Kind::Denied;
  DatapathId dpid;
  Role role = Role::Master;  // meaningful for RoleAssigned
};

class SwitchIdAgent {
 public:
  SwitchIdAgent(std::size_t id, const SecretMatrix* matrix) : id_(id), matrix_(matrix) {}

  // Scenario-level shorthand when plain DPIDs are reused instead of a matrix.
  void map_dpid_to_peer(std::uint64_t dpid, std::size_t peer) {
    dpid_peers_[dpid] = peer;
  }

  // A denial, replacement, or Equal role on a claimed identity reveals the
  // peer holding it; a Master grant reveals nothing.
  std::optional<std::size_t> on_outcome(const SiOutcome& outcome);

  const std::set<std::size_t>& discovered() const { return discovered_; }

 private:
  std::optional<std::size_t> peer_of(DatapathId dpid) const;

  std::size_t id_;
  const SecretMatrix* matrix_;
  std::map<std::uint64_t, std::size_t> dpid_peers_;
  std::set<std::size_t> discovered_;
};

// ---------------------------------------------------------------------------
// Out-of-band forwarding (explicit channel).
// ---------------------------------------------------------------------------
struct OobChannelConfig {
  MacAddr dst;
  MacAddr src_base;         // masquerade base; per-chunk src = base + counter
  bool stealth = false;     // jumbo ethertype, zero Flow-mod side effects
  std::size_t chunk_bytes = 1024;  // data bytes per frame (excl. header)
  std::uint16_t plain_ethertype = kEtherIpv4;
};

// A payload that fits one chunk goes out as a single raw frame; larger
// payloads are split into frames of chunk_bytes data behind a 6-byte
// header (4-byte sequence, 2-byte total count).
std::vector<Frame> oob_send(const OobChannelConfig& cfg,
                            const std::vector<std::uint8_t>& payload);

MacAddr rotate_mac(const MacAddr& base, std::uint32_t counter);

class OobReassembler {
 public:
  explicit OobReassembler(bool framed) : framed_(framed) {}

  void on_frame(const Frame& f);
  bool complete() const;
  const std::vector<std::uint8_t>& payload() const { return buffer_; }

 private:
  bool framed_;
  std::map<std::uint32_t, std::vector<std::uint8_t>> chunks_;
  std::optional<std::uint16_t> total_;
  std::vector<std::uint8_t> buffer_;
};

}  // namespace telesim
