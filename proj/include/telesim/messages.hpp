#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "telesim/flow.hpp"
#include "telesim/frame.hpp"

namespace telesim {

// Datapath id a switch claims when connecting. Must be non-zero.
struct DatapathId {
  std::uint64_t value = 0;
  auto operator<=>(const DatapathId&) const = default;
};

enum class Role : std::uint8_t { Master, Equal, Slave };

std::string role_to_string(Role r);
Role role_parse(std::string_view text);

enum class PacketInReason : std::uint8_t { TableMiss, Action };
enum class FlowModOp : std::uint8_t { Add, DeleteStrict };
enum class FlowRemovedReason : std::uint8_t { IdleTimeout, Delete };

namespace msg {

struct Hello {};
struct FeaturesRequest {};
struct FeaturesReply {
  DatapathId dpid;
};
// Always carries the full frame; the simulator models no packet buffering.
struct PacketIn {
  PortId in_port = 0;
  Frame frame;
  PacketInReason reason = PacketInReason::TableMiss;
};
struct PacketOut {
  ActionList actions;
  Frame frame;
};
struct FlowMod {
  FlowModOp op = FlowModOp::Add;
  FlowRule rule;
};
struct FlowRemoved {
  std::uint64_t cookie = 0;
  MatchFields match;
  std::uint16_t priority = 0;
  FlowRemovedReason reason = FlowRemovedReason::IdleTimeout;
};
struct RoleRequest {
  Role role = Role::Equal;
};
struct RoleReply {
  Role role = Role::Equal;
};
struct Disconnect {
  std::string reason;
};

}  // namespace msg

using ControlMessage =
    std::variant<msg::Hello, msg::FeaturesRequest, msg::FeaturesReply,
                 msg::PacketIn, msg::PacketOut, msg::FlowMod, msg::FlowRemoved,
                 msg::RoleRequest, msg::RoleReply, msg::Disconnect>;

// Modeled control-channel sizes. Packet-in and Packet-out carry the frame
// payload plus a fixed encapsulation overhead; the other messages use flat
// constants of the trace model.
inline constexpr std::size_t kPacketInOverhead = 110;
inline constexpr std::size_t kPacketOutOverhead = 108;

std::size_t control_wire_bytes(const ControlMessage& m);

// Compact key=value rendering used inside trace records. Parseable back by
// parse_message; free of tabs and newlines.
std::string render_message(const ControlMessage& m);
ControlMessage parse_message(std::string_view text);

// Frame summary used for data-plane trace records ("frame src=... len=...").
std::string render_frame(const Frame& f);
Frame parse_frame_summary(std::string_view text);

}  // namespace telesim
