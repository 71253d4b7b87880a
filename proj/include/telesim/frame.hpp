#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "telesim/mac.hpp"

namespace telesim {

// EtherType as carried in the 14-byte header. Whether a value is
// "recognized" is a property of the controller's allowlist, not of the
// value itself; see ControllerConfig.
struct EtherType {
  std::uint16_t value = 0;
  auto operator<=>(const EtherType&) const = default;
  std::string to_string() const;  // "0x0800"
  static EtherType parse(std::string_view text);
};

inline constexpr std::uint16_t kEtherIpv4 = 0x0800;
inline constexpr std::uint16_t kEtherArp = 0x0806;
inline constexpr std::uint16_t kEtherLldp = 0x88cc;
inline constexpr std::uint16_t kEtherJumbo = 0x8870;

// Default controller allowlist; 0x8870 is deliberately absent.
std::set<std::uint16_t> default_recognized_ethertypes();

enum class TransportProto : std::uint8_t { Tcp, Udp, Icmp };

// Bit set of TCP flags; rendered in lowercase joined by '+' ("psh+ack").
enum TcpFlag : std::uint8_t {
  kFin = 1 << 0,
  kSyn = 1 << 1,
  kRst = 1 << 2,
  kPsh = 1 << 3,
  kAck = 1 << 4,
  kUrg = 1 << 5,
};
using TcpFlags = std::uint8_t;

std::string flags_to_string(TcpFlags flags);
TcpFlags flags_parse(std::string_view text);

std::string proto_to_string(TransportProto p);
TransportProto proto_parse(std::string_view text);

// One data-plane frame. Transport fields are abstract tags, not parsed
// IP/TCP headers; that is all the flow-table semantics need.
struct Frame {
  MacAddr src;
  MacAddr dst;
  EtherType ethertype{kEtherIpv4};
  std::optional<TransportProto> tp_proto;
  std::optional<std::uint16_t> tp_src;
  std::optional<std::uint16_t> tp_dst;
  std::optional<TcpFlags> tcp_flags;
  std::vector<std::uint8_t> payload;

  std::size_t wire_size() const { return 14 + payload.size(); }
  bool operator==(const Frame&) const = default;
};

inline constexpr std::size_t kMaxPayload = 1500;

bool is_jumbo_ethertype(EtherType t);

// Enforces the payload limit: <= 1500 bytes unless the ethertype is in the
// jumbo set.
void validate_frame(const Frame& f);

// FNV-1a over the payload; trace records carry this instead of the bytes.
std::uint32_t payload_digest(const std::vector<std::uint8_t>& payload);

}  // namespace telesim
