#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "telesim/frame.hpp"
#include "telesim/time_types.hpp"

namespace telesim {

using PortId = std::uint32_t;

// All fields are optional wildcards. A frame matches iff every present
// field equals the frame's field; tcp_flags present means every listed
// flag is set on the frame (superset allowed).
struct MatchFields {
  std::optional<PortId> in_port;
  std::optional<MacAddr> dl_src;
  std::optional<MacAddr> dl_dst;
  std::optional<EtherType> ethertype;
  std::optional<std::uint16_t> tp_src;
  std::optional<std::uint16_t> tp_dst;
  std::optional<TcpFlags> tcp_flags;

  bool matches(const Frame& f, PortId ingress_port) const;
  bool operator==(const MatchFields&) const = default;
  // Strict ordering so rule identity (priority, match) is usable as a key.
  std::strong_ordering operator<=>(const MatchFields&) const = default;
};

namespace action {
struct Output {
  PortId port;
  auto operator<=>(const Output&) const = default;
};
struct SetDlDst {
  MacAddr mac;
  auto operator<=>(const SetDlDst&) const = default;
};
struct Resubmit {
  auto operator<=>(const Resubmit&) const = default;
};
struct Drop {
  auto operator<=>(const Drop&) const = default;
};
struct ToController {
  auto operator<=>(const ToController&) const = default;
};
}  // namespace action

using Action =
    std::variant<action::Output, action::SetDlDst, action::Resubmit,
                 action::Drop, action::ToController>;
using ActionList = std::vector<Action>;

// Checks the structural invariants: Drop stands alone; Resubmit appears at
// most once per lookup pass.
void validate_actions(const ActionList& actions);

std::string actions_to_string(const ActionList& actions);
ActionList actions_parse(std::string_view text);

struct FlowRule {
  std::uint64_t cookie = 0;
  std::uint16_t priority = 0;
  MatchFields match;
  ActionList actions;
  std::optional<SimTime> idle_timeout;
  SimTime install_time = 0;
  SimTime last_hit = 0;
  std::uint64_t packet_count = 0;
  std::uint64_t byte_count = 0;
};

// Rule identity for Add-replace and DeleteStrict is (priority, match).
inline bool same_identity(const FlowRule& a, const FlowRule& b) {
  return a.priority == b.priority && a.match == b.match;
}

}  // namespace telesim
