#pragma once

#include <optional>
#include <vector>

#include "telesim/flow.hpp"

namespace telesim {

using FlowTable = std::vector<FlowRule>;

// Selects the matching rule of highest priority; ties go to the earliest
// installed rule (install_time, then table position). Returns the rule's
// index, or nullopt on table miss. Pure function of its arguments.
std::optional<std::size_t> match_rule(const Frame& frame, PortId in_port,
                                      const FlowTable& table);

// What one lookup pass asked the switch to do with a frame.
struct ActionEffects {
  std::vector<std::pair<PortId, Frame>> emitted;  // frames per egress port
  std::vector<Frame> to_controller;               // Packet-in submissions
  std::optional<Frame> resubmit;                  // one extra lookup pass
};

// Applies an action list to a frame. SetDlDst works on a running copy (the
// input frame is untouched); Output emits the current copy; Drop emits
// nothing; ToController submits the current copy; Resubmit requests one
// additional lookup pass with the modified frame.
ActionEffects apply_actions(const Frame& frame, const ActionList& actions);

}  // namespace telesim
