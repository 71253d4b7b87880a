#include "telesim/table.hpp"

#include "telesim/errors.hpp"

namespace telesim {

std::optional<std::size_t> match_rule(const Frame& frame, PortId in_port,
                                      const FlowTable& table) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const FlowRule& r = table[i];
    if (!r.match.matches(frame, in_port)) continue;
    if (!best) {
      best = i;
      continue;
    }
    const FlowRule& b = table[*best];
    if (r.priority > b.priority ||
        (r.priority == b.priority && r.install_time < b.install_time)) {
      best = i;
    }
  }
  return best;
}

ActionEffects apply_actions(const Frame& frame, const ActionList& actions) {
  validate_actions(actions);
  ActionEffects fx;
  Frame current = frame;
  for (const auto& a : actions) {
    std::visit(
        [&](const auto& act) {
          using T = std::decay_t<decltype(act)>;
          if constexpr (std::is_same_v<T, action::Output>) {
            fx.emitted.emplace_back(act.port, current);
          } else if constexpr (std::is_same_v<T, action::SetDlDst>) {
            current.dst = act.mac;
          } else if constexpr (std::is_same_v<T, action::Resubmit>) {
            fx.resubmit = current;
          } else if constexpr (std::is_same_v<T, action::ToController>) {
            fx.to_controller.push_back(current);
          }
          // Drop: nothing emitted.
        },
        a);
  }
  return fx;
}

}  // namespace telesim
