#include "telesim/flow.hpp"

#include "telesim/errors.hpp"

namespace telesim {

bool MatchFields::matches(const Frame& f, PortId ingress_port) const {
  if (in_port && *in_port != ingress_port) return false;
  if (dl_src && *dl_src != f.src) return false;
  if (dl_dst && *dl_dst != f.dst) return false;
  if (ethertype && *ethertype != f.ethertype) return false;
  if (tp_src && (!f.tp_src || *tp_src != *f.tp_src)) return false;
  if (tp_dst && (!f.tp_dst || *tp_dst != *f.tp_dst)) return false;
  if (tcp_flags) {
    if (!f.tcp_flags) return false;
    if ((*f.tcp_flags & *tcp_flags) != *tcp_flags) return false;
  }
  return true;
}

void validate_actions(const ActionList& actions) {
  bool has_drop = false;
  int resubmits = 0;
  for (const auto& a : actions) {
    if (std::holds_alternative<action::Drop>(a)) has_drop = true;
    if (std::holds_alternative<action::Resubmit>(a)) ++resubmits;
  }
  if (has_drop && actions.size() > 1)
    throw SimError("drop action must stand alone");
  if (resubmits > 1) throw ResubmitLoop();
}

std::string actions_to_string(const ActionList& actions) {
  if (actions.empty()) return "none";
  std::string out;
  for (const auto& a : actions) {
    if (!out.empty()) out += ',';
    std::visit(
        [&out](const auto& act) {
          using T = std::decay_t<decltype(act)>;
          if constexpr (std::is_same_v<T, action::Output>)
            out += "output:" + std::to_string(act.port);
          else if constexpr (std::is_same_v<T, action::SetDlDst>)
            out += "set_dl_dst:" + act.mac.to_string();
          else if constexpr (std::is_same_v<T, action::Resubmit>)
            out += "resubmit";
          else if constexpr (std::is_same_v<T, action::Drop>)
            out += "drop";
          else
            out += "to_controller";
        },
        a);
  }
  return out;
}

ActionList actions_parse(std::string_view text) {
  ActionList out;
  if (text == "none") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    std::string_view tok =
        text.substr(pos, next == std::string_view::npos ? next : next - pos);
    if (tok.starts_with("output:")) {
      out.push_back(action::Output{
          static_cast<PortId>(std::stoul(std::string(tok.substr(7))))});
    } else if (tok.starts_with("set_dl_dst:")) {
      out.push_back(action::SetDlDst{MacAddr::parse(tok.substr(11))});
    } else if (tok == "resubmit") {
      out.push_back(action::Resubmit{});
    } else if (tok == "drop") {
      out.push_back(action::Drop{});
    } else if (tok == "to_controller") {
      out.push_back(action::ToController{});
    } else {
      throw ParseError("bad action: " + std::string(tok));
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace telesim
