#include "telesim/dataplane.hpp"

#include <algorithm>

#include "telesim/errors.hpp"

namespace telesim {

bool SwitchState::has_port(PortId p) const {
  return std::find(ports.begin(), ports.end(), p) != ports.end();
}

namespace {

// One lookup pass: returns effects plus whether a rule was hit.
bool lookup_pass(SwitchState& sw, PortId port, const Frame& frame, SimTime now,
                 SwitchEffects& fx, std::optional<Frame>& resubmit) {
  auto hit = match_rule(frame, port, sw.table);
  if (!hit) {
    if (sw.conn == ConnState::Connected) {
      fx.to_controller.push_back(
          msg::PacketIn{port, frame, PacketInReason::TableMiss});
    } else {
      fx.notes.push_back("miss_while_disconnected");
    }
    return false;
  }
  FlowRule& rule = sw.table[*hit];
  rule.packet_count += 1;
  rule.byte_count += frame.wire_size();
  rule.last_hit = now;
  ActionEffects afx = apply_actions(frame, rule.actions);
  for (auto& [p, f] : afx.emitted) fx.data_out.emplace_back(p, std::move(f));
  for (auto& f : afx.to_controller) {
    if (sw.conn == ConnState::Connected)
      fx.to_controller.push_back(
          msg::PacketIn{port, std::move(f), PacketInReason::Action});
  }
  resubmit = std::move(afx.resubmit);
  return true;
}

}  // namespace

SwitchEffects switch_ingress(SwitchState& sw, PortId port, const Frame& frame,
                             SimTime now) {
  SwitchEffects fx;
  if (!sw.has_port(port)) {
    fx.notes.push_back("ingress_on_unknown_port port=" + std::to_string(port));
    return fx;
  }
  std::optional<Frame> resubmit;
  lookup_pass(sw, port, frame, now, fx, resubmit);
  if (resubmit) {
    std::optional<Frame> again;
    lookup_pass(sw, port, *resubmit, now, fx, again);
    if (again) {
      // Second resubmit within one ingress event: drop the frame.
      fx.notes.push_back("resubmit_loop_dropped");
    }
  }
  return fx;
}

SwitchEffects switch_handle_control(SwitchState& sw, const ControlMessage& m,
                                    SimTime now) {
  SwitchEffects fx;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, msg::FeaturesRequest>) {
          fx.to_controller.push_back(msg::FeaturesReply{sw.dpid});
        } else if constexpr (std::is_same_v<T, msg::FlowMod>) {
          if (v.op == FlowModOp::Add) {
            FlowRule rule = v.rule;
            rule.install_time = now;
            rule.last_hit = now;
            rule.packet_count = 0;
            rule.byte_count = 0;
            auto it = std::find_if(sw.table.begin(), sw.table.end(),
                                   [&](const FlowRule& r) {
                                     return same_identity(r, rule);
                                   });
            bool redundant = it != sw.table.end();
            if (redundant)
              *it = rule;
            else
              sw.table.push_back(rule);
            fx.adds_observed.push_back({rule, redundant});
          } else {
            auto it = std::find_if(sw.table.begin(), sw.table.end(),
                                   [&](const FlowRule& r) {
                                     return same_identity(r, v.rule);
                                   });
            if (it == sw.table.end()) {
              fx.notes.push_back("unknown_rule on del_strict prio=" +
                                 std::to_string(v.rule.priority));
            } else {
              fx.deletes_observed.push_back(
                  {it->cookie, it->priority, it->match});
              sw.table.erase(it);
            }
          }
        } else if constexpr (std::is_same_v<T, msg::PacketOut>) {
          ActionEffects afx = apply_actions(v.frame, v.actions);
          for (auto& [p, f] : afx.emitted)
            fx.data_out.emplace_back(p, std::move(f));
          if (afx.resubmit) {
            // Packet-out into the lookup pipeline: one pass, no port context.
            std::optional<Frame> again;
            lookup_pass(sw, 0, *afx.resubmit, now, fx, again);
          }
        } else if constexpr (std::is_same_v<T, msg::RoleRequest>) {
          sw.role = v.role;
          fx.to_controller.push_back(msg::RoleReply{v.role});
        } else if constexpr (std::is_same_v<T, msg::Disconnect>) {
          sw.conn = ConnState::Disconnected;
          fx.notes.push_back("disconnected reason=" + v.reason);
        }
        // Hello and the remaining kinds need no switch-side action here.
      },
      m);
  return fx;
}

SwitchEffects switch_local_delete(SwitchState& sw, std::uint16_t priority,
                                  const MatchFields& match, SimTime now) {
  (void)now;
  SwitchEffects fx;
  auto it = std::find_if(sw.table.begin(), sw.table.end(),
                         [&](const FlowRule& r) {
                           return r.priority == priority && r.match == match;
                         });
  if (it == sw.table.end()) {
    fx.notes.push_back("local_delete_miss prio=" + std::to_string(priority));
    return fx;
  }
  msg::FlowRemoved rm{it->cookie, it->match, it->priority,
                      FlowRemovedReason::Delete};
  sw.table.erase(it);
  if (sw.conn == ConnState::Connected) fx.to_controller.push_back(rm);
  return fx;
}

std::vector<msg::FlowRemoved> expire_idle(SwitchState& sw, SimTime now) {
  std::vector<msg::FlowRemoved> removed;
  FlowTable keep;
  keep.reserve(sw.table.size());
  for (auto& r : sw.table) {
    if (r.idle_timeout && now - r.last_hit >= *r.idle_timeout) {
      removed.push_back(
          {r.cookie, r.match, r.priority, FlowRemovedReason::IdleTimeout});
    } else {
      keep.push_back(std::move(r));
    }
  }
  sw.table = std::move(keep);
  std::sort(removed.begin(), removed.end(),
            [](const auto& a, const auto& b) { return a.cookie < b.cookie; });
  return removed;
}

std::optional<SimTime> next_expiry(const SwitchState& sw) {
  std::optional<SimTime> t;
  for (const auto& r : sw.table) {
    if (!r.idle_timeout) continue;
    SimTime when = r.last_hit + *r.idle_timeout;
    if (!t || when < *t) t = when;
  }
  return t;
}

void validate_host_send(const HostState& h, const Frame& f) {
  validate_frame(f);
  if (!h.malicious.masquerade_macs && f.src != h.mac)
    throw SimError(h.id + ": benign host cannot masquerade src mac");
  if (!h.malicious.arbitrary_ethertype) {
    auto recognized = default_recognized_ethertypes();
    if (!recognized.contains(f.ethertype.value))
      throw SimError(h.id + ": benign host cannot send ethertype " +
                     f.ethertype.to_string());
  }
}

std::uint64_t FirewallState::drop_count() const {
  std::uint64_t n = default_verdict == Verdict::Drop ? default_hits : 0;
  for (const auto& r : rules)
    if (r.verdict == Verdict::Drop) n += r.hits;
  return n;
}

std::uint64_t FirewallState::accept_count() const {
  std::uint64_t n = default_verdict == Verdict::Accept ? default_hits : 0;
  for (const auto& r : rules)
    if (r.verdict == Verdict::Accept) n += r.hits;
  return n;
}

Verdict firewall_filter(FirewallState& fw, const Frame& frame) {
  for (auto& r : fw.rules) {
    if (r.src && *r.src != frame.src) continue;
    if (r.ethertype && *r.ethertype != frame.ethertype) continue;
    r.hits += 1;
    return r.verdict;
  }
  fw.default_hits += 1;
  return fw.default_verdict;
}

bool NidsState::observe(const Frame& frame, SimTime now) {
  // FIN probe signature: TCP with FIN set and neither SYN nor ACK.
  if (!frame.tp_proto || *frame.tp_proto != TransportProto::Tcp) return false;
  if (!frame.tcp_flags) return false;
  TcpFlags f = *frame.tcp_flags;
  if ((f & kFin) && !(f & kSyn) && !(f & kAck)) {
    alerts += 1;
    alert_times.push_back(now);
    return true;
  }
  return false;
}

}  // namespace telesim
