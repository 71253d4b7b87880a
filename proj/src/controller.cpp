#include "telesim/controller.hpp"

#include <algorithm>
#include <deque>

#include "telesim/errors.hpp"

namespace telesim {

void Topology::add_link(std::uint64_t a, PortId ap, std::uint64_t b, PortId bp) {
  links.push_back({a, ap, b, bp});
}

std::vector<std::pair<std::uint64_t, PortId>> Topology::neighbors(
    std::uint64_t dpid) const {
  std::vector<std::pair<std::uint64_t, PortId>> out;
  for (const auto& l : links) {
    if (l.a_dpid == dpid) out.emplace_back(l.b_dpid, l.a_port);
    if (l.b_dpid == dpid) out.emplace_back(l.a_dpid, l.b_port);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PortId> Topology::port_toward(std::uint64_t from,
                                            std::uint64_t to) const {
  for (const auto& [peer, port] : neighbors(from))
    if (peer == to) return port;
  return std::nullopt;
}

std::optional<std::vector<std::uint64_t>> compute_path(const Topology& topo,
                                                       std::uint64_t src_dpid,
                                                       std::uint64_t dst_dpid) {
  if (!topo.switches.contains(src_dpid) || !topo.switches.contains(dst_dpid))
    return std::nullopt;
  if (src_dpid == dst_dpid) return std::vector<std::uint64_t>{src_dpid};
  std::map<std::uint64_t, std::uint64_t> parent;
  std::deque<std::uint64_t> queue{src_dpid};
  parent[src_dpid] = src_dpid;
  while (!queue.empty()) {
    std::uint64_t cur = queue.front();
    queue.pop_front();
    for (const auto& [peer, port] : topo.neighbors(cur)) {
      (void)port;
      if (!topo.switches.contains(peer) || parent.contains(peer)) continue;
      parent[peer] = cur;
      if (peer == dst_dpid) {
        std::vector<std::uint64_t> path{dst_dpid};
        for (std::uint64_t n = dst_dpid; n != src_dpid; n = parent[n])
          path.push_back(parent[n]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(peer);
    }
  }
  return std::nullopt;
}

std::string admission_policy_to_string(AdmissionPolicy p) {
  switch (p) {
    case AdmissionPolicy::DenySecond: return "deny_second";
    case AdmissionPolicy::ReplaceFirst: return "replace_first";
    case AdmissionPolicy::CoexistRoles: return "coexist_roles";
  }
  return "?";
}

AdmissionPolicy admission_policy_parse(std::string_view text) {
  if (text == "deny_second") return AdmissionPolicy::DenySecond;
  if (text == "replace_first") return AdmissionPolicy::ReplaceFirst;
  if (text == "coexist_roles") return AdmissionPolicy::CoexistRoles;
  throw ParseError("bad admission policy: " + std::string(text));
}

ControllerCluster::IntentKey ControllerCluster::key_of(const MacAddr& x,
                                                       const MacAddr& y) {
  return x < y ? IntentKey{x, y} : IntentKey{y, x};
}

AdmissionResult ControllerCluster::admit_switch(const std::string& node,
                                                DatapathId claimed,
                                                const std::string& frontend) {
  if (claimed.value == 0) throw InvalidDpid();
  AdmissionResult res;
  auto it = admitted_.find(claimed.value);
  if (it == admitted_.end()) {
    admitted_[claimed.value] = {{node, frontend, Role::Master}};
    node_dpid_[node] = claimed.value;
    topo_.switches.insert(claimed.value);
    res.outcome = AdmissionOutcome::Accept;
    res.role = Role::Master;
    res.batch.commands.push_back({node, msg::RoleRequest{Role::Master}});
    return res;
  }
  switch (config_.policy) {
    case AdmissionPolicy::DenySecond:
      res.outcome = AdmissionOutcome::Deny;
      res.batch.commands.push_back(
          {node, msg::Disconnect{"denied_dpid_in_use"}});
      res.batch.notes.push_back("admission_denied node=" + node + " dpid=" +
                                std::to_string(claimed.value));
      break;
    case AdmissionPolicy::ReplaceFirst: {
      Member old = it->second.front();
      node_dpid_.erase(old.node);
      it->second = {{node, frontend, Role::Master}};
      node_dpid_[node] = claimed.value;
      res.outcome = AdmissionOutcome::ReplaceAndAccept;
      res.role = Role::Master;
      res.batch.commands.push_back({old.node, msg::Disconnect{"replaced"}});
      res.batch.commands.push_back({node, msg::RoleRequest{Role::Master}});
      res.batch.notes.push_back("admission_replaced old=" + old.node +
                                " new=" + node);
      break;
    }
    case AdmissionPolicy::CoexistRoles:
      it->second.push_back({node, frontend, Role::Equal});
      node_dpid_[node] = claimed.value;
      res.outcome = AdmissionOutcome::Accept;
      res.role = Role::Equal;
      res.batch.commands.push_back({node, msg::RoleRequest{Role::Equal}});
      break;
  }
  return res;
}

void ControllerCluster::drop_connection(const std::string& node) {
  auto it = node_dpid_.find(node);
  if (it == node_dpid_.end()) return;
  std::uint64_t dpid = it->second;
  node_dpid_.erase(it);
  auto& members = admitted_[dpid];
  members.erase(std::remove_if(members.begin(), members.end(),
                               [&](const Member& m) { return m.node == node; }),
                members.end());
  if (members.empty()) {
    admitted_.erase(dpid);
    topo_.switches.erase(dpid);
  }
}

bool ControllerCluster::is_admitted_node(const std::string& node) const {
  return node_dpid_.contains(node);
}

std::optional<std::uint64_t> ControllerCluster::dpid_of(
    const std::string& node) const {
  auto it = node_dpid_.find(node);
  if (it == node_dpid_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> ControllerCluster::master_node(
    std::uint64_t dpid) const {
  auto it = admitted_.find(dpid);
  if (it == admitted_.end()) return std::nullopt;
  for (const auto& m : it->second)
    if (m.role == Role::Master) return m.node;
  return it->second.empty() ? std::nullopt
                            : std::optional<std::string>(it->second.front().node);
}

void ControllerCluster::emit_flow_mod(CommandBatch& batch, std::uint64_t dpid,
                                      FlowModOp op, const FlowRule& rule) {
  if (!batch_seen_.insert({dpid, rule.priority, rule.match}).second &&
      op == FlowModOp::Add)
    return;  // at most one identical FlowMod per switch per event
  auto node = master_node(dpid);
  if (!node) {
    batch.notes.push_back("flow_mod_unroutable dpid=" + std::to_string(dpid));
    return;
  }
  batch.commands.push_back({*node, msg::FlowMod{op, rule}});
  flow_mods_sent += 1;
}

void ControllerCluster::deliver_packet_out(CommandBatch& batch,
                                           const Frame& frame,
                                           const std::string& why) {
  auto it = hosts_.find(frame.dst);
  if (it == hosts_.end()) {
    batch.notes.push_back("drop_unknown_dst " + frame.dst.to_string());
    return;
  }
  auto node = master_node(it->second.dpid);
  if (!node) {
    batch.notes.push_back("packet_out_unroutable dst=" + frame.dst.to_string());
    return;
  }
  (void)why;
  batch.commands.push_back(
      {*node, msg::PacketOut{{action::Output{it->second.port}}, frame}});
  packet_outs_sent += 1;
}

bool ControllerCluster::pave_pair(CommandBatch& batch, const MacAddr& src,
                                  const MacAddr& dst, SimTime now) {
  HostLocation src_loc = hosts_.at(src);
  HostLocation dst_loc = hosts_.at(dst);
  IntentKey key = key_of(src, dst);

  // Retire any previous record for this pair before re-paving.
  if (auto old = intents_.find(key); old != intents_.end()) {
    for (const auto& pr : old->second.paved) cookie_intent_.erase(pr.cookie);
    intents_.erase(old);
  }

  auto path = compute_path(topo_, src_loc.dpid, dst_loc.dpid);
  if (!path) {
    IntentRecord rec;
    rec.a = key.first;
    rec.b = key.second;
    rec.state = IntentState::Failed;
    intents_[key] = rec;
    return false;
  }

  IntentRecord rec;
  rec.a = key.first;
  rec.b = key.second;
  rec.state = IntentState::Installed;
  rec.expire_at = now + config_.paved_idle;

  auto pave_direction = [&](const MacAddr& from, const MacAddr& to,
                            const std::vector<std::uint64_t>& hops,
                            PortId final_port) {
    for (std::size_t i = 0; i < hops.size(); ++i) {
      PortId out;
      if (i + 1 == hops.size()) {
        out = final_port;
      } else {
        auto p = topo_.port_toward(hops[i], hops[i + 1]);
        if (!p) continue;
        out = *p;
      }
      FlowRule rule;
      rule.cookie = next_cookie_++;
      rule.priority = config_.paved_priority;
      rule.match.dl_src = from;
      rule.match.dl_dst = to;
      rule.actions = {action::Output{out}};
      rule.idle_timeout = config_.paved_idle;
      rec.paved.push_back({rule.cookie, hops[i], rule});
      cookie_intent_[rule.cookie] = key;
      emit_flow_mod(batch, hops[i], FlowModOp::Add, rule);
    }
  };

  pave_direction(src, dst, *path, dst_loc.port);
  std::vector<std::uint64_t> back(*path);
  std::reverse(back.begin(), back.end());
  pave_direction(dst, src, back, src_loc.port);

  intents_[key] = rec;
  return true;
}

CommandBatch ControllerCluster::on_packet_in(std::uint64_t dpid,
                                             const msg::PacketIn& pkt,
                                             SimTime now) {
  batch_seen_.clear();
  CommandBatch batch;
  if (!admitted_.contains(dpid)) {
    batch.notes.push_back("unknown_switch dpid=" + std::to_string(dpid));
    return batch;
  }
  packet_ins_handled += 1;
  const Frame& f = pkt.frame;

  // (1) Learn or refresh the source location; a changed attachment point is
  // a path update and fully handles the triggering frame.
  if (!f.src.multicast()) {
    HostLocation here{dpid, pkt.in_port, now};
    auto it = hosts_.find(f.src);
    if (it == hosts_.end()) {
      hosts_[f.src] = here;
    } else if (it->second.dpid != dpid || it->second.port != pkt.in_port) {
      return update_host_location(f.src, here, now, f);
    } else {
      it->second.learn_time = now;
    }
  }

  // (2) Frames the packet processor cannot identify are forwarded to a known
  // destination without touching any flow table.
  if (!config_.recognized.contains(f.ethertype.value)) {
    deliver_packet_out(batch, f, "unrecognized_ethertype");
    return batch;
  }

  // (3)/(4) Recognized ethertype: pave, reset, or deliver-only.
  auto dst_it = hosts_.find(f.dst);
  if (dst_it == hosts_.end()) {
    batch.notes.push_back("drop_unknown_dst " + f.dst.to_string());
    return batch;
  }
  auto intent_it = intents_.find(key_of(f.src, f.dst));
  if (intent_it != intents_.end() &&
      intent_it->second.state == IntentState::Installed &&
      now < intent_it->second.expire_at) {
    if (pkt.reason == PacketInReason::TableMiss) {
      // Path reset: the full rule set goes out again.
      for (const auto& pr : intent_it->second.paved)
        emit_flow_mod(batch, pr.dpid, FlowModOp::Add, pr.rule);
      intent_it->second.expire_at = now + config_.paved_idle;
    }
    deliver_packet_out(batch, f, "reset_delivery");
    return batch;
  }
  pave_pair(batch, f.src, f.dst, now);
  deliver_packet_out(batch, f, "pave_delivery");
  return batch;
}

CommandBatch ControllerCluster::update_host_location(
    const MacAddr& mac, HostLocation new_loc, SimTime now,
    const std::optional<Frame>& trigger) {
  batch_seen_.clear();
  CommandBatch batch;
  auto it = hosts_.find(mac);
  if (it == hosts_.end()) {
    hosts_[mac] = new_loc;
    return batch;
  }
  if (it->second.dpid == new_loc.dpid && it->second.port == new_loc.port) {
    it->second.learn_time = now;
    return batch;  // re-announced in place: nothing to do
  }
  std::uint64_t old_dpid = it->second.dpid;
  batch.notes.push_back("host_moved mac=" + mac.to_string() + " from=" +
                        std::to_string(old_dpid) + " to=" +
                        std::to_string(new_loc.dpid));

  // Delete every paved rule referencing the MAC at the old switch.
  for (auto& [key, intent] : intents_) {
    if (key.first != mac && key.second != mac) continue;
    std::vector<PavedRule> keep;
    for (auto& pr : intent.paved) {
      bool refs = (pr.rule.match.dl_src && *pr.rule.match.dl_src == mac) ||
                  (pr.rule.match.dl_dst && *pr.rule.match.dl_dst == mac);
      if (pr.dpid == old_dpid && refs) {
        emit_flow_mod(batch, old_dpid, FlowModOp::DeleteStrict, pr.rule);
        cookie_intent_.erase(pr.cookie);
      } else {
        keep.push_back(pr);
      }
    }
    intent.paved = std::move(keep);
  }

  hosts_[mac] = new_loc;

  // Re-add rules for the MAC's active peers at the new switch.
  for (auto& [key, intent] : intents_) {
    if (intent.state != IntentState::Installed) continue;
    if (key.first != mac && key.second != mac) continue;
    MacAddr peer = key.first == mac ? key.second : key.first;
    auto ploc = hosts_.find(peer);
    if (ploc == hosts_.end()) continue;

    auto add_rule = [&](const MacAddr& from, const MacAddr& to, PortId out) {
      FlowRule rule;
      rule.cookie = next_cookie_++;
      rule.priority = config_.paved_priority;
      rule.match.dl_src = from;
      rule.match.dl_dst = to;
      rule.actions = {action::Output{out}};
      rule.idle_timeout = config_.paved_idle;
      intent.paved.push_back({rule.cookie, new_loc.dpid, rule});
      cookie_intent_[rule.cookie] = key;
      emit_flow_mod(batch, new_loc.dpid, FlowModOp::Add, rule);
    };

    // mac -> peer: out toward the peer (or its port on a shared switch).
    if (ploc->second.dpid == new_loc.dpid) {
      add_rule(mac, peer, ploc->second.port);
    } else if (auto path = compute_path(topo_, new_loc.dpid, ploc->second.dpid);
               path && path->size() >= 2) {
      if (auto p = topo_.port_toward(new_loc.dpid, (*path)[1]))
        add_rule(mac, peer, *p);
    }
    // peer -> mac: deliver on the MAC's new port.
    add_rule(peer, mac, new_loc.port);
    intent.expire_at = now + config_.paved_idle;
  }

  if (trigger) deliver_packet_out(batch, *trigger, "path_update_delivery");
  return batch;
}

CommandBatch ControllerCluster::on_flow_removed(std::uint64_t dpid,
                                                const msg::FlowRemoved& rm,
                                                SimTime now) {
  batch_seen_.clear();
  CommandBatch batch;
  if (!admitted_.contains(dpid)) {
    batch.notes.push_back("unknown_switch dpid=" + std::to_string(dpid));
    return batch;
  }
  auto ci = cookie_intent_.find(rm.cookie);
  if (ci == cookie_intent_.end()) return batch;
  auto it = intents_.find(ci->second);
  if (it == intents_.end() || it->second.state != IntentState::Installed)
    return batch;
  for (const auto& pr : it->second.paved) {
    if (pr.cookie != rm.cookie) continue;
    emit_flow_mod(batch, pr.dpid, FlowModOp::Add, pr.rule);
    it->second.expire_at = now + config_.paved_idle;
    break;
  }
  return batch;
}

std::optional<IntentRecord> ControllerCluster::intent_between(
    const MacAddr& x, const MacAddr& y) const {
  auto it = intents_.find(key_of(x, y));
  if (it == intents_.end()) return std::nullopt;
  return it->second;
}

std::size_t ControllerCluster::installed_intent_count() const {
  std::size_t n = 0;
  for (const auto& [k, v] : intents_)
    if (v.state == IntentState::Installed) ++n;
  return n;
}

std::size_t ControllerCluster::failed_intent_count() const {
  std::size_t n = 0;
  for (const auto& [k, v] : intents_)
    if (v.state == IntentState::Failed) ++n;
  return n;
}

}  // namespace telesim
