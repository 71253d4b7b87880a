#include "telesim/messages.hpp"

#include "telesim/errors.hpp"

namespace telesim {

std::string role_to_string(Role r) {
  switch (r) {
    case Role::Master: return "master";
    case Role::Equal: return "equal";
    case Role::Slave: return "slave";
  }
  return "?";
}

Role role_parse(std::string_view text) {
  if (text == "master") return Role::Master;
  if (text == "equal") return Role::Equal;
  if (text == "slave") return Role::Slave;
  throw ParseError("bad role: " + std::string(text));
}

std::size_t control_wire_bytes(const ControlMessage& m) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, msg::Hello>) return 8;
        else if constexpr (std::is_same_v<T, msg::FeaturesRequest>) return 8;
        else if constexpr (std::is_same_v<T, msg::FeaturesReply>) return 32;
        else if constexpr (std::is_same_v<T, msg::PacketIn>)
          return v.frame.payload.size() + kPacketInOverhead;
        else if constexpr (std::is_same_v<T, msg::PacketOut>)
          return v.frame.payload.size() + kPacketOutOverhead;
        else if constexpr (std::is_same_v<T, msg::FlowMod>) return 72;
        else if constexpr (std::is_same_v<T, msg::FlowRemoved>) return 88;
        else if constexpr (std::is_same_v<T, msg::RoleRequest>) return 24;
        else if constexpr (std::is_same_v<T, msg::RoleReply>) return 24;
        else return 16;  // Disconnect
      },
      m);
}

namespace {

void append_kv(std::string& out, std::string_view key, std::string_view value) {
  out += ' ';
  out += key;
  out += '=';
  out += value;
}

std::string render_match(const MatchFields& m) {
  std::string out;
  if (m.in_port) append_kv(out, "m_in_port", std::to_string(*m.in_port));
  if (m.dl_src) append_kv(out, "m_dl_src", m.dl_src->to_string());
  if (m.dl_dst) append_kv(out, "m_dl_dst", m.dl_dst->to_string());
  if (m.ethertype) append_kv(out, "m_type", m.ethertype->to_string());
  if (m.tp_src) append_kv(out, "m_tp_src", std::to_string(*m.tp_src));
  if (m.tp_dst) append_kv(out, "m_tp_dst", std::to_string(*m.tp_dst));
  if (m.tcp_flags) append_kv(out, "m_flags", flags_to_string(*m.tcp_flags));
  return out;
}

std::string digest_hex(std::uint32_t d) {
  char buf[12];
  std::snprintf(buf, sizeof buf, "%08x", d);
  return buf;
}

}  // namespace

std::string render_frame(const Frame& f) {
  std::string out = "src=" + f.src.to_string();
  append_kv(out, "dst", f.dst.to_string());
  append_kv(out, "type", f.ethertype.to_string());
  if (f.tp_proto) append_kv(out, "proto", proto_to_string(*f.tp_proto));
  if (f.tp_src) append_kv(out, "tp_src", std::to_string(*f.tp_src));
  if (f.tp_dst) append_kv(out, "tp_dst", std::to_string(*f.tp_dst));
  if (f.tcp_flags && *f.tcp_flags)
    append_kv(out, "flags", flags_to_string(*f.tcp_flags));
  append_kv(out, "len", std::to_string(f.payload.size()));
  append_kv(out, "digest", digest_hex(payload_digest(f.payload)));
  return out;
}

std::string render_message(const ControlMessage& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, msg::Hello>) {
          return "hello";
        } else if constexpr (std::is_same_v<T, msg::FeaturesRequest>) {
          return "features_request";
        } else if constexpr (std::is_same_v<T, msg::FeaturesReply>) {
          return "features_reply dpid=" + std::to_string(v.dpid.value);
        } else if constexpr (std::is_same_v<T, msg::PacketIn>) {
          std::string out = "packet_in in_port=" + std::to_string(v.in_port);
          append_kv(out, "reason",
                    v.reason == PacketInReason::TableMiss ? "miss" : "action");
          return out + ' ' + render_frame(v.frame);
        } else if constexpr (std::is_same_v<T, msg::PacketOut>) {
          std::string out = "packet_out actions=" + actions_to_string(v.actions);
          return out + ' ' + render_frame(v.frame);
        } else if constexpr (std::is_same_v<T, msg::FlowMod>) {
          std::string out = "flow_mod op=";
          out += v.op == FlowModOp::Add ? "add" : "del_strict";
          append_kv(out, "cookie", std::to_string(v.rule.cookie));
          append_kv(out, "prio", std::to_string(v.rule.priority));
          if (v.rule.idle_timeout)
            append_kv(out, "idle", std::to_string(*v.rule.idle_timeout));
          out += render_match(v.rule.match);
          append_kv(out, "actions", actions_to_string(v.rule.actions));
          return out;
        } else if constexpr (std::is_same_v<T, msg::FlowRemoved>) {
          std::string out = "flow_removed cookie=" + std::to_string(v.cookie);
          append_kv(out, "prio", std::to_string(v.priority));
          append_kv(out, "reason",
                    v.reason == FlowRemovedReason::IdleTimeout ? "idle" : "delete");
          out += render_match(v.match);
          return out;
        } else if constexpr (std::is_same_v<T, msg::RoleRequest>) {
          return "role_request role=" + role_to_string(v.role);
        } else if constexpr (std::is_same_v<T, msg::RoleReply>) {
          return "role_reply role=" + role_to_string(v.role);
        } else {
          return "disconnect reason=" + v.reason;
        }
      },
      m);
}

}  // namespace telesim
