#include "telesim/frame.hpp"

#include <cstdio>

#include "telesim/errors.hpp"

namespace telesim {

std::string EtherType::to_string() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04x", value);
  return buf;
}

EtherType EtherType::parse(std::string_view text) {
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
    throw ParseError("bad ethertype: " + std::string(text));
  std::uint32_t v = 0;
  for (char c : text.substr(2)) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw ParseError("bad ethertype: " + std::string(text));
    v = v * 16 + static_cast<std::uint32_t>(d);
    if (v > 0xffff) throw ParseError("bad ethertype: " + std::string(text));
  }
  return EtherType{static_cast<std::uint16_t>(v)};
}

std::set<std::uint16_t> default_recognized_ethertypes() {
  return {kEtherIpv4, kEtherArp, kEtherLldp};
}

namespace {
struct FlagName {
  TcpFlag bit;
  const char* name;
};
constexpr FlagName kFlagNames[] = {
    {kFin, "fin"}, {kSyn, "syn"}, {kRst, "rst"},
    {kPsh, "psh"}, {kAck, "ack"}, {kUrg, "urg"},
};
}  // namespace

std::string flags_to_string(TcpFlags flags) {
  std::string out;
  for (const auto& fn : kFlagNames) {
    if (flags & fn.bit) {
      if (!out.empty()) out += '+';
      out += fn.name;
    }
  }
  return out;
}

TcpFlags flags_parse(std::string_view text) {
  TcpFlags flags = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find('+', pos);
    std::string_view tok = text.substr(pos, next == std::string_view::npos ? next : next - pos);
    bool found = false;
    for (const auto& fn : kFlagNames) {
      if (tok == fn.name) {
        flags |= fn.bit;
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("bad tcp flag: " + std::string(tok));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return flags;
}

std::string proto_to_string(TransportProto p) {
  switch (p) {
    case TransportProto::Tcp: return "tcp";
    case TransportProto::Udp: return "udp";
    case TransportProto::Icmp: return "icmp";
  }
  return "?";
}

TransportProto proto_parse(std::string_view text) {
  if (text == "tcp") return TransportProto::Tcp;
  if (text == "udp") return TransportProto::Udp;
  if (text == "icmp") return TransportProto::Icmp;
  throw ParseError("bad transport proto: " + std::string(text));
}

bool is_jumbo_ethertype(EtherType t) { return t.value == kEtherJumbo; }

void validate_frame(const Frame& f) {
  if (f.payload.size() > kMaxPayload && !is_jumbo_ethertype(f.ethertype))
    throw Oversize("payload " + std::to_string(f.payload.size()) +
                   " exceeds 1500 for non-jumbo ethertype " + f.ethertype.to_string());
}

std::uint32_t payload_digest(const std::vector<std::uint8_t>& payload) {
  std::uint32_t h = 0x811c9dc5u;
  for (std::uint8_t b : payload) {
    h ^= b;
    h *= 16777619u;
  }
  return h;
}

}  // namespace telesim
