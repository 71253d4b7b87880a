#include "telesim/agents.hpp"

#include <algorithm>
#include <cmath>

#include "telesim/errors.hpp"

namespace telesim {

std::string technique_to_string(Technique t) {
  switch (t) {
    case Technique::PathUpdate: return "path_update";
    case Technique::PathReset: return "path_reset";
    case Technique::SwitchId: return "switch_id";
    case Technique::OobForward: return "oob_forward";
  }
  return "?";
}

double ChannelStats::jitter_ns() const {
  if (arrival_times.size() < 3) return 0.0;
  std::vector<double> deltas;
  deltas.reserve(arrival_times.size() - 1);
  for (std::size_t i = 1; i < arrival_times.size(); ++i)
    deltas.push_back(static_cast<double>(arrival_times[i] - arrival_times[i - 1]));
  double mean = 0.0;
  for (double d : deltas) mean += d;
  mean /= static_cast<double>(deltas.size());
  double mad = 0.0;
  for (double d : deltas) mad += std::abs(d - mean);
  return mad / static_cast<double>(deltas.size());
}

CapacityEstimate oob_capacity(double goodput_bps, std::size_t payload_bytes) {
  if (payload_bytes == 0) throw ZeroPayload();
  if (goodput_bps < 0.0) throw OutOfRange("negative channel rate");
  CapacityEstimate est;
  est.control_bytes_per_packet_in = payload_bytes + kPacketInOverhead;
  est.control_bytes_per_packet_out = payload_bytes + kPacketOutOverhead;
  est.packets_per_second =
      goodput_bps / (8.0 * static_cast<double>(est.control_bytes_per_packet_in));
  return est;
}

std::vector<MacAddr> PathUpdateAgent::start(bool local_host_learned) {
  if (!local_host_learned)
    throw NotReady("no learned local host to announce against");
  std::vector<MacAddr> out;
  std::size_t m = matrix_->size();
  for (std::size_t j = 1; j <= m; ++j) out.push_back(matrix_->mac(id_, j));
  for (std::size_t j = 1; j <= m; ++j) {
    if (j == id_) continue;
    out.push_back(matrix_->mac(j, id_));
  }
  return out;
}

PathUpdateAgent::Reaction PathUpdateAgent::on_flow_delete(const MacAddr& deleted,
                                                          SimTime now) {
  Reaction r;
  auto cell = matrix_->find_mac(deleted);
  if (!cell || cell->first != id_) return r;  // not in row i: no-op
  auto [it, inserted] = last_reaction_.try_emplace(deleted, now);
  if (!inserted) {
    if (it->second == now) return r;  // both pair rules deleted in one event
    it->second = now;
  }
  std::size_t j = cell->second;
  bool newly = !discovered_.contains(j) && j != id_;
  if (j != id_) {
    discovered_.insert(j);
    r.discovered_peer = j;
  }
  r.announce.push_back(deleted);  // reclaim the stolen row MAC
  if (newly) r.announce.push_back(matrix_->mac(j, id_));  // let j's row see us
  return r;
}

ResetAction pr_send_bit(bool bit) {
  return bit ? ResetAction::DeleteOwnRule : ResetAction::Silence;
}

bool pr_decode_slot(const std::vector<SlotEvent>& events) {
  return std::any_of(events.begin(), events.end(),
                     [](const SlotEvent& e) { return e.flow_add && e.redundant; });
}

void PathResetReceiver::on_flow_add(bool redundant, SimTime now) {
  if (now < start_) return;
  std::size_t slot = static_cast<std::size_t>((now - start_) / slot_);
  if (slot >= bits_) return;
  events_[slot].push_back({true, redundant});
}

std::vector<bool> PathResetReceiver::decoded() const {
  std::vector<bool> bits(bits_, false);
  for (const auto& [slot, evs] : events_) bits[slot] = pr_decode_slot(evs);
  return bits;
}

std::optional<std::size_t> SwitchIdAgent::peer_of(DatapathId dpid) const {
  if (auto it = dpid_peers_.find(dpid.value); it != dpid_peers_.end())
    return it->second;
  if (matrix_) {
    if (auto cell = matrix_->find_dpid(dpid)) {
      std::size_t peer = cell->first == id_ ? cell->second : cell->first;
      if (peer != id_) return peer;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> SwitchIdAgent::on_outcome(const SiOutcome& outcome) {
  if (outcome.kind == SiOutcome::Kind::RoleAssigned &&
      outcome.role == Role::Master)
    return std::nullopt;  // uncontested identity, nothing learned
  auto peer = peer_of(outcome.dpid);
  if (!peer) return std::nullopt;
  discovered_.insert(*peer);
  return peer;
}

MacAddr rotate_mac(const MacAddr& base, std::uint32_t counter) {
  auto o = base.octets();
  std::uint32_t low = (static_cast<std::uint32_t>(o[3]) << 16) |
                      (static_cast<std::uint32_t>(o[4]) << 8) | o[5];
  low = (low + counter) & 0xffffffu;
  o[3] = static_cast<std::uint8_t>(low >> 16);
  o[4] = static_cast<std::uint8_t>(low >> 8);
  o[5] = static_cast<std::uint8_t>(low);
  return MacAddr(o);
}

std::vector<Frame> oob_send(const OobChannelConfig& cfg,
                            const std::vector<std::uint8_t>& payload) {
  std::vector<Frame> frames;
  if (payload.empty()) return frames;
  if (cfg.chunk_bytes == 0 || cfg.chunk_bytes + 6 > kMaxPayload)
    throw Oversize("chunk size " + std::to_string(cfg.chunk_bytes) +
                   " exceeds frame limits");

  auto make_frame = [&](std::uint32_t counter, std::vector<std::uint8_t> body) {
    Frame f;
    f.src = rotate_mac(cfg.src_base, counter);
    f.dst = cfg.dst;
    f.ethertype =
        EtherType{cfg.stealth ? kEtherJumbo : cfg.plain_ethertype};
    if (!cfg.stealth) f.tp_proto = TransportProto::Udp;
    f.payload = std::move(body);
    return f;
  };

  if (payload.size() <= cfg.chunk_bytes) {
    if (payload.size() > kMaxPayload && !cfg.stealth)
      throw Oversize("payload exceeds frame limit");
    frames.push_back(make_frame(0, payload));
    return frames;
  }

  std::size_t total = (payload.size() + cfg.chunk_bytes - 1) / cfg.chunk_bytes;
  if (total > 0xffff) throw Oversize("payload needs more than 65535 chunks");
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t off = c * cfg.chunk_bytes;
    std::size_t len = std::min(cfg.chunk_bytes, payload.size() - off);
    std::vector<std::uint8_t> body;
    body.reserve(6 + len);
    body.push_back(static_cast<std::uint8_t>(c >> 24));
    body.push_back(static_cast<std::uint8_t>(c >> 16));
    body.push_back(static_cast<std::uint8_t>(c >> 8));
    body.push_back(static_cast<std::uint8_t>(c));
    body.push_back(static_cast<std::uint8_t>(total >> 8));
    body.push_back(static_cast<std::uint8_t>(total));
    body.insert(body.end(), payload.begin() + static_cast<std::ptrdiff_t>(off),
                payload.begin() + static_cast<std::ptrdiff_t>(off + len));
    frames.push_back(make_frame(static_cast<std::uint32_t>(c), std::move(body)));
  }
  return frames;
}

void OobReassembler::on_frame(const Frame& f) {
  if (!framed_) {
    buffer_.insert(buffer_.end(), f.payload.begin(), f.payload.end());
    return;
  }
  if (f.payload.size() < 6) return;  // runt, not ours
  std::uint32_t seq = (static_cast<std::uint32_t>(f.payload[0]) << 24) |
                      (static_cast<std::uint32_t>(f.payload[1]) << 16) |
                      (static_cast<std::uint32_t>(f.payload[2]) << 8) |
                      f.payload[3];
  std::uint16_t total = static_cast<std::uint16_t>(
      (static_cast<std::uint16_t>(f.payload[4]) << 8) | f.payload[5]);
  total_ = total;
  chunks_[seq] = std::vector<std::uint8_t>(f.payload.begin() + 6, f.payload.end());
  if (chunks_.size() == total) {
    buffer_.clear();
    for (const auto& [s, data] : chunks_)
      buffer_.insert(buffer_.end(), data.begin(), data.end());
  }
}

bool OobReassembler::complete() const {
  if (!framed_) return !buffer_.empty();
  return total_ && chunks_.size() == *total_;
}

}  // namespace telesim
