#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "telesim/agents.hpp"
#include "telesim/errors.hpp"

using namespace telesim;

TEST_CASE("secret matrix: deterministic, locally administered, in range") {
  SecretMatrix m(4, 0x5a17);
  CHECK(m.mac(1, 1) == m.mac(1, 1));
  CHECK(m.mac(2, 3) == SecretMatrix(4, 0x5a17).mac(2, 3));
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 4; ++j) {
      CHECK(m.mac(i, j).locally_administered());
      CHECK_FALSE(m.mac(i, j).multicast());
      CHECK(m.dpid(i, j).value > 0);
    }
  CHECK_THROWS_AS(m.mac(0, 1), OutOfRange);
  CHECK_THROWS_AS(m.mac(1, 5), OutOfRange);
}

TEST_CASE("secret matrix: all 16 entries of a 4x4 are pairwise distinct") {
  SecretMatrix m(4, 7);
  std::set<MacAddr> macs;
  std::set<std::uint64_t> dpids;
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 4; ++j) {
      macs.insert(m.mac(i, j));
      dpids.insert(m.dpid(i, j).value);
    }
  CHECK(macs.size() == 16);
  CHECK(dpids.size() == 16);
}

TEST_CASE("secret matrix: ordered pairs differ") {
  SecretMatrix m(3, 1);
  CHECK(m.mac(1, 2) != m.mac(2, 1));
  CHECK(m.find_mac(m.mac(1, 2)) == std::pair<std::size_t, std::size_t>{1, 2});
}

TEST_CASE("path update start: degenerate 1x1 matrix announces one MAC") {
  SecretMatrix m(1, 3);
  PathUpdateAgent agent(1, &m);
  auto announce = agent.start(true);
  REQUIRE(announce.size() == 1);
  CHECK(announce[0] == m.mac(1, 1));
}

TEST_CASE("path update start: row then column, 2m-1 MACs") {
  SecretMatrix m2(2, 3);
  PathUpdateAgent a1(1, &m2);
  auto ann = a1.start(true);
  REQUIRE(ann.size() == 3);
  CHECK(ann[0] == m2.mac(1, 1));
  CHECK(ann[1] == m2.mac(1, 2));
  CHECK(ann[2] == m2.mac(2, 1));

  // Order-independent set check against a brute-forced row union column.
  SecretMatrix m4(4, 9);
  PathUpdateAgent a3(3, &m4);
  auto got = a3.start(true);
  std::set<MacAddr> got_set(got.begin(), got.end());
  std::set<MacAddr> want;
  for (std::size_t j = 1; j <= 4; ++j) {
    want.insert(m4.mac(3, j));
    want.insert(m4.mac(j, 3));
  }
  CHECK(got.size() == 7);
  CHECK(got_set == want);
}

TEST_CASE("path update start requires a learned local host") {
  SecretMatrix m(2, 3);
  PathUpdateAgent agent(1, &m);
  CHECK_THROWS_AS(agent.start(false), NotReady);
}

TEST_CASE("flow-delete outside the agent's row is a no-op") {
  SecretMatrix m(3, 3);
  PathUpdateAgent agent(1, &m);
  auto r = agent.on_flow_delete(m.mac(2, 1), 100);
  CHECK(r.announce.empty());
  CHECK_FALSE(r.discovered_peer.has_value());
  CHECK(agent.discovered().empty());
  // Unrelated MACs are equally ignored.
  CHECK(agent.on_flow_delete(MacAddr::host(1), 101).announce.empty());
}

TEST_CASE("flow-delete of a row MAC re-announces it and records the peer") {
  SecretMatrix m(2, 3);
  PathUpdateAgent agent(1, &m);
  auto r = agent.on_flow_delete(m.mac(1, 2), 100);
  REQUIRE(r.discovered_peer.has_value());
  CHECK(*r.discovered_peer == 2);
  CHECK(agent.discovered() == std::set<std::size_t>{2});
  REQUIRE(!r.announce.empty());
  CHECK(r.announce[0] == m.mac(1, 2));
}

TEST_CASE("both pair-rule deletes in one event react once") {
  SecretMatrix m(2, 3);
  PathUpdateAgent agent(1, &m);
  auto r1 = agent.on_flow_delete(m.mac(1, 2), 100);
  auto r2 = agent.on_flow_delete(m.mac(1, 2), 100);  // same event time
  CHECK_FALSE(r1.announce.empty());
  CHECK(r2.announce.empty());
  auto r3 = agent.on_flow_delete(m.mac(1, 2), 200);  // later steal reacts again
  CHECK_FALSE(r3.announce.empty());
}

// Protocol-level fixpoint: drive m agents against a model of the
// controller's MAC-location handling (announce moves the MAC, a move sends
// both pair-rule deletes to the previous holder). Independent of the
// full simulation engine.
TEST_CASE("mutual discovery reaches fixpoint within the event budget") {
  for (std::size_t m_count : {2u, 3u, 4u}) {
    SecretMatrix matrix(m_count, 0x77);
    std::vector<PathUpdateAgent> agents;
    for (std::size_t i = 1; i <= m_count; ++i) agents.emplace_back(i, &matrix);

    std::map<MacAddr, std::size_t> holder;  // MAC -> agent index (1-based)
    std::size_t events = 0;
    SimTime clock = 0;

    // announce(): returns deletes delivered to the previous holder.
    auto announce = [&](std::size_t who, const MacAddr& mac,
                        auto&& self) -> void {
      ++events;
      clock += 1;
      auto it = holder.find(mac);
      if (it != holder.end() && it->second != who) {
        std::size_t victim = it->second;
        holder[mac] = who;
        // Both pair rules at the victim reference the MAC; same event time.
        auto r1 = agents[victim - 1].on_flow_delete(mac, clock);
        auto r2 = agents[victim - 1].on_flow_delete(mac, clock);
        CHECK(r2.announce.empty());
        for (const auto& a : r1.announce) self(victim, a, self);
      } else {
        holder[mac] = who;
      }
    };

    for (std::size_t i = 1; i <= m_count; ++i)
      for (const auto& mac : agents[i - 1].start(true))
        announce(i, mac, announce);

    for (std::size_t i = 1; i <= m_count; ++i) {
      std::set<std::size_t> want;
      for (std::size_t j = 1; j <= m_count; ++j)
        if (j != i) want.insert(j);
      CHECK(agents[i - 1].discovered() == want);
    }
    CHECK(events <= 4 * m_count * m_count);
  }
}

TEST_CASE("path reset: bit to action mapping") {
  CHECK(pr_send_bit(false) == ResetAction::Silence);
  CHECK(pr_send_bit(true) == ResetAction::DeleteOwnRule);
}

TEST_CASE("path reset: empty slot decodes to zero") {
  CHECK_FALSE(pr_decode_slot({}));
}

TEST_CASE("path reset: redundant add decodes to one, fresh add to zero") {
  CHECK(pr_decode_slot({{true, true}}));
  CHECK_FALSE(pr_decode_slot({{true, false}}));  // first-time pave, not a reset
  CHECK(pr_decode_slot({{true, false}, {true, true}}));
}

TEST_CASE("path reset receiver buckets adds into slots") {
  PathResetReceiver rx(100 * kMillisecond, 100 * kMillisecond, 4);
  rx.on_flow_add(true, 110 * kMillisecond);   // slot 0
  rx.on_flow_add(false, 260 * kMillisecond);  // slot 1, fresh only
  rx.on_flow_add(true, 350 * kMillisecond);   // slot 2
  rx.on_flow_add(true, 390 * kMillisecond);   // slot 2 again
  auto bits = rx.decoded();
  CHECK(bits == std::vector<bool>{true, false, true, false});
}

TEST_CASE("switch identification outcomes update discovery") {
  SecretMatrix m(3, 0x21);
  SwitchIdAgent a2(2, &m);

  // Master grant: uncontested, nothing learned.
  CHECK_FALSE(a2.on_outcome({SiOutcome::Kind::RoleAssigned, m.dpid(2, 1), Role::Master})
                  .has_value());
  CHECK(a2.discovered().empty());

  // Denial of the row identity reveals peer 1.
  auto peer = a2.on_outcome({SiOutcome::Kind::Denied, m.dpid(2, 1), Role::Master});
  REQUIRE(peer.has_value());
  CHECK(*peer == 1);
  CHECK(a2.discovered() == std::set<std::size_t>{1});

  // Equal role in distributed mode reveals the peer as well.
  SwitchIdAgent b2(2, &m);
  auto peer2 = b2.on_outcome({SiOutcome::Kind::RoleAssigned, m.dpid(2, 1), Role::Equal});
  REQUIRE(peer2.has_value());
  CHECK(*peer2 == 1);

  // Replacement of a held column identity reveals the prober.
  SwitchIdAgent c1(1, &m);
  auto peer3 = c1.on_outcome({SiOutcome::Kind::Replaced, m.dpid(3, 1), Role::Master});
  REQUIRE(peer3.has_value());
  CHECK(*peer3 == 3);
}

TEST_CASE("switch identification: explicit dpid map for plain reused ids") {
  SwitchIdAgent a(2, nullptr);
  a.map_dpid_to_peer(1, 1);
  auto peer = a.on_outcome({SiOutcome::Kind::Denied, DatapathId{1}, Role::Master});
  REQUIRE(peer.has_value());
  CHECK(*peer == 1);
}

TEST_CASE("oob send: empty payload sends nothing") {
  OobChannelConfig cfg;
  cfg.dst = MacAddr::host(1);
  cfg.src_base = MacAddr::parse("0a:00:00:00:00:00");
  CHECK(oob_send(cfg, {}).empty());
}

TEST_CASE("oob send: small payload goes out raw in a single frame") {
  OobChannelConfig cfg;
  cfg.dst = MacAddr::host(1);
  cfg.src_base = MacAddr::parse("0a:00:00:00:00:00");
  cfg.stealth = true;
  std::vector<std::uint8_t> payload(512, 0x42);
  auto frames = oob_send(cfg, payload);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].payload == payload);  // exactly 512 bytes on the wire
  CHECK(frames[0].ethertype.value == kEtherJumbo);
  CHECK(control_wire_bytes(msg::PacketIn{1, frames[0], PacketInReason::TableMiss}) == 622);
  CHECK(control_wire_bytes(msg::PacketOut{{}, frames[0]}) == 620);
}

TEST_CASE("oob send: 4096 bytes in 1024-byte chunks is four frames") {
  OobChannelConfig cfg;
  cfg.dst = MacAddr::host(1);
  cfg.src_base = MacAddr::parse("0a:00:00:00:00:00");
  cfg.chunk_bytes = 1024;
  std::mt19937_64 rng(5);
  std::vector<std::uint8_t> payload(4096);
  for (auto& b : payload) b = static_cast<std::uint8_t>(rng());

  auto frames = oob_send(cfg, payload);
  REQUIRE(frames.size() == 4);
  // Each chunk rotates the masqueraded source.
  std::set<MacAddr> srcs;
  for (const auto& f : frames) srcs.insert(f.src);
  CHECK(srcs.size() == 4);

  OobReassembler rx(true);
  // Out-of-order arrival still reassembles the exact byte sequence.
  rx.on_frame(frames[2]);
  rx.on_frame(frames[0]);
  rx.on_frame(frames[3]);
  CHECK_FALSE(rx.complete());
  rx.on_frame(frames[1]);
  REQUIRE(rx.complete());
  CHECK(rx.payload() == payload);
}

TEST_CASE("oob send: oversize chunk configuration is rejected") {
  OobChannelConfig cfg;
  cfg.dst = MacAddr::host(1);
  cfg.src_base = MacAddr::parse("0a:00:00:00:00:00");
  cfg.chunk_bytes = 1501;
  CHECK_THROWS_AS(oob_send(cfg, std::vector<std::uint8_t>(4096, 1)), Oversize);
}

TEST_CASE("mac rotation adds to the low 24 bits") {
  MacAddr base = MacAddr::parse("0a:00:00:00:00:fe");
  CHECK(rotate_mac(base, 0) == base);
  CHECK(rotate_mac(base, 1).to_string() == "0a:00:00:00:00:ff");
  CHECK(rotate_mac(base, 2).to_string() == "0a:00:00:00:01:00");
}

TEST_CASE("oob capacity arithmetic") {
  CHECK(oob_capacity(0.0, 512).packets_per_second == 0.0);

  auto est = oob_capacity(10e6, 512);
  CHECK(est.control_bytes_per_packet_in == 622);
  CHECK(est.control_bytes_per_packet_out == 620);
  CHECK(est.packets_per_second == doctest::Approx(2009.6).epsilon(0.001));
  CHECK(std::abs(est.packets_per_second - 2009.0) <= 1.0);

  // Independent calculation: rate / bits-per-encapsulated-packet.
  double expect = 20e6 / (8.0 * (512 + 110));
  CHECK(oob_capacity(20e6, 512).packets_per_second == doctest::Approx(expect));
  CHECK(oob_capacity(20e6, 512).packets_per_second == doctest::Approx(4019.3).epsilon(0.001));

  CHECK_THROWS_AS(oob_capacity(10e6, 0), ZeroPayload);
}

TEST_CASE("channel jitter: constant spacing has zero deviation") {
  ChannelStats st;
  for (int i = 0; i < 10; ++i) st.arrival_times.push_back(i * kMillisecond);
  CHECK(st.jitter_ns() == doctest::Approx(0.0));
  st.arrival_times.push_back(10 * kMillisecond + 500 * kMicrosecond);
  CHECK(st.jitter_ns() > 0.0);
}
