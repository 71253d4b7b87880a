#include <algorithm>
#include <random>

#include "doctest.h"
#include "telesim/controller.hpp"
#include "telesim/errors.hpp"

using namespace telesim;

namespace {

// Rendezvous-style square: s1-s3-s2 and s1-s4-s2, two equal-length routes.
Topology diamond() {
  Topology t;
  t.switches = {1, 2, 3, 4};
  t.add_link(1, 10, 3, 10);
  t.add_link(3, 11, 2, 10);
  t.add_link(1, 11, 4, 10);
  t.add_link(4, 11, 2, 11);
  return t;
}

// Oracle: enumerate every path up to the BFS depth and keep the
// lexicographically smallest among the shortest. Exponential, fine at m=4.
std::optional<std::vector<std::uint64_t>> brute_force_shortest(
    const Topology& t, std::uint64_t src, std::uint64_t dst) {
  std::vector<std::vector<std::uint64_t>> found;
  std::vector<std::uint64_t> cur{src};
  auto dfs = [&](auto&& self, std::uint64_t node) -> void {
    if (node == dst) {
      found.push_back(cur);
      return;
    }
    if (cur.size() > t.switches.size()) return;
    for (const auto& [peer, port] : t.neighbors(node)) {
      (void)port;
      if (std::find(cur.begin(), cur.end(), peer) != cur.end()) continue;
      cur.push_back(peer);
      self(self, peer);
      cur.pop_back();
    }
  };
  dfs(dfs, src);
  if (found.empty()) return std::nullopt;
  std::size_t best = found[0].size();
  for (const auto& p : found) best = std::min(best, p.size());
  std::optional<std::vector<std::uint64_t>> winner;
  for (const auto& p : found) {
    if (p.size() != best) continue;
    if (!winner || p < *winner) winner = p;
  }
  return winner;
}

ControllerCluster make_cluster(AdmissionPolicy policy = AdmissionPolicy::DenySecond) {
  ControllerConfig cfg;
  cfg.policy = policy;
  return ControllerCluster(cfg);
}

msg::PacketIn packet_in_from(MacAddr src, MacAddr dst, PortId port,
                             std::uint16_t ethertype = kEtherIpv4,
                             PacketInReason reason = PacketInReason::TableMiss) {
  Frame f;
  f.src = src;
  f.dst = dst;
  f.ethertype = EtherType{ethertype};
  f.payload = {0xde, 0xad};
  return msg::PacketIn{port, f, reason};
}

std::size_t count_flow_mods(const CommandBatch& b) {
  std::size_t n = 0;
  for (const auto& c : b.commands)
    if (std::holds_alternative<msg::FlowMod>(c.msg)) ++n;
  return n;
}

std::size_t count_packet_outs(const CommandBatch& b) {
  std::size_t n = 0;
  for (const auto& c : b.commands)
    if (std::holds_alternative<msg::PacketOut>(c.msg)) ++n;
  return n;
}

}  // namespace

TEST_CASE("admission: first connection becomes master") {
  auto c = make_cluster();
  auto res = c.admit_switch("s7", DatapathId{7}, "c0");
  CHECK(res.outcome == AdmissionOutcome::Accept);
  CHECK(res.role == Role::Master);
  REQUIRE(res.batch.commands.size() == 1);
  auto* rr = std::get_if<msg::RoleRequest>(&res.batch.commands[0].msg);
  REQUIRE(rr != nullptr);
  CHECK(rr->role == Role::Master);
}

TEST_CASE("admission: zero dpid is invalid") {
  auto c = make_cluster();
  CHECK_THROWS_AS(c.admit_switch("s1", DatapathId{0}, "c0"), InvalidDpid);
}

TEST_CASE("admission: deny-second keeps the first holder") {
  auto c = make_cluster(AdmissionPolicy::DenySecond);
  c.admit_switch("s1", DatapathId{1}, "c0");
  auto res = c.admit_switch("s2", DatapathId{1}, "c0");
  CHECK(res.outcome == AdmissionOutcome::Deny);
  REQUIRE(res.batch.commands.size() == 1);
  CHECK(res.batch.commands[0].target_node == "s2");
  CHECK(std::holds_alternative<msg::Disconnect>(res.batch.commands[0].msg));
  CHECK(c.master_node(1) == "s1");
  CHECK_FALSE(c.is_admitted_node("s2"));
}

TEST_CASE("admission: replace-first swaps the holder") {
  auto c = make_cluster(AdmissionPolicy::ReplaceFirst);
  c.admit_switch("s1", DatapathId{1}, "c0");
  auto res = c.admit_switch("s2", DatapathId{1}, "c0");
  CHECK(res.outcome == AdmissionOutcome::ReplaceAndAccept);
  REQUIRE(res.batch.commands.size() == 2);
  CHECK(res.batch.commands[0].target_node == "s1");
  CHECK(std::holds_alternative<msg::Disconnect>(res.batch.commands[0].msg));
  CHECK(c.master_node(1) == "s2");
}

TEST_CASE("admission: coexist-roles grants equal to the later claimant") {
  auto c = make_cluster(AdmissionPolicy::CoexistRoles);
  c.admit_switch("s1", DatapathId{1}, "c1");
  auto res = c.admit_switch("s2", DatapathId{1}, "c2");
  CHECK(res.outcome == AdmissionOutcome::Accept);
  CHECK(res.role == Role::Equal);
  auto* rr = std::get_if<msg::RoleRequest>(&res.batch.commands[0].msg);
  REQUIRE(rr != nullptr);
  CHECK(rr->role == Role::Equal);
  CHECK(c.master_node(1) == "s1");  // one master per dpid
}

TEST_CASE("compute_path: same switch is a zero-hop path") {
  Topology t;
  t.switches = {5};
  auto p = compute_path(t, 5, 5);
  REQUIRE(p.has_value());
  CHECK(*p == std::vector<std::uint64_t>{5});
}

TEST_CASE("compute_path: rendezvous line goes s1-s3-s2") {
  Topology t;
  t.switches = {1, 2, 3, 4};
  t.add_link(1, 10, 3, 10);
  t.add_link(3, 11, 2, 10);
  t.add_link(3, 12, 4, 10);
  auto p = compute_path(t, 1, 2);
  REQUIRE(p.has_value());
  CHECK(*p == std::vector<std::uint64_t>{1, 3, 2});
}

TEST_CASE("compute_path: equal-length tie resolves to the lower dpid") {
  Topology t = diamond();
  auto p = compute_path(t, 1, 2);
  REQUIRE(p.has_value());
  CHECK(*p == std::vector<std::uint64_t>{1, 3, 2});
  CHECK(p == brute_force_shortest(t, 1, 2));
}

TEST_CASE("compute_path agrees with exhaustive enumeration") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 100; ++iter) {
    Topology t;
    std::size_t n = 2 + rng() % 5;
    for (std::uint64_t d = 1; d <= n; ++d) t.switches.insert(d);
    std::size_t links = rng() % (n * 2);
    for (std::size_t i = 0; i < links; ++i) {
      std::uint64_t a = 1 + rng() % n;
      std::uint64_t b = 1 + rng() % n;
      if (a == b) continue;
      t.add_link(a, static_cast<PortId>(10 + i), b, static_cast<PortId>(20 + i));
    }
    std::uint64_t src = 1 + rng() % n;
    std::uint64_t dst = 1 + rng() % n;
    auto got = compute_path(t, src, dst);
    auto want = brute_force_shortest(t, src, dst);
    if (want.has_value()) {
      REQUIRE(got.has_value());
      CHECK(got->size() == want->size());
      CHECK(*got == *want);
    } else {
      CHECK_FALSE(got.has_value());
    }
  }
}

TEST_CASE("compute_path: disconnected endpoints yield none") {
  Topology t;
  t.switches = {1, 2};
  CHECK_FALSE(compute_path(t, 1, 2).has_value());
}

TEST_CASE("packet-in paves both directions and delivers at the far switch") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");
  c.topology().add_link(1, 10, 2, 10);
  c.learn_host(MacAddr::host(2), {2, 1, 0});

  auto batch = c.on_packet_in(1, packet_in_from(MacAddr::host(1), MacAddr::host(2), 1), 0);
  CHECK(count_flow_mods(batch) == 4);  // two switches, two directions
  CHECK(count_packet_outs(batch) == 1);
  // Delivery happens at the destination-adjacent switch.
  for (const auto& cmd : batch.commands)
    if (std::holds_alternative<msg::PacketOut>(cmd.msg))
      CHECK(cmd.target_node == "s2");
  auto intent = c.intent_between(MacAddr::host(1), MacAddr::host(2));
  REQUIRE(intent.has_value());
  CHECK(intent->state == IntentState::Installed);
  CHECK_FALSE(intent->paved.empty());
}

TEST_CASE("unrecognized ethertype: one packet-out, never a flow-mod") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");
  c.topology().add_link(1, 10, 2, 10);
  c.learn_host(MacAddr::host(1), {1, 1, 0});

  auto pin = packet_in_from(MacAddr::parse("0a:00:00:00:00:01"),
                            MacAddr::host(1), 1, kEtherJumbo);
  // Identical handling on every repetition; no state corruption.
  for (int i = 0; i < 100; ++i) {
    auto batch = c.on_packet_in(2, pin, i);
    CHECK(count_flow_mods(batch) == 0);
    CHECK(count_packet_outs(batch) == 1);
    CHECK(batch.commands.size() == 1);
    CHECK(batch.commands[0].target_node == "s1");
  }
}

TEST_CASE("unrecognized ethertype with unknown destination is dropped") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  auto batch = c.on_packet_in(
      1, packet_in_from(MacAddr::host(1), MacAddr::host(9), 1, kEtherJumbo), 0);
  CHECK(batch.commands.empty());
  REQUIRE(batch.notes.size() == 1);
  CHECK(batch.notes[0].starts_with("drop_unknown_dst"));
}

TEST_CASE("unrecognized ethertype never yields flow-mods (generated frames)") {
  std::mt19937_64 rng(99);
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");
  c.topology().add_link(1, 10, 2, 10);
  for (std::uint8_t h = 1; h <= 4; ++h)
    c.learn_host(MacAddr::host(h), {1 + h % 2, h, 0});
  for (int i = 0; i < 200; ++i) {
    std::uint16_t t = static_cast<std::uint16_t>(rng());
    if (default_recognized_ethertypes().contains(t)) continue;
    auto pin = packet_in_from(
        MacAddr({0x0a, 0, 0, 0, 0, static_cast<std::uint8_t>(rng())}),
        MacAddr::host(static_cast<std::uint8_t>(1 + rng() % 4)),
        static_cast<PortId>(1 + rng() % 4), t);
    auto batch = c.on_packet_in(1 + i % 2, pin, i);
    CHECK(count_flow_mods(batch) == 0);
  }
}

TEST_CASE("no data-plane path: delivery still happens, intent is failed") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");  // no link between them
  c.learn_host(MacAddr::host(1), {1, 1, 0});

  auto batch = c.on_packet_in(2, packet_in_from(MacAddr::host(2), MacAddr::host(1), 1), 0);
  CHECK(count_flow_mods(batch) == 0);
  CHECK(count_packet_outs(batch) == 1);
  auto intent = c.intent_between(MacAddr::host(1), MacAddr::host(2));
  REQUIRE(intent.has_value());
  CHECK(intent->state == IntentState::Failed);
  CHECK(intent->paved.empty());
}

TEST_CASE("table-miss packet-in for a live flow resets the whole path") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");
  c.admit_switch("s3", DatapathId{3}, "c0");
  c.topology().add_link(1, 10, 3, 10);
  c.topology().add_link(3, 11, 2, 10);
  c.learn_host(MacAddr::host(2), {2, 1, 0});

  auto first = c.on_packet_in(1, packet_in_from(MacAddr::host(1), MacAddr::host(2), 1), 0);
  CHECK(count_flow_mods(first) == 6);  // three switches, two directions

  // Reset re-sends the full set to every on-path switch.
  auto reset = c.on_packet_in(
      1, packet_in_from(MacAddr::host(1), MacAddr::host(2), 1), kSecond);
  CHECK(count_flow_mods(reset) == 6);
  CHECK(count_packet_outs(reset) == 1);

  // A punt (reason=action) for the same live flow only delivers.
  auto punt = c.on_packet_in(
      1,
      packet_in_from(MacAddr::host(1), MacAddr::host(2), 1, kEtherIpv4,
                     PacketInReason::Action),
      2 * kSecond);
  CHECK(count_flow_mods(punt) == 0);
  CHECK(count_packet_outs(punt) == 1);
}

TEST_CASE("host re-announced in place is a no-op") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.learn_host(MacAddr::host(1), {1, 1, 0});
  auto batch = c.update_host_location(MacAddr::host(1), {1, 1, 5}, 5);
  CHECK(batch.commands.empty());
}

TEST_CASE("host move deletes at the old switch and re-adds at the new one") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");
  c.topology().add_link(1, 10, 2, 10);
  c.learn_host(MacAddr::host(1), {1, 1, 0});
  c.learn_host(MacAddr::host(3), {1, 2, 0});

  // Pave an intent so rules referencing k1 exist on s1.
  c.on_packet_in(1, packet_in_from(MacAddr::host(1), MacAddr::host(3), 1), 0);

  // k1's MAC shows up on s2: the spoof that drives the rendezvous.
  auto batch = c.on_packet_in(2, packet_in_from(MacAddr::host(1), MacAddr::host(3), 4), 10);
  std::size_t deletes = 0, adds_s2 = 0;
  for (const auto& cmd : batch.commands) {
    if (auto* fm = std::get_if<msg::FlowMod>(&cmd.msg)) {
      if (fm->op == FlowModOp::DeleteStrict) {
        ++deletes;
        CHECK(cmd.target_node == "s1");
      } else if (cmd.target_node == "s2") {
        ++adds_s2;
      }
    }
  }
  CHECK(deletes == 2);  // both directions referenced k1 at s1
  CHECK(adds_s2 == 2);
  CHECK(c.hosts().at(MacAddr::host(1)).dpid == 2);
}

TEST_CASE("flow-removed: unknown cookie is ignored") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  msg::FlowRemoved rm{12345, {}, 100, FlowRemovedReason::Delete};
  CHECK(c.on_flow_removed(1, rm, 0).commands.empty());
}

TEST_CASE("flow-removed for an installed intent repairs that switch") {
  auto c = make_cluster();
  c.admit_switch("s1", DatapathId{1}, "c0");
  c.admit_switch("s2", DatapathId{2}, "c0");
  c.topology().add_link(1, 10, 2, 10);
  c.learn_host(MacAddr::host(2), {2, 1, 0});
  auto batch = c.on_packet_in(1, packet_in_from(MacAddr::host(1), MacAddr::host(2), 1), 0);

  // Find the cookie paved on s1 for k1->k2.
  std::uint64_t cookie = 0;
  MatchFields match;
  std::uint16_t prio = 0;
  for (const auto& cmd : batch.commands) {
    if (auto* fm = std::get_if<msg::FlowMod>(&cmd.msg)) {
      if (cmd.target_node == "s1" && fm->rule.match.dl_src == MacAddr::host(1)) {
        cookie = fm->rule.cookie;
        match = fm->rule.match;
        prio = fm->rule.priority;
      }
    }
  }
  REQUIRE(cookie != 0);

  auto repair = c.on_flow_removed(1, {cookie, match, prio, FlowRemovedReason::Delete}, 100);
  REQUIRE(repair.commands.size() == 1);
  CHECK(repair.commands[0].target_node == "s1");
  auto* fm = std::get_if<msg::FlowMod>(&repair.commands[0].msg);
  REQUIRE(fm != nullptr);
  CHECK(fm->op == FlowModOp::Add);
  CHECK(fm->rule.cookie == cookie);
}

TEST_CASE("packet-in from an unadmitted switch is ignored with a note") {
  auto c = make_cluster();
  auto batch = c.on_packet_in(9, packet_in_from(MacAddr::host(1), MacAddr::host(2), 1), 0);
  CHECK(batch.commands.empty());
  REQUIRE(batch.notes.size() == 1);
  CHECK(batch.notes[0].starts_with("unknown_switch"));
}
