#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "manetsim/aodv.hpp"
#include "manetsim/blacklist.hpp"

using namespace manetsim;

namespace {

const SendUnicast& as_unicast(const Action& a) {
    REQUIRE(std::holds_alternative<SendUnicast>(a));
    return std::get<SendUnicast>(a);
}

const SendBroadcast& as_broadcast(const Action& a) {
    REQUIRE(std::holds_alternative<SendBroadcast>(a));
    return std::get<SendBroadcast>(a);
}

RreqMessage rreq(NodeId origin, std::uint32_t id, NodeId dest,
                 std::uint32_t dest_seq = 0, std::uint16_t hops = 0) {
    return RreqMessage{origin, id, dest, dest_seq, hops};
}

RrepMessage rrep(NodeId dest, std::uint32_t seq, std::uint16_t hops,
                 NodeId origin) {
    RrepMessage m;
    m.destination = dest;
    m.dest_seq = seq;
    m.hop_count = hops;
    m.origin = origin;
    return m;
}

RoutingTableEntry entry(NodeId dest, NodeId hop, std::uint32_t seq,
                        std::uint16_t hops, double expiry,
                        bool valid = true) {
    RoutingTableEntry e;
    e.destination = dest;
    e.next_hop = hop;
    e.seq_number = seq;
    e.hop_count = hops;
    e.valid = valid;
    e.expiry = expiry;
    return e;
}

struct Fixture {
    BlackList bl;
    AodvNode node;
    explicit Fixture(NodeId id, AodvConfig cfg = {}) : node(id, cfg, &bl) {}
};

}  // namespace

TEST_CASE("route discovery bumps own sequence and floods an RREQ") {
    Fixture f(3);
    CHECK(f.node.own_seq() == 0);
    auto actions = f.node.originate_route_discovery(8, 0.0);
    CHECK(f.node.own_seq() == 1);
    REQUIRE(actions.size() == 1);
    const auto& pkt = as_broadcast(actions[0]).packet;
    REQUIRE(pkt.is<RreqMessage>());
    const auto& m = pkt.as<RreqMessage>();
    CHECK(m.origin == 3);
    CHECK(m.destination == 8);
    CHECK(m.dest_seq == 0);  // never heard of 8
    CHECK(m.hop_count == 0);
    CHECK(pkt.size_bits == wire::rreq_bits);
}

TEST_CASE("discovery advertises the last known destination sequence") {
    Fixture f(3);
    f.node.table().upsert(entry(8, 5, 7, 2, 100.0));
    auto actions = f.node.originate_route_discovery(8, 0.0);
    CHECK(as_broadcast(actions[0]).packet.as<RreqMessage>().dest_seq == 7);
}

TEST_CASE("consecutive discoveries use distinct request ids") {
    Fixture f(3);
    auto a = f.node.originate_route_discovery(8, 0.0);
    auto b = f.node.originate_route_discovery(8, 1.0);
    CHECK(as_broadcast(a[0]).packet.as<RreqMessage>().rreq_id !=
          as_broadcast(b[0]).packet.as<RreqMessage>().rreq_id);
}

TEST_CASE("self-route discovery is rejected") {
    Fixture f(3);
    CHECK_THROWS_AS(f.node.originate_route_discovery(3, 0.0),
                    std::invalid_argument);
}

TEST_CASE("intermediate learns a reverse route and rebroadcasts") {
    Fixture f(1);
    auto res = f.node.handle_rreq(rreq(0, 0, 8, 0, 0), 0, 0.0);
    CHECK(res.decision == AodvNode::RreqDecision::Rebroadcast);
    REQUIRE(res.actions.size() == 1);
    CHECK(as_broadcast(res.actions[0]).packet.as<RreqMessage>().hop_count == 1);

    const auto* rev = f.node.table().find_valid(0, 0.0);
    REQUIRE(rev != nullptr);
    CHECK(rev->next_hop == 0);
    CHECK(rev->hop_count == 1);
}

TEST_CASE("reverse route keeps the shorter of competing flood copies") {
    Fixture f(5);
    (void)f.node.handle_rreq(rreq(0, 0, 8, 0, 2), 4, 0.0);  // 3 hops back
    (void)f.node.handle_rreq(rreq(0, 1, 8, 0, 0), 0, 0.0);  // direct
    const auto* rev = f.node.table().find_valid(0, 0.0);
    REQUIRE(rev != nullptr);
    CHECK(rev->next_hop == 0);
    CHECK(rev->hop_count == 1);

    // A longer copy later does not displace it.
    (void)f.node.handle_rreq(rreq(0, 2, 8, 0, 3), 6, 0.0);
    CHECK(f.node.table().find_valid(0, 0.0)->next_hop == 0);
}

TEST_CASE("intermediates drop duplicate flood copies") {
    Fixture f(1);
    auto first = f.node.handle_rreq(rreq(0, 7, 8), 0, 0.0);
    CHECK(first.decision == AodvNode::RreqDecision::Rebroadcast);
    auto dup = f.node.handle_rreq(rreq(0, 7, 8, 0, 1), 2, 0.001);
    CHECK(dup.decision == AodvNode::RreqDecision::Drop);
    CHECK(dup.actions.empty());
    CHECK(f.node.duplicate_rreqs() == 1);
}

TEST_CASE("a node ignores copies of its own flood") {
    Fixture f(0);
    (void)f.node.originate_route_discovery(8, 0.0);
    auto res = f.node.handle_rreq(rreq(0, 0, 8, 0, 1), 2, 0.002);
    CHECK(res.decision == AodvNode::RreqDecision::Drop);
    CHECK(f.node.duplicate_rreqs() == 0);
}

TEST_CASE("the destination answers with its own sequence number") {
    Fixture f(8);
    auto res = f.node.handle_rreq(rreq(0, 0, 8, 0, 1), 7, 0.0);
    CHECK(res.decision == AodvNode::RreqDecision::Replied);
    REQUIRE(res.actions.size() == 1);
    const auto& uni = as_unicast(res.actions[0]);
    CHECK(uni.to == 7);
    const auto& m = uni.packet.as<RrepMessage>();
    CHECK(m.destination == 8);
    CHECK(m.dest_seq == f.node.own_seq());
    CHECK(m.hop_count == 0);
    CHECK(m.origin == 0);
    CHECK_FALSE(m.forged);
}

TEST_CASE("the destination answers every flood copy, one per arrival") {
    // The first copy usually travels the shortest path; if the requester
    // refuses that path's first hop it needs a reply over another one.
    Fixture f(8);
    auto via9 = f.node.handle_rreq(rreq(0, 3, 8, 0, 1), 9, 0.0);
    auto via7 = f.node.handle_rreq(rreq(0, 3, 8, 0, 2), 7, 0.001);
    CHECK(via9.decision == AodvNode::RreqDecision::Replied);
    CHECK(via7.decision == AodvNode::RreqDecision::Replied);
    CHECK(as_unicast(via9.actions[0]).to == 9);
    CHECK(as_unicast(via7.actions[0]).to == 7);
    CHECK(f.node.duplicate_rreqs() == 0);
}

TEST_CASE("cached intermediate reply requires a strictly fresher entry") {
    AodvConfig cfg;
    cfg.strict_freshness = true;
    Fixture f(4, cfg);
    f.node.table().upsert(entry(8, 6, 5, 2, 100.0));

    SUBCASE("equal sequence is not fresh enough") {
        auto res = f.node.handle_rreq(rreq(0, 0, 8, 5, 0), 0, 0.0);
        CHECK(res.decision == AodvNode::RreqDecision::Rebroadcast);
    }
    SUBCASE("strictly newer entry answers from cache") {
        auto res = f.node.handle_rreq(rreq(0, 0, 8, 4, 0), 0, 0.0);
        CHECK(res.decision == AodvNode::RreqDecision::Replied);
        const auto& m = as_unicast(res.actions[0]).packet.as<RrepMessage>();
        CHECK(m.dest_seq == 5);
        CHECK(m.hop_count == 2);
    }
    SUBCASE("expired entry cannot answer") {
        f.node.table().upsert(entry(8, 6, 9, 2, 0.5));
        auto res = f.node.handle_rreq(rreq(0, 0, 8, 4, 0), 0, 1.0);
        CHECK(res.decision == AodvNode::RreqDecision::Rebroadcast);
    }
}

TEST_CASE("relaxed freshness answers on an equal sequence") {
    AodvConfig cfg;
    cfg.strict_freshness = false;
    Fixture f(4, cfg);
    f.node.table().upsert(entry(8, 6, 5, 2, 100.0));
    auto res = f.node.handle_rreq(rreq(0, 0, 8, 5, 0), 0, 0.0);
    CHECK(res.decision == AodvNode::RreqDecision::Replied);
}

TEST_CASE("cached reply is withheld when its next hop is blacklisted") {
    Fixture f(4);
    f.node.table().upsert(entry(8, 6, 5, 2, 100.0));
    f.bl.add(6);
    auto res = f.node.handle_rreq(rreq(0, 0, 8, 1, 0), 0, 0.0);
    CHECK(res.decision == AodvNode::RreqDecision::Rebroadcast);
}

TEST_CASE("flood copies from blacklisted senders are ignored") {
    Fixture f(4);
    f.bl.add(9);
    auto res = f.node.handle_rreq(rreq(0, 0, 8), 9, 0.0);
    CHECK(res.decision == AodvNode::RreqDecision::Drop);
    CHECK(f.node.table().find(0) == nullptr);
}

TEST_CASE("reply adoption tracks freshness then distance") {
    Fixture f(0);

    SUBCASE("no prior entry adopts anything") {
        auto res = f.node.handle_rrep(rrep(8, 0, 1, 0), 9, 0.0);
        CHECK(res.adopted);
        CHECK(res.consumed);
        const auto* e = f.node.table().find_valid(8, 0.0);
        REQUIRE(e != nullptr);
        CHECK(e->next_hop == 9);
        CHECK(e->hop_count == 2);
        CHECK(e->seq_number == 0);
    }
    SUBCASE("newer sequence displaces the route") {
        (void)f.node.handle_rrep(rrep(8, 1, 1, 0), 9, 0.0);
        auto res = f.node.handle_rrep(rrep(8, 2, 3, 0), 1, 0.0);
        CHECK(res.adopted);
        CHECK(f.node.table().find(8)->next_hop == 1);
    }
    SUBCASE("equal sequence needs fewer hops") {
        (void)f.node.handle_rrep(rrep(8, 1, 2, 0), 9, 0.0);
        auto worse = f.node.handle_rrep(rrep(8, 1, 2, 0), 1, 0.0);
        CHECK_FALSE(worse.adopted);
        auto better = f.node.handle_rrep(rrep(8, 1, 0, 0), 2, 0.0);
        CHECK(better.adopted);
        CHECK(f.node.table().find(8)->next_hop == 2);
    }
    SUBCASE("older sequence is ignored") {
        (void)f.node.handle_rrep(rrep(8, 5, 1, 0), 9, 0.0);
        auto res = f.node.handle_rrep(rrep(8, 4, 0, 0), 1, 0.0);
        CHECK_FALSE(res.adopted);
        CHECK(f.node.table().find(8)->next_hop == 9);
    }
}

TEST_CASE("a huge advertised sequence number always wins") {
    Fixture f(0);
    (void)f.node.handle_rrep(rrep(8, 3, 1, 0), 9, 0.0);
    auto res = f.node.handle_rrep(rrep(8, 1u << 31, 0, 0), 1, 0.0);
    CHECK(res.adopted);
    CHECK(f.node.table().find(8)->next_hop == 1);
    CHECK(f.node.table().find(8)->seq_number == (1u << 31));
}

TEST_CASE("an invalidated entry accepts any reply despite its old sequence") {
    // After excluding a misbehaving hop the stored sequence number can be
    // enormous; a reply with a modest genuine sequence must still take.
    Fixture f(0);
    (void)f.node.handle_rrep(rrep(8, 1u << 31, 0, 0), 9, 0.0);
    f.node.table().invalidate(8);
    auto res = f.node.handle_rrep(rrep(8, 1, 2, 0), 1, 1.0);
    CHECK(res.adopted);
    CHECK(f.node.table().find(8)->next_hop == 1);
    CHECK(f.node.table().find(8)->seq_number == 1);
}

TEST_CASE("an expired entry also accepts any reply") {
    Fixture f(0);
    f.node.table().upsert(entry(8, 9, 50, 1, 2.0));
    auto res = f.node.handle_rrep(rrep(8, 1, 1, 0), 1, 5.0);
    CHECK(res.adopted);
    CHECK(f.node.table().find(8)->next_hop == 1);
}

TEST_CASE("intermediates relay replies along the reverse route") {
    Fixture f(7);
    (void)f.node.handle_rreq(rreq(0, 0, 8), 1, 0.0);  // reverse: 0 via 1
    auto res = f.node.handle_rrep(rrep(8, 0, 0, 0), 8, 0.001);
    CHECK(res.adopted);        // learns the forward route too
    CHECK_FALSE(res.consumed);
    REQUIRE(res.actions.size() == 1);
    const auto& uni = as_unicast(res.actions[0]);
    CHECK(uni.to == 1);
    CHECK(uni.packet.as<RrepMessage>().hop_count == 1);
}

TEST_CASE("a reply with no reverse route dies and is counted") {
    Fixture f(7);
    auto res = f.node.handle_rrep(rrep(8, 0, 0, 0), 8, 0.0);
    CHECK(res.actions.empty());
    CHECK(f.node.dropped_no_reverse_route() == 1);
}

TEST_CASE("replies from or about blacklisted nodes are ignored") {
    Fixture f(0);
    f.bl.add(9);
    SUBCASE("blacklisted sender") {
        auto res = f.node.handle_rrep(rrep(8, 5, 0, 0), 9, 0.0);
        CHECK_FALSE(res.adopted);
        CHECK(f.node.table().find(8) == nullptr);
    }
    SUBCASE("blacklisted destination") {
        auto res = f.node.handle_rrep(rrep(9, 5, 0, 0), 1, 0.0);
        CHECK_FALSE(res.adopted);
    }
    SUBCASE("relay refuses a blacklisted reverse hop") {
        (void)f.node.handle_rreq(rreq(3, 0, 8), 9, 0.0);
        f.bl.add(9);  // re-add is harmless; reverse hop is 9
        auto res = f.node.handle_rrep(rrep(8, 5, 0, 3), 1, 0.001);
        CHECK(res.actions.empty());
        CHECK(f.node.dropped_no_reverse_route() == 1);
    }
}

TEST_CASE("forged flag rides along relays") {
    Fixture f(7);
    (void)f.node.handle_rreq(rreq(0, 0, 8), 1, 0.0);
    RrepMessage m = rrep(8, 1u << 31, 0, 0);
    m.forged = true;
    auto res = f.node.handle_rrep(m, 9, 0.001);
    REQUIRE(res.actions.size() == 1);
    CHECK(as_unicast(res.actions[0]).packet.as<RrepMessage>().forged);
}

TEST_CASE("route error invalidates only matching next-hop entries") {
    Fixture f(0);
    f.node.table().upsert(entry(8, 9, 1, 2, 100.0));

    SUBCASE("break reported by the route's next hop") {
        auto res = f.node.handle_rerr(RerrMessage{8, 9}, 9, 1.0, false);
        CHECK(res.invalidated);
        CHECK_FALSE(res.needs_rediscovery);
        REQUIRE(res.actions.size() == 1);  // propagates upstream
        const auto& m = as_broadcast(res.actions[0]).packet.as<RerrMessage>();
        CHECK(m.unreachable_destination == 8);
        CHECK(m.origin_of_report == 0);
        CHECK(f.node.table().find(8)->valid == false);
    }
    SUBCASE("source with pending traffic asks for rediscovery instead") {
        auto res = f.node.handle_rerr(RerrMessage{8, 9}, 9, 1.0, true);
        CHECK(res.invalidated);
        CHECK(res.needs_rediscovery);
        CHECK(res.actions.empty());
    }
    SUBCASE("report from a node that is not our next hop is ignored") {
        auto res = f.node.handle_rerr(RerrMessage{8, 3}, 3, 1.0, false);
        CHECK_FALSE(res.invalidated);
        CHECK(f.node.table().find(8)->valid);
    }
    SUBCASE("report about an unknown destination is ignored") {
        auto res = f.node.handle_rerr(RerrMessage{5, 9}, 9, 1.0, false);
        CHECK_FALSE(res.invalidated);
    }
}

TEST_CASE("hello silence expires neighbors and breaks their routes") {
    AodvConfig cfg;  // silence limit = 2 * 1s
    Fixture f(0, cfg);
    f.node.note_heard(9, 0.0);
    f.node.note_heard(1, 0.0);
    f.node.table().upsert(entry(8, 9, 1, 2, 100.0));

    auto t1 = f.node.hello_tick(1.0);
    CHECK(t1.lost_neighbors.empty());
    REQUIRE(t1.actions.size() == 1);
    CHECK(t1.actions[0].index() == 1);  // just the hello broadcast
    CHECK(as_broadcast(t1.actions[0]).packet.is<HelloMessage>());

    f.node.note_heard(1, 1.5);  // node 1 keeps talking, node 9 goes dark
    auto t2 = f.node.hello_tick(2.0);
    CHECK(t2.lost_neighbors.empty());

    auto t3 = f.node.hello_tick(3.0);
    REQUIRE(t3.lost_neighbors.size() == 1);
    CHECK(t3.lost_neighbors[0] == 9);
    REQUIRE(t3.broken_destinations.size() == 1);
    CHECK(t3.broken_destinations[0] == 8);
    CHECK_FALSE(f.node.table().find(8)->valid);
    CHECK_FALSE(f.node.neighbor_alive(9));
    CHECK(f.node.neighbor_alive(1));
    // hello + one RERR for the broken destination
    REQUIRE(t3.actions.size() == 2);
    CHECK(as_broadcast(t3.actions[1]).packet.is<RerrMessage>());
}

TEST_CASE("next_hop screens invalid, expired and blacklisted entries") {
    Fixture f(0);
    f.node.table().upsert(entry(8, 9, 1, 2, 10.0));
    CHECK(f.node.next_hop(8, 1.0) == 9);
    CHECK_FALSE(f.node.next_hop(8, 10.0).has_value());  // expired
    f.node.table().refresh(8, 20.0);
    CHECK(f.node.next_hop(8, 10.0) == 9);
    f.bl.add(9);
    CHECK_FALSE(f.node.next_hop(8, 1.0).has_value());
    CHECK_FALSE(f.node.next_hop(5, 1.0).has_value());  // unknown
}

TEST_CASE("refresh extends but never shortens expiry") {
    Fixture f(0);
    f.node.table().upsert(entry(8, 9, 1, 2, 10.0));
    f.node.refresh_route(8, 5.0);  // default expiry window is 10s
    CHECK(f.node.table().find(8)->expiry == doctest::Approx(15.0));
    f.node.refresh_route(8, 1.0);
    CHECK(f.node.table().find(8)->expiry == doctest::Approx(15.0));
}
