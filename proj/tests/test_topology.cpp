#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "manetsim/topology.hpp"

using namespace manetsim;

TEST_CASE("distance is euclidean") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({1, 1}, {1, 1}) == doctest::Approx(0.0));
    CHECK(distance({-2, 0}, {2, 0}) == doctest::Approx(4.0));
}

TEST_CASE("radio range must be positive") {
    CHECK_THROWS_AS(Topology({{0, 0}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Topology({{0, 0}}, -5.0), std::invalid_argument);
}

TEST_CASE("links exist exactly within radio range") {
    Topology t({{0, 0}, {250, 0}, {251, 0}, {0, 200}}, 250.0);
    CHECK(t.node_count() == 4);
    CHECK(t.link_up(0, 1));   // exactly at range
    CHECK(t.link_up(1, 0));   // symmetric
    CHECK_FALSE(t.link_up(0, 2));
    CHECK(t.link_up(0, 3));
    CHECK_FALSE(t.link_up(1, 3));  // sqrt(250^2+200^2) > 250
    CHECK_FALSE(t.link_up(0, 0));  // no self-links
}

TEST_CASE("out-of-range ids never link") {
    Topology t({{0, 0}, {100, 0}}, 250.0);
    CHECK_FALSE(t.link_up(0, 7));
    CHECK_FALSE(t.link_up(7, 0));
}

TEST_CASE("neighbors lists in-range peers in ascending order") {
    Topology t({{0, 0}, {100, 0}, {0, 100}, {500, 500}}, 250.0);
    CHECK(t.neighbors(0) == std::vector<NodeId>{1, 2});
    CHECK(t.neighbors(3).empty());
}

TEST_CASE("forced outages override geometry and can be restored") {
    Topology t({{0, 0}, {100, 0}, {200, 0}}, 250.0);
    REQUIRE(t.link_up(0, 1));
    t.set_link(0, 1, false);
    CHECK_FALSE(t.link_up(0, 1));
    CHECK_FALSE(t.link_up(1, 0));  // outage is undirected
    CHECK(t.link_up(1, 2));        // others untouched
    CHECK(t.neighbors(0) == std::vector<NodeId>{2});
    t.set_link(1, 0, true);
    CHECK(t.link_up(0, 1));
}

TEST_CASE("forcing a link up cannot defeat geometry") {
    Topology t({{0, 0}, {1000, 0}}, 250.0);
    t.set_link(0, 1, true);
    CHECK_FALSE(t.link_up(0, 1));
}

TEST_CASE("connectivity check walks the whole graph") {
    SUBCASE("chain is connected") {
        Topology t({{0, 0}, {200, 0}, {400, 0}}, 250.0);
        CHECK(t.connected());
    }
    SUBCASE("isolated node disconnects") {
        Topology t({{0, 0}, {200, 0}, {900, 900}}, 250.0);
        CHECK_FALSE(t.connected());
    }
    SUBCASE("an outage can split the graph") {
        Topology t({{0, 0}, {200, 0}, {400, 0}}, 250.0);
        t.set_link(1, 2, false);
        CHECK_FALSE(t.connected());
    }
    SUBCASE("single node is trivially connected") {
        Topology t({{5, 5}}, 250.0);
        CHECK(t.connected());
    }
}

TEST_CASE("random placement is connected, in bounds and reproducible") {
    RngStream rng(7, rng_purpose::placement);
    Topology t = Topology::random_connected(10, 1000, 1000, 250, rng);
    CHECK(t.node_count() == 10);
    CHECK(t.connected());
    for (NodeId i = 0; i < 10; ++i) {
        CHECK(t.position(i).x >= 0.0);
        CHECK(t.position(i).x <= 1000.0);
        CHECK(t.position(i).y >= 0.0);
        CHECK(t.position(i).y <= 1000.0);
    }

    RngStream rng2(7, rng_purpose::placement);
    Topology t2 = Topology::random_connected(10, 1000, 1000, 250, rng2);
    for (NodeId i = 0; i < 10; ++i) {
        CHECK(t.position(i).x == t2.position(i).x);
        CHECK(t.position(i).y == t2.position(i).y);
    }

    RngStream rng3(8, rng_purpose::placement);
    Topology t3 = Topology::random_connected(10, 1000, 1000, 250, rng3);
    bool any_differs = false;
    for (NodeId i = 0; i < 10; ++i) {
        any_differs = any_differs || t.position(i).x != t3.position(i).x;
    }
    CHECK(any_differs);
}

TEST_CASE("impossible placements give up with an error") {
    RngStream rng(1, rng_purpose::placement);
    // 1m radio range in a 1km field cannot connect 10 nodes.
    CHECK_THROWS_AS(
        Topology::random_connected(10, 1000, 1000, 1.0, rng, 50),
        std::runtime_error);
}
