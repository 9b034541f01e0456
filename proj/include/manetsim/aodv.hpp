#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "manetsim/packet.hpp"
#include "manetsim/routing_table.hpp"

namespace manetsim {

class BlackList;

struct AodvConfig {
    double hello_interval = 1.0;
    int allowed_hello_loss = 2;
    double route_expiry = 10.0;
    /// Paper wording: an intermediate answers only when its cached route is
    /// strictly fresher than the request. RFC behavior (>=) behind a switch.
    bool strict_freshness = true;
};

/// Network effects a handler asks the simulator to carry out.
struct SendUnicast {
    NodeId to;
    Packet packet;
};
struct SendBroadcast {
    Packet packet;
};
using Action = std::variant<SendUnicast, SendBroadcast>;

/// Per-node AODV state machine: route discovery, route maintenance and
/// table management. Handlers return the transmissions they want made;
/// the event loop performs them.
class AodvNode {
public:
    AodvNode(NodeId id, AodvConfig cfg, const BlackList* blacklist);

    NodeId id() const { return id_; }
    std::uint32_t own_seq() const { return own_seq_; }
    const RoutingTable& table() const { return table_; }
    RoutingTable& table() { return table_; }

    /// Starts a discovery toward destination. Throws std::invalid_argument
    /// on a self-route. The caller is responsible for buffering data until
    /// a route comes back.
    std::vector<Action> originate_route_discovery(NodeId destination, double now);

    enum class RreqDecision { Drop, Rebroadcast, Replied };
    struct RreqResult {
        RreqDecision decision = RreqDecision::Drop;
        std::vector<Action> actions;
    };
    RreqResult handle_rreq(const RreqMessage& msg, NodeId from, double now);

    struct RrepResult {
        bool adopted = false;   // entry toward msg.destination updated
        bool consumed = false;  // this node is the reply's origin target
        std::vector<Action> actions;
    };
    RrepResult handle_rrep(const RrepMessage& msg, NodeId from, double now);

    struct RerrResult {
        bool invalidated = false;
        bool needs_rediscovery = false;  // source with pending traffic
        std::vector<Action> actions;
    };
    /// has_pending_traffic: the caller knows whether this node is a data
    /// source with traffic waiting for the unreachable destination.
    RerrResult handle_rerr(const RerrMessage& msg, NodeId from, double now,
                           bool has_pending_traffic);

    struct HelloResult {
        std::vector<NodeId> lost_neighbors;
        std::vector<NodeId> broken_destinations;  // invalidated by the losses
        std::vector<Action> actions;              // hello + any RERR broadcasts
    };
    HelloResult hello_tick(double now);

    /// Valid, unexpired, non-blacklisted forwarding hop, or nothing.
    std::optional<NodeId> next_hop(NodeId destination, double now) const;

    /// Any reception counts as proof of life for the sender.
    void note_heard(NodeId from, double now);

    bool neighbor_alive(NodeId n) const {
        return last_heard_.contains(n);
    }

    /// Extends expiry of the entries a forwarded packet used.
    void refresh_route(NodeId destination, double now);

    void bump_own_seq() { ++own_seq_; }

    std::uint64_t dropped_no_reverse_route() const { return dropped_no_reverse_route_; }
    std::uint64_t duplicate_rreqs() const { return duplicate_rreqs_; }

private:
    bool sender_blacklisted(NodeId from) const;
    void update_reverse_route(NodeId origin, NodeId from, std::uint16_t hops,
                              double now);

    NodeId id_;
    AodvConfig cfg_;
    const BlackList* blacklist_;  // consulted, owned elsewhere
    RoutingTable table_;
    std::uint32_t own_seq_ = 0;
    std::uint32_t next_rreq_id_ = 0;
    std::set<std::pair<NodeId, std::uint32_t>> seen_rreqs_;
    std::map<NodeId, double> last_heard_;
    std::uint64_t dropped_no_reverse_route_ = 0;
    std::uint64_t duplicate_rreqs_ = 0;
};

}  // namespace manetsim
