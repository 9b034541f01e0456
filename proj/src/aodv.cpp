#include "manetsim/aodv.hpp"

#include <stdexcept>

#include "manetsim/blacklist.hpp"

namespace manetsim {

AodvNode::AodvNode(NodeId id, AodvConfig cfg, const BlackList* blacklist)
    : id_(id), cfg_(cfg), blacklist_(blacklist) {}

bool AodvNode::sender_blacklisted(NodeId from) const {
    return blacklist_ != nullptr && blacklist_->contains(from);
}

std::vector<Action> AodvNode::originate_route_discovery(NodeId destination,
                                                        double now) {
    if (destination == id_) {
        throw std::invalid_argument("self-route");
    }
    ++own_seq_;
    RreqMessage rreq;
    rreq.origin = id_;
    rreq.rreq_id = next_rreq_id_++;
    rreq.destination = destination;
    const auto* known = table_.find(destination);
    rreq.dest_seq = known != nullptr ? known->seq_number : 0;
    rreq.hop_count = 0;
    seen_rreqs_.insert({rreq.origin, rreq.rreq_id});
    (void)now;
    return {SendBroadcast{make_packet(rreq)}};
}

void AodvNode::update_reverse_route(NodeId origin, NodeId from,
                                    std::uint16_t hops, double now) {
    // Reverse entries carry no origin sequence number; they exist so
    // replies and attestations can travel back.
    const auto* cur = table_.find_valid(origin, now);
    if (cur != nullptr && cur->hop_count <= hops) {
        return;
    }
    RoutingTableEntry e;
    e.destination = origin;
    e.next_hop = from;
    e.seq_number = cur != nullptr ? cur->seq_number : 0;
    e.hop_count = hops;
    e.valid = true;
    e.expiry = now + cfg_.route_expiry;
    table_.upsert(e);
}

AodvNode::RreqResult AodvNode::handle_rreq(const RreqMessage& msg, NodeId from,
                                           double now) {
    RreqResult res;
    if (sender_blacklisted(from)) {
        return res;
    }
    if (msg.origin == id_) {
        return res;  // own flood came back around
    }
    bool first_copy = seen_rreqs_.insert({msg.origin, msg.rreq_id}).second;

    if (msg.destination == id_) {
        // Reply to every copy of the flood, not just the first. Each
        // copy arrived over a different last link, so the replies offer
        // the requester alternative paths — needed when its preferred
        // reverse path runs through a node it refuses to use.
        update_reverse_route(msg.origin, from,
                             static_cast<std::uint16_t>(msg.hop_count + 1), now);
        RrepMessage rrep;
        rrep.destination = id_;
        rrep.dest_seq = own_seq_;
        rrep.hop_count = 0;
        rrep.origin = msg.origin;
        res.decision = RreqDecision::Replied;
        res.actions.push_back(SendUnicast{from, make_packet(rrep)});
        return res;
    }

    if (!first_copy) {
        ++duplicate_rreqs_;
        return res;
    }
    update_reverse_route(msg.origin, from,
                         static_cast<std::uint16_t>(msg.hop_count + 1), now);

    const auto* entry = table_.find_valid(msg.destination, now);
    bool fresh = entry != nullptr &&
                 !blacklist_->contains(entry->next_hop) &&
                 (cfg_.strict_freshness ? entry->seq_number > msg.dest_seq
                                        : entry->seq_number >= msg.dest_seq);
    if (fresh) {
        RrepMessage rrep;
        rrep.destination = msg.destination;
        rrep.dest_seq = entry->seq_number;
        rrep.hop_count = entry->hop_count;
        rrep.origin = msg.origin;
        res.decision = RreqDecision::Replied;
        res.actions.push_back(SendUnicast{from, make_packet(rrep)});
        return res;
    }

    RreqMessage forward = msg;
    forward.hop_count = static_cast<std::uint16_t>(msg.hop_count + 1);
    res.decision = RreqDecision::Rebroadcast;
    res.actions.push_back(SendBroadcast{make_packet(forward)});
    return res;
}

AodvNode::RrepResult AodvNode::handle_rrep(const RrepMessage& msg, NodeId from,
                                           double now) {
    RrepResult res;
    if (sender_blacklisted(from) || blacklist_->contains(msg.destination)) {
        return res;
    }

    const std::uint16_t hops_here = static_cast<std::uint16_t>(msg.hop_count + 1);
    const auto* entry = table_.find(msg.destination);
    bool stale_entry = entry == nullptr || !entry->valid || entry->expiry <= now;
    bool adopt = stale_entry || msg.dest_seq > entry->seq_number ||
                 (msg.dest_seq == entry->seq_number &&
                  hops_here < entry->hop_count);
    if (adopt) {
        RoutingTableEntry e;
        e.destination = msg.destination;
        e.next_hop = from;
        e.seq_number = msg.dest_seq;
        e.hop_count = hops_here;
        e.valid = true;
        e.expiry = now + cfg_.route_expiry;
        table_.upsert(e);
        res.adopted = true;
    }

    if (msg.origin == id_) {
        res.consumed = true;
        return res;
    }

    // Relay along the pre-established reverse route toward the requester.
    const auto* reverse = table_.find_valid(msg.origin, now);
    if (reverse == nullptr || blacklist_->contains(reverse->next_hop)) {
        ++dropped_no_reverse_route_;
        return res;
    }
    RrepMessage forward = msg;
    forward.hop_count = hops_here;
    res.actions.push_back(SendUnicast{reverse->next_hop, make_packet(forward)});
    return res;
}

AodvNode::RerrResult AodvNode::handle_rerr(const RerrMessage& msg, NodeId from,
                                           double now, bool has_pending_traffic) {
    RerrResult res;
    const auto* entry = table_.find(msg.unreachable_destination);
    if (entry == nullptr || !entry->valid || entry->next_hop != from) {
        return res;  // the break does not affect our path
    }
    table_.invalidate(msg.unreachable_destination);
    res.invalidated = true;
    if (has_pending_traffic) {
        res.needs_rediscovery = true;
        return res;
    }
    // Propagate upstream so sources hear about the break.
    RerrMessage forward;
    forward.unreachable_destination = msg.unreachable_destination;
    forward.origin_of_report = id_;
    res.actions.push_back(SendBroadcast{make_packet(forward)});
    (void)now;
    return res;
}

AodvNode::HelloResult AodvNode::hello_tick(double now) {
    HelloResult res;
    res.actions.push_back(SendBroadcast{make_packet(HelloMessage{id_})});

    const double silence_limit = cfg_.allowed_hello_loss * cfg_.hello_interval;
    for (auto it = last_heard_.begin(); it != last_heard_.end();) {
        if (now - it->second > silence_limit) {
            res.lost_neighbors.push_back(it->first);
            it = last_heard_.erase(it);
        } else {
            ++it;
        }
    }
    for (NodeId lost : res.lost_neighbors) {
        for (auto& [dest, entry] : table_) {
            if (entry.valid && entry.next_hop == lost) {
                entry.valid = false;
                res.broken_destinations.push_back(dest);
                RerrMessage rerr;
                rerr.unreachable_destination = dest;
                rerr.origin_of_report = id_;
                res.actions.push_back(SendBroadcast{make_packet(rerr)});
            }
        }
    }
    return res;
}

std::optional<NodeId> AodvNode::next_hop(NodeId destination, double now) const {
    const auto* entry = table_.find_valid(destination, now);
    if (entry == nullptr || blacklist_->contains(entry->next_hop)) {
        return std::nullopt;
    }
    return entry->next_hop;
}

void AodvNode::note_heard(NodeId from, double now) {
    last_heard_[from] = now;
}

void AodvNode::refresh_route(NodeId destination, double now) {
    table_.refresh(destination, now + cfg_.route_expiry);
}

}  // namespace manetsim
