#include "manetsim/adversary.hpp"

namespace manetsim {

AdversaryState::AdversaryState(NodeId self, AttackProfile profile,
                               const Secret& own_secret, std::uint64_t scenario_seed)
    : self_(self),
      profile_(std::move(profile)),
      gray_rng_(scenario_seed, rng_purpose::gray_drops, self) {
    known_secrets_[self_] = own_secret;
}

std::optional<RrepMessage> AdversaryState::observe_rreq(const RreqMessage& msg,
                                                        NodeId heard_from, double) {
    (void)heard_from;
    if (profile_.kind != AttackKind::ExternalBlackHole) return std::nullopt;
    if (msg.origin == self_ || msg.destination == self_) return std::nullopt;
    auto key = std::pair{msg.origin, msg.rreq_id};
    if (!forged_for_rreq_.insert(key).second) return std::nullopt;
    RrepMessage forged;
    forged.destination = msg.destination;
    forged.dest_seq = profile_.forged_seq;
    forged.hop_count = 1;
    forged.origin = msg.origin;
    forged.forged = true;
    return forged;
}

std::optional<RrepMessage> AdversaryState::observe_data(const DataMessage& msg,
                                                        NodeId heard_from, double now,
                                                        bool currently_on_path) {
    (void)heard_from;
    if (profile_.kind != AttackKind::ExternalBlackHole) return std::nullopt;
    if (currently_on_path) return std::nullopt;  // already swallowing this flow
    if (msg.flow.src == self_ || msg.flow.dst == self_) return std::nullopt;
    auto it = last_data_forge_.find(msg.flow.dst);
    if (it != last_data_forge_.end() && now - it->second < 1.0) return std::nullopt;
    last_data_forge_[msg.flow.dst] = now;
    RrepMessage forged;
    forged.destination = msg.flow.dst;
    forged.dest_seq = profile_.forged_seq;
    forged.hop_count = 1;
    forged.origin = msg.flow.src;
    forged.forged = true;
    return forged;
}

ForwardDecision AdversaryState::adversarial_forward(const Packet& packet) {
    switch (profile_.kind) {
        case AttackKind::None:
            return ForwardDecision::Forward;
        case AttackKind::InternalBlackHole:
        case AttackKind::ExternalBlackHole:
            if (is_data(packet)) {
                ++packets_dropped_;
                return ForwardDecision::Drop;
            }
            if (is_defense_traffic(packet) && profile_.drop_defense_traffic)
                return ForwardDecision::Drop;
            return ForwardDecision::Forward;
        case AttackKind::GrayHole:
            if (is_data(packet) &&
                gray_rng_.bernoulli(profile_.gray_drop_fraction)) {
                ++packets_dropped_;
                return ForwardDecision::Drop;
            }
            return ForwardDecision::Forward;
    }
    return ForwardDecision::Forward;
}

bool AdversaryState::collude_share_secret(NodeId peer,
                                          AdversaryState& peer_state) const {
    if (!profile_.colluders.contains(peer) ||
        !profile_.colluders.contains(self_))
        return false;
    peer_state.accept_shared_secret(self_, known_secrets_.at(self_));
    return true;
}

std::optional<Digest> AdversaryState::leaf_for(NodeId node, HashFn h) const {
    auto it = known_secrets_.find(node);
    if (it == known_secrets_.end()) return std::nullopt;
    return leaf_value(node, it->second, h);
}

AttestationMessage AdversaryState::fabricate_attestation(
    const ProbeMessage& probe, const std::vector<NodeId>& downstream,
    std::uint64_t received_count, HashFn h) const {
    AttestationMessage att;
    att.flow = probe.flow;
    att.round = probe.round;
    att.delivered_count = received_count;
    att.leaves_so_far.leaves.reserve(downstream.size());
    for (NodeId node : downstream) {
        auto leaf = leaf_for(node, h);
        att.leaves_so_far.leaves.push_back(leaf.value_or(Digest{}));
    }
    return att;
}

}  // namespace manetsim
