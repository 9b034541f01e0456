#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "manetsim/packet.hpp"
#include "manetsim/rng.hpp"

namespace manetsim {

enum class AttackKind { None, InternalBlackHole, ExternalBlackHole, GrayHole };

struct AttackProfile {
    AttackKind kind = AttackKind::None;
    std::set<NodeId> colluders;      // includes self when non-empty
    double gray_drop_fraction = 0.0; // only for GrayHole
    std::uint32_t forged_seq = 1u << 31;
    /// Black hole treatment of probe/attestation traffic once inserted.
    /// Default is to drop it along with the data, so detection happens by
    /// timeout. When false the defense traffic is relayed.
    bool drop_defense_traffic = true;
    /// Answer probes with a fabricated attestation instead of staying
    /// silent. The fabrication uses every leaf the attacker can produce.
    bool respond_to_probes = false;
};

enum class ForwardDecision { Forward, Drop };

/// Attack behavior layered over a node. Honest nodes have kind None and
/// every hook is a no-op.
class AdversaryState {
public:
    AdversaryState(NodeId self, AttackProfile profile, const Secret& own_secret,
                   std::uint64_t scenario_seed);

    const AttackProfile& profile() const { return profile_; }
    bool is_black_hole() const {
        return profile_.kind == AttackKind::InternalBlackHole ||
               profile_.kind == AttackKind::ExternalBlackHole;
    }
    bool wants_promiscuous() const {
        return profile_.kind == AttackKind::ExternalBlackHole;
    }

    /// External attackers answer an overheard request with a reply that
    /// claims a huge sequence number and a one-hop distance. At most one
    /// forgery per distinct request.
    std::optional<RrepMessage> observe_rreq(const RreqMessage& msg,
                                            NodeId heard_from, double now);

    /// External attackers re-forge on overheard data from an active route
    /// they are not part of, rate limited to once a second per destination.
    std::optional<RrepMessage> observe_data(const DataMessage& msg,
                                            NodeId heard_from, double now,
                                            bool currently_on_path);

    /// Drop-or-forward verdict for a transit packet.
    ForwardDecision adversarial_forward(const Packet& packet);

    /// Secret disclosure between colluders. Returns false (refused) when
    /// the peer is not in the colluder set.
    bool collude_share_secret(NodeId peer, AdversaryState& peer_state) const;

    bool knows_secret_of(NodeId node) const {
        return known_secrets_.contains(node);
    }

    /// Leaf values this attacker can produce: its own plus any obtained
    /// through collusion.
    std::optional<Digest> leaf_for(NodeId node, HashFn h) const;

    /// Best-effort fake attestation: real leaves where the secret is
    /// known, zero digests elsewhere. downstream is the believed route
    /// from this node to the destination inclusive.
    AttestationMessage fabricate_attestation(const ProbeMessage& probe,
                                             const std::vector<NodeId>& downstream,
                                             std::uint64_t received_count,
                                             HashFn h) const;

    void accept_shared_secret(NodeId from, const Secret& secret) {
        known_secrets_[from] = secret;
    }

    std::uint64_t packets_dropped() const { return packets_dropped_; }

private:
    NodeId self_;
    AttackProfile profile_;
    std::map<NodeId, Secret> known_secrets_;
    RngStream gray_rng_;
    std::set<std::pair<NodeId, std::uint32_t>> forged_for_rreq_;
    std::map<NodeId, double> last_data_forge_;
    std::uint64_t packets_dropped_ = 0;
};

}  // namespace manetsim
