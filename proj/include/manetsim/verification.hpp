#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "manetsim/merkle.hpp"
#include "manetsim/packet.hpp"

namespace manetsim {

struct VerificationConfig {
    bool enabled = false;
    std::uint32_t probe_interval_packets = 10;  // data packets between probes
    double probe_timeout = 2.0;                 // seconds
    double gray_tolerance = 0.2;                // accepted delivery shortfall
};

enum class Verdict { Verified, BlackHoleSuspected, GrayHoleSuspected };

const char* verdict_name(Verdict v);

struct CheckOutcome {
    Verdict verdict = Verdict::Verified;
    NodeId suspect = 0;  // meaningful for the suspicion verdicts
    std::uint32_t round = 0;
};

/// Root over the leaves of a full route (source..destination, in order).
/// Computed by the dealer, which knows every secret.
Digest route_root(const std::vector<NodeId>& route,
                  const std::map<NodeId, Secret>& secrets, HashFn h = sha1);

AttestationMessage make_destination_attestation(const ProbeMessage& probe,
                                                NodeId self, const Secret& secret,
                                                std::uint64_t delivered_count,
                                                HashFn h = sha1);

/// Intermediate relay step: contribute own leaf at the front so the chain
/// stays in route order as the attestation travels back to the source.
void prepend_leaf(AttestationMessage& att, NodeId self, const Secret& secret,
                  HashFn h = sha1);

/// Source-side state for one flow: the dealer-issued expected root, the
/// believed route, probe cadence and round resolution.
///
/// Delivery-ratio checks run over the window between consecutive rounds,
/// against a baseline (sent count, attested delivered count). A verifier
/// rebuilt after a route change starts without a baseline — losses from
/// the previous route must not be billed to the new one — so its first
/// round checks only the hash chain.
class FlowVerifier {
public:
    FlowVerifier() = default;
    FlowVerifier(FlowId flow, std::vector<NodeId> route, Digest expected_root,
                 const Secret& own_secret, bool fresh_start = true,
                 std::uint64_t carry_sent_total = 0,
                 std::uint32_t carry_next_round = 0, HashFn h = sha1);

    const FlowId& flow() const { return flow_; }
    const std::vector<NodeId>& route() const { return route_; }
    const Digest& expected_root() const { return expected_root_; }
    NodeId first_hop() const { return route_.at(1); }

    void note_data_sent() { ++sent_total_; ++since_probe_; }
    std::uint64_t sent_total() const { return sent_total_; }
    std::uint32_t next_round() const { return next_round_; }

    bool probe_due(const VerificationConfig& cfg) const {
        return !outstanding_ && since_probe_ >= cfg.probe_interval_packets;
    }
    ProbeMessage start_round(double now);
    bool has_outstanding() const { return outstanding_.has_value(); }
    std::uint32_t outstanding_round() const { return outstanding_->round; }
    double outstanding_deadline(const VerificationConfig& cfg) const {
        return outstanding_->sent_time + cfg.probe_timeout;
    }

    /// Attestation arrived at the source. Stale or foreign rounds yield
    /// nothing; the outstanding round resolves to a verdict.
    std::optional<CheckOutcome> on_attestation(const AttestationMessage& att,
                                               const VerificationConfig& cfg,
                                               HashFn h = sha1);

    /// Probe deadline passed with no attestation. Stale rounds (already
    /// resolved) yield nothing.
    std::optional<CheckOutcome> on_timeout(std::uint32_t round);

private:
    struct ProbeRound {
        std::uint32_t round = 0;
        double sent_time = 0.0;
        std::uint64_t sent_at_probe = 0;
    };

    FlowId flow_{};
    std::vector<NodeId> route_;
    Digest expected_root_{};
    Digest own_leaf_{};
    std::uint64_t sent_total_ = 0;
    std::uint32_t since_probe_ = 0;
    std::uint32_t next_round_ = 0;
    std::optional<ProbeRound> outstanding_;
    // (sent_total, attested delivered) at the last verified round
    std::optional<std::pair<std::uint64_t, std::uint64_t>> baseline_;
};

}  // namespace manetsim
