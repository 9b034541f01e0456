#include "manetsim/verification.hpp"

namespace manetsim {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::BlackHoleSuspected: return "black_hole_suspected";
        case Verdict::GrayHoleSuspected: return "gray_hole_suspected";
    }
    return "unknown";
}

Digest route_root(const std::vector<NodeId>& route,
                  const std::map<NodeId, Secret>& secrets, HashFn h) {
    if (route.empty()) throw std::invalid_argument("empty route");
    std::vector<Digest> leaves;
    leaves.reserve(route.size());
    for (NodeId node : route) leaves.push_back(leaf_value(node, secrets.at(node), h));
    return fold_root(leaves, h);
}

AttestationMessage make_destination_attestation(const ProbeMessage& probe,
                                                NodeId self, const Secret& secret,
                                                std::uint64_t delivered_count,
                                                HashFn h) {
    AttestationMessage att;
    att.flow = probe.flow;
    att.round = probe.round;
    att.leaves_so_far.leaves = {leaf_value(self, secret, h)};
    att.delivered_count = delivered_count;
    return att;
}

void prepend_leaf(AttestationMessage& att, NodeId self, const Secret& secret,
                  HashFn h) {
    att.leaves_so_far.leaves.insert(att.leaves_so_far.leaves.begin(),
                                    leaf_value(self, secret, h));
}

FlowVerifier::FlowVerifier(FlowId flow, std::vector<NodeId> route,
                           Digest expected_root, const Secret& own_secret,
                           bool fresh_start, std::uint64_t carry_sent_total,
                           std::uint32_t carry_next_round, HashFn h)
    : flow_(flow), route_(std::move(route)), expected_root_(expected_root) {
    if (route_.size() < 2) throw std::invalid_argument("route needs two endpoints");
    if (route_.front() != flow_.src || route_.back() != flow_.dst)
        throw std::invalid_argument("route endpoints do not match flow");
    own_leaf_ = leaf_value(flow_.src, own_secret, h);
    if (fresh_start) {
        baseline_ = {0, 0};
    } else {
        sent_total_ = carry_sent_total;
        next_round_ = carry_next_round;
    }
}

ProbeMessage FlowVerifier::start_round(double now) {
    ProbeRound round;
    round.round = next_round_++;
    round.sent_time = now;
    round.sent_at_probe = sent_total_;
    outstanding_ = round;
    since_probe_ = 0;
    return ProbeMessage{flow_, round.round};
}

std::optional<CheckOutcome> FlowVerifier::on_attestation(
    const AttestationMessage& att, const VerificationConfig& cfg, HashFn h) {
    if (!outstanding_) return std::nullopt;
    if (att.flow != flow_ || att.round != outstanding_->round) return std::nullopt;
    ProbeRound round = *outstanding_;
    outstanding_.reset();

    CheckOutcome outcome;
    outcome.round = round.round;
    outcome.suspect = first_hop();
    if (!verify_route_proof(own_leaf_, att.leaves_so_far, expected_root_, h)) {
        outcome.verdict = Verdict::BlackHoleSuspected;
        return outcome;
    }

    outcome.verdict = Verdict::Verified;
    if (baseline_) {
        std::uint64_t window_sent = round.sent_at_probe - baseline_->first;
        std::uint64_t window_delivered =
            att.delivered_count >= baseline_->second
                ? att.delivered_count - baseline_->second
                : 0;
        double ratio = window_sent == 0 ? 1.0
                                        : static_cast<double>(window_delivered) /
                                              static_cast<double>(window_sent);
        if (ratio < 1.0 - cfg.gray_tolerance)
            outcome.verdict = Verdict::GrayHoleSuspected;
    }
    baseline_ = {round.sent_at_probe, att.delivered_count};
    return outcome;
}

std::optional<CheckOutcome> FlowVerifier::on_timeout(std::uint32_t round) {
    if (!outstanding_ || outstanding_->round != round) return std::nullopt;
    outstanding_.reset();
    return CheckOutcome{Verdict::BlackHoleSuspected, first_hop(), round};
}

}  // namespace manetsim
