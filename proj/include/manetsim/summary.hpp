#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/metrics.hpp"
#include "manetsim/packet.hpp"
#include "manetsim/verification.hpp"

namespace manetsim {

struct PacketRecord {
    FlowId flow;
    std::uint64_t seq = 0;
    double send_time = 0.0;
    std::uint64_t size_bits = 0;
    bool delivered = false;
    double recv_time = 0.0;
};

struct InsertionRecord {
    double time = 0.0;
    FlowId flow;
    NodeId via = 0;  // sender of the adopted forged reply
};

struct DetectionRecord {
    double time = 0.0;
    FlowId flow;
    Verdict verdict = Verdict::Verified;
    NodeId suspect = 0;
    std::uint32_t round = 0;
};

/// Everything one run produced: counters, the per-packet data log,
/// security events, and the binned metric series.
struct RunSummary {
    std::string scenario_name;
    std::uint64_t seed = 0;
    double duration = 0.0;

    std::uint64_t data_sent = 0;
    std::uint64_t data_delivered = 0;
    std::uint64_t adversary_dropped = 0;
    std::uint64_t radio_lost = 0;
    std::uint64_t no_route_dropped = 0;
    std::uint64_t in_flight_at_end = 0;
    std::uint64_t pending_at_end = 0;
    std::uint64_t verified_rounds = 0;

    std::vector<PacketRecord> packet_log;
    std::vector<InsertionRecord> insertions;
    std::vector<DetectionRecord> detections;
    std::map<NodeId, double> blacklist_times;  // node -> first time blacklisted
    std::map<std::string, std::uint64_t> transmissions;  // by packet kind
    MetricsSeries metrics;

    /// Every generated data packet is in exactly one terminal bucket.
    bool conserved() const {
        return data_sent == data_delivered + adversary_dropped + radio_lost +
                                no_route_dropped + in_flight_at_end +
                                pending_at_end;
    }

    std::optional<double> first_insertion_time() const;
    /// Time the last blacklist entry appeared; nothing when no node was
    /// ever blacklisted.
    std::optional<double> detection_complete_time() const;
    /// Delivery ratio over packets with send_time in [t0, t1); 1 when the
    /// window saw no sends.
    double delivery_ratio_sent_in(double t0, double t1) const;
    /// Mean end-to-end delay over delivered packets sent after t.
    double mean_delay_sent_after(double t) const;
    std::string metrics_csv() const;
};

}  // namespace manetsim
