#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "manetsim/merkle.hpp"

namespace manetsim {

/// Application flow endpoints.
struct FlowId {
    NodeId src = 0;
    NodeId dst = 0;

    auto operator<=>(const FlowId&) const = default;
};

struct RreqMessage {
    NodeId origin = 0;
    std::uint32_t rreq_id = 0;
    NodeId destination = 0;
    std::uint32_t dest_seq = 0;  // last sequence number known to the origin
    std::uint16_t hop_count = 0;
};

struct RrepMessage {
    NodeId destination = 0;
    std::uint32_t dest_seq = 0;
    std::uint16_t hop_count = 0;  // hops from the replier to the destination
    NodeId origin = 0;            // requester the reply travels back to
    bool forged = false;          // simulator bookkeeping, not wire data
};

struct RerrMessage {
    NodeId unreachable_destination = 0;
    NodeId origin_of_report = 0;
};

struct HelloMessage {
    NodeId from = 0;
};

struct DataMessage {
    FlowId flow;
    std::uint64_t seq = 0;
    double origin_time = 0.0;
};

struct ProbeMessage {
    FlowId flow;
    std::uint32_t round = 0;
};

struct AttestationMessage {
    FlowId flow;
    std::uint32_t round = 0;
    RouteProof leaves_so_far;           // front = hop nearest the source
    std::uint64_t delivered_count = 0;  // data packets the destination saw this round
};

using PacketBody = std::variant<RreqMessage, RrepMessage, RerrMessage,
                                HelloMessage, DataMessage, ProbeMessage,
                                AttestationMessage>;

/// Nominal wire sizes for fixed-format messages, in bits.
namespace wire {
inline constexpr std::uint64_t rreq_bits = 192;
inline constexpr std::uint64_t rrep_bits = 160;
inline constexpr std::uint64_t rerr_bits = 96;
inline constexpr std::uint64_t hello_bits = 160;
inline constexpr std::uint64_t probe_bits = 128;
inline constexpr std::uint64_t attestation_header_bits = 96;
inline constexpr std::uint64_t digest_bits = 160;
}  // namespace wire

struct Packet {
    PacketBody body;
    std::uint64_t size_bits = 0;

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(body);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(body);
    }
};

/// Builds a packet with the size model applied. Data packets carry their
/// sampled size; everything else has a fixed format.
Packet make_packet(PacketBody body, std::uint64_t data_size_bits = 0);

/// Short kind tag for traces and summaries.
std::string packet_kind_name(const Packet& p);

inline bool is_data(const Packet& p) { return p.is<DataMessage>(); }
inline bool is_defense_traffic(const Packet& p) {
    return p.is<ProbeMessage>() || p.is<AttestationMessage>();
}

}  // namespace manetsim
