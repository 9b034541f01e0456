#include "manetsim/packet.hpp"

namespace manetsim {

Packet make_packet(PacketBody body, std::uint64_t data_size_bits) {
    Packet p;
    p.size_bits = std::visit(
        [&](const auto& msg) -> std::uint64_t {
            using T = std::decay_t<decltype(msg)>;
            if constexpr (std::is_same_v<T, RreqMessage>) {
                return wire::rreq_bits;
            } else if constexpr (std::is_same_v<T, RrepMessage>) {
                return wire::rrep_bits;
            } else if constexpr (std::is_same_v<T, RerrMessage>) {
                return wire::rerr_bits;
            } else if constexpr (std::is_same_v<T, HelloMessage>) {
                return wire::hello_bits;
            } else if constexpr (std::is_same_v<T, DataMessage>) {
                return data_size_bits;
            } else if constexpr (std::is_same_v<T, ProbeMessage>) {
                return wire::probe_bits;
            } else {
                const auto& att = static_cast<const AttestationMessage&>(msg);
                return wire::attestation_header_bits +
                       wire::digest_bits * att.leaves_so_far.leaves.size();
            }
        },
        body);
    p.body = std::move(body);
    return p;
}

std::string packet_kind_name(const Packet& p) {
    return std::visit(
        [](const auto& msg) -> std::string {
            using T = std::decay_t<decltype(msg)>;
            if constexpr (std::is_same_v<T, RreqMessage>) {
                return "rreq";
            } else if constexpr (std::is_same_v<T, RrepMessage>) {
                return "rrep";
            } else if constexpr (std::is_same_v<T, RerrMessage>) {
                return "rerr";
            } else if constexpr (std::is_same_v<T, HelloMessage>) {
                return "hello";
            } else if constexpr (std::is_same_v<T, DataMessage>) {
                return "data";
            } else if constexpr (std::is_same_v<T, ProbeMessage>) {
                return "probe";
            } else {
                return "attestation";
            }
        },
        p.body);
}

}  // namespace manetsim
