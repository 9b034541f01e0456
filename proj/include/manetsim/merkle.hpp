#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace manetsim {

using NodeId = std::uint32_t;

/// SHA-1 sized hash output. Equality is byte-wise.
struct Digest {
    std::array<std::uint8_t, 20> bytes{};

    auto operator<=>(const Digest&) const = default;

    std::string hex() const;
};

/// Per-node secret, generated locally from the scenario's seeded source
/// and never transmitted except by an explicitly configured colluder.
struct Secret {
    std::array<std::uint8_t, 16> bytes{};
};

/// Ordered leaf values released during an attestation round, from the hop
/// nearest the source down to the destination. The checking node's own
/// leaf is not part of the proof.
struct RouteProof {
    std::vector<Digest> leaves;
};

/// One-way hash, injectable so tests can swap a stub.
using HashFn = Digest (*)(std::span<const std::uint8_t>);

/// SHA-1 of the input bytes.
Digest sha1(std::span<const std::uint8_t> data);

/// h(id || secret) with the node id encoded as 4 big-endian bytes.
Digest leaf_value(NodeId id, const Secret& secret, HashFn h = sha1);

/// Left-deep fold over the leaves: acc = leaves[0], then
/// acc = h(acc || leaf) for each following leaf. A single leaf is its
/// own root. Throws std::invalid_argument on an empty leaf set.
Digest fold_root(std::span<const Digest> leaves, HashFn h = sha1);

/// True iff folding the checker's own leaf followed by the proof's
/// leaves reproduces expected_root. An empty proof is an incomplete
/// attestation and never verifies.
bool verify_route_proof(const Digest& own_leaf, const RouteProof& proof,
                        const Digest& expected_root, HashFn h = sha1);

}  // namespace manetsim
