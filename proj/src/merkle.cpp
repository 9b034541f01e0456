#include "manetsim/merkle.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <stdexcept>

namespace manetsim {

std::string Digest::hex() const {
    std::string out;
    out.reserve(bytes.size() * 2);
    char buf[3];
    for (std::uint8_t b : bytes) {
        std::snprintf(buf, sizeof(buf), "%02x", b);
        out += buf;
    }
    return out;
}

Digest sha1(std::span<const std::uint8_t> data) {
    Digest d;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha1(),
                   nullptr) != 1 ||
        len != d.bytes.size()) {
        throw std::runtime_error("SHA-1 digest failed");
    }
    return d;
}

Digest leaf_value(NodeId id, const Secret& secret, HashFn h) {
    std::array<std::uint8_t, 4 + 16> msg{};
    msg[0] = static_cast<std::uint8_t>(id >> 24);
    msg[1] = static_cast<std::uint8_t>(id >> 16);
    msg[2] = static_cast<std::uint8_t>(id >> 8);
    msg[3] = static_cast<std::uint8_t>(id);
    std::copy(secret.bytes.begin(), secret.bytes.end(), msg.begin() + 4);
    return h(msg);
}

Digest fold_root(std::span<const Digest> leaves, HashFn h) {
    if (leaves.empty()) {
        throw std::invalid_argument("empty leaf set");
    }
    Digest acc = leaves[0];
    std::array<std::uint8_t, 40> pair{};
    for (std::size_t i = 1; i < leaves.size(); ++i) {
        std::copy(acc.bytes.begin(), acc.bytes.end(), pair.begin());
        std::copy(leaves[i].bytes.begin(), leaves[i].bytes.end(),
                  pair.begin() + 20);
        acc = h(pair);
    }
    return acc;
}

bool verify_route_proof(const Digest& own_leaf, const RouteProof& proof,
                        const Digest& expected_root, HashFn h) {
    if (proof.leaves.empty()) {
        return false;
    }
    std::vector<Digest> chain;
    chain.reserve(proof.leaves.size() + 1);
    chain.push_back(own_leaf);
    chain.insert(chain.end(), proof.leaves.begin(), proof.leaves.end());
    return fold_root(chain, h) == expected_root;
}

}  // namespace manetsim
