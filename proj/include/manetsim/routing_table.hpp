#pragma once

#include <cstdint>
#include <map>

#include "manetsim/merkle.hpp"

namespace manetsim {

struct RoutingTableEntry {
    NodeId destination = 0;
    NodeId next_hop = 0;
    std::uint32_t seq_number = 0;
    std::uint16_t hop_count = 0;  // >= 1 for any remote destination
    bool valid = false;
    double expiry = 0.0;  // simulation seconds
};

/// Per-destination route store. Ordered map so iteration order is
/// deterministic.
class RoutingTable {
public:
    const RoutingTableEntry* find(NodeId destination) const {
        auto it = entries_.find(destination);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Entry usable for forwarding right now, or nullptr.
    const RoutingTableEntry* find_valid(NodeId destination, double now) const {
        const auto* e = find(destination);
        if (e != nullptr && e->valid && e->expiry > now) {
            return e;
        }
        return nullptr;
    }

    void upsert(const RoutingTableEntry& entry) {
        entries_[entry.destination] = entry;
    }

    /// Marks the entry invalid; keeps the sequence number for freshness
    /// comparisons on later replies.
    void invalidate(NodeId destination) {
        auto it = entries_.find(destination);
        if (it != entries_.end()) {
            it->second.valid = false;
        }
    }

    /// Extends the expiry of an in-use route.
    void refresh(NodeId destination, double new_expiry) {
        auto it = entries_.find(destination);
        if (it != entries_.end() && it->second.expiry < new_expiry) {
            it->second.expiry = new_expiry;
        }
    }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    auto begin() { return entries_.begin(); }
    auto end() { return entries_.end(); }
    std::size_t size() const { return entries_.size(); }

private:
    std::map<NodeId, RoutingTableEntry> entries_;
};

}  // namespace manetsim
