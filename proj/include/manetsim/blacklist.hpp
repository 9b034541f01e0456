#pragma once

#include <set>

#include "manetsim/merkle.hpp"

namespace manetsim {

/// Nodes a detecting source refuses to deal with. Grows monotonically
/// within a run; consulted on forwarding and on RREQ/RREP acceptance.
class BlackList {
public:
    void add(NodeId n) { entries_.insert(n); }
    bool contains(NodeId n) const { return entries_.contains(n); }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::set<NodeId>& entries() const { return entries_; }

private:
    std::set<NodeId> entries_;
};

}  // namespace manetsim
