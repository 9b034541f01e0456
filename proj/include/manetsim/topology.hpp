#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "manetsim/merkle.hpp"
#include "manetsim/rng.hpp"

namespace manetsim {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);

/// Unit-disk radio graph over fixed node positions, with per-link forced
/// outages layered on top (scripted mid-run failures).
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Position> positions, double radio_range);

    std::size_t node_count() const { return positions_.size(); }
    const Position& position(NodeId id) const { return positions_.at(id); }
    double radio_range() const { return radio_range_; }

    bool link_up(NodeId a, NodeId b) const;
    void set_link(NodeId a, NodeId b, bool up);
    std::vector<NodeId> neighbors(NodeId id) const;
    bool connected() const;

    /// Uniform placement in a width x height field, resampled until the
    /// disk graph is connected. Throws after max_attempts failures.
    static Topology random_connected(std::size_t count, double width,
                                     double height, double radio_range,
                                     RngStream& rng, int max_attempts = 1000);

private:
    static std::pair<NodeId, NodeId> link_key(NodeId a, NodeId b) {
        return a < b ? std::pair{a, b} : std::pair{b, a};
    }

    std::vector<Position> positions_;
    double radio_range_ = 250.0;
    std::set<std::pair<NodeId, NodeId>> down_links_;
};

}  // namespace manetsim
