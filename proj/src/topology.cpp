#include "manetsim/topology.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace manetsim {

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Topology::Topology(std::vector<Position> positions, double radio_range)
    : positions_(std::move(positions)), radio_range_(radio_range) {
    if (radio_range_ <= 0.0) throw std::invalid_argument("radio range must be positive");
}

bool Topology::link_up(NodeId a, NodeId b) const {
    if (a == b) return false;
    if (a >= positions_.size() || b >= positions_.size()) return false;
    if (down_links_.contains(link_key(a, b))) return false;
    return distance(positions_[a], positions_[b]) <= radio_range_;
}

void Topology::set_link(NodeId a, NodeId b, bool up) {
    if (up)
        down_links_.erase(link_key(a, b));
    else
        down_links_.insert(link_key(a, b));
}

std::vector<NodeId> Topology::neighbors(NodeId id) const {
    std::vector<NodeId> out;
    for (NodeId other = 0; other < positions_.size(); ++other)
        if (link_up(id, other)) out.push_back(other);
    return out;
}

bool Topology::connected() const {
    if (positions_.size() <= 1) return true;
    std::vector<bool> seen(positions_.size(), false);
    std::queue<NodeId> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        NodeId cur = frontier.front();
        frontier.pop();
        for (NodeId next : neighbors(cur)) {
            if (!seen[next]) {
                seen[next] = true;
                ++reached;
                frontier.push(next);
            }
        }
    }
    return reached == positions_.size();
}

Topology Topology::random_connected(std::size_t count, double width, double height,
                                    double radio_range, RngStream& rng,
                                    int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Position> positions(count);
        for (auto& p : positions) {
            p.x = rng.uniform() * width;
            p.y = rng.uniform() * height;
        }
        Topology topo(std::move(positions), radio_range);
        if (topo.connected()) return topo;
    }
    throw std::runtime_error("no connected placement found");
}

}  // namespace manetsim
