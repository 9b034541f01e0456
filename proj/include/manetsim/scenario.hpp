#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "manetsim/adversary.hpp"
#include "manetsim/aodv.hpp"
#include "manetsim/topology.hpp"
#include "manetsim/verification.hpp"

namespace manetsim {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FlowConfig {
    NodeId src = 0;
    NodeId dst = 0;
    double start = 0.0;
};

struct LinkEvent {
    NodeId a = 0;
    NodeId b = 0;
    bool up = true;
    double time = 0.0;
};

/// One run's whole configuration. Field defaults are the reference
/// parameter set: 10 nodes in a 1 km x 1 km field, 250 m radio range,
/// 600 s horizon, exponential(1 s) inter-arrivals, exponential(1024 bit)
/// payloads.
struct ScenarioConfig {
    std::string name = "scenario";
    std::size_t node_count = 10;
    double width = 1000.0;
    double height = 1000.0;
    double radio_range = 250.0;
    double duration = 600.0;
    double bin_width = 10.0;
    bool fixed_placement = true;
    std::vector<Position> positions;  // one per node when fixed_placement

    std::vector<FlowConfig> flows;
    double mean_interarrival = 1.0;
    double mean_size_bits = 1024.0;

    AttackKind attack_kind = AttackKind::None;
    std::vector<NodeId> attacker_nodes;
    double gray_drop_fraction = 0.5;
    bool respond_to_probes = false;
    bool drop_defense_traffic = true;

    VerificationConfig defense;
    AodvConfig aodv;
    std::vector<LinkEvent> link_events;
    std::uint64_t seed = 1;
};

/// Parse the flat `key = value` scenario format. Unknown keys, malformed
/// values, and inconsistent references are rejected with messages naming
/// the offending line.
ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin = "<string>");
ScenarioConfig parse_scenario_file(const std::filesystem::path& path);

}  // namespace manetsim
