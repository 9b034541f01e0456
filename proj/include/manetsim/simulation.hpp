#pragma once

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "manetsim/adversary.hpp"
#include "manetsim/aodv.hpp"
#include "manetsim/blacklist.hpp"
#include "manetsim/event_queue.hpp"
#include "manetsim/scenario.hpp"
#include "manetsim/summary.hpp"
#include "manetsim/topology.hpp"
#include "manetsim/verification.hpp"

namespace manetsim {

/// One node's full runtime state: routing, local blacklist, attack
/// overlay, defense bookkeeping, and traffic buffered while unrouted.
struct NodeRuntime {
    NodeRuntime(NodeId id_, const AodvConfig& aodv_cfg, const Secret& secret_,
                AttackProfile profile, std::uint64_t seed)
        : id(id_),
          secret(secret_),
          aodv(id_, aodv_cfg, &blacklist),
          adversary(id_, std::move(profile), secret_, seed) {}

    NodeId id;
    Secret secret;
    BlackList blacklist;
    AodvNode aodv;
    AdversaryState adversary;

    std::map<FlowId, FlowVerifier> verifiers;       // flows sourced here
    std::map<FlowId, std::uint64_t> data_received;  // addressed data, per flow
    std::map<FlowId, double> last_data_time;        // last addressed data
    std::map<NodeId, std::vector<Packet>> pending;  // unrouted data by dest
    std::map<NodeId, std::uint64_t> discovery_gen;
    std::set<NodeId> discovery_active;
    // where each probe round came from, so the attestation can retrace it
    std::map<std::pair<FlowId, std::uint32_t>, NodeId> probe_upstream;
};

/// Deterministic discrete-event run of one scenario: unit-disk radio,
/// AODV routing, optional attackers, optional verification defense.
class Simulation {
public:
    explicit Simulation(ScenarioConfig cfg);

    /// Executes the full event horizon. Single-shot per instance.
    RunSummary run();

    const Topology& topology() const { return topo_; }
    const ScenarioConfig& config() const { return cfg_; }
    const NodeRuntime& node(NodeId id) const { return *nodes_.at(id); }

private:
    static constexpr double processing_delay_s = 0.001;
    static constexpr double bandwidth_bps = 1e6;
    static constexpr double discovery_retry_s = 1.0;
    static constexpr double reinsertion_backoff_s = 1.0;

    double link_delay(std::uint64_t bits) const {
        return static_cast<double>(bits) / bandwidth_bps + processing_delay_s;
    }

    std::vector<FlowId> flows_from_to(NodeId src, NodeId dst) const;
    std::vector<NodeId> believed_route(NodeId src, NodeId dst) const;

    void transmit_unicast(NodeId from, NodeId to, Packet packet);
    void transmit_broadcast(NodeId from, Packet packet);
    void perform(NodeRuntime& rt, const std::vector<Action>& actions);

    void start_discovery(NodeRuntime& rt, NodeId dest);
    void init_verifier(NodeRuntime& rt, FlowId flow);
    void send_data_from_source(NodeRuntime& rt, const Packet& packet);
    void on_route_adopted(NodeRuntime& rt, NodeId dest, NodeId via, bool forged,
                          bool consumed);
    void handle_outcome(NodeRuntime& rt, FlowId flow, const CheckOutcome& outcome);

    void dispatch(const Event& ev);
    void on_delivery(const PacketDelivery& ev);
    void on_traffic(const TrafficArrival& ev);
    void on_hello(const HelloTick& ev);
    void on_retry(const DiscoveryRetry& ev);
    void on_probe_timeout(const ProbeTimeout& ev);

    void on_rreq(NodeRuntime& rt, NodeId from, const Packet& packet);
    void on_rrep(NodeRuntime& rt, NodeId from, const Packet& packet);
    void on_rerr(NodeRuntime& rt, NodeId from, const Packet& packet);
    void on_data(NodeRuntime& rt, NodeId from, const Packet& packet);
    void on_probe(NodeRuntime& rt, NodeId from, const Packet& packet);
    void on_attestation(NodeRuntime& rt, NodeId from, const Packet& packet);

    ScenarioConfig cfg_;
    Topology topo_;
    EventQueue queue_;
    double now_ = 0.0;
    bool ran_ = false;

    std::vector<std::unique_ptr<NodeRuntime>> nodes_;
    std::map<NodeId, Secret> secrets_;  // the dealer's view
    std::vector<RngStream> flow_rngs_;
    std::vector<std::uint64_t> flow_next_seq_;
    std::map<std::pair<FlowId, std::uint64_t>, std::size_t> log_index_;
    std::map<std::pair<NodeId, NodeId>, double> link_fifo_;

    RunSummary summary_;
};

/// Convenience: build and run in one call.
RunSummary run_scenario(const ScenarioConfig& cfg);

}  // namespace manetsim
