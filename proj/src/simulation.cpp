#include "manetsim/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace manetsim {

Simulation::Simulation(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
    summary_.scenario_name = cfg_.name;
    summary_.seed = cfg_.seed;
    summary_.duration = cfg_.duration;
    summary_.metrics = MetricsSeries(cfg_.duration, cfg_.bin_width);

    if (cfg_.fixed_placement) {
        topo_ = Topology(cfg_.positions, cfg_.radio_range);
    } else {
        RngStream placement_rng(cfg_.seed, rng_purpose::placement);
        topo_ = Topology::random_connected(cfg_.node_count, cfg_.width,
                                           cfg_.height, cfg_.radio_range,
                                           placement_rng);
    }

    for (NodeId i = 0; i < cfg_.node_count; ++i) {
        RngStream secret_rng(cfg_.seed, rng_purpose::secrets, i);
        Secret s;
        for (auto& b : s.bytes) b = secret_rng.byte();
        secrets_[i] = s;
    }

    std::set<NodeId> attackers(cfg_.attacker_nodes.begin(),
                               cfg_.attacker_nodes.end());
    std::set<NodeId> colluders =
        attackers.size() >= 2 ? attackers : std::set<NodeId>{};

    nodes_.reserve(cfg_.node_count);
    for (NodeId i = 0; i < cfg_.node_count; ++i) {
        AttackProfile profile;
        if (attackers.contains(i)) {
            profile.kind = cfg_.attack_kind;
            profile.colluders = colluders;
            profile.gray_drop_fraction = cfg_.gray_drop_fraction;
            profile.respond_to_probes = cfg_.respond_to_probes;
            profile.drop_defense_traffic = cfg_.drop_defense_traffic;
        }
        nodes_.push_back(std::make_unique<NodeRuntime>(i, cfg_.aodv, secrets_[i],
                                                       std::move(profile),
                                                       cfg_.seed));
    }
    for (NodeId a : colluders)
        for (NodeId b : colluders)
            if (a != b)
                nodes_[a]->adversary.collude_share_secret(b, nodes_[b]->adversary);

    flow_rngs_.reserve(cfg_.flows.size());
    flow_next_seq_.assign(cfg_.flows.size(), 0);
    for (std::size_t i = 0; i < cfg_.flows.size(); ++i) {
        flow_rngs_.emplace_back(cfg_.seed, rng_purpose::traffic, i);
        double first =
            cfg_.flows[i].start + flow_rngs_[i].exponential(cfg_.mean_interarrival);
        if (first <= cfg_.duration) queue_.schedule(0.0, first, TrafficArrival{i});
    }
    for (NodeId i = 0; i < cfg_.node_count; ++i)
        queue_.schedule(0.0, cfg_.aodv.hello_interval, HelloTick{i});
    for (const auto& ev : cfg_.link_events)
        queue_.schedule(0.0, ev.time, LinkToggle{ev.a, ev.b, ev.up});
}

RunSummary Simulation::run() {
    if (ran_) throw std::logic_error("run() is single-shot");
    ran_ = true;

    while (!queue_.empty() && queue_.top().time <= cfg_.duration) {
        Event ev = queue_.pop();
        now_ = ev.time;
        dispatch(ev);
    }
    now_ = cfg_.duration;

    while (!queue_.empty()) {
        Event ev = queue_.pop();
        if (const auto* d = std::get_if<PacketDelivery>(&ev.body))
            if (is_data(d->packet) && !d->overheard) ++summary_.in_flight_at_end;
    }
    for (const auto& node : nodes_)
        for (const auto& [dest, packets] : node->pending)
            summary_.pending_at_end += packets.size();

    return std::move(summary_);
}

void Simulation::dispatch(const Event& ev) {
    if (const auto* d = std::get_if<PacketDelivery>(&ev.body)) {
        on_delivery(*d);
    } else if (const auto* t = std::get_if<TrafficArrival>(&ev.body)) {
        on_traffic(*t);
    } else if (const auto* h = std::get_if<HelloTick>(&ev.body)) {
        on_hello(*h);
    } else if (const auto* r = std::get_if<DiscoveryRetry>(&ev.body)) {
        on_retry(*r);
    } else if (const auto* p = std::get_if<ProbeTimeout>(&ev.body)) {
        on_probe_timeout(*p);
    } else if (const auto* l = std::get_if<LinkToggle>(&ev.body)) {
        topo_.set_link(l->a, l->b, l->up);
    }
}

std::vector<FlowId> Simulation::flows_from_to(NodeId src, NodeId dst) const {
    std::vector<FlowId> out;
    for (const auto& flow : cfg_.flows)
        if (flow.src == src && flow.dst == dst) out.push_back({flow.src, flow.dst});
    return out;
}

std::vector<NodeId> Simulation::believed_route(NodeId src, NodeId dst) const {
    std::vector<NodeId> route{src};
    std::set<NodeId> visited{src};
    NodeId cur = src;
    while (cur != dst && route.size() <= nodes_.size()) {
        auto nh = nodes_[cur]->aodv.next_hop(dst, now_);
        if (!nh || visited.contains(*nh)) break;
        route.push_back(*nh);
        visited.insert(*nh);
        cur = *nh;
    }
    // A dangling walk means some hop's claim cannot be followed further;
    // the dealer still closes the chain with the true destination.
    if (route.back() != dst) route.push_back(dst);
    return route;
}

void Simulation::transmit_unicast(NodeId from, NodeId to, Packet packet) {
    ++summary_.transmissions[packet_kind_name(packet)];
    summary_.metrics.record_transmission(now_, packet.size_bits);

    double arrival = now_ + link_delay(packet.size_bits);
    auto key = std::pair{from, to};
    if (auto it = link_fifo_.find(key); it != link_fifo_.end() && it->second > arrival)
        arrival = it->second;
    link_fifo_[key] = arrival;

    bool data = is_data(packet);
    if (data) {
        for (const auto& node : nodes_) {
            NodeId x = node->id;
            if (x == from || x == to) continue;
            if (!node->adversary.wants_promiscuous()) continue;
            if (!topo_.link_up(from, x)) continue;
            queue_.schedule(now_, arrival, PacketDelivery{from, x, packet, true});
        }
    }
    queue_.schedule(now_, arrival, PacketDelivery{from, to, std::move(packet), false});
}

void Simulation::transmit_broadcast(NodeId from, Packet packet) {
    ++summary_.transmissions[packet_kind_name(packet)];
    summary_.metrics.record_transmission(now_, packet.size_bits);

    for (NodeId to : topo_.neighbors(from)) {
        double arrival = now_ + link_delay(packet.size_bits);
        auto key = std::pair{from, to};
        if (auto it = link_fifo_.find(key);
            it != link_fifo_.end() && it->second > arrival)
            arrival = it->second;
        link_fifo_[key] = arrival;
        queue_.schedule(now_, arrival, PacketDelivery{from, to, packet, false});
    }
}

void Simulation::perform(NodeRuntime& rt, const std::vector<Action>& actions) {
    for (const auto& action : actions) {
        if (const auto* u = std::get_if<SendUnicast>(&action))
            transmit_unicast(rt.id, u->to, u->packet);
        else if (const auto* b = std::get_if<SendBroadcast>(&action))
            transmit_broadcast(rt.id, b->packet);
    }
}

void Simulation::start_discovery(NodeRuntime& rt, NodeId dest) {
    if (rt.discovery_active.contains(dest)) return;
    if (rt.aodv.next_hop(dest, now_)) return;
    rt.discovery_active.insert(dest);
    std::uint64_t gen = ++rt.discovery_gen[dest];
    perform(rt, rt.aodv.originate_route_discovery(dest, now_));
    queue_.schedule(now_, now_ + discovery_retry_s, DiscoveryRetry{rt.id, dest, gen});
}

void Simulation::init_verifier(NodeRuntime& rt, FlowId flow) {
    auto route = believed_route(flow.src, flow.dst);
    Digest root = route_root(route, secrets_);
    auto it = rt.verifiers.find(flow);
    if (it == rt.verifiers.end()) {
        rt.verifiers.emplace(flow, FlowVerifier(flow, std::move(route), root,
                                                rt.secret, /*fresh_start=*/true));
    } else {
        std::uint64_t carry_sent = it->second.sent_total();
        std::uint32_t carry_round = it->second.next_round();
        it->second = FlowVerifier(flow, std::move(route), root, rt.secret,
                                  /*fresh_start=*/false, carry_sent, carry_round);
    }
}

void Simulation::send_data_from_source(NodeRuntime& rt, const Packet& packet) {
    const auto& msg = packet.as<DataMessage>();
    NodeId dst = msg.flow.dst;

    if (rt.blacklist.contains(dst)) {
        rt.pending[dst].push_back(packet);
        return;
    }
    auto nh = rt.aodv.next_hop(dst, now_);
    if (!nh) {
        rt.pending[dst].push_back(packet);
        start_discovery(rt, dst);
        return;
    }
    rt.aodv.refresh_route(dst, now_);
    transmit_unicast(rt.id, *nh, packet);

    if (!cfg_.defense.enabled) return;
    auto vit = rt.verifiers.find(msg.flow);
    if (vit == rt.verifiers.end()) {
        init_verifier(rt, msg.flow);
        vit = rt.verifiers.find(msg.flow);
    }
    FlowVerifier& verifier = vit->second;
    verifier.note_data_sent();
    if (verifier.probe_due(cfg_.defense)) {
        ProbeMessage probe = verifier.start_round(now_);
        transmit_unicast(rt.id, *nh, make_packet(probe));
        queue_.schedule(now_, verifier.outstanding_deadline(cfg_.defense),
                        ProbeTimeout{msg.flow, probe.round});
    }
}

void Simulation::on_route_adopted(NodeRuntime& rt, NodeId dest, NodeId via,
                                  bool forged, bool consumed) {
    (void)consumed;
    auto flows = flows_from_to(rt.id, dest);
    if (forged)
        for (FlowId flow : flows) summary_.insertions.push_back({now_, flow, via});
    if (cfg_.defense.enabled)
        for (FlowId flow : flows) init_verifier(rt, flow);

    rt.discovery_active.erase(dest);
    auto pit = rt.pending.find(dest);
    if (pit != rt.pending.end() && !pit->second.empty()) {
        std::vector<Packet> drained = std::move(pit->second);
        pit->second.clear();
        for (const Packet& p : drained) send_data_from_source(rt, p);
    }
}

void Simulation::handle_outcome(NodeRuntime& rt, FlowId flow,
                                const CheckOutcome& outcome) {
    if (outcome.verdict == Verdict::Verified) {
        ++summary_.verified_rounds;
        return;
    }
    summary_.detections.push_back(
        {now_, flow, outcome.verdict, outcome.suspect, outcome.round});
    rt.blacklist.add(outcome.suspect);
    summary_.blacklist_times.try_emplace(outcome.suspect, now_);
    for (auto& [dest, entry] : rt.aodv.table())
        if (entry.valid &&
            (entry.next_hop == outcome.suspect || dest == outcome.suspect))
            entry.valid = false;
    if (!rt.blacklist.contains(flow.dst)) start_discovery(rt, flow.dst);
}

void Simulation::on_traffic(const TrafficArrival& ev) {
    const FlowConfig& flow_cfg = cfg_.flows[ev.flow_index];
    FlowId flow{flow_cfg.src, flow_cfg.dst};
    RngStream& rng = flow_rngs_[ev.flow_index];

    auto bits = static_cast<std::uint64_t>(
        std::ceil(rng.exponential(cfg_.mean_size_bits)));
    if (bits == 0) bits = 1;

    DataMessage msg;
    msg.flow = flow;
    msg.seq = flow_next_seq_[ev.flow_index]++;
    msg.origin_time = now_;
    Packet packet = make_packet(msg, bits);

    PacketRecord rec;
    rec.flow = flow;
    rec.seq = msg.seq;
    rec.send_time = now_;
    rec.size_bits = bits;
    log_index_[{flow, msg.seq}] = summary_.packet_log.size();
    summary_.packet_log.push_back(rec);
    ++summary_.data_sent;
    summary_.metrics.record_sent(now_);

    double next = now_ + rng.exponential(cfg_.mean_interarrival);
    if (next <= cfg_.duration)
        queue_.schedule(now_, next, TrafficArrival{ev.flow_index});

    send_data_from_source(*nodes_[flow.src], packet);
}

void Simulation::on_hello(const HelloTick& ev) {
    NodeRuntime& rt = *nodes_[ev.node];
    auto res = rt.aodv.hello_tick(now_);
    perform(rt, res.actions);
    for (NodeId dest : res.broken_destinations) {
        auto pit = rt.pending.find(dest);
        if (pit != rt.pending.end() && !pit->second.empty() &&
            !rt.blacklist.contains(dest))
            start_discovery(rt, dest);
    }
    queue_.schedule(now_, now_ + cfg_.aodv.hello_interval, HelloTick{ev.node});
}

void Simulation::on_retry(const DiscoveryRetry& ev) {
    NodeRuntime& rt = *nodes_[ev.node];
    if (!rt.discovery_active.contains(ev.destination)) return;
    if (rt.discovery_gen[ev.destination] != ev.generation) return;
    if (rt.aodv.next_hop(ev.destination, now_)) {
        rt.discovery_active.erase(ev.destination);
        return;
    }
    perform(rt, rt.aodv.originate_route_discovery(ev.destination, now_));
    queue_.schedule(now_, now_ + discovery_retry_s,
                    DiscoveryRetry{ev.node, ev.destination, ev.generation});
}

void Simulation::on_probe_timeout(const ProbeTimeout& ev) {
    NodeRuntime& rt = *nodes_[ev.flow.src];
    auto vit = rt.verifiers.find(ev.flow);
    if (vit == rt.verifiers.end()) return;
    if (auto outcome = vit->second.on_timeout(ev.round))
        handle_outcome(rt, ev.flow, *outcome);
}

void Simulation::on_delivery(const PacketDelivery& ev) {
    if (!topo_.link_up(ev.from, ev.to)) {
        if (is_data(ev.packet) && !ev.overheard) ++summary_.radio_lost;
        return;
    }
    NodeRuntime& rt = *nodes_[ev.to];
    rt.aodv.note_heard(ev.from, now_);

    if (ev.overheard) {
        if (is_data(ev.packet)) {
            const auto& msg = ev.packet.as<DataMessage>();
            auto lt = rt.last_data_time.find(msg.flow);
            bool on_path = lt != rt.last_data_time.end() &&
                           now_ - lt->second < reinsertion_backoff_s;
            if (auto forged = rt.adversary.observe_data(msg, ev.from, now_, on_path))
                transmit_unicast(rt.id, ev.from, make_packet(*forged));
        }
        return;
    }

    if (ev.packet.is<RreqMessage>()) {
        on_rreq(rt, ev.from, ev.packet);
    } else if (ev.packet.is<RrepMessage>()) {
        on_rrep(rt, ev.from, ev.packet);
    } else if (ev.packet.is<RerrMessage>()) {
        on_rerr(rt, ev.from, ev.packet);
    } else if (ev.packet.is<DataMessage>()) {
        on_data(rt, ev.from, ev.packet);
    } else if (ev.packet.is<ProbeMessage>()) {
        on_probe(rt, ev.from, ev.packet);
    } else if (ev.packet.is<AttestationMessage>()) {
        on_attestation(rt, ev.from, ev.packet);
    }
    // Hello carries nothing beyond the note_heard above.
}

void Simulation::on_rreq(NodeRuntime& rt, NodeId from, const Packet& packet) {
    const auto& msg = packet.as<RreqMessage>();
    if (rt.adversary.profile().kind == AttackKind::ExternalBlackHole) {
        // Outsider: never joins the flood, only answers it with a forgery.
        if (auto forged = rt.adversary.observe_rreq(msg, from, now_))
            transmit_unicast(rt.id, from, make_packet(*forged));
        return;
    }
    auto res = rt.aodv.handle_rreq(msg, from, now_);
    perform(rt, res.actions);
}

void Simulation::on_rrep(NodeRuntime& rt, NodeId from, const Packet& packet) {
    const auto& msg = packet.as<RrepMessage>();
    auto res = rt.aodv.handle_rrep(msg, from, now_);
    perform(rt, res.actions);
    if (res.adopted)
        on_route_adopted(rt, msg.destination, from, msg.forged, res.consumed);
}

void Simulation::on_rerr(NodeRuntime& rt, NodeId from, const Packet& packet) {
    const auto& msg = packet.as<RerrMessage>();
    auto pit = rt.pending.find(msg.unreachable_destination);
    bool has_pending = pit != rt.pending.end() && !pit->second.empty();
    auto res = rt.aodv.handle_rerr(msg, from, now_, has_pending);
    perform(rt, res.actions);
    if (res.needs_rediscovery) start_discovery(rt, msg.unreachable_destination);
}

void Simulation::on_data(NodeRuntime& rt, NodeId from, const Packet& packet) {
    (void)from;
    const auto& msg = packet.as<DataMessage>();
    ++rt.data_received[msg.flow];
    rt.last_data_time[msg.flow] = now_;

    if (rt.id == msg.flow.dst) {
        auto li = log_index_.find({msg.flow, msg.seq});
        if (li != log_index_.end()) {
            PacketRecord& rec = summary_.packet_log[li->second];
            if (!rec.delivered) {
                rec.delivered = true;
                rec.recv_time = now_;
                ++summary_.data_delivered;
                summary_.metrics.record_delivered(msg.origin_time, now_);
            }
        }
        return;
    }

    if (rt.adversary.adversarial_forward(packet) == ForwardDecision::Drop) {
        ++summary_.adversary_dropped;
        return;
    }
    auto nh = rt.aodv.next_hop(msg.flow.dst, now_);
    if (!nh) {
        ++summary_.no_route_dropped;
        RerrMessage rerr;
        rerr.unreachable_destination = msg.flow.dst;
        rerr.origin_of_report = rt.id;
        transmit_broadcast(rt.id, make_packet(rerr));
        return;
    }
    rt.aodv.refresh_route(msg.flow.dst, now_);
    transmit_unicast(rt.id, *nh, packet);
}

void Simulation::on_probe(NodeRuntime& rt, NodeId from, const Packet& packet) {
    const auto& probe = packet.as<ProbeMessage>();
    if (rt.id == probe.flow.dst) {
        auto att = make_destination_attestation(probe, rt.id, rt.secret,
                                                rt.data_received[probe.flow]);
        transmit_unicast(rt.id, from, make_packet(att));
        return;
    }
    rt.probe_upstream[{probe.flow, probe.round}] = from;
    if (rt.adversary.is_black_hole() && rt.adversary.profile().respond_to_probes) {
        auto att = rt.adversary.fabricate_attestation(
            probe, {rt.id, probe.flow.dst}, rt.data_received[probe.flow], sha1);
        transmit_unicast(rt.id, from, make_packet(att));
        return;
    }
    if (rt.adversary.adversarial_forward(packet) == ForwardDecision::Drop) return;
    auto nh = rt.aodv.next_hop(probe.flow.dst, now_);
    if (!nh) return;  // probe dies here; the source will time out
    transmit_unicast(rt.id, *nh, packet);
}

void Simulation::on_attestation(NodeRuntime& rt, NodeId from, const Packet& packet) {
    (void)from;
    const auto& att = packet.as<AttestationMessage>();
    if (rt.id == att.flow.src) {
        auto vit = rt.verifiers.find(att.flow);
        if (vit == rt.verifiers.end()) return;
        if (auto outcome = vit->second.on_attestation(att, cfg_.defense))
            handle_outcome(rt, att.flow, *outcome);
        return;
    }
    if (rt.adversary.adversarial_forward(packet) == ForwardDecision::Drop) return;
    auto key = std::pair{att.flow, att.round};
    auto it = rt.probe_upstream.find(key);
    if (it == rt.probe_upstream.end()) return;  // no recorded way back
    NodeId upstream = it->second;
    rt.probe_upstream.erase(it);
    AttestationMessage relayed = att;
    prepend_leaf(relayed, rt.id, rt.secret);
    transmit_unicast(rt.id, upstream, make_packet(relayed));
}

RunSummary run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

}  // namespace manetsim
