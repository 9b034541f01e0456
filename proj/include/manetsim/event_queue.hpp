#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "manetsim/packet.hpp"

namespace manetsim {

/// A transmission reaching `to`. Broadcasts fan out into one delivery per
/// neighbor. `overheard` marks promiscuous copies of unicasts: the receiver
/// may observe them but is not the addressee.
struct PacketDelivery {
    NodeId from = 0;
    NodeId to = 0;
    Packet packet;
    bool overheard = false;
};

struct TrafficArrival {
    std::size_t flow_index = 0;
};

struct HelloTick {
    NodeId node = 0;
};

/// Re-issue a route discovery if the pending traffic is still unrouted.
/// `generation` invalidates retries made stale by a successful discovery.
struct DiscoveryRetry {
    NodeId node = 0;
    NodeId destination = 0;
    std::uint64_t generation = 0;
};

struct ProbeTimeout {
    FlowId flow{};
    std::uint32_t round = 0;
};

struct LinkToggle {
    NodeId a = 0;
    NodeId b = 0;
    bool up = true;
};

using EventBody = std::variant<PacketDelivery, TrafficArrival, HelloTick,
                               DiscoveryRetry, ProbeTimeout, LinkToggle>;

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;  // tie-break: schedule order
    EventBody body;
};

/// Min-heap on (time, seq). The sequence number makes simultaneous events
/// fire in schedule order, so runs are reproducible.
class EventQueue {
public:
    void schedule(double now, double time, EventBody body) {
        if (time < now) throw std::logic_error("event scheduled in the past");
        heap_.push_back(Event{time, next_seq_++, std::move(body)});
        std::push_heap(heap_.begin(), heap_.end(), after_);
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    const Event& top() const { return heap_.front(); }

    Event pop() {
        std::pop_heap(heap_.begin(), heap_.end(), after_);
        Event ev = std::move(heap_.back());
        heap_.pop_back();
        return ev;
    }

private:
    struct After {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::vector<Event> heap_;
    After after_{};
    std::uint64_t next_seq_ = 0;
};

}  // namespace manetsim
