#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace manetsim {

struct MetricsRow {
    double time = 0.0;  // bin start
    double sent_pps = 0.0;
    double received_pps = 0.0;
    double mean_delay_s = 0.0;
    double load_bps = 0.0;
};

/// Fixed-width time bins over one run. Data sends bin by send time,
/// deliveries (and their delays) by arrival time, and channel load by
/// transmission time. Load covers every packet type; the other columns
/// cover data packets only.
class MetricsSeries {
public:
    MetricsSeries() : MetricsSeries(600.0) {}
    explicit MetricsSeries(double duration, double bin_width = 10.0);

    void record_sent(double t);
    void record_delivered(double send_time, double recv_time);
    void record_transmission(double t, std::uint64_t bits);

    std::size_t bin_count() const { return sent_.size(); }
    double bin_width() const { return bin_width_; }
    std::vector<MetricsRow> rows() const;

    std::uint64_t total_sent() const { return total_sent_; }
    std::uint64_t total_delivered() const { return total_delivered_; }
    double delivery_ratio() const;
    double mean_delay_s() const;
    double mean_load_bps() const;

    void write_csv(std::ostream& out) const;

private:
    std::size_t bin_of(double t) const;

    double duration_ = 600.0;
    double bin_width_ = 10.0;
    std::vector<std::uint64_t> sent_;
    std::vector<std::uint64_t> delivered_;
    std::vector<double> delay_sum_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t total_sent_ = 0;
    std::uint64_t total_delivered_ = 0;
    double total_delay_ = 0.0;
    std::uint64_t total_bits_ = 0;
};

}  // namespace manetsim
