#include "manetsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace manetsim {

MetricsSeries::MetricsSeries(double duration, double bin_width)
    : duration_(duration), bin_width_(bin_width) {
    if (duration <= 0.0 || bin_width <= 0.0)
        throw std::invalid_argument("duration and bin width must be positive");
    auto bins = static_cast<std::size_t>(std::ceil(duration / bin_width));
    sent_.assign(bins, 0);
    delivered_.assign(bins, 0);
    delay_sum_.assign(bins, 0.0);
    bits_.assign(bins, 0);
}

std::size_t MetricsSeries::bin_of(double t) const {
    if (t < 0.0) throw std::invalid_argument("negative timestamp");
    auto idx = static_cast<std::size_t>(t / bin_width_);
    return std::min(idx, sent_.size() - 1);
}

void MetricsSeries::record_sent(double t) {
    ++sent_[bin_of(t)];
    ++total_sent_;
}

void MetricsSeries::record_delivered(double send_time, double recv_time) {
    if (recv_time < send_time) throw std::invalid_argument("delivery precedes send");
    std::size_t bin = bin_of(recv_time);
    ++delivered_[bin];
    delay_sum_[bin] += recv_time - send_time;
    ++total_delivered_;
    total_delay_ += recv_time - send_time;
}

void MetricsSeries::record_transmission(double t, std::uint64_t bits) {
    bits_[bin_of(t)] += bits;
    total_bits_ += bits;
}

std::vector<MetricsRow> MetricsSeries::rows() const {
    std::vector<MetricsRow> out;
    out.reserve(sent_.size());
    for (std::size_t i = 0; i < sent_.size(); ++i) {
        MetricsRow row;
        row.time = static_cast<double>(i) * bin_width_;
        row.sent_pps = static_cast<double>(sent_[i]) / bin_width_;
        row.received_pps = static_cast<double>(delivered_[i]) / bin_width_;
        row.mean_delay_s =
            delivered_[i] == 0 ? 0.0
                               : delay_sum_[i] / static_cast<double>(delivered_[i]);
        row.load_bps = static_cast<double>(bits_[i]) / bin_width_;
        out.push_back(row);
    }
    return out;
}

double MetricsSeries::delivery_ratio() const {
    if (total_sent_ == 0) return 1.0;
    return static_cast<double>(total_delivered_) / static_cast<double>(total_sent_);
}

double MetricsSeries::mean_delay_s() const {
    if (total_delivered_ == 0) return 0.0;
    return total_delay_ / static_cast<double>(total_delivered_);
}

double MetricsSeries::mean_load_bps() const {
    return static_cast<double>(total_bits_) / duration_;
}

void MetricsSeries::write_csv(std::ostream& out) const {
    out << "time,sent_pps,received_pps,mean_delay_s,load_bps\n";
    char line[160];
    for (const MetricsRow& row : rows()) {
        std::snprintf(line, sizeof(line), "%g,%.6f,%.6f,%.6f,%.6f\n", row.time,
                      row.sent_pps, row.received_pps, row.mean_delay_s,
                      row.load_bps);
        out << line;
    }
}

}  // namespace manetsim
