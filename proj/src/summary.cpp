#include "manetsim/summary.hpp"

#include <algorithm>
#include <sstream>

namespace manetsim {

std::optional<double> RunSummary::first_insertion_time() const {
    if (insertions.empty()) return std::nullopt;
    auto it = std::min_element(
        insertions.begin(), insertions.end(),
        [](const auto& a, const auto& b) { return a.time < b.time; });
    return it->time;
}

std::optional<double> RunSummary::detection_complete_time() const {
    if (blacklist_times.empty()) return std::nullopt;
    double latest = 0.0;
    for (const auto& [node, t] : blacklist_times) latest = std::max(latest, t);
    return latest;
}

double RunSummary::delivery_ratio_sent_in(double t0, double t1) const {
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    for (const auto& rec : packet_log) {
        if (rec.send_time < t0 || rec.send_time >= t1) continue;
        ++sent;
        if (rec.delivered) ++delivered;
    }
    if (sent == 0) return 1.0;
    return static_cast<double>(delivered) / static_cast<double>(sent);
}

double RunSummary::mean_delay_sent_after(double t) const {
    double sum = 0.0;
    std::uint64_t count = 0;
    for (const auto& rec : packet_log) {
        if (!rec.delivered || rec.send_time <= t) continue;
        sum += rec.recv_time - rec.send_time;
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::string RunSummary::metrics_csv() const {
    std::ostringstream out;
    metrics.write_csv(out);
    return out.str();
}

}  // namespace manetsim
