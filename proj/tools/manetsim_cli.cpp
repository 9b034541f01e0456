// Command-line runner: one scenario, one seed or a seed sweep, CSV out.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manetsim/simulation.hpp"

namespace {

struct SeedRange {
    std::uint64_t first = 1;
    std::uint64_t last = 1;
};

SeedRange parse_seed_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--seeds", "expected the form a..b");
    SeedRange range;
    try {
        range.first = std::stoull(text.substr(0, dots));
        range.last = std::stoull(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--seeds", "expected the form a..b");
    }
    if (range.last < range.first)
        throw CLI::ValidationError("--seeds", "range end precedes start");
    return range;
}

void print_summary(const manetsim::RunSummary& s,
                   const std::filesystem::path& csv_path) {
    std::printf("scenario %s seed %llu\n", s.scenario_name.c_str(),
                static_cast<unsigned long long>(s.seed));
    std::printf(
        "  data: sent %llu delivered %llu (ratio %.4f) adversary_dropped %llu "
        "no_route %llu radio_lost %llu in_flight %llu pending %llu\n",
        static_cast<unsigned long long>(s.data_sent),
        static_cast<unsigned long long>(s.data_delivered),
        s.data_sent == 0 ? 1.0
                         : static_cast<double>(s.data_delivered) /
                               static_cast<double>(s.data_sent),
        static_cast<unsigned long long>(s.adversary_dropped),
        static_cast<unsigned long long>(s.no_route_dropped),
        static_cast<unsigned long long>(s.radio_lost),
        static_cast<unsigned long long>(s.in_flight_at_end),
        static_cast<unsigned long long>(s.pending_at_end));
    std::printf("  mean load: %.1f bps, verified rounds: %llu\n",
                s.metrics.mean_load_bps(),
                static_cast<unsigned long long>(s.verified_rounds));
    if (auto t = s.first_insertion_time())
        std::printf("  first forged-reply insertion: t=%.3fs\n", *t);
    for (const auto& d : s.detections)
        std::printf("  detection: t=%.3fs %s suspect=%u flow=%u->%u round=%u\n",
                    d.time, manetsim::verdict_name(d.verdict), d.suspect,
                    d.flow.src, d.flow.dst, d.round);
    if (s.blacklist_times.empty()) {
        std::printf("  blacklisted: none\n");
    } else {
        std::printf("  blacklisted:");
        for (const auto& [node, t] : s.blacklist_times)
            std::printf(" %u (t=%.3fs)", node, t);
        std::printf("\n");
    }
    std::printf("  csv: %s\n", csv_path.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wireless ad hoc network simulator: AODV routing, black/gray "
                 "hole attackers, hash-chain route verification"};

    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> seeds_text;
    std::string out_dir = ".";
    std::optional<double> duration_override;
    std::optional<std::string> defense_override;

    app.add_option("--scenario", scenario_path, "Scenario file to run")
        ->required();
    auto* seed_opt = app.add_option("--seed", seed, "Single seed (default 1)");
    auto* seeds_opt =
        app.add_option("--seeds", seeds_text, "Inclusive seed sweep a..b");
    seed_opt->excludes(seeds_opt);
    app.add_option("--out", out_dir, "Directory for CSV output (default .)");
    app.add_option("--duration", duration_override,
                   "Override run duration in seconds");
    app.add_option("--defense", defense_override,
                   "Override defense: on or off")
        ->check(CLI::IsMember({"on", "off"}));

    CLI11_PARSE(app, argc, argv);

    try {
        manetsim::ScenarioConfig base =
            manetsim::parse_scenario_file(scenario_path);
        if (duration_override) {
            if (*duration_override <= 0.0)
                throw manetsim::ScenarioError("duration must be positive");
            base.duration = *duration_override;
        }
        if (defense_override) base.defense.enabled = *defense_override == "on";

        SeedRange range;
        if (seeds_text)
            range = parse_seed_range(*seeds_text);
        else if (seed)
            range = {*seed, *seed};
        else
            range = {base.seed, base.seed};

        std::filesystem::create_directories(out_dir);

        bool conserved = true;
        for (std::uint64_t s = range.first; s <= range.last; ++s) {
            manetsim::ScenarioConfig cfg = base;
            cfg.seed = s;
            manetsim::RunSummary summary = manetsim::run_scenario(cfg);

            std::filesystem::path csv_path =
                std::filesystem::path(out_dir) /
                (cfg.name + "_" + std::to_string(s) + ".csv");
            std::ofstream csv(csv_path);
            if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
            summary.metrics.write_csv(csv);

            print_summary(summary, csv_path);
            if (!summary.conserved()) {
                std::cerr << "error: packet accounting does not balance for seed "
                          << s << "\n";
                conserved = false;
            }
        }
        return conserved ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
