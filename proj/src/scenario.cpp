#include "manetsim/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace manetsim {
namespace {

[[noreturn]] void fail(const std::string& origin, int line_no,
                       const std::string& message) {
    std::ostringstream out;
    out << origin << ":" << line_no << ": " << message;
    throw ScenarioError(out.str());
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& origin, int line_no, const std::string& key,
                 const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        fail(origin, line_no, "value for '" + key + "' is not a number: '" + value + "'");
    return parsed;
}

std::uint64_t to_u64(const std::string& origin, int line_no, const std::string& key,
                     const std::string& value) {
    if (value.empty() || value.front() == '-')
        fail(origin, line_no, "value for '" + key + "' is not a non-negative integer: '" + value + "'");
    const char* begin = value.c_str();
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0')
        fail(origin, line_no, "value for '" + key + "' is not a non-negative integer: '" + value + "'");
    return parsed;
}

bool to_bool(const std::string& origin, int line_no, const std::string& key,
             const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    fail(origin, line_no, "value for '" + key + "' is not a boolean: '" + value + "'");
}

NodeId to_node(const std::string& origin, int line_no, const std::string& key,
               const std::string& value) {
    return static_cast<NodeId>(to_u64(origin, line_no, key, value));
}

AttackKind to_attack_kind(const std::string& origin, int line_no,
                          const std::string& value) {
    if (value == "none") return AttackKind::None;
    if (value == "internal_black_hole") return AttackKind::InternalBlackHole;
    if (value == "external_black_hole") return AttackKind::ExternalBlackHole;
    if (value == "gray_hole") return AttackKind::GrayHole;
    fail(origin, line_no, "unknown attack kind '" + value + "'");
}

/// Indexed keys like "flow.3" -> index 3, or nullopt when the prefix does
/// not match.
std::optional<std::size_t> indexed(const std::string& key, const std::string& prefix,
                                   const std::string& origin, int line_no) {
    if (!key.starts_with(prefix)) return std::nullopt;
    std::string tail = key.substr(prefix.size());
    if (tail.empty()) fail(origin, line_no, "key '" + key + "' is missing an index");
    return static_cast<std::size_t>(to_u64(origin, line_no, key, tail));
}

template <typename T>
std::vector<T> compact(const std::map<std::size_t, T>& entries,
                       const std::string& what, const std::string& origin) {
    std::vector<T> out;
    out.reserve(entries.size());
    std::size_t expected = 0;
    for (const auto& [index, value] : entries) {
        if (index != expected)
            throw ScenarioError(origin + ": " + what + " indices must be contiguous from 0 (missing " +
                                std::to_string(expected) + ")");
        out.push_back(value);
        ++expected;
    }
    return out;
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin) {
    ScenarioConfig cfg;
    std::map<std::size_t, Position> positions;
    std::map<std::size_t, FlowConfig> flows;
    std::map<std::size_t, LinkEvent> links;
    std::set<std::string> seen_keys;
    bool attack_nodes_given = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, line_no, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, line_no, "empty key");
        if (value.empty()) fail(origin, line_no, "empty value for '" + key + "'");
        if (!seen_keys.insert(key).second)
            fail(origin, line_no, "duplicate key '" + key + "'");

        if (auto idx = indexed(key, "node.", origin, line_no)) {
            auto parts = split_ws(value);
            if (parts.size() != 2)
                fail(origin, line_no, "'" + key + "' needs two values: x y");
            positions[*idx] = Position{to_double(origin, line_no, key, parts[0]),
                                       to_double(origin, line_no, key, parts[1])};
            continue;
        }
        if (auto idx = indexed(key, "flow.", origin, line_no)) {
            auto parts = split_ws(value);
            if (parts.size() != 2 && parts.size() != 3)
                fail(origin, line_no, "'" + key + "' needs values: src dst [start]");
            FlowConfig flow;
            flow.src = to_node(origin, line_no, key, parts[0]);
            flow.dst = to_node(origin, line_no, key, parts[1]);
            if (parts.size() == 3) flow.start = to_double(origin, line_no, key, parts[2]);
            flows[*idx] = flow;
            continue;
        }
        if (auto idx = indexed(key, "link.", origin, line_no)) {
            auto parts = split_ws(value);
            if (parts.size() != 4)
                fail(origin, line_no, "'" + key + "' needs values: a b up|down time");
            LinkEvent ev;
            ev.a = to_node(origin, line_no, key, parts[0]);
            ev.b = to_node(origin, line_no, key, parts[1]);
            if (parts[2] == "up")
                ev.up = true;
            else if (parts[2] == "down")
                ev.up = false;
            else
                fail(origin, line_no, "link state must be 'up' or 'down', got '" + parts[2] + "'");
            ev.time = to_double(origin, line_no, key, parts[3]);
            links[*idx] = ev;
            continue;
        }

        if (key == "name") {
            cfg.name = value;
        } else if (key == "nodes") {
            cfg.node_count = to_u64(origin, line_no, key, value);
        } else if (key == "width") {
            cfg.width = to_double(origin, line_no, key, value);
        } else if (key == "height") {
            cfg.height = to_double(origin, line_no, key, value);
        } else if (key == "radio_range") {
            cfg.radio_range = to_double(origin, line_no, key, value);
        } else if (key == "duration") {
            cfg.duration = to_double(origin, line_no, key, value);
        } else if (key == "bin_width") {
            cfg.bin_width = to_double(origin, line_no, key, value);
        } else if (key == "placement") {
            if (value == "fixed")
                cfg.fixed_placement = true;
            else if (value == "random")
                cfg.fixed_placement = false;
            else
                fail(origin, line_no, "placement must be 'fixed' or 'random', got '" + value + "'");
        } else if (key == "seed") {
            cfg.seed = to_u64(origin, line_no, key, value);
        } else if (key == "traffic.mean_interarrival") {
            cfg.mean_interarrival = to_double(origin, line_no, key, value);
        } else if (key == "traffic.mean_size_bits") {
            cfg.mean_size_bits = to_double(origin, line_no, key, value);
        } else if (key == "attack.kind") {
            cfg.attack_kind = to_attack_kind(origin, line_no, value);
        } else if (key == "attack.nodes") {
            attack_nodes_given = true;
            for (const auto& tok : split_ws(value))
                cfg.attacker_nodes.push_back(to_node(origin, line_no, key, tok));
        } else if (key == "attack.gray_drop_fraction") {
            cfg.gray_drop_fraction = to_double(origin, line_no, key, value);
        } else if (key == "attack.respond_to_probes") {
            cfg.respond_to_probes = to_bool(origin, line_no, key, value);
        } else if (key == "attack.drop_defense_traffic") {
            cfg.drop_defense_traffic = to_bool(origin, line_no, key, value);
        } else if (key == "defense.enabled") {
            cfg.defense.enabled = to_bool(origin, line_no, key, value);
        } else if (key == "defense.probe_interval_packets") {
            cfg.defense.probe_interval_packets =
                static_cast<std::uint32_t>(to_u64(origin, line_no, key, value));
        } else if (key == "defense.probe_timeout") {
            cfg.defense.probe_timeout = to_double(origin, line_no, key, value);
        } else if (key == "defense.gray_tolerance") {
            cfg.defense.gray_tolerance = to_double(origin, line_no, key, value);
        } else if (key == "aodv.hello_interval") {
            cfg.aodv.hello_interval = to_double(origin, line_no, key, value);
        } else if (key == "aodv.allowed_hello_loss") {
            cfg.aodv.allowed_hello_loss =
                static_cast<std::uint32_t>(to_u64(origin, line_no, key, value));
        } else if (key == "aodv.route_expiry") {
            cfg.aodv.route_expiry = to_double(origin, line_no, key, value);
        } else if (key == "aodv.strict_freshness") {
            cfg.aodv.strict_freshness = to_bool(origin, line_no, key, value);
        } else {
            fail(origin, line_no, "unknown key '" + key + "'");
        }
    }

    cfg.positions = compact(positions, "node", origin);
    cfg.flows = compact(flows, "flow", origin);
    cfg.link_events = compact(links, "link", origin);

    auto check = [&](bool ok, const std::string& message) {
        if (!ok) throw ScenarioError(origin + ": " + message);
    };

    check(cfg.node_count >= 2, "need at least two nodes");
    check(cfg.width > 0.0 && cfg.height > 0.0, "field dimensions must be positive");
    check(cfg.radio_range > 0.0, "radio_range must be positive");
    check(cfg.duration > 0.0, "duration must be positive");
    check(cfg.bin_width > 0.0, "bin_width must be positive");
    check(cfg.mean_interarrival > 0.0, "traffic.mean_interarrival must be positive");
    check(cfg.mean_size_bits > 0.0, "traffic.mean_size_bits must be positive");

    if (cfg.fixed_placement) {
        check(cfg.positions.size() == cfg.node_count,
              "fixed placement needs node.<i> positions for all " +
                  std::to_string(cfg.node_count) + " nodes, got " +
                  std::to_string(cfg.positions.size()));
        for (std::size_t i = 0; i < cfg.positions.size(); ++i) {
            const auto& p = cfg.positions[i];
            check(p.x >= 0.0 && p.x <= cfg.width && p.y >= 0.0 && p.y <= cfg.height,
                  "node." + std::to_string(i) + " lies outside the field");
        }
    } else {
        check(cfg.positions.empty(), "node.<i> positions conflict with placement = random");
    }

    for (std::size_t i = 0; i < cfg.flows.size(); ++i) {
        const auto& flow = cfg.flows[i];
        check(flow.src < cfg.node_count && flow.dst < cfg.node_count,
              "flow." + std::to_string(i) + " references a node outside 0.." +
                  std::to_string(cfg.node_count - 1));
        check(flow.src != flow.dst, "flow." + std::to_string(i) + " has identical endpoints");
        check(flow.start >= 0.0, "flow." + std::to_string(i) + " start must be non-negative");
    }

    if (cfg.attack_kind == AttackKind::None) {
        check(!attack_nodes_given, "attack.nodes given without an attack.kind");
    } else {
        check(!cfg.attacker_nodes.empty(), "attack.kind set but attack.nodes is empty");
        std::set<NodeId> unique(cfg.attacker_nodes.begin(), cfg.attacker_nodes.end());
        check(unique.size() == cfg.attacker_nodes.size(), "attack.nodes contains duplicates");
        for (NodeId node : cfg.attacker_nodes)
            check(node < cfg.node_count,
                  "attacker " + std::to_string(node) + " is not among the nodes");
    }
    check(cfg.gray_drop_fraction >= 0.0 && cfg.gray_drop_fraction <= 1.0,
          "attack.gray_drop_fraction must lie in [0, 1]");

    check(cfg.defense.probe_interval_packets >= 1,
          "defense.probe_interval_packets must be at least 1");
    check(cfg.defense.probe_timeout > 0.0, "defense.probe_timeout must be positive");
    check(cfg.defense.gray_tolerance >= 0.0 && cfg.defense.gray_tolerance < 1.0,
          "defense.gray_tolerance must lie in [0, 1)");
    check(cfg.aodv.hello_interval > 0.0, "aodv.hello_interval must be positive");
    check(cfg.aodv.route_expiry > 0.0, "aodv.route_expiry must be positive");

    for (std::size_t i = 0; i < cfg.link_events.size(); ++i) {
        const auto& ev = cfg.link_events[i];
        check(ev.a < cfg.node_count && ev.b < cfg.node_count && ev.a != ev.b,
              "link." + std::to_string(i) + " references an invalid node pair");
        check(ev.time >= 0.0, "link." + std::to_string(i) + " time must be non-negative");
    }

    return cfg;
}

ScenarioConfig parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path.string());
}

}  // namespace manetsim
