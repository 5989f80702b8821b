#include "manetsim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "manetsim/errors.hpp"

namespace manetsim {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool parse_u32(const std::string& s, std::uint32_t& out) {
  std::uint64_t wide = 0;
  if (!parse_u64(s, wide) || wide > 0xFFFFFFFFull) return false;
  out = static_cast<std::uint32_t>(wide);
  return true;
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(s);
  while (std::getline(in, piece, delim)) out.push_back(trim(piece));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

/// Shortest decimal text that parses back to exactly v.
std::string fmt_double(double v) {
  char buf[64];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    double back = 0.0;
    if (parse_double(buf, back) && back == v) break;
  }
  return buf;
}

struct LineParser {
  ScenarioConfig& cfg;
  std::vector<std::string>& errors;
  int lineno = 0;
  std::string key;
  std::string value;

  void bad(const std::string& msg) {
    errors.push_back("line " + std::to_string(lineno) + ": " + msg);
  }

  void number(double& field) {
    double v = 0.0;
    if (!parse_double(value, v)) {
      bad(key + " expects a number, got '" + value + "'");
      return;
    }
    field = v;
  }

  void count32(std::uint32_t& field) {
    std::uint32_t v = 0;
    if (!parse_u32(value, v)) {
      bad(key + " expects a non-negative integer, got '" + value + "'");
      return;
    }
    field = v;
  }

  void size(std::size_t& field) {
    std::uint64_t v = 0;
    if (!parse_u64(value, v)) {
      bad(key + " expects a non-negative integer, got '" + value + "'");
      return;
    }
    field = static_cast<std::size_t>(v);
  }

  void seed_list(std::vector<std::uint64_t>& field) {
    std::vector<std::uint64_t> out;
    for (const std::string& piece : split(value, ',')) {
      std::uint64_t v = 0;
      if (!parse_u64(piece, v)) {
        bad(key + " expects comma-separated integers, got '" + piece + "'");
        return;
      }
      out.push_back(v);
    }
    field = std::move(out);
  }

  void id_list(std::vector<std::uint32_t>& field) {
    std::vector<std::uint32_t> out;
    for (const std::string& piece : split(value, ',')) {
      std::uint32_t v = 0;
      if (!parse_u32(piece, v)) {
        bad(key + " expects comma-separated integers, got '" + piece + "'");
        return;
      }
      out.push_back(v);
    }
    field = std::move(out);
  }

  void number_list(std::vector<double>& field) {
    std::vector<double> out;
    for (const std::string& piece : split(value, ',')) {
      double v = 0.0;
      if (!parse_double(piece, v)) {
        bad(key + " expects comma-separated numbers, got '" + piece + "'");
        return;
      }
      out.push_back(v);
    }
    field = std::move(out);
  }

  void flow_list(std::vector<TrafficFlow>& field) {
    std::vector<TrafficFlow> out;
    for (const std::string& piece : split(value, ',')) {
      const auto gt = piece.find('>');
      std::uint32_t src = 0;
      std::uint32_t dst = 0;
      if (gt == std::string::npos || !parse_u32(trim(piece.substr(0, gt)), src) ||
          !parse_u32(trim(piece.substr(gt + 1)), dst)) {
        bad(key + " expects comma-separated 'source>destination' pairs, got '" +
            piece + "'");
        return;
      }
      out.push_back(TrafficFlow{src, dst});
    }
    field = std::move(out);
  }

  void position(NodeId id) {
    const std::vector<std::string> parts = split(value, ',');
    double x = 0.0;
    double y = 0.0;
    if (parts.size() != 2 || !parse_double(parts[0], x) ||
        !parse_double(parts[1], y)) {
      bad(key + " expects 'x,y', got '" + value + "'");
      return;
    }
    cfg.pinned_positions[id] = Position{x, y};
  }

  void mobility_model() {
    if (value == "static") {
      cfg.mobility.model = MobilityModel::Static;
    } else if (value == "random_waypoint") {
      cfg.mobility.model = MobilityModel::RandomWaypoint;
    } else {
      bad(key + " expects 'static' or 'random_waypoint', got '" + value + "'");
    }
  }

  void attacker_mode() {
    if (value == "fake_rrep") {
      cfg.attackers.behavior.mode = AttackerMode::FakeRrep;
    } else if (value == "fake_rreq") {
      cfg.attackers.behavior.mode = AttackerMode::FakeRreq;
    } else if (value == "both") {
      cfg.attackers.behavior.mode = AttackerMode::Both;
    } else {
      bad(key + " expects 'fake_rrep', 'fake_rreq' or 'both', got '" + value +
          "'");
    }
  }

  void range_override() {
    double v = 0.0;
    if (!parse_double(value, v)) {
      bad(key + " expects a number, got '" + value + "'");
      return;
    }
    cfg.radio.range_override_m = v;
  }

  void apply() {
    // node.<id>.position = x,y
    if (key.starts_with("node.") && key.ends_with(".position")) {
      const std::string id_text =
          key.substr(5, key.size() - 5 - std::string_view(".position").size());
      std::uint32_t id = 0;
      if (!parse_u32(id_text, id)) {
        bad("bad node id '" + id_text + "' in '" + key + "'");
        return;
      }
      position(id);
      return;
    }

    if (key == "node_count") return count32(cfg.node_count);
    if (key == "arena.width") return number(cfg.arena_width);
    if (key == "arena.height") return number(cfg.arena_height);
    if (key == "duration") return number(cfg.duration);
    if (key == "seeds") return seed_list(cfg.seeds);

    if (key == "radio.tx_power_w") return number(cfg.radio.tx_power_w);
    if (key == "radio.rx_threshold_dbm")
      return number(cfg.radio.rx_threshold_dbm);
    if (key == "radio.frequency_hz") return number(cfg.radio.frequency_hz);
    if (key == "radio.bitrate_bps") return number(cfg.radio.bitrate_bps);
    if (key == "radio.range_override_m") return range_override();

    if (key == "mobility.model") return mobility_model();
    if (key == "mobility.v_min") return number(cfg.mobility.v_min);
    if (key == "mobility.v_max") return number(cfg.mobility.v_max);
    if (key == "mobility.pause") return number(cfg.mobility.pause);

    if (key == "aodv.active_route_timeout")
      return number(cfg.aodv.active_route_timeout);
    if (key == "aodv.seen_cache_lifetime")
      return number(cfg.aodv.seen_cache_lifetime);
    if (key == "aodv.net_diameter") return count32(cfg.aodv.net_diameter);
    if (key == "aodv.rreq_retries") return count32(cfg.aodv.rreq_retries);
    if (key == "aodv.retry_wait") return number(cfg.aodv.retry_wait);
    if (key == "aodv.buffer_cap") return size(cfg.aodv.buffer_cap);

    if (key == "attackers.count") return count32(cfg.attackers.count);
    if (key == "attackers.mode") return attacker_mode();
    if (key == "attackers.seq_inflation")
      return count32(cfg.attackers.behavior.seq_inflation);
    if (key == "attackers.advertised_hop_count")
      return count32(cfg.attackers.behavior.advertised_hop_count);
    if (key == "attackers.fake_rreq_period")
      return number(cfg.attackers.behavior.fake_rreq_period);
    if (key == "attackers.node_ids") return id_list(cfg.attackers.node_ids);

    if (key == "traffic.flows") return flow_list(cfg.traffic.flows);
    if (key == "traffic.start") return number(cfg.traffic.start);
    if (key == "traffic.interarrival_lo")
      return number(cfg.traffic.interarrival_lo);
    if (key == "traffic.interarrival_hi")
      return number(cfg.traffic.interarrival_hi);
    if (key == "traffic.mean_packet_bits")
      return number(cfg.traffic.mean_packet_bits);

    if (key == "sweep.attackers") return id_list(cfg.sweep_attackers);
    if (key == "sweep.speeds") return number_list(cfg.sweep_speeds);

    bad("unknown key '" + key + "'");
  }
};

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) +
                       ": expected 'key = value', got '" + line + "'");
      continue;
    }
    LineParser parser{cfg, errors, lineno, trim(line.substr(0, eq)),
                      trim(line.substr(eq + 1))};
    parser.apply();
  }

  const std::vector<std::string> violations = validate(cfg);
  errors.insert(errors.end(), violations.begin(), violations.end());
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({"cannot open config file '" + path + "'"});
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "node_count = " << cfg.node_count << '\n';
  out << "arena.width = " << fmt_double(cfg.arena_width) << '\n';
  out << "arena.height = " << fmt_double(cfg.arena_height) << '\n';
  out << "duration = " << fmt_double(cfg.duration) << '\n';

  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    if (i != 0) out << ',';
    out << cfg.seeds[i];
  }
  out << '\n';

  out << "radio.tx_power_w = " << fmt_double(cfg.radio.tx_power_w) << '\n';
  out << "radio.rx_threshold_dbm = " << fmt_double(cfg.radio.rx_threshold_dbm)
      << '\n';
  out << "radio.frequency_hz = " << fmt_double(cfg.radio.frequency_hz) << '\n';
  out << "radio.bitrate_bps = " << fmt_double(cfg.radio.bitrate_bps) << '\n';
  if (cfg.radio.range_override_m) {
    out << "radio.range_override_m = " << fmt_double(*cfg.radio.range_override_m)
        << '\n';
  }

  out << "mobility.model = "
      << (cfg.mobility.model == MobilityModel::Static ? "static"
                                                      : "random_waypoint")
      << '\n';
  out << "mobility.v_min = " << fmt_double(cfg.mobility.v_min) << '\n';
  out << "mobility.v_max = " << fmt_double(cfg.mobility.v_max) << '\n';
  out << "mobility.pause = " << fmt_double(cfg.mobility.pause) << '\n';

  out << "aodv.active_route_timeout = "
      << fmt_double(cfg.aodv.active_route_timeout) << '\n';
  out << "aodv.seen_cache_lifetime = "
      << fmt_double(cfg.aodv.seen_cache_lifetime) << '\n';
  out << "aodv.net_diameter = " << cfg.aodv.net_diameter << '\n';
  out << "aodv.rreq_retries = " << cfg.aodv.rreq_retries << '\n';
  out << "aodv.retry_wait = " << fmt_double(cfg.aodv.retry_wait) << '\n';
  out << "aodv.buffer_cap = " << cfg.aodv.buffer_cap << '\n';

  out << "attackers.count = " << cfg.attackers.count << '\n';
  out << "attackers.mode = " << to_string(cfg.attackers.behavior.mode) << '\n';
  out << "attackers.seq_inflation = " << cfg.attackers.behavior.seq_inflation
      << '\n';
  out << "attackers.advertised_hop_count = "
      << cfg.attackers.behavior.advertised_hop_count << '\n';
  out << "attackers.fake_rreq_period = "
      << fmt_double(cfg.attackers.behavior.fake_rreq_period) << '\n';
  if (!cfg.attackers.node_ids.empty()) {
    out << "attackers.node_ids = ";
    for (std::size_t i = 0; i < cfg.attackers.node_ids.size(); ++i) {
      if (i != 0) out << ',';
      out << cfg.attackers.node_ids[i];
    }
    out << '\n';
  }

  out << "traffic.flows = ";
  for (std::size_t i = 0; i < cfg.traffic.flows.size(); ++i) {
    if (i != 0) out << ',';
    out << cfg.traffic.flows[i].source << '>' << cfg.traffic.flows[i].destination;
  }
  out << '\n';
  out << "traffic.start = " << fmt_double(cfg.traffic.start) << '\n';
  out << "traffic.interarrival_lo = " << fmt_double(cfg.traffic.interarrival_lo)
      << '\n';
  out << "traffic.interarrival_hi = " << fmt_double(cfg.traffic.interarrival_hi)
      << '\n';
  out << "traffic.mean_packet_bits = " << fmt_double(cfg.traffic.mean_packet_bits)
      << '\n';

  if (!cfg.sweep_attackers.empty()) {
    out << "sweep.attackers = ";
    for (std::size_t i = 0; i < cfg.sweep_attackers.size(); ++i) {
      if (i != 0) out << ',';
      out << cfg.sweep_attackers[i];
    }
    out << '\n';
  }
  if (!cfg.sweep_speeds.empty()) {
    out << "sweep.speeds = ";
    for (std::size_t i = 0; i < cfg.sweep_speeds.size(); ++i) {
      if (i != 0) out << ',';
      out << fmt_double(cfg.sweep_speeds[i]);
    }
    out << '\n';
  }

  for (const auto& [id, pos] : cfg.pinned_positions) {
    out << "node." << id << ".position = " << fmt_double(pos.x) << ','
        << fmt_double(pos.y) << '\n';
  }
  return out.str();
}

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> issues;
  auto flag = [&issues](const std::string& msg) { issues.push_back(msg); };

  if (cfg.node_count < 2) flag("node_count must be >= 2");
  if (!(cfg.arena_width > 0)) flag("arena.width must be > 0");
  if (!(cfg.arena_height > 0)) flag("arena.height must be > 0");
  if (!(cfg.duration > 0)) flag("duration must be > 0");
  if (cfg.seeds.empty()) flag("seeds must not be empty");

  if (!(cfg.radio.tx_power_w > 0)) flag("radio.tx_power_w must be > 0");
  if (!(cfg.radio.frequency_hz > 0)) flag("radio.frequency_hz must be > 0");
  if (!(cfg.radio.bitrate_bps > 0)) flag("radio.bitrate_bps must be > 0");
  if (cfg.radio.range_override_m && !(*cfg.radio.range_override_m > 0)) {
    flag("radio.range_override_m must be > 0");
  }

  if (cfg.mobility.model == MobilityModel::RandomWaypoint) {
    if (!(cfg.mobility.v_min > 0)) flag("mobility.v_min must be > 0");
    if (cfg.mobility.v_min > cfg.mobility.v_max) {
      flag("mobility.v_min must be <= mobility.v_max");
    }
    if (cfg.mobility.pause < 0) flag("mobility.pause must be >= 0");
  }

  if (!(cfg.aodv.active_route_timeout > 0)) {
    flag("aodv.active_route_timeout must be > 0");
  }
  if (!(cfg.aodv.seen_cache_lifetime > 0)) {
    flag("aodv.seen_cache_lifetime must be > 0");
  }
  if (cfg.aodv.net_diameter < 1) flag("aodv.net_diameter must be >= 1");
  if (!(cfg.aodv.retry_wait > 0)) flag("aodv.retry_wait must be > 0");
  if (cfg.aodv.buffer_cap < 1) flag("aodv.buffer_cap must be >= 1");

  if (cfg.traffic.flows.empty()) flag("traffic.flows must not be empty");
  std::set<NodeId> endpoints;
  for (const TrafficFlow& flow : cfg.traffic.flows) {
    if (flow.source >= cfg.node_count) {
      flag("traffic flow source " + std::to_string(flow.source) +
           " is not a node id");
    }
    if (flow.destination >= cfg.node_count) {
      flag("traffic flow destination " + std::to_string(flow.destination) +
           " is not a node id");
    }
    if (flow.source == flow.destination) {
      flag("traffic flow " + std::to_string(flow.source) +
           ">" + std::to_string(flow.destination) +
           ": source equals destination");
    }
    endpoints.insert(flow.source);
    endpoints.insert(flow.destination);
  }
  if (!(cfg.traffic.start >= 0)) flag("traffic.start must be >= 0");
  if (!(cfg.traffic.interarrival_lo > 0)) {
    flag("traffic.interarrival_lo must be > 0");
  }
  if (!(cfg.traffic.interarrival_lo < cfg.traffic.interarrival_hi)) {
    flag("traffic.interarrival_lo must be < traffic.interarrival_hi");
  }
  if (!(cfg.traffic.mean_packet_bits > 0)) {
    flag("traffic.mean_packet_bits must be > 0");
  }

  if (!(cfg.attackers.behavior.seq_inflation >= 1)) {
    flag("attackers.seq_inflation must be >= 1");
  }
  if (!(cfg.attackers.behavior.fake_rreq_period > 0)) {
    flag("attackers.fake_rreq_period must be > 0");
  }
  std::set<NodeId> seen_ids;
  for (NodeId id : cfg.attackers.node_ids) {
    if (id >= cfg.node_count) {
      flag("attackers.node_ids: " + std::to_string(id) + " is not a node id");
    }
    if (endpoints.count(id) != 0) {
      flag("attackers.node_ids: " + std::to_string(id) +
           " is a traffic endpoint");
    }
    if (!seen_ids.insert(id).second) {
      flag("attackers.node_ids: " + std::to_string(id) + " listed twice");
    }
  }
  if (!cfg.attackers.node_ids.empty() && cfg.attackers.count != 0 &&
      cfg.attackers.count != cfg.attackers.node_ids.size()) {
    flag("attackers.count conflicts with the attackers.node_ids list");
  }
  const std::size_t eligible =
      cfg.node_count >= endpoints.size() ? cfg.node_count - endpoints.size()
                                         : 0;
  if (cfg.attackers.node_ids.empty() && cfg.attackers.count > eligible) {
    flag("attackers.count exceeds the " + std::to_string(eligible) +
         " nodes that are not traffic endpoints");
  }

  if (!cfg.sweep_attackers.empty() && !cfg.attackers.node_ids.empty()) {
    flag("sweep.attackers cannot be combined with attackers.node_ids");
  }
  for (std::uint32_t k : cfg.sweep_attackers) {
    if (k > eligible) {
      flag("sweep.attackers value " + std::to_string(k) + " exceeds the " +
           std::to_string(eligible) + " nodes that are not traffic endpoints");
    }
  }
  for (double v : cfg.sweep_speeds) {
    if (!(v > 0)) flag("sweep.speeds values must be > 0");
  }
  if (!cfg.sweep_speeds.empty() &&
      cfg.mobility.model != MobilityModel::RandomWaypoint) {
    flag("sweep.speeds requires mobility.model = random_waypoint");
  }

  for (const auto& [id, pos] : cfg.pinned_positions) {
    if (id >= cfg.node_count) {
      flag("node." + std::to_string(id) + ".position: not a node id");
    }
    if (pos.x < 0 || pos.x > cfg.arena_width || pos.y < 0 ||
        pos.y > cfg.arena_height) {
      flag("node." + std::to_string(id) + ".position lies outside the arena");
    }
  }

  return issues;
}

void require_valid(const ScenarioConfig& cfg) {
  std::vector<std::string> issues = validate(cfg);
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

}  // namespace manetsim
