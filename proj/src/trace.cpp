#include "radiomis/trace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace radiomis {

using nlohmann::json;

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::kAllTerminated: return "all-terminated";
    case StopReason::kAllDecided: return "all-decided";
    case StopReason::kBudget: return "budget";
  }
  return "?";
}

namespace {

std::optional<StopReason> parse_stop(std::string_view s) {
  for (auto r : {StopReason::kAllTerminated, StopReason::kAllDecided, StopReason::kBudget}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

/// Status that marks membership in W_i for this trace's protocol.
NodeStatus winner_status(const Trace& trace) {
  if (trace.config.is_object() && trace.config.contains("winner_status")) {
    if (auto s = parse_status(trace.config["winner_status"].get<std::string>())) return *s;
  }
  return NodeStatus::kInMis;
}

}  // namespace

std::uint64_t Trace::phases_used() const noexcept {
  return (round_count + phase_length - 1) / phase_length;
}

std::uint64_t Trace::max_energy() const noexcept {
  return energy.empty() ? 0 : *std::max_element(energy.begin(), energy.end());
}

std::vector<NodeStatus> Trace::statuses_at(Round round) const {
  std::vector<NodeStatus> out(node_count(), NodeStatus::kUndecided);
  for (const StatusChange& c : transitions) {
    if (c.round > round) break;
    out[c.node] = c.status;
  }
  return out;
}

PhaseSets phase_sets(const Trace& trace) {
  PhaseSets sets;
  // A run can stop on the first round of a phase after its ranks were drawn.
  std::uint64_t phases = trace.phases_used();
  for (const RankRecord& rr : trace.ranks) phases = std::max<std::uint64_t>(phases, rr.phase + 1);
  sets.winners.resize(phases);
  sets.committed.resize(phases);
  const NodeStatus win = winner_status(trace);
  for (const StatusChange& c : trace.transitions) {
    const std::uint64_t phase = trace.phase_of_change(c.round);
    if (phase >= phases) continue;
    if (c.status == win) {
      const auto& cap = trace.capped_at[c.node];
      if (cap && *cap == c.round) continue;
      sets.winners[phase].push_back(c.node);
    } else if (c.status == NodeStatus::kCommit) {
      sets.committed[phase].push_back(c.node);
    }
  }
  for (auto* family : {&sets.winners, &sets.committed}) {
    for (auto& nodes : *family) {
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    }
  }
  return sets;
}

json trace_to_json(const Trace& trace) {
  json doc;
  doc["format"] = "radiomis.trace";
  doc["version"] = kTraceFormatVersion;
  doc["protocol"] = trace.protocol;
  doc["channel"] = std::string(to_string(trace.channel));
  doc["seed"] = trace.seed;
  doc["config"] = trace.config;
  doc["graph_ref"] = trace.graph_ref;

  json edges = json::array();
  for (const Edge& e : trace.graph.edges()) edges.push_back({e.u, e.v});
  doc["graph"] = {{"n", trace.graph.node_count()}, {"edges", std::move(edges)}};

  doc["phase_length"] = trace.phase_length;
  doc["round_budget"] = trace.round_budget;
  doc["round_count"] = trace.round_count;
  doc["energy_cap"] = trace.energy_cap ? json(*trace.energy_cap) : json(nullptr);
  doc["stop"] = std::string(to_string(trace.stop));
  doc["events_recorded"] = trace.events_recorded;

  json rounds = json::array();
  for (std::size_t i = 0; i < trace.events.size();) {
    const Round r = trace.events[i].round;
    json awake = json::array();
    for (; i < trace.events.size() && trace.events[i].round == r; ++i) {
      const AwakeEvent& e = trace.events[i];
      awake.push_back({e.node, std::string(to_string(e.action)),
                       std::string(to_string(e.observation))});
    }
    rounds.push_back({r, std::move(awake)});
  }
  doc["rounds"] = std::move(rounds);

  json transitions = json::array();
  for (const StatusChange& c : trace.transitions) {
    transitions.push_back({c.round, c.node, std::string(to_string(c.status))});
  }
  doc["transitions"] = std::move(transitions);

  json final_nodes = json::array();
  for (NodeId v = 0; v < trace.node_count(); ++v) {
    final_nodes.push_back({{"status", std::string(to_string(trace.final_status[v]))},
                           {"terminated", trace.terminated[v] != 0},
                           {"capped_at", trace.capped_at[v] ? json(*trace.capped_at[v])
                                                            : json(nullptr)}});
  }
  doc["final"] = std::move(final_nodes);
  doc["energy"] = trace.energy;

  const PhaseSets sets = phase_sets(trace);
  json phases = json::array();
  for (std::uint64_t i = 0; i < sets.winners.size(); ++i) {
    json ranks = json::array();
    for (const RankRecord& rr : trace.ranks) {
      if (rr.phase == i) ranks.push_back({rr.node, rr.bits});
    }
    phases.push_back({{"index", i},
                      {"start", i * trace.phase_length},
                      {"winners", sets.winners[i]},
                      {"committed", sets.committed[i]},
                      {"ranks", std::move(ranks)}});
  }
  doc["phases"] = std::move(phases);
  return doc;
}

namespace {

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw TraceFormatError(std::string("trace is missing '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <typename T, typename Parser>
T parse_enum(const std::string& text, Parser parser, const char* what) {
  auto value = parser(text);
  if (!value) throw TraceFormatError(std::string("unknown ") + what + " '" + text + "'");
  return *value;
}

}  // namespace

Trace trace_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "radiomis.trace") {
    throw TraceFormatError("not a radiomis trace document");
  }
  if (field<int>(doc, "version") != kTraceFormatVersion) {
    throw TraceFormatError("unsupported trace version");
  }
  Trace t;
  try {
    t.protocol = field<std::string>(doc, "protocol");
    t.channel = parse_enum<ChannelModel>(field<std::string>(doc, "channel"), parse_channel,
                                         "channel");
    t.seed = field<std::uint64_t>(doc, "seed");
    t.config = doc.at("config");
    t.graph_ref = field<std::string>(doc, "graph_ref");

    const json& g = doc.at("graph");
    const auto n = field<std::size_t>(g, "n");
    std::vector<Edge> edges;
    for (const json& e : g.at("edges")) {
      edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
    }
    t.graph = Graph(n, std::move(edges));

    t.phase_length = field<Round>(doc, "phase_length");
    if (t.phase_length == 0) throw TraceFormatError("phase_length must be positive");
    t.round_budget = field<Round>(doc, "round_budget");
    t.round_count = field<Round>(doc, "round_count");
    if (!doc.at("energy_cap").is_null()) t.energy_cap = field<std::uint64_t>(doc, "energy_cap");
    t.stop = parse_enum<StopReason>(field<std::string>(doc, "stop"), parse_stop, "stop reason");
    t.events_recorded = field<bool>(doc, "events_recorded");

    for (const json& round : doc.at("rounds")) {
      const Round r = round.at(0).get<Round>();
      for (const json& e : round.at(1)) {
        AwakeEvent ev;
        ev.round = r;
        ev.node = e.at(0).get<NodeId>();
        ev.action = parse_enum<Action>(e.at(1).get<std::string>(), parse_action, "action");
        ev.observation =
            parse_enum<Observation>(e.at(2).get<std::string>(), parse_observation, "observation");
        if (ev.node >= n) throw TraceFormatError("event names a node outside the graph");
        t.events.push_back(ev);
      }
    }
    for (const json& c : doc.at("transitions")) {
      StatusChange sc;
      sc.round = c.at(0).get<Round>();
      sc.node = c.at(1).get<NodeId>();
      sc.status = parse_enum<NodeStatus>(c.at(2).get<std::string>(), parse_status, "status");
      if (sc.node >= n) throw TraceFormatError("transition names a node outside the graph");
      t.transitions.push_back(sc);
    }

    const json& final_nodes = doc.at("final");
    const json& energy = doc.at("energy");
    if (final_nodes.size() != n || energy.size() != n) {
      throw TraceFormatError("per-node arrays do not match the node count");
    }
    for (const json& f : final_nodes) {
      t.final_status.push_back(
          parse_enum<NodeStatus>(field<std::string>(f, "status"), parse_status, "status"));
      t.terminated.push_back(field<bool>(f, "terminated") ? 1 : 0);
      const json& cap = f.at("capped_at");
      t.capped_at.push_back(cap.is_null() ? std::nullopt
                                          : std::optional<Round>(cap.get<Round>()));
    }
    t.energy = energy.get<std::vector<std::uint64_t>>();

    for (const json& phase : doc.at("phases")) {
      const auto index = field<std::uint32_t>(phase, "index");
      for (const json& rr : phase.at("ranks")) {
        RankRecord rec{index, rr.at(0).get<NodeId>(), rr.at(1).get<std::string>()};
        if (rec.node >= n) throw TraceFormatError("rank names a node outside the graph");
        t.ranks.push_back(std::move(rec));
      }
    }
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("malformed trace: ") + e.what());
  } catch (const GraphError& e) {
    throw TraceFormatError(std::string("malformed trace graph: ") + e.what());
  }
  // Ranks are stored grouped by phase; restore recording order (by phase is
  // what the engine produces since phases are visited in order).
  std::stable_sort(t.ranks.begin(), t.ranks.end(),
                   [](const RankRecord& a, const RankRecord& b) { return a.phase < b.phase; });
  return t;
}

std::string serialize_trace(const Trace& trace) { return trace_to_json(trace).dump() + "\n"; }

Trace parse_trace(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("trace is not valid JSON: ") + e.what());
  }
  return trace_from_json(doc);
}

void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace '" + path + "'");
  out << serialize_trace(trace);
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceFormatError("cannot open trace '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str());
}

}  // namespace radiomis
