#include "radiomis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "radiomis/backoff.hpp"
#include "radiomis/mis_cd.hpp"

namespace radiomis {

using nlohmann::json;

// ---------------------------------------------------------------------------
// MIS validity

json MisReport::to_json() const {
  json ind = json::array();
  for (const Edge& e : independence_violations) ind.push_back({e.u, e.v});
  return {{"valid", valid},
          {"independence_violations", std::move(ind)},
          {"coverage_violations", coverage_violations},
          {"undecided_nodes", undecided_nodes}};
}

MisReport check_mis(const Graph& g, std::span<const NodeStatus> statuses) {
  if (statuses.size() != g.node_count()) {
    throw std::invalid_argument("check_mis: " + std::to_string(statuses.size()) +
                                " statuses for " + std::to_string(g.node_count()) + " nodes");
  }
  MisReport report;
  auto in_mis = [&](NodeId v) { return statuses[v] == NodeStatus::kInMis; };
  for (const Edge& e : g.edges()) {
    if (in_mis(e.u) && in_mis(e.v)) report.independence_violations.push_back(e);
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!is_decided(statuses[v])) report.undecided_nodes.push_back(v);
    if (in_mis(v)) continue;
    const auto nbrs = g.neighbors(v);
    if (std::none_of(nbrs.begin(), nbrs.end(), in_mis)) report.coverage_violations.push_back(v);
  }
  report.valid = report.independence_violations.empty() && report.coverage_violations.empty() &&
                 report.undecided_nodes.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Status timelines

namespace {

class Timeline {
 public:
  explicit Timeline(const Trace& trace) : changes_(trace.node_count()) {
    for (const StatusChange& c : trace.transitions) {
      if (c.node < changes_.size()) changes_[c.node].push_back(c);
    }
  }

  /// Status after applying every change with round <= r.
  NodeStatus at(NodeId v, Round r) const {
    NodeStatus s = NodeStatus::kUndecided;
    for (const StatusChange& c : changes_[v]) {
      if (c.round > r) break;
      s = c.status;
    }
    return s;
  }

  const std::vector<StatusChange>& of(NodeId v) const { return changes_[v]; }

 private:
  std::vector<std::vector<StatusChange>> changes_;
};

bool capped_by(const Trace& t, NodeId v, Round r) {
  return t.capped_at[v] && *t.capped_at[v] <= r;
}

bool is_cap_change(const Trace& t, const StatusChange& c) {
  return t.capped_at[c.node] && *t.capped_at[c.node] == c.round;
}

}  // namespace

// ---------------------------------------------------------------------------
// Phase statistics

std::string_view to_string(ResidualDefinition d) noexcept {
  return d == ResidualDefinition::kCd ? "cd" : "nocd";
}

PhaseStats phase_stats(const Trace& trace, ResidualDefinition definition) {
  const Graph& g = trace.graph;
  const std::size_t n = g.node_count();
  const Timeline timeline(trace);
  const PhaseSets sets = phase_sets(trace);

  auto in_residual = [&](NodeStatus s) {
    return definition == ResidualDefinition::kCd ? !is_decided(s) : s != NodeStatus::kOutMis;
  };

  PhaseStats stats;
  stats.definition = definition;
  stats.initial_nodes = n;
  stats.initial_edges = g.edge_count();

  std::vector<std::uint8_t> prev(n, 1), cur(n), dominated(n);
  std::uint64_t prev_edges = g.edge_count();
  for (std::uint64_t i = 0; i < sets.winners.size(); ++i) {
    const Round end = (i + 1) * trace.phase_length;
    PhaseRecord rec;
    rec.index = i;
    rec.winners = sets.winners[i].size();
    rec.committed = sets.committed[i].size();
    std::vector<NodeStatus> status(n);
    for (NodeId v = 0; v < n; ++v) {
      status[v] = timeline.at(v, end);
      cur[v] = in_residual(status[v]) ? 1 : 0;
      rec.residual_nodes += cur[v];
    }
    for (NodeId v = 0; v < n; ++v) {
      const auto nbrs = g.neighbors(v);
      dominated[v] = std::any_of(nbrs.begin(), nbrs.end(),
                                 [&](NodeId u) { return status[u] == NodeStatus::kInMis; });
    }
    for (const Edge& e : g.edges()) {
      if (cur[e.u] && cur[e.v]) ++rec.residual_edges;
      if (prev[e.u] && prev[e.v] && (dominated[e.u] || dominated[e.v])) ++rec.dominated_edges;
    }
    if (prev_edges > 0) rec.ratio = double(rec.residual_edges) / double(prev_edges);
    prev_edges = rec.residual_edges;
    prev.swap(cur);
    stats.phases.push_back(rec);
  }
  return stats;
}

MeanSe mean_se(std::span<const double> values) {
  MeanSe r;
  r.count = values.size();
  if (values.empty()) return r;
  double sum = 0;
  for (double v : values) sum += v;
  r.mean = sum / double(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.se = std::sqrt(ss / double(values.size() - 1) / double(values.size()));
  }
  return r;
}

void DecayAccumulator::add(const PhaseStats& stats) {
  for (const PhaseRecord& p : stats.phases) {
    if (!p.ratio) continue;
    if (ratios_.size() <= p.index) ratios_.resize(p.index + 1);
    ratios_[p.index].push_back(*p.ratio);
  }
}

std::vector<MeanSe> DecayAccumulator::summary() const {
  std::vector<MeanSe> out;
  for (const auto& r : ratios_) out.push_back(mean_se(r));
  return out;
}

// ---------------------------------------------------------------------------
// Energy statistics

json EnergyStats::to_json() const {
  return {{"runs", runs},     {"nodes", nodes},       {"max", max},
          {"mean", mean},     {"mean_run_max", mean_run_max},
          {"median", median}, {"p90", p90},           {"p99", p99},
          {"capped_nodes", capped_nodes}};
}

void EnergyAccumulator::add(const Trace& trace) {
  ++stats_.runs;
  stats_.nodes += trace.node_count();
  for (std::uint64_t e : trace.energy) {
    ++stats_.histogram[e];
    energy_sum_ += double(e);
  }
  stats_.max = std::max(stats_.max, trace.max_energy());
  run_max_sum_ += double(trace.max_energy());
  for (const auto& c : trace.capped_at) stats_.capped_nodes += c ? 1 : 0;
}

EnergyStats EnergyAccumulator::result() const {
  EnergyStats s = stats_;
  if (s.nodes == 0) return s;
  s.mean = energy_sum_ / double(s.nodes);
  s.mean_run_max = run_max_sum_ / double(s.runs);
  auto quantile = [&](double q) {
    const auto rank = static_cast<std::size_t>(std::ceil(q * double(s.nodes)));
    std::size_t seen = 0;
    for (const auto& [energy, count] : s.histogram) {
      seen += count;
      if (seen >= std::max<std::size_t>(rank, 1)) return energy;
    }
    return s.max;
  };
  s.median = quantile(0.5);
  s.p90 = quantile(0.9);
  s.p99 = quantile(0.99);
  return s;
}

EnergyStats energy_stats(std::span<const Trace> traces) {
  EnergyAccumulator acc;
  for (const Trace& t : traces) acc.add(t);
  return acc.result();
}

std::map<std::size_t, EnergyStats> energy_stats_by_n(std::span<const Trace> traces) {
  std::map<std::size_t, EnergyAccumulator> acc;
  for (const Trace& t : traces) acc[t.node_count()].add(t);
  std::map<std::size_t, EnergyStats> out;
  for (const auto& [n, a] : acc) out[n] = a.result();
  return out;
}

// ---------------------------------------------------------------------------
// Scaling fits

std::string_view to_string(ScalingModel m) noexcept {
  switch (m) {
    case ScalingModel::kLog: return "log";
    case ScalingModel::kLogSquared: return "log2";
    case ScalingModel::kLogSquaredLogLog: return "log2loglog";
  }
  return "?";
}

std::optional<ScalingModel> parse_scaling_model(std::string_view s) noexcept {
  for (auto m : {ScalingModel::kLog, ScalingModel::kLogSquared, ScalingModel::kLogSquaredLogLog}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

double scaling_regressor(ScalingModel model, double n) {
  const double l = std::log2(n);
  switch (model) {
    case ScalingModel::kLog: return l;
    case ScalingModel::kLogSquared: return l * l;
    case ScalingModel::kLogSquaredLogLog: return l * l * std::log2(l);
  }
  return 0.0;
}

json FitResult::to_json() const {
  return {{"model", std::string(to_string(model))},
          {"points", points},
          {"coefficient", coefficient},
          {"r_squared", r_squared},
          {"slope", slope},
          {"intercept", intercept}};
}

FitResult scaling_fit(std::span<const std::pair<double, double>> points, ScalingModel model) {
  std::set<double> distinct;
  for (const auto& [n, value] : points) {
    if (!(n >= 2.0)) throw std::invalid_argument("scaling_fit needs n >= 2");
    distinct.insert(n);
  }
  if (distinct.size() < 4) {
    throw std::invalid_argument("scaling_fit needs at least 4 distinct n values, got " +
                                std::to_string(distinct.size()));
  }
  FitResult fit;
  fit.model = model;
  fit.points = points.size();
  const double m = double(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, y] : points) {
    const double x = scaling_regressor(model, n);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.coefficient = sxx > 0 ? sxy / sxx : 0.0;
  const double mx = sx / m;
  const double my = sy / m;
  double cxx = 0, cyy = 0, cxy = 0;
  for (const auto& [n, y] : points) {
    const double dx = scaling_regressor(model, n) - mx;
    const double dy = y - my;
    cxx += dx * dx;
    cyy += dy * dy;
    cxy += dx * dy;
  }
  // Relative thresholds keep exactly constant data from producing noise fits.
  const bool x_const = cxx <= 1e-12 * std::max(1.0, sxx);
  const bool y_const = cyy <= 1e-12 * std::max(1.0, my * my * m);
  fit.slope = x_const ? 0.0 : cxy / cxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (x_const || y_const) ? 0.0 : (cxy * cxy) / (cxx * cyy);
  return fit;
}

// ---------------------------------------------------------------------------
// Lower-bound experiment

double LowerBoundResult::standard_error() const noexcept {
  if (trials == 0) return 0.0;
  const double p = failure_rate();
  return std::sqrt(p * (1.0 - p) / double(trials));
}

LowerBoundResult lower_bound_experiment(std::size_t n, std::uint64_t cap, std::size_t trials,
                                        const Protocol& protocol, std::uint64_t first_seed) {
  const Graph g = generate_matching_lower_bound(n);
  LowerBoundResult result{n, cap, trials, 0};
  for (std::size_t t = 0; t < trials; ++t) {
    RunOptions options;
    options.seed = first_seed + t;
    options.energy_cap = cap;
    options.record_events = false;
    const Trace trace = run_protocol(g, protocol, options);
    if (!check_mis(g, trace.final_status).valid) ++result.failures;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Trace audit

bool AuditReport::consistent() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) {
    return c.group != CheckGroup::kConsistency || c.passed;
  });
}

bool AuditReport::whp_clean() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.group != CheckGroup::kWhp || c.passed; });
}

const AuditCheck* AuditReport::find(std::string_view name) const noexcept {
  for (const AuditCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

json AuditReport::to_json() const {
  json list = json::array();
  for (const AuditCheck& c : checks) {
    list.push_back({{"name", c.name},
                    {"group", c.group == CheckGroup::kConsistency ? "consistency" : "whp"},
                    {"passed", c.passed},
                    {"violations", c.violations},
                    {"detail", c.detail}});
  }
  return {{"mis", mis.to_json()},
          {"consistent", consistent()},
          {"whp_clean", whp_clean()},
          {"estimate_violations", estimate_violations},
          {"committed_local_maxima", committed_local_maxima},
          {"checks", std::move(list)}};
}

namespace {

class CheckBuilder {
 public:
  CheckBuilder(std::string name, CheckGroup group) { check_.name = std::move(name), check_.group = group; }

  void fail(const std::string& detail) {
    if (check_.passed) check_.detail = detail;
    check_.passed = false;
    ++check_.violations;
  }
  void note(const std::string& detail) {
    if (check_.passed && check_.detail.empty()) check_.detail = detail;
  }
  AuditCheck done() { return std::move(check_); }

 private:
  AuditCheck check_;
};

std::string at_round(Round r, NodeId v) {
  return "round " + std::to_string(r) + ", node " + std::to_string(v);
}

std::string protocol_of(const Trace& t) {
  if (t.config.is_object() && t.config.contains("model")) {
    return t.config["model"].get<std::string>();
  }
  return t.protocol;
}

AuditCheck check_structure(const Trace& t) {
  CheckBuilder c("structure", CheckGroup::kConsistency);
  const std::size_t n = t.node_count();
  if (t.final_status.size() != n || t.terminated.size() != n || t.capped_at.size() != n ||
      t.energy.size() != n) {
    c.fail("per-node arrays do not match the node count");
    return c.done();
  }
  if (t.round_count > t.round_budget) c.fail("round count exceeds the round budget");
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    const AwakeEvent& e = t.events[i];
    if (e.action == Action::kSleep) c.fail("sleep recorded as an awake event, " + at_round(e.round, e.node));
    if (e.round >= t.round_count) c.fail("event after the last round, " + at_round(e.round, e.node));
    if (i > 0) {
      const AwakeEvent& p = t.events[i - 1];
      if (std::pair(p.round, p.node) >= std::pair(e.round, e.node)) {
        c.fail("events out of order or duplicated, " + at_round(e.round, e.node));
      }
    }
  }
  for (std::size_t i = 1; i < t.transitions.size(); ++i) {
    if (t.transitions[i].round < t.transitions[i - 1].round) {
      c.fail("transitions out of order at index " + std::to_string(i));
    }
  }
  const Timeline timeline(t);
  for (NodeId v = 0; v < n; ++v) {
    const auto& ch = timeline.of(v);
    const NodeStatus last = ch.empty() ? NodeStatus::kUndecided : ch.back().status;
    if (last != t.final_status[v]) {
      c.fail("final status of node " + std::to_string(v) + " disagrees with its transitions");
    }
  }
  return c.done();
}

AuditCheck check_channel(const Trace& t) {
  CheckBuilder c("channel-replay", CheckGroup::kConsistency);
  if (!t.events_recorded) {
    c.note("events not recorded; replay skipped");
    return c.done();
  }
  const Graph& g = t.graph;
  std::vector<std::uint8_t> transmitting(g.node_count(), 0);
  for (std::size_t i = 0; i < t.events.size();) {
    std::size_t j = i;
    while (j < t.events.size() && t.events[j].round == t.events[i].round) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (t.events[k].action == Action::kTransmit) transmitting[t.events[k].node] = 1;
    }
    for (std::size_t k = i; k < j; ++k) {
      const AwakeEvent& e = t.events[k];
      Observation expected = Observation::kNothing;
      if (e.action == Action::kListen) {
        // Two transmitters already fix the observation in every model.
        std::size_t count = 0;
        for (NodeId u : g.neighbors(e.node)) {
          count += transmitting[u];
          if (count == 2) break;
        }
        expected = listener_observation(t.channel, count);
      }
      if (e.observation != expected) {
        c.fail(at_round(e.round, e.node) + ": recorded " + std::string(to_string(e.observation)) +
               ", channel gives " + std::string(to_string(expected)));
      }
    }
    for (std::size_t k = i; k < j; ++k) transmitting[t.events[k].node] = 0;
    i = j;
  }
  return c.done();
}

AuditCheck check_energy(const Trace& t) {
  CheckBuilder c("energy-ledger", CheckGroup::kConsistency);
  const std::size_t n = t.node_count();
  if (t.events_recorded) {
    std::vector<std::uint64_t> count(n, 0);
    for (const AwakeEvent& e : t.events) ++count[e.node];
    for (NodeId v = 0; v < n; ++v) {
      if (count[v] != t.energy[v]) {
        c.fail("node " + std::to_string(v) + ": ledger " + std::to_string(t.energy[v]) +
               ", trace has " + std::to_string(count[v]) + " awake rounds");
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (t.energy_cap && t.energy[v] > *t.energy_cap) {
      c.fail("node " + std::to_string(v) + " exceeds the energy cap");
    }
    if (t.capped_at[v] && (!t.energy_cap || t.energy[v] != *t.energy_cap)) {
      c.fail("node " + std::to_string(v) + " flagged capped without spending the cap");
    }
  }
  return c.done();
}

AuditCheck check_termination(const Trace& t) {
  CheckBuilder c("no-action-after-stop", CheckGroup::kConsistency);
  const Timeline timeline(t);
  std::vector<Round> last_event(t.node_count(), 0);
  std::vector<std::uint8_t> has_event(t.node_count(), 0);
  for (const AwakeEvent& e : t.events) {
    last_event[e.node] = e.round;
    has_event[e.node] = 1;
  }
  for (NodeId v = 0; v < t.node_count(); ++v) {
    if (!has_event[v]) continue;
    if (t.capped_at[v] && last_event[v] >= *t.capped_at[v]) {
      c.fail("node " + std::to_string(v) + " awake after being capped");
    }
    const auto& ch = timeline.of(v);
    if (t.terminated[v] && !ch.empty() && last_event[v] >= ch.back().round) {
      c.fail("node " + std::to_string(v) + " awake after its final decision");
    }
  }
  return c.done();
}

using RankTable = std::map<std::pair<std::uint64_t, NodeId>, const std::string*>;

RankTable rank_table(const Trace& t) {
  RankTable ranks;
  for (const RankRecord& r : t.ranks) ranks[{r.phase, r.node}] = &r.bits;
  return ranks;
}

/// Participants of each phase whose rank beats every participating neighbor.
std::vector<std::vector<NodeId>> local_maxima(const Trace& t, const RankTable& ranks,
                                              std::uint64_t phases) {
  std::vector<std::vector<NodeId>> out(phases);
  for (const auto& [key, bits] : ranks) {
    const auto [phase, v] = key;
    if (phase >= phases) continue;
    const Round end = (phase + 1) * t.phase_length;
    if (capped_by(t, v, end)) continue;
    bool best = true;
    for (NodeId u : t.graph.neighbors(v)) {
      auto it = ranks.find({phase, u});
      if (it == ranks.end()) continue;
      if (capped_by(t, u, end) || *it->second >= *bits) {
        best = false;
        break;
      }
    }
    if (best) out[phase].push_back(v);
  }
  return out;
}

AuditCheck check_local_maxima_cd(const Trace& t, CheckGroup group) {
  CheckBuilder c("local-maxima-win", group);
  const PhaseSets sets = phase_sets(t);
  const auto maxima = local_maxima(t, rank_table(t), sets.winners.size());
  for (std::uint64_t i = 0; i < maxima.size(); ++i) {
    if (t.round_count < (i + 1) * t.phase_length && t.stop == StopReason::kBudget) continue;
    for (NodeId v : maxima[i]) {
      if (!std::binary_search(sets.winners[i].begin(), sets.winners[i].end(), v)) {
        c.fail("phase " + std::to_string(i) + ": local maximum " + std::to_string(v) +
               " did not win");
      }
    }
  }
  return c.done();
}

struct NoCdShape {
  Round T_B_K = 1, T_C = 1, T_G = 0, T_L = 1;
  std::uint64_t rank_bits = 1;
  std::uint64_t kappa_log = 1;
  std::uint64_t delta_small = 1;
};

std::optional<NoCdShape> nocd_shape(const Trace& t) {
  const json& cfg = t.config;
  if (!cfg.is_object() || !cfg.contains("schedule")) return std::nullopt;
  const json& s = cfg["schedule"];
  NoCdShape shape;
  shape.T_B_K = s.at("T_B_K").get<Round>();
  shape.T_C = s.at("T_C").get<Round>();
  shape.T_G = s.at("T_G").get<Round>();
  shape.T_L = s.at("T_L").get<Round>();
  shape.rank_bits = s.at("rank_length").get<std::uint64_t>();
  shape.delta_small = s.at("delta_small").get<std::uint64_t>();
  shape.kappa_log =
      ceil_scaled_log2(double(cfg.at("kappa").get<std::uint64_t>()), cfg.at("n").get<std::uint64_t>());
  if (shape.T_B_K == 0 || shape.T_L == 0) return std::nullopt;
  return shape;
}

AuditCheck check_lockstep(const Trace& t, const NoCdShape& s) {
  CheckBuilder c("schedule-lockstep", CheckGroup::kConsistency);
  const Round d1 = s.T_C + s.T_B_K;
  const Round d2 = d1 + s.T_B_K;
  const Round shallow = d2 + s.T_G;
  for (const StatusChange& ch : t.transitions) {
    if (is_cap_change(t, ch)) continue;
    if (ch.round == 0) {
      c.fail("status change before the first round, node " + std::to_string(ch.node));
      continue;
    }
    const std::uint64_t phase = (ch.round - 1) / s.T_L;
    const Round o = ch.round - phase * s.T_L;
    const bool low_degree = o > d2 && o <= shallow;
    bool ok = false;
    switch (ch.status) {
      case NodeStatus::kLose:
      case NodeStatus::kCommit: ok = o <= s.T_C && o % s.T_B_K == 0; break;
      case NodeStatus::kWin: ok = o == s.T_C; break;
      case NodeStatus::kInMis: ok = o == d1 || low_degree; break;
      case NodeStatus::kOutMis: ok = o == d1 || o == d2 || low_degree || o == s.T_L; break;
      case NodeStatus::kUndecided: ok = o == d2 || o == s.T_L; break;
    }
    if (!ok) {
      c.fail(at_round(ch.round, ch.node) + ": " + std::string(to_string(ch.status)) +
             " at phase offset " + std::to_string(o));
    }
  }
  return c.done();
}

/// Bitty index of a competition status change at phase offset o.
std::uint64_t bitty_of(Round o, const NoCdShape& s) { return o / s.T_B_K - 1; }

struct CommitInfo {
  NodeId node;
  std::uint64_t phase;
  std::uint64_t bitty;
};

std::vector<CommitInfo> first_commits(const Trace& t, const NoCdShape& s) {
  std::vector<CommitInfo> out;
  std::set<std::pair<std::uint64_t, NodeId>> seen;
  for (const StatusChange& ch : t.transitions) {
    if (ch.status != NodeStatus::kCommit || ch.round == 0 || is_cap_change(t, ch)) continue;
    const std::uint64_t phase = (ch.round - 1) / s.T_L;
    const Round o = ch.round - phase * s.T_L;
    if (o == 0 || o > s.T_C || o % s.T_B_K != 0) continue;
    if (!seen.insert({phase, ch.node}).second) continue;
    out.push_back({ch.node, phase, bitty_of(o, s)});
  }
  return out;
}

AuditCheck check_commit_degree(const Trace& t, const NoCdShape& s, const RankTable& ranks,
                               const Timeline& timeline, std::size_t& estimate_violations) {
  CheckBuilder c("commit-degree", CheckGroup::kWhp);
  for (const CommitInfo& ci : first_commits(t, s)) {
    const Round phase_start = ci.phase * s.T_L;
    auto active_at = [&](NodeId u, std::uint64_t j) {
      return ranks.count({ci.phase, u}) != 0 &&
             timeline.at(u, phase_start + j * s.T_B_K) != NodeStatus::kLose;
    };
    std::uint64_t active = 0;
    for (NodeId u : t.graph.neighbors(ci.node)) active += active_at(u, ci.bitty) ? 1 : 0;
    if (active > s.kappa_log) {
      c.fail("node " + std::to_string(ci.node) + " committed in phase " +
             std::to_string(ci.phase) + " with " + std::to_string(active) +
             " active neighbors");
    }
    // Later receiver backoffs run with the reduced estimate.
    auto own = ranks.find({ci.phase, ci.node});
    if (own == ranks.end()) continue;
    for (std::uint64_t j = ci.bitty + 1; j < s.rank_bits; ++j) {
      if ((*own->second)[j] != '0') continue;
      std::uint64_t senders = 0;
      for (NodeId u : t.graph.neighbors(ci.node)) {
        auto r = ranks.find({ci.phase, u});
        if (r != ranks.end() && (*r->second)[j] == '1' && active_at(u, j)) ++senders;
      }
      if (senders > s.delta_small) ++estimate_violations;
    }
  }
  return c.done();
}

AuditCheck check_simultaneous_commit(const Trace& t, const NoCdShape& s) {
  CheckBuilder c("simultaneous-commit", CheckGroup::kWhp);
  std::map<std::pair<std::uint64_t, NodeId>, std::uint64_t> bitty;
  for (const CommitInfo& ci : first_commits(t, s)) bitty[{ci.phase, ci.node}] = ci.bitty;
  for (const auto& [key, j] : bitty) {
    const auto [phase, v] = key;
    for (NodeId u : t.graph.neighbors(v)) {
      if (u < v) continue;
      auto it = bitty.find({phase, u});
      if (it != bitty.end() && it->second != j) {
        c.fail("phase " + std::to_string(phase) + ": neighbors " + std::to_string(v) + " and " +
               std::to_string(u) + " committed in Bitty phases " + std::to_string(j) + " and " +
               std::to_string(it->second));
      }
    }
  }
  return c.done();
}

/// A committed neighbor never drops to lose, so a committed local maximum can
/// still hear it; such a node ends in C_i rather than W_i and decides in the
/// low-degree step. Both outcomes count as advancing.
AuditCheck check_local_maxima_nocd(const Trace& t, const NoCdShape& s, const RankTable& ranks,
                                   const Timeline& timeline, std::size_t& committed_maxima) {
  CheckBuilder c("local-maxima-win", CheckGroup::kWhp);
  const std::uint64_t phases = phase_sets(t).winners.size();
  const auto maxima = local_maxima(t, ranks, phases);
  for (std::uint64_t i = 0; i < phases; ++i) {
    const Round decided_at = i * s.T_L + s.T_C;
    if (t.round_count < decided_at) continue;
    for (NodeId v : maxima[i]) {
      const NodeStatus st = timeline.at(v, decided_at);
      if (st == NodeStatus::kCommit) ++committed_maxima;
      if (st != NodeStatus::kWin && st != NodeStatus::kCommit) {
        c.fail("phase " + std::to_string(i) + ": local maximum " + std::to_string(v) +
               " ended the competition as " + std::string(to_string(timeline.at(v, decided_at))));
      }
    }
  }
  return c.done();
}

AuditCheck check_must_decide(const Trace& t, const NoCdShape& s, const Timeline& timeline) {
  CheckBuilder c("must-decide", CheckGroup::kWhp);
  const PhaseSets sets = phase_sets(t);
  for (std::uint64_t i = 0; i < sets.winners.size(); ++i) {
    const Round end = (i + 1) * s.T_L;
    const bool cut_short = t.round_count < end && t.stop == StopReason::kBudget;
    if (cut_short) continue;
    for (const auto* family : {&sets.winners[i], &sets.committed[i]}) {
      for (NodeId v : *family) {
        if (capped_by(t, v, end)) continue;
        if (!is_decided(timeline.at(v, end))) {
          c.fail("phase " + std::to_string(i) + ": node " + std::to_string(v) +
                 " entered W/C but is " + std::string(to_string(timeline.at(v, end))));
        }
      }
    }
  }
  return c.done();
}

}  // namespace

AuditReport audit_trace(const Trace& trace) {
  AuditReport report;
  report.checks.push_back(check_structure(trace));
  if (!report.checks.back().passed) return report;
  report.mis = check_mis(trace.graph, trace.final_status);
  report.checks.push_back(check_channel(trace));
  report.checks.push_back(check_energy(trace));
  report.checks.push_back(check_termination(trace));

  const std::string model = protocol_of(trace);
  if (model == "cd" || model == "beep") {
    CheckBuilder schedule("cd-schedule", CheckGroup::kConsistency);
    if (std::string v = phase_budget_violation(trace); !v.empty()) schedule.fail(v);
    report.checks.push_back(schedule.done());
    report.checks.push_back(check_local_maxima_cd(trace, CheckGroup::kConsistency));
  } else if (model == "nocd-naive") {
    report.checks.push_back(check_local_maxima_cd(trace, CheckGroup::kWhp));
  } else if (model == "nocd") {
    const auto shape = nocd_shape(trace);
    if (!shape) {
      CheckBuilder bad("schedule-lockstep", CheckGroup::kConsistency);
      bad.fail("trace config lacks the no-CD schedule");
      report.checks.push_back(bad.done());
      return report;
    }
    const RankTable ranks = rank_table(trace);
    const Timeline timeline(trace);
    report.checks.push_back(check_lockstep(trace, *shape));
    report.checks.push_back(
        check_commit_degree(trace, *shape, ranks, timeline, report.estimate_violations));
    report.checks.push_back(check_simultaneous_commit(trace, *shape));
    report.checks.push_back(check_local_maxima_nocd(trace, *shape, ranks, timeline, report.committed_local_maxima));
    report.checks.push_back(check_must_decide(trace, *shape, timeline));
  }
  return report;
}

}  // namespace radiomis
