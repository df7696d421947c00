#include "radiomis/mis_cd.hpp"

#include <map>
#include <stdexcept>

namespace radiomis {

void CdConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (C == 0) throw std::invalid_argument("C must be positive");
  if (beta == 0) throw std::invalid_argument("beta must be positive");
  if (channel == ChannelModel::kNoCd) {
    throw std::invalid_argument("the CD protocol needs a cd or beep channel");
  }
}

nlohmann::json CdConfig::to_json() const {
  return {{"n", n},
          {"C", C},
          {"beta", beta},
          {"channel", std::string(to_string(channel))},
          {"rank_length", rank_length()},
          {"phase_count", phase_count()},
          {"phase_length", phase_length()},
          {"round_budget", round_budget()}};
}

std::string draw_rank(NodeRng& rng, std::uint64_t bits) {
  std::string rank(bits, '0');
  for (char& c : rank) c = rng.fair_bit() ? '1' : '0';
  return rank;
}

CdMisProtocol::CdMisProtocol(CdConfig config) : config_(config) { config_.validate(); }

std::string CdMisProtocol::name() const { return std::string(to_string(config_.channel)); }

nlohmann::json CdMisProtocol::config_json() const {
  nlohmann::json j = config_.to_json();
  j["model"] = name();
  j["winner_status"] = std::string(to_string(NodeStatus::kInMis));
  return j;
}

Task<> CdMisProtocol::run_node(NodeContext& ctx) const {
  LubyRun run;
  run.rank_bits = config_.rank_length();
  run.phases = config_.phase_count();
  run.note_ranks = true;
  co_await luby_mis(ctx, DirectRound{}, run);
  ctx.terminate();
}

namespace {

std::string describe(NodeId v, std::uint64_t phase, const std::string& what) {
  return "node " + std::to_string(v) + ", phase " + std::to_string(phase) + ": " + what;
}

}  // namespace

std::string phase_budget_violation(const Trace& trace) {
  const nlohmann::json& cfg = trace.config;
  if (!cfg.is_object() || !cfg.contains("rank_length") || !cfg.contains("phase_count")) {
    return "trace config lacks rank_length/phase_count";
  }
  if (trace.channel == ChannelModel::kNoCd) return "trace is not from a CD or beep run";
  const auto L = cfg["rank_length"].get<std::uint64_t>();
  const auto phases = cfg["phase_count"].get<std::uint64_t>();
  const Round len = L + 1;
  if (trace.phase_length != len) return "phase length differs from rank length + 1";
  if (trace.round_count > phases * len) {
    return "round count " + std::to_string(trace.round_count) + " exceeds budget " +
           std::to_string(phases * len);
  }
  if (!trace.events_recorded) return {};

  const std::size_t n = trace.node_count();
  std::vector<std::vector<const AwakeEvent*>> by_node(n);
  for (const AwakeEvent& e : trace.events) by_node[e.node].push_back(&e);
  std::map<std::pair<std::uint64_t, NodeId>, const std::string*> ranks;
  for (const RankRecord& r : trace.ranks) ranks[{r.phase, r.node}] = &r.bits;

  for (NodeId v = 0; v < n; ++v) {
    const auto& events = by_node[v];
    std::size_t k = 0;
    bool decided = false;
    for (std::uint64_t p = 0; k < events.size() || (!decided && p * len < trace.round_count);
         ++p) {
      const Round start = p * len;
      const bool truncated = (trace.capped_at[v] && *trace.capped_at[v] < start + len) ||
                             trace.round_count < start + len;
      if (decided) {
        if (k < events.size()) return describe(v, p, "awake after deciding");
        break;
      }
      auto rank_it = ranks.find({p, v});
      const std::string* rank = rank_it == ranks.end() ? nullptr : rank_it->second;
      std::uint64_t next = 0;
      bool knocked = false;
      bool final_done = false;
      for (; k < events.size() && events[k]->round < start + len; ++k) {
        const AwakeEvent& e = *events[k];
        const Round offset = e.round - start;
        if (e.action == Action::kTransmit && e.observation != Observation::kNothing) {
          return describe(v, p, "transmitter observed something");
        }
        if (offset < L) {
          if (knocked) return describe(v, p, "awake after knockout");
          if (offset != next) return describe(v, p, "missed a bit round");
          if (rank && (*rank)[offset] != (e.action == Action::kTransmit ? '1' : '0')) {
            return describe(v, p, "action disagrees with rank bit");
          }
          if (e.action == Action::kListen && heard_something(e.observation)) knocked = true;
          ++next;
        } else {
          if (knocked) {
            if (e.action != Action::kListen) return describe(v, p, "knocked-out node transmitted");
            decided = heard_something(e.observation);
          } else {
            if (next != L) return describe(v, p, "survivor skipped bit rounds");
            if (e.action != Action::kTransmit) return describe(v, p, "survivor did not confirm");
            decided = true;
          }
          final_done = true;
        }
      }
      if (!final_done && !truncated) return describe(v, p, "missing final-round action");
    }
  }
  return {};
}

bool check_phase_budget(const Trace& trace) { return phase_budget_violation(trace).empty(); }

}  // namespace radiomis
