#include "radiomis/radio.hpp"

#include <stdexcept>
#include <string>

namespace radiomis {

std::string_view to_string(ChannelModel m) noexcept {
  switch (m) {
    case ChannelModel::kCd: return "cd";
    case ChannelModel::kNoCd: return "nocd";
    case ChannelModel::kBeep: return "beep";
  }
  return "?";
}

std::string_view to_string(Action a) noexcept {
  switch (a) {
    case Action::kSleep: return "S";
    case Action::kTransmit: return "T";
    case Action::kListen: return "L";
  }
  return "?";
}

std::string_view to_string(Observation o) noexcept {
  switch (o) {
    case Observation::kNothing: return "nothing";
    case Observation::kSilence: return "silence";
    case Observation::kMessage: return "message";
    case Observation::kCollision: return "collision";
    case Observation::kBeepHeard: return "beep";
  }
  return "?";
}

std::string_view to_string(NodeStatus s) noexcept {
  switch (s) {
    case NodeStatus::kUndecided: return "undecided";
    case NodeStatus::kWin: return "win";
    case NodeStatus::kLose: return "lose";
    case NodeStatus::kCommit: return "commit";
    case NodeStatus::kInMis: return "in-MIS";
    case NodeStatus::kOutMis: return "out-MIS";
  }
  return "?";
}

std::optional<ChannelModel> parse_channel(std::string_view s) noexcept {
  for (auto m : {ChannelModel::kCd, ChannelModel::kNoCd, ChannelModel::kBeep}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<Action> parse_action(std::string_view s) noexcept {
  for (auto a : {Action::kSleep, Action::kTransmit, Action::kListen}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::optional<Observation> parse_observation(std::string_view s) noexcept {
  for (auto o : {Observation::kNothing, Observation::kSilence, Observation::kMessage,
                 Observation::kCollision, Observation::kBeepHeard}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

std::optional<NodeStatus> parse_status(std::string_view s) noexcept {
  for (auto st : {NodeStatus::kUndecided, NodeStatus::kWin, NodeStatus::kLose,
                  NodeStatus::kCommit, NodeStatus::kInMis, NodeStatus::kOutMis}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::vector<Observation> resolve_round(const Graph& g, std::span<const Action> actions,
                                       ChannelModel model) {
  if (actions.size() != g.node_count()) {
    throw std::invalid_argument("resolve_round: " + std::to_string(actions.size()) +
                                " actions for " + std::to_string(g.node_count()) + " nodes");
  }
  std::vector<Observation> out(actions.size(), Observation::kNothing);
  for (NodeId v = 0; v < actions.size(); ++v) {
    if (actions[v] != Action::kListen) continue;
    std::size_t transmitters = 0;
    for (NodeId u : g.neighbors(v)) {
      if (actions[u] == Action::kTransmit) ++transmitters;
    }
    out[v] = listener_observation(model, transmitters);
  }
  return out;
}

RoundResolver::RoundResolver(const Graph& g)
    : graph_(&g), hits_(g.node_count(), 0), transmitting_(g.node_count(), 0) {}

void RoundResolver::resolve(std::span<const std::pair<NodeId, Action>> awake,
                            ChannelModel model, std::vector<Observation>& out) {
  out.assign(awake.size(), Observation::kNothing);
  std::size_t sender_work = 0;
  std::size_t listener_work = 0;
  bool any_sender = false;
  bool any_listener = false;
  for (const auto& [v, action] : awake) {
    if (action == Action::kTransmit) {
      transmitting_[v] = 1;
      sender_work += graph_->degree(v);
      any_sender = true;
    } else {
      listener_work += graph_->degree(v);
      any_listener = true;
    }
  }

  if (!any_listener) {
    // Nothing to compute.
  } else if (!any_sender) {
    for (std::size_t i = 0; i < awake.size(); ++i) {
      out[i] = listener_observation(model, 0);
    }
  } else if (sender_work <= listener_work) {
    for (const auto& [v, action] : awake) {
      if (action != Action::kTransmit) continue;
      for (NodeId u : graph_->neighbors(v)) ++hits_[u];
    }
    for (std::size_t i = 0; i < awake.size(); ++i) {
      if (awake[i].second == Action::kListen) {
        out[i] = listener_observation(model, hits_[awake[i].first]);
      }
    }
    for (const auto& [v, action] : awake) {
      if (action != Action::kTransmit) continue;
      for (NodeId u : graph_->neighbors(v)) hits_[u] = 0;
    }
  } else {
    // Beyond this many transmitters the observation no longer changes.
    const std::size_t saturation = model == ChannelModel::kBeep ? 1 : 2;
    for (std::size_t i = 0; i < awake.size(); ++i) {
      if (awake[i].second != Action::kListen) continue;
      std::size_t count = 0;
      for (NodeId u : graph_->neighbors(awake[i].first)) {
        count += transmitting_[u];
        if (count >= saturation) break;
      }
      out[i] = listener_observation(model, count);
    }
  }

  for (const auto& [v, action] : awake) transmitting_[v] = 0;
}

}  // namespace radiomis
