#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "radiomis/graph.hpp"

namespace radiomis {

using Round = std::uint64_t;

enum class ChannelModel : std::uint8_t { kCd, kNoCd, kBeep };

/// What a node does in one round. Messages are the unary symbol "1", so
/// Transmit carries no payload.
enum class Action : std::uint8_t { kSleep, kTransmit, kListen };

/// What a node perceives at the end of a round.
enum class Observation : std::uint8_t { kNothing, kSilence, kMessage, kCollision, kBeepHeard };

enum class NodeStatus : std::uint8_t { kUndecided, kWin, kLose, kCommit, kInMis, kOutMis };

std::string_view to_string(ChannelModel m) noexcept;
std::string_view to_string(Action a) noexcept;
std::string_view to_string(Observation o) noexcept;
std::string_view to_string(NodeStatus s) noexcept;

std::optional<ChannelModel> parse_channel(std::string_view s) noexcept;
std::optional<Action> parse_action(std::string_view s) noexcept;
std::optional<Observation> parse_observation(std::string_view s) noexcept;
std::optional<NodeStatus> parse_status(std::string_view s) noexcept;

constexpr bool is_decided(NodeStatus s) noexcept {
  return s == NodeStatus::kInMis || s == NodeStatus::kOutMis;
}

/// True for any observation that reveals at least one transmitting neighbor.
constexpr bool heard_something(Observation o) noexcept {
  return o == Observation::kMessage || o == Observation::kCollision ||
         o == Observation::kBeepHeard;
}

/// Observation of a listener with `transmitters` transmitting neighbors.
constexpr Observation listener_observation(ChannelModel model, std::size_t transmitters) noexcept {
  switch (model) {
    case ChannelModel::kCd:
      return transmitters == 0   ? Observation::kSilence
             : transmitters == 1 ? Observation::kMessage
                                 : Observation::kCollision;
    case ChannelModel::kNoCd:
      return transmitters == 1 ? Observation::kMessage : Observation::kSilence;
    case ChannelModel::kBeep:
      return transmitters == 0 ? Observation::kSilence : Observation::kBeepHeard;
  }
  return Observation::kNothing;
}

/// Resolves one synchronous round. Transmitting and sleeping nodes observe
/// Nothing; there is no sender-side collision detection.
/// Throws std::invalid_argument if actions.size() != g.node_count().
std::vector<Observation> resolve_round(const Graph& g, std::span<const Action> actions,
                                       ChannelModel model);

/// Sparse resolver used by the engine: only the awake nodes of a round are
/// named. Keeps scratch buffers between rounds.
class RoundResolver {
 public:
  explicit RoundResolver(const Graph& g);

  /// `awake` lists (node, action) pairs with action != kSleep, each node at
  /// most once. Writes one observation per entry into `out`.
  void resolve(std::span<const std::pair<NodeId, Action>> awake, ChannelModel model,
               std::vector<Observation>& out);

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint8_t> transmitting_;
};

}  // namespace radiomis
