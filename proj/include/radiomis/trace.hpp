#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "radiomis/graph.hpp"
#include "radiomis/radio.hpp"

namespace radiomis {

/// One awake (transmit or listen) round of one node. Sleeping is implicit:
/// a node absent from a round slept through it.
struct AwakeEvent {
  Round round = 0;
  NodeId node = 0;
  Action action = Action::kListen;
  Observation observation = Observation::kNothing;
  friend bool operator==(const AwakeEvent&, const AwakeEvent&) = default;
};

/// `node` holds `status` from the start of `round` on.
struct StatusChange {
  Round round = 0;
  NodeId node = 0;
  NodeStatus status = NodeStatus::kUndecided;
  friend bool operator==(const StatusChange&, const StatusChange&) = default;
};

/// Rank bit string drawn by `node` for Luby phase `phase` ('0'/'1', most
/// significant bit first).
struct RankRecord {
  std::uint32_t phase = 0;
  NodeId node = 0;
  std::string bits;
  friend bool operator==(const RankRecord&, const RankRecord&) = default;
};

enum class StopReason : std::uint8_t { kAllTerminated, kAllDecided, kBudget };

std::string_view to_string(StopReason r) noexcept;

/// Full record of one simulation run.
struct Trace {
  std::string protocol;
  ChannelModel channel = ChannelModel::kCd;
  std::uint64_t seed = 0;
  nlohmann::json config;
  std::string graph_ref;
  Graph graph;
  Round phase_length = 1;
  Round round_budget = 0;
  Round round_count = 0;
  std::optional<std::uint64_t> energy_cap;
  StopReason stop = StopReason::kAllTerminated;
  bool events_recorded = true;

  std::vector<AwakeEvent> events;  // sorted by (round, node)
  std::vector<StatusChange> transitions;  // in recording order, rounds nondecreasing
  std::vector<RankRecord> ranks;

  std::vector<NodeStatus> final_status;
  std::vector<std::uint8_t> terminated;
  /// Round at which the energy cap forced the node asleep, if it did.
  std::vector<std::optional<Round>> capped_at;
  std::vector<std::uint64_t> energy;

  std::size_t node_count() const noexcept { return graph.node_count(); }

  /// Luby phases touched by the run: ceil(round_count / phase_length).
  std::uint64_t phases_used() const noexcept;

  std::uint64_t max_energy() const noexcept;

  /// Phase a status change belongs to. A change effective at round R was
  /// caused by actions before R, so it is attributed to the phase of R - 1.
  std::uint64_t phase_of_change(Round round) const noexcept {
    return round == 0 ? 0 : (round - 1) / phase_length;
  }

  /// Statuses after applying every change with round <= `round`.
  std::vector<NodeStatus> statuses_at(Round round) const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Per-phase winner and committed sets. Winners are nodes that set status
/// win (no-CD protocols) or, for protocols without a win status, nodes that
/// joined the MIS in that phase other than through the energy cap.
struct PhaseSets {
  std::vector<std::vector<NodeId>> winners;
  std::vector<std::vector<NodeId>> committed;
};
PhaseSets phase_sets(const Trace& trace);

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kTraceFormatVersion = 1;

nlohmann::json trace_to_json(const Trace& trace);
Trace trace_from_json(const nlohmann::json& doc);

/// Compact single-line JSON document plus trailing newline.
std::string serialize_trace(const Trace& trace);
Trace parse_trace(std::string_view text);

void write_trace_file(const Trace& trace, const std::string& path);
Trace read_trace_file(const std::string& path);

}  // namespace radiomis
