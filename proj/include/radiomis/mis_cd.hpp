#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "radiomis/backoff.hpp"
#include "radiomis/engine.hpp"
#include "radiomis/trace.hpp"

namespace radiomis {

struct CdConfig {
  std::uint64_t n = 1;
  std::uint64_t C = 8;
  std::uint64_t beta = 4;
  ChannelModel channel = ChannelModel::kCd;

  /// Throws std::invalid_argument on n, C or beta of zero, or a no-CD channel.
  void validate() const;

  /// L = max(1, ceil(beta * log2 n)) rank bits.
  std::uint64_t rank_length() const noexcept { return ceil_scaled_log2(double(beta), n); }
  /// max(1, ceil(C * log2 n)) Luby phases.
  std::uint64_t phase_count() const noexcept { return ceil_scaled_log2(double(C), n); }
  Round phase_length() const noexcept { return rank_length() + 1; }
  Round round_budget() const noexcept { return phase_count() * phase_length(); }

  nlohmann::json to_json() const;
};

/// Draws an L-bit rank, most significant bit first, as a '0'/'1' string.
std::string draw_rank(NodeRng& rng, std::uint64_t bits);

/// One round of the CD channel taken literally: a transmit or a listen.
struct DirectRound {
  /// Listen awaiter that yields whether anything was heard.
  struct HeardAwaiter {
    NodeContext::ActionAwaiter inner;
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) noexcept { inner.await_suspend(h); }
    bool await_resume() const noexcept { return heard_something(inner.await_resume()); }
  };

  Round span() const noexcept { return 1; }
  NodeContext::ActionAwaiter send(NodeContext& ctx) const { return ctx.transmit(); }
  HeardAwaiter receive(NodeContext& ctx) const { return HeardAwaiter{ctx.listen()}; }
};

/// A CD round carried out with a pair of energy-efficient backoffs.
struct EBackoffRound {
  BackoffParams params;

  Round span() const noexcept { return params.span(); }
  Task<> send(NodeContext& ctx) const { return snd_ebackoff(ctx, params); }
  Task<bool> receive(NodeContext& ctx) const { return rec_ebackoff(ctx, params); }
};

struct LubyRun {
  std::uint64_t rank_bits = 1;
  std::uint64_t phases = 1;
  Round start = 0;
  /// Record ranks in the trace, tagged with phase_offset + local phase.
  bool note_ranks = false;
  std::uint32_t phase_offset = 0;

  Round phase_length(Round span) const noexcept { return (rank_bits + 1) * span; }
};

/// The CD MIS program for one node, generic over how a CD round is realised.
/// Sets in-MIS or out-MIS on deciding and returns the final status, or
/// kUndecided if every phase ends without a decision. Returns at the round
/// right after its decision, or at the end of the last phase.
template <typename RoundSim>
Task<NodeStatus> luby_mis(NodeContext& ctx, RoundSim sim, LubyRun run) {
  const Round span = sim.span();
  const Round phase_len = run.phase_length(span);
  for (std::uint64_t i = 0; i < run.phases; ++i) {
    const Round phase_start = run.start + i * phase_len;
    co_await ctx.sleep_until(phase_start);
    const std::string rank = draw_rank(ctx.rng(), run.rank_bits);
    if (run.note_ranks) ctx.note_rank(run.phase_offset + static_cast<std::uint32_t>(i), rank);

    bool knocked_out = false;
    for (std::uint64_t j = 0; j < run.rank_bits; ++j) {
      if (rank[j] == '1') {
        co_await sim.send(ctx);
      } else if (co_await sim.receive(ctx)) {
        knocked_out = true;
        break;
      }
    }
    if (!knocked_out) {
      co_await sim.send(ctx);
      ctx.set_status(NodeStatus::kInMis);
      co_return NodeStatus::kInMis;
    }
    co_await ctx.sleep_until(phase_start + run.rank_bits * span);
    if (co_await sim.receive(ctx)) {
      ctx.set_status(NodeStatus::kOutMis);
      co_return NodeStatus::kOutMis;
    }
  }
  co_return NodeStatus::kUndecided;
}

/// The energy-optimal MIS protocol for the CD and beeping channels.
class CdMisProtocol final : public Protocol {
 public:
  explicit CdMisProtocol(CdConfig config);

  const CdConfig& config() const noexcept { return config_; }

  std::string name() const override;
  ChannelModel channel() const override { return config_.channel; }
  Round phase_length() const override { return config_.phase_length(); }
  Round round_budget() const override { return config_.round_budget(); }
  nlohmann::json config_json() const override;
  Task<> run_node(NodeContext& ctx) const override;

 private:
  CdConfig config_;
};

/// True iff the trace stays within the round budget and every node follows
/// the per-phase schedule: contiguous bit rounds up to its first knockout,
/// asleep for the remaining bit rounds, then exactly one final-round action
/// (transmit for survivors, listen for knocked-out nodes), nothing after
/// deciding, and transmit/listen choices matching the recorded ranks.
bool check_phase_budget(const Trace& trace);

/// Same check, with a description of the first violation (empty if none).
std::string phase_budget_violation(const Trace& trace);

}  // namespace radiomis
