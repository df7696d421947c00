#include "radiomis/backoff.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace radiomis {

BackoffParams BackoffParams::make(std::uint64_t k, std::uint64_t delta, std::uint64_t delta_est) {
  if (k == 0) throw std::invalid_argument("backoff needs k >= 1");
  if (delta_est == 0 || delta_est > delta) {
    throw std::invalid_argument("backoff needs 1 <= delta_est <= delta, got delta_est=" +
                                std::to_string(delta_est) + " delta=" + std::to_string(delta));
  }
  return BackoffParams{k, delta, delta_est};
}

Task<> snd_ebackoff(NodeContext& ctx, BackoffParams params) {
  const Round start = ctx.now();
  const Round window = params.window();
  for (std::uint64_t i = 0; i < params.k; ++i) {
    const Round slot = std::min<Round>(ctx.rng().geometric_half(), window);
    co_await ctx.sleep_until(start + i * window + (slot - 1));
    co_await ctx.transmit();
  }
  co_await ctx.sleep_until(start + params.span());
}

Task<bool> rec_ebackoff(NodeContext& ctx, BackoffParams params) {
  const Round start = ctx.now();
  const Round window = params.window();
  const Round listen = params.listen_window();
  bool heard = false;
  for (std::uint64_t i = 0; i < params.k && !heard; ++i) {
    co_await ctx.sleep_until(start + i * window);
    for (Round j = 0; j < listen; ++j) {
      if (co_await ctx.listen() == Observation::kMessage) {
        heard = true;
        break;
      }
    }
  }
  co_await ctx.sleep_until(start + params.span());
  co_return heard;
}

namespace {

// Node 0 of every block of senders + 1 ids receives, the rest send. The
// receiver reports hearing through its final status.
class StarBench final : public Protocol {
 public:
  StarBench(BackoffParams params, std::size_t senders, std::vector<Round>* finish)
      : params_(params), block_(senders + 1), finish_(finish) {}

  std::string name() const override { return "backoff-bench"; }
  ChannelModel channel() const override { return ChannelModel::kNoCd; }
  Round phase_length() const override { return params_.span(); }
  Round round_budget() const override { return params_.span() + 1; }
  nlohmann::json config_json() const override { return nlohmann::json::object(); }

  Task<> run_node(NodeContext& ctx) const override {
    if (ctx.id() % block_ == 0) {
      const bool heard = co_await rec_ebackoff(ctx, params_);
      ctx.set_status(heard ? NodeStatus::kInMis : NodeStatus::kOutMis);
    } else {
      co_await snd_ebackoff(ctx, params_);
    }
    (*finish_)[ctx.id()] = ctx.now();
    ctx.terminate();
  }

 private:
  BackoffParams params_;
  std::size_t block_;
  std::vector<Round>* finish_;
};

}  // namespace

BackoffTrialStats run_backoff_trials(BackoffParams params, std::size_t senders,
                                     std::size_t trials, std::uint64_t seed) {
  constexpr std::size_t kNodesPerRun = 1 << 16;
  const std::size_t block = senders + 1;
  const std::size_t per_run = std::max<std::size_t>(1, kNodesPerRun / block);

  BackoffTrialStats stats;
  stats.min_sender_energy = std::numeric_limits<std::uint64_t>::max();
  stats.min_receiver_energy = std::numeric_limits<std::uint64_t>::max();
  std::vector<Round> finish;
  for (std::size_t done = 0, batch = 0; done < trials; ++batch) {
    const std::size_t stars = std::min(per_run, trials - done);
    std::vector<Edge> edges;
    edges.reserve(stars * senders);
    for (std::size_t s = 0; s < stars; ++s) {
      const auto center = static_cast<NodeId>(s * block);
      for (std::size_t j = 1; j < block; ++j) edges.push_back({center, NodeId(center + j)});
    }
    const Graph g(stars * block, std::move(edges));
    finish.assign(g.node_count(), 0);
    const StarBench bench(params, senders, &finish);
    RunOptions options;
    options.seed = seed + batch;
    options.record_events = false;
    const Trace t = run_protocol(g, bench, options);

    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (finish[v] != params.span()) stats.spans_exact = false;
      if (v % block == 0) {
        stats.heard += t.final_status[v] == NodeStatus::kInMis ? 1 : 0;
        stats.min_receiver_energy = std::min(stats.min_receiver_energy, t.energy[v]);
        stats.max_receiver_energy = std::max(stats.max_receiver_energy, t.energy[v]);
      } else {
        stats.min_sender_energy = std::min(stats.min_sender_energy, t.energy[v]);
        stats.max_sender_energy = std::max(stats.max_sender_energy, t.energy[v]);
      }
    }
    stats.trials += stars;
    done += stars;
  }
  if (senders == 0) stats.min_sender_energy = 0;
  if (stats.trials == 0) stats.min_receiver_energy = 0;
  return stats;
}

}  // namespace radiomis
