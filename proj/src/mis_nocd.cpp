#include "radiomis/mis_nocd.hpp"

#include <algorithm>
#include <stdexcept>

namespace radiomis {

std::string_view to_string(NoCdMode m) noexcept {
  return m == NoCdMode::kStrict ? "strict" : "experiment";
}

std::optional<NoCdMode> parse_mode(std::string_view s) noexcept {
  if (s == "strict") return NoCdMode::kStrict;
  if (s == "experiment") return NoCdMode::kExperiment;
  return std::nullopt;
}

NoCdConfig NoCdConfig::strict(std::uint64_t n, std::uint64_t delta) {
  NoCdConfig c;
  c.n = n;
  c.delta = delta;
  c.C = kFullPhaseMultiplier;
  c.c_prime = kStrictBackoffMultiplier;
  c.mode = NoCdMode::kStrict;
  return c;
}

void NoCdConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (delta == 0) throw std::invalid_argument("delta must be positive");
  if (beta < 4) throw std::invalid_argument("beta must be at least 4");
  if (kappa < 5) throw std::invalid_argument("kappa must be at least 5");
  if (C == 0 || c_prime == 0 || cd_C == 0) {
    throw std::invalid_argument("C, C' and the CD phase multiplier must be positive");
  }
}

nlohmann::json NoCdConfig::to_json() const {
  return {{"n", n},
          {"delta", delta},
          {"beta", beta},
          {"kappa", kappa},
          {"C", C},
          {"c_prime", c_prime},
          {"mode", std::string(to_string(mode))},
          {"low_degree", low_degree},
          {"cd_C", cd_C}};
}

nlohmann::json NoCdSchedule::to_json() const {
  return {{"rank_length", rank_bits}, {"K", K},         {"phase_count", phases},
          {"window", window},         {"T_B_K", T_B_K}, {"T_B_1", T_B_1},
          {"T_C", T_C},               {"T_G", T_G},     {"T_L", T_L},
          {"delta_small", delta_small}};
}

LubyRun NaiveSimLowDegree::luby_run(const NoCdConfig& config, Round start) {
  LubyRun run;
  run.rank_bits = ceil_scaled_log2(double(config.beta), config.n);
  run.phases = ceil_scaled_log2(double(config.cd_C), config.n);
  run.start = start;
  return run;
}

BackoffParams NaiveSimLowDegree::round_params(const NoCdConfig& config) {
  const std::uint64_t small =
      std::min(config.delta, ceil_scaled_log2(double(config.kappa), config.n));
  return BackoffParams::make(ceil_scaled_log2(double(config.c_prime), config.n), small, small);
}

Round NaiveSimLowDegree::span(const NoCdConfig& config) const {
  const LubyRun run = luby_run(config, 0);
  return run.phases * run.phase_length(round_params(config).span());
}

Task<NodeStatus> NaiveSimLowDegree::run(NodeContext& ctx, const NoCdConfig& config,
                                        std::uint64_t, Round start) const {
  co_return co_await luby_mis(ctx, EBackoffRound{round_params(config)}, luby_run(config, start));
}

std::unique_ptr<LowDegreeStrategy> make_low_degree_strategy(const std::string& name) {
  if (name == "naive-sim") return std::make_unique<NaiveSimLowDegree>();
  throw std::invalid_argument("unknown low-degree strategy '" + name + "'");
}

std::vector<std::string> low_degree_strategy_names() { return {"naive-sim"}; }

NoCdSchedule make_schedule(const NoCdConfig& config, const LowDegreeStrategy& strategy) {
  NoCdSchedule s;
  s.rank_bits = ceil_scaled_log2(double(config.beta), config.n);
  s.K = ceil_scaled_log2(double(config.c_prime), config.n);
  s.phases = ceil_scaled_log2(double(config.C), config.n);
  s.window = log2_window(config.delta);
  s.T_B_K = s.K * s.window;
  s.T_B_1 = s.window;
  s.T_C = s.rank_bits * s.T_B_K;
  s.T_G = strategy.span(config);
  s.T_L = s.T_C + 2 * s.T_B_K + s.T_G + s.T_B_1;
  s.delta_small = std::min(config.delta, ceil_scaled_log2(double(config.kappa), config.n));
  return s;
}

Task<> competition(NodeContext& ctx, const NoCdConfig& config, const NoCdSchedule& schedule,
                   std::uint64_t phase) {
  const Round start = ctx.now();
  std::uint64_t delta_est = config.delta;
  bool heard = false;
  const std::string rank = draw_rank(ctx.rng(), schedule.rank_bits);
  ctx.note_rank(static_cast<std::uint32_t>(phase), rank);

  for (std::uint64_t j = 0; j < schedule.rank_bits; ++j) {
    co_await ctx.sleep_until(start + j * schedule.T_B_K);
    if (ctx.status() == NodeStatus::kLose) continue;
    if (rank[j] == '1') {
      co_await snd_ebackoff(ctx, BackoffParams::make(schedule.K, config.delta));
      continue;
    }
    const bool h =
        co_await rec_ebackoff(ctx, BackoffParams::make(schedule.K, config.delta, delta_est));
    heard = heard || h;
    if (heard && ctx.status() != NodeStatus::kCommit) {
      ctx.set_status(NodeStatus::kLose);
    } else if (!heard) {
      delta_est = schedule.delta_small;
      ctx.set_status(NodeStatus::kCommit);
    }
  }
  co_await ctx.sleep_until(start + schedule.T_C);
  if (!heard) ctx.set_status(NodeStatus::kWin);
}

NoCdMisProtocol::NoCdMisProtocol(NoCdConfig config)
    : config_(std::move(config)), strategy_(make_low_degree_strategy(config_.low_degree)) {
  config_.validate();
  schedule_ = make_schedule(config_, *strategy_);
}

nlohmann::json NoCdMisProtocol::config_json() const {
  nlohmann::json j = config_.to_json();
  j["model"] = name();
  j["winner_status"] = std::string(to_string(NodeStatus::kWin));
  j["schedule"] = schedule_.to_json();
  return j;
}

Task<> NoCdMisProtocol::run_node(NodeContext& ctx) const {
  const NoCdSchedule& s = schedule_;
  const BackoffParams deep = BackoffParams::make(s.K, config_.delta);
  const BackoffParams shallow = BackoffParams::make(1, config_.delta);

  for (std::uint64_t i = 0; i < s.phases; ++i) {
    if (ctx.status() == NodeStatus::kUndecided) {
      co_await competition(ctx, config_, s, i);
    } else {
      co_await ctx.sleep_until(s.deep_check_1(i));
    }

    if (ctx.status() == NodeStatus::kInMis) {
      co_await snd_ebackoff(ctx, deep);
    } else if (ctx.status() == NodeStatus::kWin) {
      if (co_await rec_ebackoff(ctx, deep)) {
        ctx.set_status(NodeStatus::kOutMis);
        ctx.terminate();
        co_return;
      }
      ctx.set_status(NodeStatus::kInMis);
    } else {
      co_await ctx.sleep_until(s.deep_check_2(i));
    }

    if (ctx.status() == NodeStatus::kInMis) {
      co_await snd_ebackoff(ctx, deep);
    } else if (ctx.status() == NodeStatus::kCommit) {
      if (co_await rec_ebackoff(ctx, deep)) {
        ctx.set_status(NodeStatus::kOutMis);
        ctx.terminate();
        co_return;
      }
      ctx.set_status(NodeStatus::kUndecided);
      const NodeStatus outcome = co_await strategy_->run(ctx, config_, i, ctx.now());
      if (outcome == NodeStatus::kOutMis) {
        ctx.terminate();
        co_return;
      }
    }
    co_await ctx.sleep_until(s.shallow_check(i));

    if (ctx.status() == NodeStatus::kInMis) {
      co_await snd_ebackoff(ctx, shallow);
    } else {
      if (co_await rec_ebackoff(ctx, shallow)) {
        ctx.set_status(NodeStatus::kOutMis);
        ctx.terminate();
        co_return;
      }
      ctx.set_status(NodeStatus::kUndecided);
    }
  }
}

Task<> TraditionalRound::send(NodeContext& ctx) const {
  const Round window = params.window();
  for (std::uint64_t i = 0; i < params.k; ++i) {
    const Round x = std::min<Round>(ctx.rng().geometric_half(), window);
    for (Round r = 0; r < window; ++r) {
      if (r < x) {
        co_await ctx.transmit();
      } else {
        co_await ctx.listen();
      }
    }
  }
}

Task<bool> TraditionalRound::receive(NodeContext& ctx) const {
  bool heard = false;
  for (Round r = 0; r < params.span(); ++r) {
    if (co_await ctx.listen() == Observation::kMessage) heard = true;
  }
  co_return heard;
}

NaiveBaselineProtocol::NaiveBaselineProtocol(NoCdConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::uint64_t NaiveBaselineProtocol::phase_count() const noexcept {
  return ceil_scaled_log2(double(config_.cd_C), config_.n);
}

std::uint64_t NaiveBaselineProtocol::rank_bits() const noexcept {
  return ceil_scaled_log2(double(config_.beta), config_.n);
}

BackoffParams NaiveBaselineProtocol::round_params() const {
  return BackoffParams::make(ceil_scaled_log2(double(config_.c_prime), config_.n), config_.delta);
}

Round NaiveBaselineProtocol::phase_length() const {
  return (rank_bits() + 1) * round_params().span();
}

Round NaiveBaselineProtocol::round_budget() const { return phase_count() * phase_length(); }

nlohmann::json NaiveBaselineProtocol::config_json() const {
  nlohmann::json j = config_.to_json();
  j["model"] = name();
  j["winner_status"] = std::string(to_string(NodeStatus::kInMis));
  j["rank_length"] = rank_bits();
  j["phase_count"] = phase_count();
  j["round_span"] = round_params().span();
  return j;
}

Task<> NaiveBaselineProtocol::run_node(NodeContext& ctx) const {
  LubyRun run;
  run.rank_bits = rank_bits();
  run.phases = phase_count();
  run.note_ranks = true;
  co_await luby_mis(ctx, TraditionalRound{round_params()}, run);
  ctx.terminate();
}

}  // namespace radiomis
