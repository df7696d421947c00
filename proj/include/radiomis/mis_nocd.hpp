#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "radiomis/backoff.hpp"
#include "radiomis/engine.hpp"
#include "radiomis/mis_cd.hpp"

namespace radiomis {

enum class NoCdMode : std::uint8_t { kExperiment, kStrict };

std::string_view to_string(NoCdMode m) noexcept;
std::optional<NoCdMode> parse_mode(std::string_view s) noexcept;

inline constexpr std::uint64_t kFullPhaseMultiplier = 177;
inline constexpr std::uint64_t kStrictBackoffMultiplier = 30;

struct NoCdConfig {
  std::uint64_t n = 1;
  std::uint64_t delta = 1;
  std::uint64_t beta = 4;
  std::uint64_t kappa = 5;
  std::uint64_t C = kFullPhaseMultiplier;
  /// Backoff repetition multiplier; K = ceil(c_prime * log2 n).
  std::uint64_t c_prime = 5;
  NoCdMode mode = NoCdMode::kExperiment;
  std::string low_degree = "naive-sim";
  /// Luby phase multiplier of the simulated CD protocol, used by the
  /// low-degree subroutine and the naive baseline.
  std::uint64_t cd_C = 8;

  /// Strict mode: the full phase count and C' = 30.
  static NoCdConfig strict(std::uint64_t n, std::uint64_t delta);

  /// Throws std::invalid_argument unless beta >= 4, kappa >= 5 and the
  /// remaining fields are positive.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Round arithmetic shared by every node.
struct NoCdSchedule {
  std::uint64_t rank_bits = 1;  // L
  std::uint64_t K = 1;
  std::uint64_t phases = 1;
  Round window = 1;             // log2_window(delta)
  Round T_B_K = 1;              // T_B(K)
  Round T_B_1 = 1;              // T_B(1)
  Round T_C = 1;
  Round T_G = 0;
  Round T_L = 1;
  std::uint64_t delta_small = 1;  // min(delta, ceil(kappa log2 n))

  Round deep_check_1(std::uint64_t phase) const noexcept { return phase * T_L + T_C; }
  Round deep_check_2(std::uint64_t phase) const noexcept { return deep_check_1(phase) + T_B_K; }
  Round shallow_check(std::uint64_t phase) const noexcept {
    return deep_check_2(phase) + T_B_K + T_G;
  }

  nlohmann::json to_json() const;
};

/// Decides the committed nodes that heard no MIS neighbor. All participants
/// of one phase call run() in the same round; every call must return within
/// span() rounds.
class LowDegreeStrategy {
 public:
  virtual ~LowDegreeStrategy() = default;
  virtual std::string name() const = 0;
  /// Deterministic worst-case span T_G.
  virtual Round span(const NoCdConfig& config) const = 0;
  /// Sets in-MIS or out-MIS and returns it, or returns kUndecided on failure.
  virtual Task<NodeStatus> run(NodeContext& ctx, const NoCdConfig& config, std::uint64_t phase,
                               Round start) const = 0;
};

/// Runs the CD MIS protocol on the participants, each CD round carried out by
/// a K-repeated energy-efficient backoff pair with delta_small as window and
/// estimate.
class NaiveSimLowDegree final : public LowDegreeStrategy {
 public:
  std::string name() const override { return "naive-sim"; }
  Round span(const NoCdConfig& config) const override;
  Task<NodeStatus> run(NodeContext& ctx, const NoCdConfig& config, std::uint64_t phase,
                       Round start) const override;

  static LubyRun luby_run(const NoCdConfig& config, Round start);
  static BackoffParams round_params(const NoCdConfig& config);
};

/// Throws std::invalid_argument for unknown names.
std::unique_ptr<LowDegreeStrategy> make_low_degree_strategy(const std::string& name);
std::vector<std::string> low_degree_strategy_names();

NoCdSchedule make_schedule(const NoCdConfig& config, const LowDegreeStrategy& strategy);

/// One node's competition for Luby phase `phase`, starting at ctx.now().
/// Updates the status to win, lose or commit as it goes and returns at
/// phase start + T_C.
Task<> competition(NodeContext& ctx, const NoCdConfig& config, const NoCdSchedule& schedule,
                   std::uint64_t phase);

/// The energy-efficient MIS protocol for the no-CD channel.
class NoCdMisProtocol final : public Protocol {
 public:
  explicit NoCdMisProtocol(NoCdConfig config);

  const NoCdConfig& config() const noexcept { return config_; }
  const NoCdSchedule& schedule() const noexcept { return schedule_; }

  std::string name() const override { return "nocd"; }
  ChannelModel channel() const override { return ChannelModel::kNoCd; }
  Round phase_length() const override { return schedule_.T_L; }
  Round round_budget() const override { return schedule_.phases * schedule_.T_L; }
  bool stop_when_all_decided() const override { return config_.mode == NoCdMode::kExperiment; }
  nlohmann::json config_json() const override;
  Task<> run_node(NodeContext& ctx) const override;

 private:
  NoCdConfig config_;
  std::unique_ptr<LowDegreeStrategy> strategy_;
  NoCdSchedule schedule_;
};

/// A CD round carried out by a K-repeated traditional backoff: in every
/// iteration a sender transmits in rounds 1..min(x, window) with
/// x ~ Geometric(1/2) and listens in the rest; receivers listen throughout.
struct TraditionalRound {
  BackoffParams params;

  Round span() const noexcept { return params.span(); }
  Task<> send(NodeContext& ctx) const;
  Task<bool> receive(NodeContext& ctx) const;
};

/// The CD MIS protocol run over the no-CD channel through traditional
/// backoffs. Energy baseline only.
class NaiveBaselineProtocol final : public Protocol {
 public:
  explicit NaiveBaselineProtocol(NoCdConfig config);

  const NoCdConfig& config() const noexcept { return config_; }

  std::string name() const override { return "nocd-naive"; }
  ChannelModel channel() const override { return ChannelModel::kNoCd; }
  Round phase_length() const override;
  Round round_budget() const override;
  nlohmann::json config_json() const override;
  Task<> run_node(NodeContext& ctx) const override;

  std::uint64_t phase_count() const noexcept;
  std::uint64_t rank_bits() const noexcept;
  BackoffParams round_params() const;

 private:
  NoCdConfig config_;
};

}  // namespace radiomis
