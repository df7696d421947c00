#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "radiomis/engine.hpp"
#include "radiomis/task.hpp"

namespace radiomis {

/// Backoff window for degree bound x: 1 for x <= 1, else max(2, ceil(log2 x)).
/// A one-round window with two senders always collides, so two senders
/// force at least two rounds.
constexpr std::uint64_t log2_window(std::uint64_t x) noexcept {
  if (x <= 1) return 1;
  const auto c = static_cast<std::uint64_t>(std::bit_width(x - 1));
  return c < 2 ? 2 : c;
}

/// max(1, ceil(factor * log2 n)).
inline std::uint64_t ceil_scaled_log2(double factor, std::uint64_t n) noexcept {
  const double raw = factor * std::log2(static_cast<double>(n == 0 ? 1 : n));
  // Absorb rounding noise so exact powers of two stay exact.
  const auto c = static_cast<std::uint64_t>(std::ceil(raw - 1e-9));
  return c == 0 ? 1 : c;
}

/// Arguments of the k-repeated energy-efficient backoffs.
struct BackoffParams {
  std::uint64_t k = 1;
  std::uint64_t delta = 1;      // global degree bound, fixes the window
  std::uint64_t delta_est = 1;  // receiver's degree estimate, fixes its listen window

  /// Throws std::invalid_argument unless k >= 1 and 1 <= delta_est <= delta.
  static BackoffParams make(std::uint64_t k, std::uint64_t delta, std::uint64_t delta_est);
  static BackoffParams make(std::uint64_t k, std::uint64_t delta) { return make(k, delta, delta); }

  /// Rounds per iteration: log2_window(delta).
  Round window() const noexcept { return log2_window(delta); }
  /// Rounds a receiver listens per iteration: log2_window(delta_est).
  Round listen_window() const noexcept { return log2_window(delta_est); }
  /// T_B(k): rounds occupied by either procedure.
  Round span() const noexcept { return k * window(); }
};

/// Sender side. Each iteration transmits once, in round min(x, window) with
/// x ~ Geometric(1/2), and sleeps otherwise. Awake exactly k rounds; always
/// returns at start + span().
Task<> snd_ebackoff(NodeContext& ctx, BackoffParams params);

/// Receiver side. Listens in the first listen_window() rounds of each
/// iteration until a message is heard, then sleeps for the rest of the whole
/// span. Returns whether a message was heard; always returns at start + span().
Task<bool> rec_ebackoff(NodeContext& ctx, BackoffParams params);

/// Pooled outcome of independent trials in which one receiver and `senders`
/// neighboring senders start the two procedures in the same round.
struct BackoffTrialStats {
  std::size_t trials = 0;
  std::size_t heard = 0;
  std::uint64_t min_sender_energy = 0;
  std::uint64_t max_sender_energy = 0;
  std::uint64_t min_receiver_energy = 0;
  std::uint64_t max_receiver_energy = 0;
  /// Every call returned exactly span() rounds after it started.
  bool spans_exact = true;

  double heard_rate() const noexcept { return trials == 0 ? 0.0 : double(heard) / double(trials); }
};

/// Runs the trials as disjoint stars packed into a few engine runs.
BackoffTrialStats run_backoff_trials(BackoffParams params, std::size_t senders,
                                     std::size_t trials, std::uint64_t seed);

}  // namespace radiomis
