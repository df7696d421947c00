#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "radiomis/backoff.hpp"

namespace radiomis {
namespace {

// Exact P(heard) in one iteration: d senders each pick slot x with
// P(x) = 2^-x for x < w and 2^-(w-1) for x = w; the receiver listens in
// slots 1..w_est and hears iff some such slot holds exactly one sender.
// Dynamic program over slots on (senders left, heard so far).
double exact_single_iteration(std::uint64_t w, std::uint64_t w_est, std::size_t d) {
  std::vector<double> q(w + 1);
  for (std::uint64_t x = 1; x < w; ++x) q[x] = std::ldexp(1.0, -int(x));
  q[w] = std::ldexp(1.0, -int(w - 1));

  // p[r][h]: r senders not yet placed, h = heard.
  std::vector<std::array<double, 2>> p(d + 1, {0.0, 0.0});
  p[d][0] = 1.0;
  double mass_left = 1.0;
  for (std::uint64_t x = 1; x <= w; ++x) {
    const double s = x == w ? 1.0 : q[x] / mass_left;
    std::vector<std::array<double, 2>> next(d + 1, {0.0, 0.0});
    for (std::size_t r = 0; r <= d; ++r) {
      for (int h = 0; h < 2; ++h) {
        if (p[r][h] == 0.0) continue;
        double binom = 1.0;  // C(r, m)
        for (std::size_t m = 0; m <= r; ++m) {
          const double pm = binom * std::pow(s, double(m)) * std::pow(1 - s, double(r - m));
          const int heard = h || (m == 1 && x <= w_est);
          next[r - m][heard] += p[r][h] * pm;
          binom = binom * double(r - m) / double(m + 1);
        }
      }
    }
    p = std::move(next);
    mass_left -= q[x];
  }
  return p[0][1];
}

double exact_heard(BackoffParams params, std::size_t d) {
  const double one = exact_single_iteration(params.window(), params.listen_window(), d);
  return 1.0 - std::pow(1.0 - one, double(params.k));
}

TEST(BackoffParams, WindowsAndSpan) {
  EXPECT_EQ(BackoffParams::make(3, 8).window(), 3u);
  EXPECT_EQ(BackoffParams::make(3, 8).span(), 9u);
  EXPECT_EQ(BackoffParams::make(1, 2).span(), 2u);
  EXPECT_EQ(BackoffParams::make(3, 4).span(), 6u);
  EXPECT_EQ(BackoffParams::make(1, 1).span(), 1u);
  EXPECT_EQ(BackoffParams::make(2, 64, 8).listen_window(), 3u);
  EXPECT_EQ(BackoffParams::make(2, 9).window(), 4u);
  EXPECT_EQ(log2_window(0), 1u);
  EXPECT_EQ(log2_window(1), 1u);
  EXPECT_EQ(log2_window(2), 2u);
  EXPECT_EQ(log2_window(3), 2u);
  EXPECT_EQ(log2_window(5), 3u);
  EXPECT_EQ(log2_window(1024), 10u);
  EXPECT_EQ(log2_window(1025), 11u);
}

TEST(BackoffParams, RejectsBadArguments) {
  EXPECT_THROW(BackoffParams::make(0, 8), std::invalid_argument);
  EXPECT_THROW(BackoffParams::make(1, 8, 0), std::invalid_argument);
  EXPECT_THROW(BackoffParams::make(1, 8, 9), std::invalid_argument);
}

TEST(CeilScaledLog2, ExactAtPowersOfTwo) {
  EXPECT_EQ(ceil_scaled_log2(4, 256), 32u);
  EXPECT_EQ(ceil_scaled_log2(8, 64), 48u);
  EXPECT_EQ(ceil_scaled_log2(4, 1), 1u);
  EXPECT_EQ(ceil_scaled_log2(1, 3), 2u);
}

TEST(SndEBackoff, ThreeIterationsOverNineRounds) {
  const auto s = run_backoff_trials(BackoffParams::make(3, 8), 1, 2000, 1);
  EXPECT_TRUE(s.spans_exact);
  EXPECT_EQ(s.min_sender_energy, 3u);
  EXPECT_EQ(s.max_sender_energy, 3u);
}

TEST(SndEBackoff, UnitWindowTransmitsInItsOnlyRound) {
  const auto s = run_backoff_trials(BackoffParams::make(1, 1), 1, 2000, 2);
  EXPECT_TRUE(s.spans_exact);
  EXPECT_EQ(s.min_sender_energy, 1u);
  EXPECT_EQ(s.max_receiver_energy, 1u);
  EXPECT_EQ(s.heard, s.trials);
}

// Isolated senders record which slot of a single window they used.
class SlotProbe final : public Protocol {
 public:
  explicit SlotProbe(BackoffParams params) : params_(params) {}
  std::string name() const override { return "slot-probe"; }
  ChannelModel channel() const override { return ChannelModel::kNoCd; }
  Round phase_length() const override { return params_.span(); }
  Round round_budget() const override { return params_.span(); }
  nlohmann::json config_json() const override { return nlohmann::json::object(); }
  Task<> run_node(NodeContext& ctx) const override {
    co_await snd_ebackoff(ctx, params_);
    ctx.terminate();
  }

 private:
  BackoffParams params_;
};

TEST(SndEBackoff, LastSlotAbsorbsTheGeometricTail) {
  const std::size_t n = 100'000;
  const SlotProbe probe(BackoffParams::make(1, 8));
  RunOptions o;
  o.seed = 3;
  const Trace t = run_protocol(Graph(n, {}), probe, o);
  ASSERT_EQ(t.events.size(), n);
  std::vector<std::size_t> slot(3, 0);
  for (const AwakeEvent& e : t.events) {
    ASSERT_EQ(e.action, Action::kTransmit);
    ASSERT_LT(e.round, 3u);
    ++slot[e.round];
  }
  EXPECT_NEAR(slot[2] / double(n), 0.25, 0.01);
  EXPECT_NEAR(slot[0] / double(n), 0.5, 0.01);
}

TEST(RecEBackoff, LoneSenderIsAlwaysHeard) {
  for (std::uint64_t delta : {1u, 2u, 8u, 64u, 1000u}) {
    const auto params = BackoffParams::make(1, delta);
    EXPECT_DOUBLE_EQ(exact_heard(params, 1), 1.0) << delta;
    const auto s = run_backoff_trials(params, 1, 20'000, delta);
    EXPECT_EQ(s.heard, s.trials) << delta;
  }
}

TEST(RecEBackoff, NoSendersMeansSilenceAndFullListening) {
  const auto params = BackoffParams::make(3, 64, 8);
  const auto s = run_backoff_trials(params, 0, 500, 4);
  EXPECT_EQ(s.heard, 0u);
  EXPECT_EQ(s.min_receiver_energy, 9u);
  EXPECT_EQ(s.max_receiver_energy, 9u);
  EXPECT_TRUE(s.spans_exact);
}

TEST(RecEBackoff, FullEstimateOfSendersHeardAtLeastOneEighth) {
  for (auto [delta, est] : {std::pair{8u, 8u}, {64u, 64u}, {64u, 8u}, {64u, 6u}}) {
    const auto params = BackoffParams::make(1, delta, est);
    EXPECT_GE(exact_heard(params, est), 1.0 / 8) << delta << "/" << est;
    const auto s = run_backoff_trials(params, est, 100'000, 5);
    EXPECT_GE(s.heard_rate(), 0.12) << delta << "/" << est;
  }
}

TEST(RecEBackoff, MonteCarloMatchesExactProbability) {
  for (std::uint64_t k : {1u, 3u}) {
    for (std::uint64_t delta : {8u, 64u}) {
      for (std::size_t d : {1u, 2u, 3u, 6u, 8u, 64u}) {
        if (d > delta) continue;
        const auto params = BackoffParams::make(k, delta);
        const double p = exact_heard(params, d);
        const std::size_t trials = 20'000;
        const auto s = run_backoff_trials(params, d, trials, 100 * k + d);
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-9) / trials);
        EXPECT_NEAR(s.heard_rate(), p, 5 * sigma + 1e-9) << "k=" << k << " delta=" << delta
                                                         << " d=" << d;
      }
    }
  }
}

TEST(RecEBackoff, ExactProbabilityMeetsTheRepeatedBound) {
  for (std::uint64_t k : {1u, 2u, 3u, 5u, 10u}) {
    for (std::uint64_t delta : {2u, 3u, 4u, 5u, 8u, 16u, 64u, 1024u}) {
      for (std::size_t d = 1; d <= std::min<std::size_t>(delta, 128); ++d) {
        const auto params = BackoffParams::make(k, delta);
        EXPECT_GE(exact_heard(params, d), 1.0 - std::pow(7.0 / 8.0, double(k)) - 1e-12)
            << "k=" << k << " delta=" << delta << " d=" << d;
      }
    }
  }
}

// Two senders in a one-round window would always collide; the two-round
// floor keeps a constant chance of exactly one transmission.
TEST(RecEBackoff, TwoSendersUnderDegreeBoundTwo) {
  for (std::uint64_t k : {1u, 10u}) {
    const auto params = BackoffParams::make(k, 2);
    EXPECT_DOUBLE_EQ(exact_single_iteration(params.window(), params.listen_window(), 2), 0.5);
    EXPECT_EQ(exact_single_iteration(1, 1, 2), 0.0);
    const double p = exact_heard(params, 2);
    const auto s = run_backoff_trials(params, 2, 20'000, k);
    EXPECT_NEAR(s.heard_rate(), p, 5 * std::sqrt(std::max(p * (1 - p), 1e-9) / 20'000) + 1e-9);
  }
}

TEST(Backoff, EnergyAndSpanInvariants) {
  for (std::uint64_t k : {1u, 3u, 10u}) {
    for (auto [delta, est] : {std::pair{8u, 8u}, {64u, 64u}, {64u, 4u}, {1u, 1u}}) {
      const auto params = BackoffParams::make(k, delta, est);
      const auto s = run_backoff_trials(params, std::min<std::size_t>(delta, 5), 3000, k);
      EXPECT_TRUE(s.spans_exact);
      EXPECT_EQ(s.min_sender_energy, k);
      EXPECT_EQ(s.max_sender_energy, k);
      EXPECT_LE(s.max_receiver_energy, k * params.listen_window());
    }
  }
}

// Node 0 receives; every other node transmits but none is its neighbor.
class FarSenders final : public Protocol {
 public:
  explicit FarSenders(BackoffParams params) : params_(params) {}
  std::string name() const override { return "far-senders"; }
  ChannelModel channel() const override { return ChannelModel::kNoCd; }
  Round phase_length() const override { return params_.span(); }
  Round round_budget() const override { return params_.span(); }
  nlohmann::json config_json() const override { return nlohmann::json::object(); }
  Task<> run_node(NodeContext& ctx) const override {
    if (ctx.id() == 0) {
      if (co_await rec_ebackoff(ctx, params_)) ctx.set_status(NodeStatus::kInMis);
    } else {
      co_await snd_ebackoff(ctx, params_);
    }
    ctx.terminate();
  }

 private:
  BackoffParams params_;
};

TEST(RecEBackoff, NonNeighborsAreNeverHeard) {
  // Node 0 is isolated; nodes 1..11 form a path of senders.
  std::vector<Edge> edges;
  for (NodeId v = 1; v + 1 < 12; ++v) edges.push_back({v, v + 1});
  const Graph g(12, edges);
  const FarSenders p(BackoffParams::make(5, 16));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RunOptions o;
    o.seed = seed;
    const Trace t = run_protocol(g, p, o);
    ASSERT_EQ(t.final_status[0], NodeStatus::kUndecided) << seed;
    ASSERT_EQ(t.energy[0], 5u * 4u);
  }
}

}  // namespace
}  // namespace radiomis
