#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "radiomis/engine.hpp"
#include "radiomis/mis_cd.hpp"
#include "radiomis/trace.hpp"

namespace radiomis {
namespace {

// Wraps a lambda node program into a Protocol.
class LambdaProtocol final : public Protocol {
 public:
  using Body = std::function<Task<>(NodeContext&)>;

  LambdaProtocol(Body body, Round budget, ChannelModel channel = ChannelModel::kCd)
      : body_(std::move(body)), budget_(budget), channel_(channel) {}

  std::string name() const override { return "test"; }
  ChannelModel channel() const override { return channel_; }
  Round phase_length() const override { return 4; }
  Round round_budget() const override { return budget_; }
  nlohmann::json config_json() const override { return {{"budget", budget_}}; }
  Task<> run_node(NodeContext& ctx) const override { return body_(ctx); }

 private:
  Body body_;
  Round budget_;
  ChannelModel channel_;
};

Task<> sleep_forever(NodeContext& ctx) {
  co_await ctx.sleep_until(1000);
  ctx.terminate();
}

// Transmits with probability 1/2 each round, listens otherwise, for 20 rounds.
Task<> chatter(NodeContext& ctx) {
  for (int i = 0; i < 20; ++i) {
    if (ctx.rng().fair_bit()) {
      co_await ctx.transmit();
    } else if (co_await ctx.listen() == Observation::kMessage) {
      co_await ctx.sleep_until(ctx.now() + 3);
    }
  }
  ctx.set_status(NodeStatus::kOutMis);
  ctx.terminate();
}

RunOptions seeded(std::uint64_t seed) {
  RunOptions o;
  o.seed = seed;
  return o;
}

TEST(Engine, AllSleepSpendsNoEnergy) {
  const LambdaProtocol p(sleep_forever, 2000);
  for (const Graph& g : {generate_clique(6), generate_path(10), Graph(1, {})}) {
    const Trace t = run_protocol(g, p, seeded(1));
    for (std::uint64_t e : t.energy) EXPECT_EQ(e, 0u);
    EXPECT_TRUE(t.events.empty());
    EXPECT_EQ(t.stop, StopReason::kAllTerminated);
    EXPECT_EQ(t.round_count, 1000u);
  }
}

TEST(Engine, SameInputsSameTrace) {
  const LambdaProtocol p(chatter, 1000);
  const Graph g = generate_gnp(30, 0.3, 2);
  const Trace a = run_protocol(g, p, seeded(8));
  const Trace b = run_protocol(g, p, seeded(8));
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_trace(a), serialize_trace(b));
  EXPECT_NE(serialize_trace(a), serialize_trace(run_protocol(g, p, seeded(9))));
}

TEST(Engine, EnergyEqualsAwakeEventCount) {
  const LambdaProtocol p(chatter, 1000);
  const Graph g = generate_gnp(25, 0.4, 3);
  const Trace t = run_protocol(g, p, seeded(4));
  std::vector<std::uint64_t> counted(g.node_count(), 0);
  for (const AwakeEvent& e : t.events) {
    ASSERT_NE(e.action, Action::kSleep);
    ++counted[e.node];
  }
  EXPECT_EQ(counted, t.energy);
}

TEST(Engine, ObservationsReplayUnderEachChannel) {
  const Graph g = generate_gnp(25, 0.3, 6);
  for (ChannelModel m : {ChannelModel::kCd, ChannelModel::kNoCd, ChannelModel::kBeep}) {
    const LambdaProtocol p(chatter, 1000, m);
    const Trace t = run_protocol(g, p, seeded(6));
    std::size_t i = 0;
    while (i < t.events.size()) {
      const Round r = t.events[i].round;
      std::vector<Action> actions(g.node_count(), Action::kSleep);
      std::size_t j = i;
      for (; j < t.events.size() && t.events[j].round == r; ++j) {
        actions[t.events[j].node] = t.events[j].action;
      }
      const auto expected = resolve_round(g, actions, m);
      for (std::size_t k = i; k < j; ++k) {
        ASSERT_EQ(t.events[k].observation, expected[t.events[k].node]) << "round " << r;
      }
      i = j;
    }
  }
}

TEST(Engine, EventsSortedByRoundThenNode) {
  const LambdaProtocol p(chatter, 1000);
  const Trace t = run_protocol(generate_clique(12), p, seeded(0));
  for (std::size_t i = 1; i < t.events.size(); ++i) {
    const auto& a = t.events[i - 1];
    const auto& b = t.events[i];
    ASSERT_TRUE(a.round < b.round || (a.round == b.round && a.node < b.node));
  }
}

TEST(Engine, SkipsIdleStretchesAndKeepsTheClock) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        co_await ctx.sleep_until(1'000'000'000);
        EXPECT_EQ(ctx.now(), 1'000'000'000u);
        co_await ctx.transmit();
        EXPECT_EQ(ctx.now(), 1'000'000'001u);
        ctx.terminate();
      },
      2'000'000'000);
  const Trace t = run_protocol(generate_path(2), p, seeded(0));
  ASSERT_EQ(t.events.size(), 2u);
  EXPECT_EQ(t.events[0].round, 1'000'000'000u);
  EXPECT_EQ(t.round_count, 1'000'000'001u);
}

TEST(Engine, ActingAfterTerminateIsAnError) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        ctx.terminate();
        co_await ctx.listen();
      },
      10);
  EXPECT_THROW(run_protocol(generate_path(2), p, seeded(0)), ProtocolError);
}

TEST(Engine, NodeExceptionsBecomeProtocolErrors) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        co_await ctx.listen();
        throw std::runtime_error("boom");
      },
      10);
  EXPECT_THROW(run_protocol(generate_path(2), p, seeded(0)), ProtocolError);
}

TEST(Engine, StopsAtTheRoundBudget) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        for (;;) co_await ctx.listen();
      },
      7);
  const Trace t = run_protocol(generate_path(3), p, seeded(0));
  EXPECT_EQ(t.stop, StopReason::kBudget);
  EXPECT_EQ(t.round_count, 7u);
  for (std::uint64_t e : t.energy) EXPECT_EQ(e, 7u);
  for (std::uint8_t done : t.terminated) EXPECT_EQ(done, 0);
}

TEST(Engine, CapForcesSleepAndDefaultsToJoining) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        for (int i = 0; i < 10; ++i) co_await ctx.listen();
        ctx.set_status(NodeStatus::kOutMis);
        ctx.terminate();
      },
      100);
  RunOptions o = seeded(0);
  o.energy_cap = 4;
  const Trace t = run_protocol(generate_path(3), p, o);
  for (NodeId v = 0; v < 3; ++v) {
    EXPECT_EQ(t.energy[v], 4u);
    ASSERT_TRUE(t.capped_at[v].has_value());
    EXPECT_EQ(*t.capped_at[v], 4u);
    EXPECT_EQ(t.final_status[v], NodeStatus::kInMis);
  }
}

TEST(Engine, ZeroCapSilencesEveryone) {
  const LambdaProtocol p(chatter, 100);
  RunOptions o = seeded(3);
  o.energy_cap = 0;
  const Trace t = run_protocol(generate_clique(5), p, o);
  EXPECT_TRUE(t.events.empty());
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(t.capped_at[v], std::optional<Round>(0));
}

TEST(Engine, CapKeepsDecidedStatus) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        co_await ctx.listen();
        ctx.set_status(NodeStatus::kOutMis);
        co_await ctx.listen();
        ctx.terminate();
      },
      100);
  RunOptions o = seeded(0);
  o.energy_cap = 1;
  const Trace t = run_protocol(generate_path(2), p, o);
  EXPECT_EQ(t.final_status[0], NodeStatus::kOutMis);
  EXPECT_TRUE(t.capped_at[0].has_value());
}

TEST(Engine, StatusChangesCarryTheirRound) {
  const LambdaProtocol p(
      [](NodeContext& ctx) -> Task<> {
        co_await ctx.sleep_until(5);
        co_await ctx.listen();
        ctx.set_status(NodeStatus::kInMis);
        ctx.terminate();
      },
      100);
  const Trace t = run_protocol(Graph(1, {}), p, seeded(0));
  ASSERT_EQ(t.transitions.size(), 1u);
  EXPECT_EQ(t.transitions[0].round, 6u);
  EXPECT_EQ(t.phase_of_change(6), 1u);  // phase length 4: round 5 is in phase 1
  EXPECT_EQ(t.statuses_at(5)[0], NodeStatus::kUndecided);
  EXPECT_EQ(t.statuses_at(6)[0], NodeStatus::kInMis);
}

TEST(Engine, CdMisOnSingleNode) {
  for (std::uint64_t n : {2u, 64u, 1024u}) {
    CdConfig c;
    c.n = n;
    const CdMisProtocol p(c);
    const Trace t = run_protocol(Graph(1, {}), p, seeded(n));
    EXPECT_EQ(t.final_status[0], NodeStatus::kInMis);
    EXPECT_LE(t.energy[0], c.rank_length() + 1);
    ASSERT_FALSE(t.transitions.empty());
    EXPECT_EQ(t.phase_of_change(t.transitions.back().round), 0u);
  }
}

TEST(Trace, JsonRoundTrip) {
  const LambdaProtocol p(chatter, 1000);
  RunOptions o = seeded(5);
  o.graph_ref = "gnp:20:0.3";
  o.energy_cap = 12;
  const Trace t = run_protocol(generate_gnp(20, 0.3, 5), p, o);
  EXPECT_EQ(parse_trace(serialize_trace(t)), t);
}

TEST(Trace, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_trace("not json"), TraceFormatError);
  EXPECT_THROW(parse_trace("{}"), TraceFormatError);
  const LambdaProtocol p(chatter, 1000);
  auto doc = trace_to_json(run_protocol(generate_path(4), p, seeded(1)));
  doc["energy"] = nlohmann::json::array({1, 2});
  EXPECT_THROW(trace_from_json(doc), TraceFormatError);
}

}  // namespace
}  // namespace radiomis
