#include <cmath>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include "radiomis/graph.hpp"
#include "radiomis/radio.hpp"
#include "radiomis/rng.hpp"

namespace radiomis {
namespace {

constexpr ChannelModel kModels[] = {ChannelModel::kCd, ChannelModel::kNoCd, ChannelModel::kBeep};

// Listener 0 in a star whose leaves transmit.
Observation star_listener(ChannelModel model, std::size_t transmitters) {
  const Graph g = generate_star(4);
  std::vector<Action> actions(4, Action::kSleep);
  actions[0] = Action::kListen;
  for (std::size_t i = 1; i <= transmitters; ++i) actions[i] = Action::kTransmit;
  return resolve_round(g, actions, model)[0];
}

TEST(ResolveRound, SemanticsTable) {
  using enum Observation;
  EXPECT_EQ(star_listener(ChannelModel::kCd, 0), kSilence);
  EXPECT_EQ(star_listener(ChannelModel::kCd, 1), kMessage);
  EXPECT_EQ(star_listener(ChannelModel::kCd, 2), kCollision);
  EXPECT_EQ(star_listener(ChannelModel::kCd, 3), kCollision);
  EXPECT_EQ(star_listener(ChannelModel::kNoCd, 0), kSilence);
  EXPECT_EQ(star_listener(ChannelModel::kNoCd, 1), kMessage);
  EXPECT_EQ(star_listener(ChannelModel::kNoCd, 2), kSilence);
  EXPECT_EQ(star_listener(ChannelModel::kNoCd, 3), kSilence);
  EXPECT_EQ(star_listener(ChannelModel::kBeep, 0), kSilence);
  EXPECT_EQ(star_listener(ChannelModel::kBeep, 1), kBeepHeard);
  EXPECT_EQ(star_listener(ChannelModel::kBeep, 3), kBeepHeard);
}

TEST(ResolveRound, TransmittersAndSleepersObserveNothing) {
  const Graph g = generate_path(3);
  for (ChannelModel m : kModels) {
    const std::vector<Action> actions{Action::kTransmit, Action::kTransmit, Action::kSleep};
    const auto obs = resolve_round(g, actions, m);
    EXPECT_EQ(obs[0], Observation::kNothing);
    EXPECT_EQ(obs[1], Observation::kNothing);
    EXPECT_EQ(obs[2], Observation::kNothing);
  }
}

TEST(ResolveRound, RejectsWrongActionCount) {
  const Graph g = generate_path(3);
  const std::vector<Action> actions(2, Action::kListen);
  EXPECT_THROW(resolve_round(g, actions, ChannelModel::kCd), std::invalid_argument);
}

// Independent reference: counts transmitting neighbors from the edge list.
std::vector<Observation> reference_round(const Graph& g, const std::vector<Action>& actions,
                                         ChannelModel model) {
  std::vector<int> t(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (actions[e.u] == Action::kTransmit) ++t[e.v];
    if (actions[e.v] == Action::kTransmit) ++t[e.u];
  }
  std::vector<Observation> out(g.node_count(), Observation::kNothing);
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (actions[v] != Action::kListen) continue;
    switch (model) {
      case ChannelModel::kCd:
        out[v] = t[v] == 0 ? Observation::kSilence
                 : t[v] == 1 ? Observation::kMessage
                             : Observation::kCollision;
        break;
      case ChannelModel::kNoCd:
        out[v] = t[v] == 1 ? Observation::kMessage : Observation::kSilence;
        break;
      case ChannelModel::kBeep:
        out[v] = t[v] >= 1 ? Observation::kBeepHeard : Observation::kSilence;
        break;
    }
  }
  return out;
}

TEST(ResolveRound, MatchesReferenceOnRandomRounds) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    NodeRng rng(seed, 99);
    const std::size_t n = 1 + rng.next() % 30;
    const Graph g = generate_gnp(n, rng.uniform01(), seed);
    std::vector<Action> actions(n);
    for (auto& a : actions) a = static_cast<Action>(rng.next() % 3);
    for (ChannelModel m : kModels) {
      ASSERT_EQ(resolve_round(g, actions, m), reference_round(g, actions, m)) << "seed " << seed;
    }
  }
}

TEST(RoundResolver, MatchesDenseResolverAcrossRounds) {
  const Graph g = generate_gnp(40, 0.2, 5);
  RoundResolver resolver(g);
  NodeRng rng(5, 0);
  std::vector<Observation> sparse;
  for (int round = 0; round < 500; ++round) {
    std::vector<Action> actions(g.node_count());
    std::vector<std::pair<NodeId, Action>> awake;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      actions[v] = static_cast<Action>(rng.next() % 3);
      if (actions[v] != Action::kSleep) awake.emplace_back(v, actions[v]);
    }
    for (ChannelModel m : kModels) {
      const auto dense = reference_round(g, actions, m);
      resolver.resolve(awake, m, sparse);
      ASSERT_EQ(sparse.size(), awake.size());
      for (std::size_t i = 0; i < awake.size(); ++i) {
        ASSERT_EQ(sparse[i], dense[awake[i].first]) << "round " << round << " node " << i;
      }
    }
  }
}

TEST(ListenerObservation, CollisionAndBeepOnlyInTheirModels) {
  for (std::size_t t = 0; t < 10; ++t) {
    EXPECT_NE(listener_observation(ChannelModel::kNoCd, t), Observation::kCollision);
    EXPECT_NE(listener_observation(ChannelModel::kNoCd, t), Observation::kBeepHeard);
    EXPECT_NE(listener_observation(ChannelModel::kCd, t), Observation::kBeepHeard);
    EXPECT_NE(listener_observation(ChannelModel::kBeep, t), Observation::kCollision);
  }
}

TEST(Names, RoundTrip) {
  for (ChannelModel m : kModels) EXPECT_EQ(parse_channel(to_string(m)), m);
  for (Action a : {Action::kSleep, Action::kTransmit, Action::kListen}) {
    EXPECT_EQ(parse_action(to_string(a)), a);
  }
  for (int o = 0; o <= int(Observation::kBeepHeard); ++o) {
    EXPECT_EQ(parse_observation(to_string(Observation(o))), Observation(o));
  }
  for (int s = 0; s <= int(NodeStatus::kOutMis); ++s) {
    EXPECT_EQ(parse_status(to_string(NodeStatus(s))), NodeStatus(s));
  }
  EXPECT_FALSE(parse_channel("radio").has_value());
}

TEST(Rng, SameCoordinatesSameBits) {
  EXPECT_EQ(rng_for(1, 2, 3), rng_for(1, 2, 3));
  NodeRng a(9, 4), b(9, 4);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next(), b.next());
  NodeRng c(9, 4);
  for (std::uint64_t i = 0; i < 100; ++i) ASSERT_EQ(c.next(), rng_for(9, 4, i));
}

TEST(Rng, DistinctNodesHaveDistinctFirstWords) {
  // 10^6 node pairs, each compared on its first 64-bit word; under
  // independence a single collision has probability about 2^-44.
  std::size_t collisions = 0;
  for (std::uint64_t v = 0; v < 1'000'000; ++v) {
    if (rng_for(7, 2 * v, 0) == rng_for(7, 2 * v + 1, 0)) ++collisions;
  }
  EXPECT_EQ(collisions, 0u);

  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t v = 0; v < 200'000; ++v) seen.insert(rng_for(11, v, 0));
  EXPECT_EQ(seen.size(), 200'000u);
}

TEST(Rng, FairBitFrequencyWithinFiveSigma) {
  NodeRng rng(123, 0);
  const int draws = 1'000'000;
  int ones = 0;
  for (int i = 0; i < draws; ++i) ones += rng.fair_bit() ? 1 : 0;
  const double sigma = std::sqrt(draws * 0.25);
  EXPECT_NEAR(ones, draws / 2.0, 5 * sigma);
}

TEST(Rng, GeometricTailMatchesHalfPowers) {
  NodeRng rng(321, 0);
  const int draws = 400'000;
  std::vector<int> counts(8, 0);
  for (int i = 0; i < draws; ++i) {
    const auto x = rng.geometric_half();
    ASSERT_GE(x, 1u);
    if (x < counts.size()) ++counts[x];
  }
  for (std::size_t x = 1; x < counts.size(); ++x) {
    const double p = std::ldexp(1.0, -int(x));
    EXPECT_NEAR(counts[x] / double(draws), p, 5 * std::sqrt(p * (1 - p) / draws)) << x;
  }
}

TEST(Rng, SeedsGiveDifferentStreams) {
  EXPECT_NE(rng_for(0, 0, 0), rng_for(1, 0, 0));
  EXPECT_NE(stream_key(0, 1), stream_key(1, 0));
}

}  // namespace
}  // namespace radiomis
