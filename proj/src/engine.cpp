#include "radiomis/engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace radiomis {

namespace detail {

struct RunState {
  Trace* trace = nullptr;
  std::size_t decided = 0;

  void on_status(NodeContext& ctx, NodeStatus status) {
    if (ctx.status_ == status) return;
    decided -= is_decided(ctx.status_) ? 1 : 0;
    decided += is_decided(status) ? 1 : 0;
    ctx.status_ = status;
    trace->transitions.push_back({ctx.now_, ctx.id_, status});
  }

  static void prepare(NodeContext& ctx, RunState* run, NodeId id, std::uint64_t seed) {
    ctx.run_ = run;
    ctx.id_ = id;
    ctx.rng_ = NodeRng(seed, id);
  }
  static Action request(const NodeContext& ctx) { return ctx.request_; }
  static Round wake(const NodeContext& ctx) { return ctx.wake_; }
  static Round now(const NodeContext& ctx) { return ctx.now_; }
  static void set_now(NodeContext& ctx, Round r) { ctx.now_ = r; }
  static void deliver(NodeContext& ctx, Observation o, Round next) {
    ctx.observation_ = o;
    ctx.now_ = next;
  }
  static std::coroutine_handle<> resume_point(const NodeContext& ctx) { return ctx.resume_; }
  static void clear_resume_point(NodeContext& ctx) { ctx.resume_ = {}; }
};

}  // namespace detail

void NodeContext::set_status(NodeStatus status) { run_->on_status(*this, status); }

void NodeContext::note_rank(std::uint32_t phase, std::string bits) {
  run_->trace->ranks.push_back({phase, id_, std::move(bits)});
}

namespace {

constexpr Round kNever = std::numeric_limits<Round>::max();

using detail::RunState;

enum class NodeState : std::uint8_t { kPendingAction, kSleeping, kFinished };

}  // namespace

Trace run_protocol(const Graph& g, const Protocol& protocol, const RunOptions& options) {
  const std::size_t n = g.node_count();
  const Round budget = protocol.round_budget();

  Trace trace;
  trace.protocol = protocol.name();
  trace.channel = protocol.channel();
  trace.seed = options.seed;
  trace.config = protocol.config_json();
  trace.graph_ref = options.graph_ref;
  trace.graph = g;
  trace.phase_length = std::max<Round>(1, protocol.phase_length());
  trace.round_budget = budget;
  trace.energy_cap = options.energy_cap;
  trace.events_recorded = options.record_events;
  trace.terminated.assign(n, 0);
  trace.capped_at.assign(n, std::nullopt);
  trace.energy.assign(n, 0);

  RunState run;
  run.trace = &trace;

  std::vector<NodeContext> ctx(n);
  std::vector<Task<>> tasks(n);
  std::vector<NodeState> state(n, NodeState::kSleeping);
  std::size_t active = n;
  Round clock_end = 0;

  using Entry = std::pair<Round, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> sleepers;
  std::vector<NodeId> pending;
  std::vector<NodeId> next_pending;

  auto finish = [&](NodeId v) {
    state[v] = NodeState::kFinished;
    --active;
    clock_end = std::max(clock_end, RunState::now(ctx[v]));
    try {
      tasks[v].result();
    } catch (const ProtocolError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProtocolError("node " + std::to_string(v) + " failed: " + e.what());
    }
    tasks[v].reset();
  };

  // Routes a node that just suspended (or finished) at clock value `now`.
  auto route = [&](NodeId v, std::vector<NodeId>& same_round, std::vector<NodeId>& next_round,
                   Round now) {
    if (tasks[v].done()) {
      trace.terminated[v] = 1;
      finish(v);
      return;
    }
    if (RunState::request(ctx[v]) == Action::kSleep) {
      state[v] = NodeState::kSleeping;
      sleepers.emplace(RunState::wake(ctx[v]), v);
    } else {
      state[v] = NodeState::kPendingAction;
      (RunState::now(ctx[v]) == now ? same_round : next_round).push_back(v);
    }
  };

  auto resume = [&](NodeId v) {
    auto h = RunState::resume_point(ctx[v]);
    RunState::clear_resume_point(ctx[v]);
    if (h) {
      h.resume();
    } else {
      tasks[v].resume();
    }
  };

  for (NodeId v = 0; v < n; ++v) {
    RunState::prepare(ctx[v], &run, v, options.seed);
    tasks[v] = protocol.run_node(ctx[v]);
    resume(v);
    route(v, pending, pending, 0);
  }
  Round pending_round = 0;

  std::vector<std::pair<NodeId, Action>> awake;
  std::vector<Observation> observations;
  RoundResolver resolver(g);

  auto all_decided = [&] { return protocol.stop_when_all_decided() && run.decided == n; };

  trace.stop = StopReason::kAllTerminated;
  for (;;) {
    if (all_decided()) {
      trace.stop = StopReason::kAllDecided;
      break;
    }
    Round r = pending.empty() ? kNever : pending_round;
    if (!sleepers.empty()) r = std::min(r, sleepers.top().first);
    if (r == kNever) break;
    if (r > budget) {
      trace.stop = StopReason::kBudget;
      clock_end = budget;
      break;
    }

    while (!sleepers.empty() && sleepers.top().first == r) {
      const NodeId v = sleepers.top().second;
      sleepers.pop();
      RunState::set_now(ctx[v], r);
      resume(v);
      route(v, pending, next_pending, r);
    }
    clock_end = std::max(clock_end, r);
    if (r == budget) {
      // Wake-ups at the budget only settle bookkeeping; no action runs here.
      trace.stop = active == 0 ? StopReason::kAllTerminated : StopReason::kBudget;
      break;
    }
    if (all_decided()) {
      trace.stop = StopReason::kAllDecided;
      break;
    }
    if (pending.empty()) continue;

    std::sort(pending.begin(), pending.end());
    if (options.energy_cap) {
      const std::uint64_t cap = *options.energy_cap;
      std::erase_if(pending, [&](NodeId v) {
        if (trace.energy[v] < cap) return false;
        RunState::set_now(ctx[v], r);
        run.on_status(ctx[v], protocol.capped_decision(ctx[v].status()));
        trace.capped_at[v] = r;
        state[v] = NodeState::kFinished;
        --active;
        tasks[v].reset();
        return true;
      });
    }

    awake.clear();
    for (NodeId v : pending) awake.emplace_back(v, RunState::request(ctx[v]));
    resolver.resolve(awake, protocol.channel(), observations);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const NodeId v = pending[i];
      ++trace.energy[v];
      if (options.record_events) {
        trace.events.push_back({r, v, awake[i].second, observations[i]});
      }
    }
    clock_end = r + 1;

    next_pending.clear();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const NodeId v = pending[i];
      RunState::deliver(ctx[v], observations[i], r + 1);
      resume(v);
      route(v, next_pending, next_pending, r + 1);
    }
    std::swap(pending, next_pending);
    next_pending.clear();
    pending_round = r + 1;
  }

  for (const StatusChange& c : trace.transitions) clock_end = std::max(clock_end, c.round);
  trace.round_count = std::min(clock_end, budget);
  trace.final_status.resize(n);
  for (NodeId v = 0; v < n; ++v) trace.final_status[v] = ctx[v].status();
  // Tasks still suspended are destroyed here, before the contexts they reference.
  tasks.clear();
  return trace;
}

}  // namespace radiomis
