#pragma once

#include <coroutine>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "radiomis/graph.hpp"
#include "radiomis/radio.hpp"
#include "radiomis/rng.hpp"
#include "radiomis/task.hpp"
#include "radiomis/trace.hpp"

namespace radiomis {

/// Raised when a node program breaks the engine contract, e.g. acts after
/// terminating or throws.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct RunState;
}

/// A node's handle on the radio. Node programs are coroutines that await
/// transmit(), listen() and sleep_until(); each awaited action occupies
/// exactly one round, sleeping is free.
class NodeContext {
 public:
  NodeId id() const noexcept { return id_; }

  /// Round in which the node's next action would take place.
  Round now() const noexcept { return now_; }

  NodeRng& rng() noexcept { return rng_; }

  NodeStatus status() const noexcept { return status_; }
  void set_status(NodeStatus status);

  /// Marks the node as finished. Any later action is a ProtocolError.
  void terminate() noexcept { terminated_ = true; }
  bool terminated() const noexcept { return terminated_; }

  void note_rank(std::uint32_t phase, std::string bits);

  class ActionAwaiter {
   public:
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) noexcept {
      ctx_->request_ = action_;
      ctx_->resume_ = h;
    }
    Observation await_resume() const noexcept { return ctx_->observation_; }

   private:
    friend class NodeContext;
    ActionAwaiter(NodeContext* ctx, Action action) : ctx_(ctx), action_(action) {}
    NodeContext* ctx_;
    Action action_;
  };

  class SleepAwaiter {
   public:
    bool await_ready() const noexcept { return wake_ <= ctx_->now_; }
    void await_suspend(std::coroutine_handle<> h) noexcept {
      ctx_->request_ = Action::kSleep;
      ctx_->wake_ = wake_;
      ctx_->resume_ = h;
    }
    void await_resume() const noexcept {}

   private:
    friend class NodeContext;
    SleepAwaiter(NodeContext* ctx, Round wake) : ctx_(ctx), wake_(wake) {}
    NodeContext* ctx_;
    Round wake_;
  };

  /// Transmit "1" in round now(); resumes at now()+1.
  ActionAwaiter transmit() { return act(Action::kTransmit); }
  /// Listen in round now(); resumes at now()+1 with the observation.
  ActionAwaiter listen() { return act(Action::kListen); }
  /// Sleep through rounds [now(), round). No-op if round <= now().
  SleepAwaiter sleep_until(Round round) noexcept { return SleepAwaiter(this, round); }

 private:
  friend struct detail::RunState;

  ActionAwaiter act(Action action) {
    if (terminated_) {
      throw ProtocolError("node " + std::to_string(id_) + " acted after terminating");
    }
    return ActionAwaiter(this, action);
  }

  detail::RunState* run_ = nullptr;
  NodeId id_ = 0;
  Round now_ = 0;
  NodeRng rng_;
  NodeStatus status_ = NodeStatus::kUndecided;
  bool terminated_ = false;

  Action request_ = Action::kSleep;
  Round wake_ = 0;
  Observation observation_ = Observation::kNothing;
  std::coroutine_handle<> resume_;
};

/// A distributed protocol: the same program runs on every node.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string name() const = 0;
  virtual ChannelModel channel() const = 0;
  virtual Round phase_length() const = 0;
  virtual Round round_budget() const = 0;

  /// Lets the simulator end the run once every node is decided, even though
  /// the nodes themselves cannot detect it.
  virtual bool stop_when_all_decided() const { return false; }

  /// Output of a node forced asleep by the energy cap. Undecided nodes join.
  virtual NodeStatus capped_decision(NodeStatus current) const {
    return is_decided(current) ? current : NodeStatus::kInMis;
  }

  /// Effective configuration, embedded in traces.
  virtual nlohmann::json config_json() const = 0;

  virtual Task<> run_node(NodeContext& ctx) const = 0;
};

struct RunOptions {
  std::uint64_t seed = 0;
  /// Awake-round budget per node; a node that has spent it is forced asleep.
  std::optional<std::uint64_t> energy_cap;
  /// When false only transitions, ranks and the energy ledger are kept.
  bool record_events = true;
  std::string graph_ref;
};

/// Runs `protocol` on every node of `g` under a global round clock until all
/// nodes terminate, the protocol's round budget is exhausted, or (if the
/// protocol asks for it) all nodes are decided. Rounds in which every node
/// sleeps are skipped. Deterministic in (g, protocol, options).
Trace run_protocol(const Graph& g, const Protocol& protocol, const RunOptions& options);

}  // namespace radiomis
