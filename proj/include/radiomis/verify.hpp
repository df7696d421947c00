#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "radiomis/engine.hpp"
#include "radiomis/graph.hpp"
#include "radiomis/trace.hpp"

namespace radiomis {

struct MisReport {
  bool valid = true;
  std::vector<Edge> independence_violations;  // both endpoints in-MIS
  std::vector<NodeId> coverage_violations;    // neither in-MIS nor next to one
  std::vector<NodeId> undecided_nodes;        // neither in-MIS nor out-MIS

  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument if statuses.size() != g.node_count().
MisReport check_mis(const Graph& g, std::span<const NodeStatus> statuses);

enum class ResidualDefinition : std::uint8_t {
  kCd,    // undecided nodes
  kNoCd,  // nodes whose status is not out-MIS
};

std::string_view to_string(ResidualDefinition d) noexcept;

struct PhaseRecord {
  std::uint64_t index = 0;
  std::uint64_t residual_nodes = 0;  // |V_i|
  std::uint64_t residual_edges = 0;  // |E_i|
  std::uint64_t winners = 0;         // |W_i|
  std::uint64_t committed = 0;       // |C_i|
  /// |X_i|: edges of the previous residual graph with an endpoint next to a
  /// node that is in-MIS at the end of the phase.
  std::uint64_t dominated_edges = 0;
  /// |E_i| / |E_{i-1}|, absent when |E_{i-1}| = 0.
  std::optional<double> ratio;
};

struct PhaseStats {
  ResidualDefinition definition = ResidualDefinition::kCd;
  std::uint64_t initial_nodes = 0;
  std::uint64_t initial_edges = 0;
  std::vector<PhaseRecord> phases;
};

/// Residual graphs at every phase boundary of the trace.
PhaseStats phase_stats(const Trace& trace, ResidualDefinition definition);

struct MeanSe {
  std::size_t count = 0;
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean; 0 for fewer than 2 samples
};
MeanSe mean_se(std::span<const double> values);

/// Per-phase-index decay ratios pooled over many runs.
class DecayAccumulator {
 public:
  void add(const PhaseStats& stats);
  /// Summary for every phase index that has at least one ratio.
  std::vector<MeanSe> summary() const;

 private:
  std::vector<std::vector<double>> ratios_;
};

struct EnergyStats {
  std::size_t runs = 0;
  std::size_t nodes = 0;
  std::uint64_t max = 0;          // worst node over all runs
  double mean = 0.0;              // mean node energy
  double mean_run_max = 0.0;      // mean over runs of the per-run maximum
  std::uint64_t median = 0;
  std::uint64_t p90 = 0;
  std::uint64_t p99 = 0;
  std::size_t capped_nodes = 0;
  std::map<std::uint64_t, std::size_t> histogram;  // energy -> node count

  nlohmann::json to_json() const;
};

class EnergyAccumulator {
 public:
  void add(const Trace& trace);
  EnergyStats result() const;

 private:
  EnergyStats stats_;
  double run_max_sum_ = 0.0;
  double energy_sum_ = 0.0;
};

EnergyStats energy_stats(std::span<const Trace> traces);
/// Aggregated per node count.
std::map<std::size_t, EnergyStats> energy_stats_by_n(std::span<const Trace> traces);

enum class ScalingModel : std::uint8_t { kLog, kLogSquared, kLogSquaredLogLog };

std::string_view to_string(ScalingModel m) noexcept;
std::optional<ScalingModel> parse_scaling_model(std::string_view s) noexcept;

/// Regressor of the model at n: log2 n, log2^2 n or log2^2 n * log2 log2 n.
double scaling_regressor(ScalingModel model, double n);

struct FitResult {
  ScalingModel model = ScalingModel::kLog;
  std::size_t points = 0;
  /// Least-squares a in value = a * f(n).
  double coefficient = 0.0;
  /// Squared correlation between value and f(n); 0 when either is constant.
  double r_squared = 0.0;
  /// Least-squares line value = slope * f(n) + intercept.
  double slope = 0.0;
  double intercept = 0.0;

  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument if the points cover fewer than 4 distinct n
/// or contain n < 2 (the log-log regressor needs log2 n > 0).
FitResult scaling_fit(std::span<const std::pair<double, double>> points, ScalingModel model);

struct LowerBoundResult {
  std::size_t n = 0;
  std::uint64_t cap = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double failure_rate() const noexcept {
    return trials == 0 ? 0.0 : double(failures) / double(trials);
  }
  /// Normal-approximation standard error of the failure rate.
  double standard_error() const noexcept;
};

/// Runs `protocol` on the matching lower-bound graph of size n with an
/// energy cap, seeds first_seed .. first_seed + trials - 1, and counts runs
/// whose output is not a valid MIS.
LowerBoundResult lower_bound_experiment(std::size_t n, std::uint64_t cap, std::size_t trials,
                                        const Protocol& protocol, std::uint64_t first_seed = 0);

enum class CheckGroup : std::uint8_t {
  kConsistency,  // must hold for every trace the simulator produces
  kWhp,          // holds with high probability; failures are counted, not fatal
};

struct AuditCheck {
  std::string name;
  CheckGroup group = CheckGroup::kConsistency;
  bool passed = true;
  std::size_t violations = 0;
  std::string detail;  // first violation
};

struct AuditReport {
  MisReport mis;
  std::vector<AuditCheck> checks;
  /// Receiver backoffs run by committed nodes while more neighbors than their
  /// estimate were sending.
  std::size_t estimate_violations = 0;
  /// No-CD local maxima that ended the competition committed instead of won.
  std::size_t committed_local_maxima = 0;

  bool consistent() const noexcept;
  bool whp_clean() const noexcept;
  const AuditCheck* find(std::string_view name) const noexcept;
  nlohmann::json to_json() const;
};

/// Replays the trace against the channel semantics and re-derives the energy
/// ledger, then checks every structural invariant the trace carries enough
/// information for.
AuditReport audit_trace(const Trace& trace);

}  // namespace radiomis
