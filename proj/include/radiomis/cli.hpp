#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "radiomis/engine.hpp"
#include "radiomis/graph.hpp"

namespace radiomis {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // invalid MIS, undecided nodes, or audit failure
inline constexpr int kExitUsage = 2;   // bad arguments or unreadable input

struct CapSetting {
  enum class Kind : std::uint8_t { kOff, kFixed, kAuto };
  Kind kind = Kind::kOff;
  std::uint64_t value = 0;  // kFixed only

  /// "off", a non-negative integer, or "auto". Throws std::invalid_argument.
  static CapSetting parse(const std::string& text);
  std::string to_string() const;
};

/// Energy cap for n nodes; auto is max(1, ceil(c * log2^2 n * max(1, log2 log2 n))).
std::optional<std::uint64_t> resolve_cap(const CapSetting& cap, double auto_c, std::uint64_t n);

/// Everything needed to reproduce one run.
struct RunSpec {
  std::string model = "cd";  // cd | beep | nocd | nocd-naive
  std::string graph_path;    // exclusive with gen
  std::string gen;           // generator spec, exclusive with graph_path
  std::optional<std::uint64_t> n;      // defaults to the node count
  std::optional<std::uint64_t> delta;  // defaults to max(1, max degree)
  std::optional<std::uint64_t> C;      // defaults to 8 (cd, beep) or 177 (nocd)
  std::uint64_t beta = 4;
  std::uint64_t kappa = 5;
  std::optional<std::uint64_t> c_prime;  // defaults to 5, forced to 30 in strict mode
  std::uint64_t cd_C = 8;
  CapSetting cap;
  double cap_c = 100.0;
  std::uint64_t seed = 0;
  std::string mode = "experiment";  // experiment | strict
  std::string low_degree = "naive-sim";
  bool record_events = true;

  /// Throws std::invalid_argument describing the first problem.
  void validate() const;
  std::string graph_ref() const;

  nlohmann::json to_json() const;
  /// Accepts a spec object, or a trace document carrying one under
  /// config.run. Missing keys keep their current values.
  void merge_json(const nlohmann::json& doc);
};

/// Loads or generates the graph. Throws GraphError or std::runtime_error.
Graph load_graph(const RunSpec& spec);

/// Builds the protocol with every default resolved against the graph.
std::unique_ptr<Protocol> make_protocol(const RunSpec& spec, const Graph& g);

/// Runs the spec, embedding it under config.run in the trace.
Trace execute(const RunSpec& spec, const Graph& g);

/// RADIOMIS_OUT_DIR if set and non-empty, else the working directory.
std::string default_output_dir();

/// Entry point of the command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radiomis
