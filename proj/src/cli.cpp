#include "radiomis/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "radiomis/mis_cd.hpp"
#include "radiomis/mis_nocd.hpp"
#include "radiomis/verify.hpp"

namespace radiomis {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Caps

CapSetting CapSetting::parse(const std::string& text) {
  CapSetting cap;
  if (text == "off") return cap;
  if (text == "auto") {
    cap.kind = Kind::kAuto;
    return cap;
  }
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw std::invalid_argument("cap must be off, auto or a non-negative integer, got '" + text +
                                "'");
  }
  cap.kind = Kind::kFixed;
  cap.value = value;
  return cap;
}

std::string CapSetting::to_string() const {
  switch (kind) {
    case Kind::kOff: return "off";
    case Kind::kAuto: return "auto";
    case Kind::kFixed: return std::to_string(value);
  }
  return "off";
}

std::optional<std::uint64_t> resolve_cap(const CapSetting& cap, double auto_c, std::uint64_t n) {
  switch (cap.kind) {
    case CapSetting::Kind::kOff: return std::nullopt;
    case CapSetting::Kind::kFixed: return cap.value;
    case CapSetting::Kind::kAuto: {
      const double l = std::log2(double(std::max<std::uint64_t>(n, 2)));
      const double threshold = auto_c * l * l * std::max(1.0, std::log2(l));
      return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(threshold)));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Run specs

namespace {

const std::set<std::string> kModels = {"cd", "beep", "nocd", "nocd-naive"};

bool is_nocd_family(const std::string& model) { return model == "nocd" || model == "nocd-naive"; }

}  // namespace

void RunSpec::validate() const {
  if (!kModels.count(model)) {
    throw std::invalid_argument("unknown model '" + model + "' (cd, beep, nocd, nocd-naive)");
  }
  if (graph_path.empty() == gen.empty()) {
    throw std::invalid_argument("give exactly one of --graph and --gen");
  }
  if (!gen.empty()) GeneratorSpec::parse(gen);
  if (n && *n == 0) throw std::invalid_argument("n must be positive");
  if (delta && *delta == 0) throw std::invalid_argument("delta must be positive");
  if (C && *C == 0) throw std::invalid_argument("C must be positive");
  if (c_prime && *c_prime == 0) throw std::invalid_argument("C' must be positive");
  if (beta == 0 || cd_C == 0) throw std::invalid_argument("beta and cd-C must be positive");
  if (is_nocd_family(model)) {
    if (beta < 4) throw std::invalid_argument("beta must be at least 4 for the no-CD models");
    if (kappa < 5) throw std::invalid_argument("kappa must be at least 5");
  }
  if (!parse_mode(mode)) throw std::invalid_argument("mode must be experiment or strict");
  make_low_degree_strategy(low_degree);
  if (!(cap_c > 0)) throw std::invalid_argument("cap-c must be positive");
}

std::string RunSpec::graph_ref() const { return gen.empty() ? graph_path : gen; }

json RunSpec::to_json() const {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); };
  return {{"model", model},         {"graph", graph_path.empty() ? json(nullptr) : json(graph_path)},
          {"gen", gen.empty() ? json(nullptr) : json(gen)},
          {"n", opt(n)},            {"delta", opt(delta)},
          {"C", opt(C)},            {"beta", beta},
          {"kappa", kappa},         {"c_prime", opt(c_prime)},
          {"cd_C", cd_C},           {"cap", cap.to_string()},
          {"cap_c", cap_c},         {"seed", seed},
          {"mode", mode},           {"low_degree", low_degree},
          {"record_events", record_events}};
}

void RunSpec::merge_json(const json& doc) {
  const json* src = &doc;
  if (doc.is_object() && doc.value("format", "") == "radiomis.trace") {
    if (!doc.contains("config") || !doc["config"].contains("run")) {
      throw std::invalid_argument("trace carries no run spec");
    }
    src = &doc["config"]["run"];
  }
  if (!src->is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known = {
      "model", "graph", "gen",  "n",      "delta", "C",          "beta",          "kappa",
      "c_prime", "cd_C", "cap", "cap_c", "seed",  "mode", "low_degree", "record_events"};
  for (const auto& [key, value] : src->items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  try {
    auto str = [&](const char* key, std::string& field) {
      if (src->contains(key) && !(*src)[key].is_null()) field = (*src)[key].get<std::string>();
    };
    auto u64 = [&](const char* key, std::uint64_t& field) {
      if (src->contains(key) && !(*src)[key].is_null()) field = (*src)[key].get<std::uint64_t>();
    };
    auto opt = [&](const char* key, std::optional<std::uint64_t>& field) {
      if (!src->contains(key)) return;
      if ((*src)[key].is_null()) {
        field.reset();
      } else {
        field = (*src)[key].get<std::uint64_t>();
      }
    };
    str("model", model);
    if (src->contains("graph")) {
      graph_path = (*src)["graph"].is_null() ? "" : (*src)["graph"].get<std::string>();
      if (!graph_path.empty()) gen.clear();
    }
    if (src->contains("gen")) {
      gen = (*src)["gen"].is_null() ? "" : (*src)["gen"].get<std::string>();
      if (!gen.empty()) graph_path.clear();
    }
    opt("n", n);
    opt("delta", delta);
    opt("C", C);
    u64("beta", beta);
    u64("kappa", kappa);
    opt("c_prime", c_prime);
    u64("cd_C", cd_C);
    if (src->contains("cap")) {
      const json& c = (*src)["cap"];
      cap = CapSetting::parse(c.is_number() ? std::to_string(c.get<std::uint64_t>())
                                            : c.get<std::string>());
    }
    if (src->contains("cap_c")) cap_c = (*src)["cap_c"].get<double>();
    u64("seed", seed);
    str("mode", mode);
    str("low_degree", low_degree);
    if (src->contains("record_events")) record_events = (*src)["record_events"].get<bool>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
}

Graph load_graph(const RunSpec& spec) {
  if (!spec.gen.empty()) return GeneratorSpec::parse(spec.gen).generate(spec.seed);
  if (!std::filesystem::exists(spec.graph_path)) {
    throw std::runtime_error("graph file '" + spec.graph_path + "' does not exist");
  }
  return load_edge_list_file(spec.graph_path);
}

std::unique_ptr<Protocol> make_protocol(const RunSpec& spec, const Graph& g) {
  spec.validate();
  const std::uint64_t n = spec.n.value_or(std::max<std::uint64_t>(1, g.node_count()));
  const std::uint64_t delta = spec.delta.value_or(std::max<std::uint64_t>(1, max_degree(g)));
  if (spec.model == "cd" || spec.model == "beep") {
    CdConfig c;
    c.n = n;
    c.C = spec.C.value_or(8);
    c.beta = spec.beta;
    c.channel = spec.model == "cd" ? ChannelModel::kCd : ChannelModel::kBeep;
    return std::make_unique<CdMisProtocol>(c);
  }
  const bool strict = spec.mode == "strict";
  NoCdConfig c = strict ? NoCdConfig::strict(n, delta) : NoCdConfig{};
  c.n = n;
  c.delta = delta;
  c.beta = spec.beta;
  c.kappa = spec.kappa;
  c.cd_C = spec.cd_C;
  c.low_degree = spec.low_degree;
  if (!strict) {
    c.C = spec.C.value_or(kFullPhaseMultiplier);
    c.c_prime = spec.c_prime.value_or(5);
  }
  if (spec.model == "nocd") return std::make_unique<NoCdMisProtocol>(c);
  return std::make_unique<NaiveBaselineProtocol>(c);
}

Trace execute(const RunSpec& spec, const Graph& g) {
  const auto protocol = make_protocol(spec, g);
  RunOptions options;
  options.seed = spec.seed;
  options.energy_cap = resolve_cap(spec.cap, spec.cap_c, spec.n.value_or(g.node_count()));
  options.record_events = spec.record_events;
  options.graph_ref = spec.graph_ref();
  Trace trace = run_protocol(g, *protocol, options);
  trace.config["run"] = spec.to_json();
  return trace;
}

std::string default_output_dir() {
  const char* dir = std::getenv("RADIOMIS_OUT_DIR");
  return dir && *dir ? std::string(dir) : std::string(".");
}

// ---------------------------------------------------------------------------
// Command line

namespace {

/// Options shared by run and sweep. Only flags actually given override the
/// config file, which in turn overrides the defaults.
struct SpecFlags {
  std::string model, graph, gen, cap, mode, low_degree, config;
  std::uint64_t n = 0, delta = 0, C = 0, beta = 0, kappa = 0, c_prime = 0, cd_C = 0, seed = 0;
  double cap_c = 0;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App& app, bool with_graph) {
    opts["model"] = app.add_option("--model", model, "cd | beep | nocd | nocd-naive");
    if (with_graph) opts["graph"] = app.add_option("--graph", graph, "edge-list file");
    opts["gen"] = app.add_option("--gen", gen,
                                 with_graph ? "generator spec, e.g. gnp:64:0.1"
                                            : "generator template, e.g. gnp:{n}:0.1");
    opts["n"] = app.add_option("--n-bound", n, "n known to the nodes (default: node count)");
    opts["delta"] = app.add_option("--delta", delta, "degree bound (default: max degree)");
    opts["C"] = app.add_option("--C", C, "Luby phase multiplier");
    opts["beta"] = app.add_option("--beta", beta, "rank length multiplier");
    opts["kappa"] = app.add_option("--kappa", kappa, "degree estimate multiplier");
    opts["c_prime"] = app.add_option("--c-prime", c_prime, "backoff repetition multiplier");
    opts["cd_C"] = app.add_option("--cd-C", cd_C, "phase multiplier of the simulated CD protocol");
    opts["cap"] = app.add_option("--cap", cap, "energy cap: off | N | auto");
    opts["cap_c"] = app.add_option("--cap-c", cap_c, "constant of the auto cap");
    opts["seed"] = app.add_option("--seed", seed, "random seed");
    opts["mode"] = app.add_option("--mode", mode, "experiment | strict");
    opts["low_degree"] = app.add_option("--low-degree", low_degree, "low-degree strategy");
    app.add_option("--config", config, "JSON config file (or a trace to replay)");
  }

  bool given(const std::string& key) const {
    auto it = opts.find(key);
    return it != opts.end() && it->second->count() > 0;
  }

  RunSpec resolve() const {
    RunSpec spec;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw std::runtime_error("cannot open config '" + config + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
      }
      spec.merge_json(doc);
    }
    if (given("model")) spec.model = model;
    if (given("graph")) {
      spec.graph_path = graph;
      if (!given("gen")) spec.gen.clear();
    }
    if (given("gen")) {
      spec.gen = gen;
      if (!given("graph")) spec.graph_path.clear();
    }
    if (given("n")) spec.n = n;
    if (given("delta")) spec.delta = delta;
    if (given("C")) spec.C = C;
    if (given("beta")) spec.beta = beta;
    if (given("kappa")) spec.kappa = kappa;
    if (given("c_prime")) spec.c_prime = c_prime;
    if (given("cd_C")) spec.cd_C = cd_C;
    if (given("cap")) spec.cap = CapSetting::parse(cap);
    if (given("cap_c")) spec.cap_c = cap_c;
    if (given("seed")) spec.seed = seed;
    if (given("mode")) spec.mode = mode;
    if (given("low_degree")) spec.low_degree = low_degree;
    return spec;
  }
};

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string run_summary(const Trace& t, const MisReport& mis) {
  std::ostringstream s;
  s << "model=" << (t.config.contains("model") ? t.config["model"].get<std::string>() : t.protocol)
    << " n=" << t.node_count() << " edges=" << t.graph.edge_count() << " seed=" << t.seed
    << " valid=" << (mis.valid ? "yes" : "no") << " max_energy=" << t.max_energy()
    << " rounds=" << t.round_count << " phases_used=" << t.phases_used()
    << " stop=" << to_string(t.stop);
  std::size_t capped = 0;
  for (const auto& c : t.capped_at) capped += c ? 1 : 0;
  if (t.energy_cap) s << " cap=" << *t.energy_cap << " capped=" << capped;
  return s.str();
}

int cmd_run(const SpecFlags& flags, const std::string& out_path, bool no_events,
            std::ostream& out, std::ostream& err) {
  RunSpec spec;
  Graph g;
  try {
    spec = flags.resolve();
    if (no_events) spec.record_events = false;
    spec.validate();
    g = load_graph(spec);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Trace trace = execute(spec, g);
  const std::string path = out_path.empty()
                               ? join_path(default_output_dir(),
                                           "trace-" + spec.model + "-" + std::to_string(spec.seed) +
                                               ".json")
                               : out_path;
  write_trace_file(trace, path);
  const MisReport mis = check_mis(g, trace.final_status);
  out << run_summary(trace, mis) << " trace=" << path << "\n";
  out << mis.to_json().dump() << "\n";
  return mis.valid ? kExitOk : kExitFailed;
}

std::string substitute_n(std::string tmpl, std::uint64_t n) {
  const std::string key = "{n}";
  for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key)) {
    tmpl.replace(pos, key.size(), std::to_string(n));
  }
  return tmpl;
}

ScalingModel primary_model(const std::string& model) {
  if (model == "cd" || model == "beep") return ScalingModel::kLog;
  return ScalingModel::kLogSquaredLogLog;
}

int cmd_sweep(const SpecFlags& flags, const std::vector<std::uint64_t>& ns, std::size_t trials,
              const std::vector<std::string>& caps_text, std::string csv_path,
              std::string caps_path, std::string summary_path, std::ostream& out,
              std::ostream& err) {
  RunSpec base;
  std::vector<CapSetting> caps;
  try {
    base = flags.resolve();
    base.record_events = false;
    if (base.gen.find("{n}") == std::string::npos) {
      throw std::invalid_argument("sweep needs a --gen template containing {n}");
    }
    if (std::set<std::uint64_t>(ns.begin(), ns.end()).size() < 2) {
      throw std::invalid_argument("sweep needs at least 2 distinct n values");
    }
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    for (const std::string& c : caps_text) {
      caps.push_back(CapSetting::parse(c));
      if (caps.back().kind != CapSetting::Kind::kFixed) {
        throw std::invalid_argument("--caps takes integers");
      }
    }
    RunSpec probe = base;
    probe.gen = substitute_n(base.gen, ns.front());
    probe.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string dir = default_output_dir();
  if (csv_path.empty()) csv_path = join_path(dir, "sweep-" + base.model + ".csv");
  if (summary_path.empty()) summary_path = join_path(dir, "sweep-" + base.model + ".json");
  if (caps_path.empty() && !caps.empty()) {
    caps_path = join_path(dir, "sweep-" + base.model + "-caps.csv");
  }

  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) {
    err << "error: cannot write '" << csv_path << "'\n";
    return kExitUsage;
  }
  csv << "n,model,seed,valid,max_energy,rounds,phases_used\n" << std::flush;

  std::map<std::uint64_t, EnergyAccumulator> energy;
  std::map<std::uint64_t, std::size_t> failures;
  std::vector<std::pair<double, double>> points;
  std::vector<LowerBoundResult> cap_rows;
  std::size_t rows = 0;
  std::size_t errors = 0;

  for (std::uint64_t n : ns) {
    std::vector<LowerBoundResult> per_cap;
    for (const CapSetting& c : caps) per_cap.push_back({n, c.value, 0, 0});
    for (std::size_t t = 0; t < trials; ++t) {
      RunSpec spec = base;
      spec.gen = substitute_n(base.gen, n);
      spec.seed = base.seed + t;
      try {
        const Graph g = load_graph(spec);
        if (caps.empty()) {
          const Trace trace = execute(spec, g);
          const bool valid = check_mis(g, trace.final_status).valid;
          csv << n << ',' << spec.model << ',' << spec.seed << ',' << (valid ? 1 : 0) << ','
              << trace.max_energy() << ',' << trace.round_count << ',' << trace.phases_used()
              << "\n" << std::flush;
          ++rows;
          energy[n].add(trace);
          failures[n] += valid ? 0 : 1;
          points.emplace_back(double(n), double(trace.max_energy()));
        } else {
          for (std::size_t k = 0; k < caps.size(); ++k) {
            spec.cap = caps[k];
            const Trace trace = execute(spec, g);
            ++per_cap[k].trials;
            per_cap[k].failures += check_mis(g, trace.final_status).valid ? 0 : 1;
          }
        }
      } catch (const std::exception& e) {
        ++errors;
        err << "row n=" << n << " seed=" << spec.seed << " failed: " << e.what() << "\n";
      }
    }
    cap_rows.insert(cap_rows.end(), per_cap.begin(), per_cap.end());
  }

  json summary;
  summary["format"] = "radiomis.sweep";
  summary["version"] = 1;
  summary["spec"] = base.to_json();
  summary["n_values"] = ns;
  summary["trials"] = trials;
  summary["rows"] = rows;
  summary["errors"] = errors;
  json per_n = json::object();
  for (const auto& [n, acc] : energy) {
    json entry = acc.result().to_json();
    entry["failures"] = failures[n];
    per_n[std::to_string(n)] = std::move(entry);
  }
  summary["per_n"] = std::move(per_n);
  json fits = json::object();
  for (auto m : {ScalingModel::kLog, ScalingModel::kLogSquared, ScalingModel::kLogSquaredLogLog}) {
    try {
      fits[std::string(to_string(m))] = scaling_fit(points, m).to_json();
    } catch (const std::invalid_argument& e) {
      fits[std::string(to_string(m))] = {{"error", e.what()}};
    }
  }
  summary["fit"] = fits[std::string(to_string(primary_model(base.model)))];
  summary["fits"] = std::move(fits);
  if (!caps.empty()) {
    std::ofstream caps_csv(caps_path, std::ios::binary);
    caps_csv << "n,b,trials,failures,failure_rate,standard_error\n";
    json table = json::array();
    for (const LowerBoundResult& r : cap_rows) {
      caps_csv << r.n << ',' << r.cap << ',' << r.trials << ',' << r.failures << ','
               << r.failure_rate() << ',' << r.standard_error() << "\n";
      table.push_back({{"n", r.n},
                       {"b", r.cap},
                       {"trials", r.trials},
                       {"failures", r.failures},
                       {"failure_rate", r.failure_rate()},
                       {"standard_error", r.standard_error()}});
    }
    summary["caps"] = std::move(table);
  }
  write_text(summary_path, summary.dump(2) + "\n");
  out << "rows=" << rows << " errors=" << errors << " csv=" << csv_path
      << " summary=" << summary_path;
  if (!caps.empty()) out << " caps=" << caps_path;
  out << "\n";
  return errors == 0 ? kExitOk : kExitFailed;
}

int cmd_verify(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
  Trace trace;
  try {
    trace = read_trace_file(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const AuditReport report = audit_trace(trace);
  if (as_json) {
    out << report.to_json().dump(2) << "\n";
  } else {
    out << run_summary(trace, report.mis) << "\n";
    for (const AuditCheck& c : report.checks) {
      const char* tag = c.passed ? "PASS" : (c.group == CheckGroup::kWhp ? "WARN" : "FAIL");
      out << tag << ' ' << c.name;
      if (!c.passed) out << " (" << c.violations << "): " << c.detail;
      out << "\n";
    }
    out << (report.consistent() ? "audit passed" : "audit FAILED") << "\n";
  }
  return report.consistent() ? kExitOk : kExitFailed;
}

int cmd_gen(const std::string& spec_text, std::uint64_t seed, const std::string& out_path,
            std::ostream& out, std::ostream& err) {
  Graph g;
  try {
    g = GeneratorSpec::parse(spec_text).generate(seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (out_path.empty()) {
    out << save_edge_list(g);
  } else {
    save_edge_list_file(g, out_path);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radio-network MIS simulator"};
  app.name("radiomis");
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "simulate one protocol run and write its trace");
  SpecFlags run_flags;
  run_flags.add(*run, true);
  std::string run_out;
  bool no_events = false;
  run->add_option("--out", run_out, "trace path (default: $RADIOMIS_OUT_DIR/trace-<model>-<seed>.json)");
  run->add_flag("--no-events", no_events, "omit per-round events from the trace");

  auto* sweep = app.add_subcommand("sweep", "run many seeds over a list of sizes");
  SpecFlags sweep_flags;
  sweep_flags.add(*sweep, false);
  std::vector<std::uint64_t> ns;
  std::size_t trials = 1;
  std::vector<std::string> caps;
  std::string csv_path, caps_path, summary_path;
  sweep->add_option("--n", ns, "node counts, e.g. --n 64,128,256")->required()->delimiter(',');
  sweep->add_option("--trials", trials, "seeds per n");
  sweep->add_option("--caps", caps, "energy caps to sweep, e.g. 0,1,2,4")->delimiter(',');
  sweep->add_option("--csv", csv_path, "per-run CSV path");
  sweep->add_option("--caps-csv", caps_path, "failure-rate-vs-cap CSV path");
  sweep->add_option("--summary", summary_path, "JSON summary path");

  auto* verify = app.add_subcommand("verify", "audit a trace file");
  std::string trace_path;
  bool as_json = false;
  verify->add_option("trace", trace_path, "trace file")->required();
  verify->add_flag("--json", as_json, "print the full audit as JSON");

  auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("spec", gen_spec, "generator spec, e.g. gnp:64:0.1")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'radiomis --help' for usage\n";
    return kExitUsage;
  }

  if (*run) return cmd_run(run_flags, run_out, no_events, out, err);
  if (*sweep) {
    return cmd_sweep(sweep_flags, ns, trials, caps, csv_path, caps_path, summary_path, out, err);
  }
  if (*verify) return cmd_verify(trace_path, as_json, out, err);
  if (*gen) return cmd_gen(gen_spec, gen_seed, gen_out, out, err);
  return kExitUsage;
}

}  // namespace radiomis
