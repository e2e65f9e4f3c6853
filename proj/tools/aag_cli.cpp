// aag: command-line driver for the approximate agreement toolkit.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
// 3 budget exceeded.

#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "aag/classify.hpp"
#include "aag/error.hpp"
#include "aag/io.hpp"
#include "aag/reduction.hpp"
#include "aag/simulator.hpp"
#include "aag/sync.hpp"
#include "aag/topology.hpp"
#include "aag/verify.hpp"

namespace fs = std::filesystem;
using namespace aag;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2, kBudget = 3;

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("not an integer list: '" + text + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty input list");
  return out;
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

/// Collects run results; writes failing traces only.
struct Summary {
  std::string out_dir;
  bool keep_passing = false;
  std::uint64_t runs = 0, passes = 0, failures = 0;
  std::optional<std::string> first_failure;
  std::optional<Json> first_failure_verdict;

  void record(const ExecutionTrace& tr, const VerdictBundle& b) {
    ++runs;
    if (b.pass()) {
      ++passes;
      if (keep_passing && !out_dir.empty())
        write_json_file((fs::path(out_dir) / ("trace-" + std::to_string(runs - 1) + ".json")).string(), to_json(tr));
      return;
    }
    ++failures;
    if (!first_failure_verdict) first_failure_verdict = to_json(*b.first_failure());
    if (out_dir.empty()) {
      if (!first_failure) first_failure = "";
      return;
    }
    const std::string path = (fs::path(out_dir) / ("failure-" + std::to_string(runs - 1) + ".json")).string();
    Json j = to_json(tr);
    j["verdicts"] = to_json(b);
    write_json_file(path, j);
    if (!first_failure || first_failure->empty()) first_failure = path;
  }

  Json json() const {
    Json j = {{"runs", runs}, {"passes", passes}, {"failures", failures}};
    j["first_failure"] = first_failure && !first_failure->empty() ? Json(*first_failure) : Json(nullptr);
    if (first_failure_verdict) j["first_failure_verdict"] = *first_failure_verdict;
    return j;
  }
};

struct RunArgs {
  std::string graph, protocol = "one-resilient", inputs, model = "async", schedule = "random", adversary;
  std::string out_dir;
  bool keep_traces = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1;
  int crashes = 0;
  int f = -1;
  double crash_probability = 0.1;
  std::uint64_t budget = 20'000'000;
};

int command_run(const RunArgs& a) {
  Graph g = load_graph(a.graph);
  const std::vector<Vertex> inputs = parse_ints(a.inputs);
  const int n = static_cast<int>(inputs.size());
  const TraceCheckOptions lemmas = lemma_options_for(g);
  Summary sum;
  sum.out_dir = a.out_dir;
  sum.keep_passing = a.keep_traces;
  if (!a.out_dir.empty()) fs::create_directories(a.out_dir);
  Json head;

  if (a.model == "async") {
    ProtocolSpec p = make_protocol(a.protocol, g);
    head["protocol"] = to_json(protocol_metadata(p));
    auto one = [&](const ScheduleOutcome& s, std::optional<std::uint64_t> seed) {
      ExecutionTrace tr = run(p, g, inputs, s, seed);
      sum.record(tr, check_trace(g, tr, lemmas));
    };
    if (a.schedule == "exhaustive") {
      EnumerationOptions opt;
      opt.max_crashes = a.crashes;
      opt.budget = a.budget;
      enumerate_schedules(n, p.num_objects, p.wait_rule, opt, [&](const ScheduleOutcome& s) { one(s, std::nullopt); });
    } else if (a.schedule == "random") {
      if (!a.seed) throw InvalidInput("--schedule random needs --seed");
      RandomScheduleOptions opt;
      opt.max_crashes = a.crashes;
      opt.crash_probability = a.crash_probability;
      for (std::uint64_t i = 0; i < a.samples; ++i)
        one(random_schedule(n, p.num_objects, p.wait_rule, opt, *a.seed + i), *a.seed + i);
    } else {
      one(schedule_from_json(read_json_file(a.schedule)), std::nullopt);
    }
  } else if (a.model == "sync") {
    if (a.f < 0) throw InvalidInput("--model sync needs --f");
    const int rounds = sync_round_count(g, a.f);
    head["protocol"] = {{"id", "sync-agreement"}, {"rounds", rounds}, {"f", a.f}};
    auto one = [&](const RoundAdversary& adv, std::optional<std::uint64_t> seed) {
      ExecutionTrace tr = run_sync(g, inputs, a.f, adv, seed);
      sum.record(tr, check_trace(g, tr, lemmas));
    };
    const std::string& mode = a.adversary.empty() ? "exhaustive" : a.adversary;
    if (mode == "exhaustive") {
      enumerate_adversaries(n, a.f, rounds, [&](const RoundAdversary& adv) { one(adv, std::nullopt); });
    } else if (is_number(mode) || mode == "random") {
      std::uint64_t base = mode == "random" ? (a.seed ? *a.seed : throw InvalidInput("--adversary random needs --seed"))
                                            : std::stoull(mode);
      for (std::uint64_t i = 0; i < a.samples; ++i)
        one(random_adversary(n, a.f, rounds, a.crash_probability, base + i), base + i);
    } else {
      one(adversary_from_json(read_json_file(mode)), std::nullopt);
    }
  } else {
    throw InvalidInput("--model must be async or sync");
  }

  Json out = head;
  const Json counts = sum.json();
  for (auto& [k, v] : counts.items()) out[k] = v;
  if (!a.out_dir.empty()) write_json_file((fs::path(a.out_dir) / "summary.json").string(), out);
  emit(out);
  return sum.failures == 0 ? kPass : kFail;
}

int command_classify(const std::string& graph, const ClassifyBudget& budget) {
  Graph g = load_graph(graph);
  Json j = {{"graph", g.name()}, {"n", g.n()}, {"edges", g.edge_count()}};
  const Json report = to_json(classify(g, budget));
  for (auto& [k, v] : report.items()) j[k] = v;
  emit(j);
  return kPass;
}

int command_verify(const std::string& trace_file) {
  ExecutionTrace tr = trace_from_json(read_json_file(trace_file));
  Graph g = trace_graph(tr);
  VerdictBundle b = check_trace(g, tr, lemma_options_for(g));
  emit(to_json(b));
  return b.pass() ? kPass : kFail;
}

int command_impossibility(int c, int rounds, const SearchOptions& opt) {
  SearchResult r = search_protocol(c, rounds, opt);
  Json j = to_json(r);
  j["drop_corner_conditions"] = opt.drop_corner_conditions;
  j["drop_boundary_conditions"] = opt.drop_boundary_conditions;
  emit(j);
  return kPass;
}

struct ReduceArgs {
  std::string graph, labelling, inputs, schedule = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1;
  int crashes = 1;
};

int command_reduce(const ReduceArgs& a) {
  Graph g = load_graph(a.graph);
  Labelling lab = labelling_from_json(read_json_file(a.labelling));
  const std::vector<int> inputs = parse_ints(a.inputs);
  const int n = static_cast<int>(inputs.size());
  ReductionPath rp = reduction_path(g, lab);
  ProtocolSpec alg_a = make_one_resilient(rp.path), alg_b = make_one_resilient(g);

  std::uint64_t runs = 0, failures = 0;
  Json first = nullptr;
  auto one = [&](const ReductionSchedule& s) {
    ReductionRun r = reduction_two_set(g, lab, alg_a, alg_b, inputs, s);
    std::set<int> distinct;
    bool valid = true;
    for (const auto& o : r.outputs)
      if (o) {
        distinct.insert(*o);
        valid = valid && std::find(inputs.begin(), inputs.end(), *o) != inputs.end();
      }
    ++runs;
    if (distinct.size() <= 2 && valid) return;
    ++failures;
    if (first.is_null()) {
      Json outs = Json::array();
      for (const auto& o : r.outputs) outs.push_back(o ? Json(*o) : Json("CRASHED"));
      first = {{"outputs", outs}, {"trace_b", to_json(r.trace_b)}};
    }
  };
  if (a.schedule == "exhaustive") {
    for_each_reduction_schedule(inputs, alg_a, alg_b, a.crashes, one);
  } else if (a.schedule == "random") {
    if (!a.seed) throw InvalidInput("--schedule random needs --seed");
    std::vector<int> a_procs;
    for (int i = 0; i < n; ++i)
      if (inputs[i] != 1) a_procs.push_back(i);
    for (std::uint64_t i = 0; i < a.samples; ++i) {
      const std::uint64_t seed = *a.seed + i;
      ReductionSchedule s;
      std::vector<int> pre;
      int used = 0;
      if (!a_procs.empty()) {
        RandomScheduleOptions oa;
        oa.max_crashes = std::min(a.crashes, alg_a.wait_rule.tolerated(static_cast<int>(a_procs.size())));
        s.a = random_schedule(static_cast<int>(a_procs.size()), alg_a.num_objects, alg_a.wait_rule, oa, seed);
        for (const Crash& c : s.a->crashes) pre.push_back(a_procs[c.proc]);
        used = static_cast<int>(pre.size());
      }
      RandomScheduleOptions ob;
      ob.max_crashes = std::max(a.crashes, used);
      ob.precrashed = pre;
      s.b = random_schedule(n, alg_b.num_objects, alg_b.wait_rule, ob, seed ^ 0x9e3779b97f4a7c15ULL);
      one(s);
    }
  } else {
    throw InvalidInput("--schedule must be exhaustive or random");
  }
  Json path = Json::array();
  for (Vertex v : rp.to_g) path.push_back(v);
  emit({{"path", path},
        {"v0", rp.v0},
        {"v1", rp.v1},
        {"v2", rp.v2},
        {"runs", runs},
        {"passes", runs - failures},
        {"failures", failures},
        {"first_failure", first}});
  return failures == 0 ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate agreement on graphs: classification, simulation and verification"};
  app.require_subcommand(1);

  std::string graph_file;
  ClassifyBudget cb;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a graph and search for a lower-bound labelling");
  classify_cmd->add_option("--graph", graph_file, "Graph file")->required()->check(CLI::ExistingFile);
  classify_cmd->add_option("--max-nicely-bridged-vertices", cb.nicely_bridged_max_vertices);
  classify_cmd->add_option("--max-labelling-vertices", cb.labelling_max_vertices);
  classify_cmd->add_option("--cycle-search-nodes", cb.cycle_search_nodes);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run a protocol under enumerated, random or given schedules");
  run_cmd->add_option("--graph", ra.graph, "Graph file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--inputs", ra.inputs, "Comma-separated input vertices, one per process")->required();
  run_cmd->add_option("--protocol", ra.protocol, "one-resilient | wait-free-bridged");
  run_cmd->add_option("--model", ra.model, "async | sync")->check(CLI::IsMember({"async", "sync"}));
  run_cmd->add_option("--schedule", ra.schedule, "exhaustive | random | <schedule.json>");
  run_cmd->add_option("--seed", ra.seed, "Base seed for random schedules or adversaries");
  run_cmd->add_option("--samples", ra.samples, "Number of random runs");
  run_cmd->add_option("--crashes", ra.crashes, "Crash bound for async schedules");
  run_cmd->add_option("--crash-probability", ra.crash_probability);
  run_cmd->add_option("--f", ra.f, "Crash bound for the synchronous model");
  run_cmd->add_option("--adversary", ra.adversary, "exhaustive | random | <seed> | <adversary.json>");
  run_cmd->add_option("--out-dir", ra.out_dir, "Directory for summary.json and failing traces");
  run_cmd->add_flag("--keep-traces", ra.keep_traces, "Also write passing traces to --out-dir");
  run_cmd->add_option("--budget", ra.budget, "Largest number of enumerated schedules");

  std::string trace_file;
  auto* verify_cmd = app.add_subcommand("verify", "Check a trace file");
  verify_cmd->add_option("--trace", trace_file, "Trace JSON")->required()->check(CLI::ExistingFile);

  int cycle = 4, rounds = 1;
  SearchOptions so;
  auto* imp_cmd = app.add_subcommand("impossibility", "Search for a decision map on the subdivided input complex");
  imp_cmd->add_option("--cycle", cycle, "Cycle length c")->required();
  imp_cmd->add_option("--rounds", rounds, "Subdivision rounds")->required();
  imp_cmd->add_flag("--drop-corner-conditions", so.drop_corner_conditions);
  imp_cmd->add_flag("--drop-boundary-conditions", so.drop_boundary_conditions);
  imp_cmd->add_option("--max-cycle", so.max_c);
  imp_cmd->add_option("--max-rounds", so.max_rounds);

  ReduceArgs rd;
  auto* red_cmd = app.add_subcommand("reduce", "2-set agreement from approximate agreement via a labelling");
  red_cmd->add_option("--graph", rd.graph, "Graph file")->required()->check(CLI::ExistingFile);
  red_cmd->add_option("--labelling", rd.labelling, "Labelling JSON")->required()->check(CLI::ExistingFile);
  red_cmd->add_option("--inputs", rd.inputs, "Comma-separated values in {0,1,2}")->required();
  red_cmd->add_option("--schedule", rd.schedule, "exhaustive | random");
  red_cmd->add_option("--seed", rd.seed);
  red_cmd->add_option("--samples", rd.samples);
  red_cmd->add_option("--crashes", rd.crashes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*classify_cmd) return command_classify(graph_file, cb);
    if (*run_cmd) return command_run(ra);
    if (*verify_cmd) return command_verify(trace_file);
    if (*imp_cmd) return command_impossibility(cycle, rounds, so);
    if (*red_cmd) return command_reduce(rd);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
