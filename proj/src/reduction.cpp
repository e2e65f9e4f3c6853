#include "aag/reduction.hpp"

#include <algorithm>

#include "aag/error.hpp"
#include "aag/simulator.hpp"

namespace aag {

namespace {

std::vector<int> a_processes(const std::vector<int>& inputs) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(inputs.size()); ++i) {
    if (inputs[i] < 0 || inputs[i] > 2) throw InvalidInput("reduction inputs must be in {0,1,2}");
    if (inputs[i] != 1) out.push_back(i);
  }
  return out;
}

std::vector<int> crashed_globals(const ScheduleOutcome& a, const std::vector<int>& a_procs) {
  std::vector<int> out;
  for (const Crash& c : a.crashes) out.push_back(a_procs[c.proc]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ReductionPath reduction_path(const Graph& g, const Labelling& lab) {
  if (!verify_lower_bound_labelling(g, lab)) throw InvalidInput("not a valid lower-bound labelling");
  std::vector<Vertex> c = lab.cycle;
  auto it = std::find_if(c.begin(), c.end(), [&](Vertex v) { return lab.labels[v] == 1; });
  std::rotate(c.begin(), it, c.end());
  const int k = static_cast<int>(c.size()) - 1;
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  ReductionPath r{Graph(k, edges, (g.name().empty() ? std::string("G") : g.name()) + "-path"),
                  std::vector<Vertex>(c.begin() + 1, c.end())};
  r.v1 = c[0];
  if (lab.labels[r.to_g.front()] == 0) {
    r.v0_index = 0;
    r.v2_index = k - 1;
  } else {
    r.v0_index = k - 1;
    r.v2_index = 0;
  }
  r.v0 = r.to_g[r.v0_index];
  r.v2 = r.to_g[r.v2_index];
  return r;
}

ReductionRun reduction_two_set(const Graph& g, const Labelling& lab, const ProtocolSpec& alg_a,
                               const ProtocolSpec& alg_b, const std::vector<int>& inputs,
                               const ReductionSchedule& schedule) {
  const ReductionPath rp = reduction_path(g, lab);
  if (alg_a.graph && !(*alg_a.graph == rp.path))
    throw InvalidInput("algorithm A must be built for the path obtained from the witness cycle");
  const int n = static_cast<int>(inputs.size());
  ReductionRun out;
  out.a_procs = a_processes(inputs);

  std::vector<Vertex> b_inputs(n, rp.v1);
  std::vector<int> expect_precrashed;
  if (!out.a_procs.empty()) {
    if (!schedule.a) throw InvalidInput("processes with inputs 0 or 2 need a schedule for algorithm A");
    std::vector<Vertex> a_inputs;
    for (int p : out.a_procs) a_inputs.push_back(inputs[p] == 0 ? rp.v0_index : rp.v2_index);
    out.trace_a = run(alg_a, rp.path, a_inputs, *schedule.a);
    for (std::size_t k = 0; k < out.a_procs.size(); ++k) {
      const auto& y = out.trace_a->outputs[k];
      if (y) b_inputs[out.a_procs[k]] = rp.to_g[*y];
    }
    expect_precrashed = crashed_globals(*schedule.a, out.a_procs);
  } else if (schedule.a) {
    throw InvalidInput("no process runs algorithm A, but a schedule for it was given");
  }

  for (int p : expect_precrashed) {
    bool ok = std::any_of(schedule.b.crashes.begin(), schedule.b.crashes.end(), [&](const Crash& c) {
      return c.proc == p && c.object == 0 && c.phase == CrashPhase::BeforeUpdate;
    });
    if (!ok) throw InvalidInput("process " + std::to_string(p) + " crashed in A but takes steps in B");
  }
  out.trace_b = run(alg_b, g, b_inputs, schedule.b);
  out.outputs.resize(n);
  for (int i = 0; i < n; ++i)
    if (out.trace_b.outputs[i]) out.outputs[i] = lab.labels[*out.trace_b.outputs[i]];
  return out;
}

std::uint64_t for_each_reduction_schedule(const std::vector<int>& inputs, const ProtocolSpec& alg_a,
                                          const ProtocolSpec& alg_b, int max_crashes,
                                          const std::function<void(const ReductionSchedule&)>& visit) {
  const int n = static_cast<int>(inputs.size());
  const std::vector<int> a_procs = a_processes(inputs);
  std::uint64_t count = 0;
  auto run_b = [&](const std::optional<ScheduleOutcome>& a, std::vector<int> pre) {
    EnumerationOptions ob;
    ob.max_crashes = max_crashes;
    ob.precrashed = std::move(pre);
    count += enumerate_schedules(n, alg_b.num_objects, alg_b.wait_rule, ob, [&](const ScheduleOutcome& b) {
      visit(ReductionSchedule{a, b});
    });
  };
  if (a_procs.empty()) {
    run_b(std::nullopt, {});
    return count;
  }
  EnumerationOptions oa;
  oa.max_crashes = std::min<int>(max_crashes, alg_a.wait_rule.tolerated(static_cast<int>(a_procs.size())));
  for (const ScheduleOutcome& a :
       all_schedules(static_cast<int>(a_procs.size()), alg_a.num_objects, alg_a.wait_rule, oa))
    run_b(a, crashed_globals(a, a_procs));
  return count;
}

}  // namespace aag
