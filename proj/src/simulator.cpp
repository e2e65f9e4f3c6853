#include "aag/simulator.hpp"

#include "aag/error.hpp"

namespace aag {

ExecutionTrace run(const ProtocolSpec& p, const Graph& g, const std::vector<Vertex>& inputs,
                   const ScheduleOutcome& s, std::optional<std::uint64_t> seed) {
  const int n = static_cast<int>(inputs.size());
  if (s.n != n) throw InvalidInput("schedule is for " + std::to_string(s.n) + " processes, got " +
                                   std::to_string(n) + " inputs");
  for (Vertex v : inputs)
    if (v < 0 || v >= g.n()) throw InvalidInput("input " + std::to_string(v) + " is not a vertex");
  validate_schedule(s, p.num_objects, p.wait_rule, p.wait_rule.tolerated(n));

  ExecutionTrace tr;
  tr.graph_name = g.name();
  tr.graph_n = g.n();
  tr.graph_edges = g.edges();
  tr.protocol = p.id;
  tr.inputs = inputs;
  tr.schedule = s;
  tr.seed = seed;

  std::vector<Vertex> x = inputs;
  std::vector<bool> alive(n, true);
  for (int t = 0; t < p.num_objects; ++t) {
    const ObjectSchedule& o = s.objects[t];
    IterationRecord rec;
    rec.t = t;
    rec.views.assign(n, VertexSet{});
    rec.chosen.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (o.cuts[i] < 0) continue;
      VertexSet view;
      for (int q = 0; q < o.cuts[i]; ++q) view.insert(x[o.order[q]]);
      rec.views[i] = view;
      rec.chosen[i] = p.step(t, x[i], view);
    }
    for (int i = 0; i < n; ++i) {
      if (rec.chosen[i] >= 0)
        x[i] = rec.chosen[i];
      else
        alive[i] = false;
    }
    tr.iterations.push_back(std::move(rec));
  }
  tr.outputs.resize(n);
  for (int i = 0; i < n; ++i)
    if (alive[i]) tr.outputs[i] = x[i];
  return tr;
}

}  // namespace aag
