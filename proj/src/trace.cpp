#include "aag/trace.hpp"

namespace aag {

Graph trace_graph(const ExecutionTrace& tr) { return Graph(tr.graph_n, tr.graph_edges, tr.graph_name); }

VertexSet value_set(const ExecutionTrace& tr, int t) {
  VertexSet out;
  if (t == 0) {
    for (Vertex v : tr.inputs) out.insert(v);
    return out;
  }
  for (Vertex v : tr.iterations.at(t - 1).chosen)
    if (v >= 0) out.insert(v);
  return out;
}

std::vector<Vertex> surviving_outputs(const ExecutionTrace& tr) {
  std::vector<Vertex> out;
  for (const auto& o : tr.outputs)
    if (o) out.push_back(*o);
  return out;
}

}  // namespace aag
