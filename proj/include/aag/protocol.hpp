#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "aag/graph.hpp"
#include "aag/schedule.hpp"

namespace aag {

/// Smallest T >= 0 with 2^T >= d (0 for d <= 1).
int ceil_log2(int d);
/// Smallest T >= 0 with (3/2)^T >= d, in integer arithmetic (0 for d <= 1).
int ceil_log_three_halves(int d);

/// One line per derived constant, e.g. "T = ceil(log2 diam) = ceil(log2 3) = 2".
using FormulaTrace = std::vector<std::string>;

/// A protocol over a sequence of snapshot objects. Object t maps the own
/// value x_i(t) and the view X_i(t) to x_i(t+1); the decision is the value
/// after the last object.
struct ProtocolSpec {
  std::string id;
  WaitRule wait_rule;
  int num_objects = 0;
  /// T, so that num_objects = T + 1.
  int T = 0;
  /// T* for the wait-free protocol, -1 otherwise.
  int T_star = -1;
  std::shared_ptr<const Graph> graph;
  std::function<Vertex(int t, Vertex own, VertexSet view)> step;
  FormulaTrace formula;
};

struct ProtocolMetadata {
  std::string id;
  int num_objects = 0;
  WaitRule wait_rule;
  FormulaTrace formula;
};

/// {u} -> u, {u, v} -> midpoint_g(u, v). Throws InvalidInput otherwise.
Vertex psi_path(const Graph& g, VertexSet x_set);

/// A center vertex of G[<X>], preferring vertices that are not simplicial in
/// G[<X>]; smallest id among the eligible ones.
Vertex psi_center(const Graph& g, VertexSet x_set);

/// Object 0 takes the minimum of the view, objects 1..T apply psi_path,
/// T = ceil(log2 diam(G)). Processes wait until at most one component is
/// EMPTY.
ProtocolSpec make_one_resilient(const Graph& g);

/// T + 1 single-scan objects applying psi_center, with
/// T* = ceil(log_{3/2} diam(G)) + 1 and T = max(|V|, T*). The graph class is
/// not checked.
ProtocolSpec make_wait_free_bridged(const Graph& g);

/// Looks up a protocol by its CLI id.
ProtocolSpec make_protocol(const std::string& id, const Graph& g);

ProtocolMetadata protocol_metadata(const ProtocolSpec& p);

}  // namespace aag
