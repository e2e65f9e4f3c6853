#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aag/graph.hpp"
#include "aag/schedule.hpp"

namespace aag {

/// A process crashing in `round` delivers that round's message only to
/// `recipients`, then stays silent.
struct SyncCrash {
  int proc = 0;
  int round = 0;
  std::vector<int> recipients;
  bool operator==(const SyncCrash&) const = default;
};

struct RoundAdversary {
  std::vector<SyncCrash> crashes;
  bool operator==(const RoundAdversary&) const = default;
};

struct SyncSchedule {
  int f = 0;
  RoundAdversary adversary;
  bool operator==(const SyncSchedule&) const = default;
};

using TraceSchedule = std::variant<ScheduleOutcome, SyncSchedule>;

/// Iteration t: views[i] = X_i(t) (empty when i took no scan), chosen[i] =
/// x_i(t+1) (-1 when i did not finish the iteration).
struct IterationRecord {
  int t = 0;
  std::vector<VertexSet> views;
  std::vector<Vertex> chosen;
  bool operator==(const IterationRecord&) const = default;
};

struct ExecutionTrace {
  std::string graph_name;
  int graph_n = 0;
  std::vector<Edge> graph_edges;
  std::string protocol;
  std::vector<Vertex> inputs;
  std::vector<IterationRecord> iterations;
  /// nullopt for crashed processes.
  std::vector<std::optional<Vertex>> outputs;
  TraceSchedule schedule;
  std::optional<std::uint64_t> seed;
  bool operator==(const ExecutionTrace&) const = default;
};

Graph trace_graph(const ExecutionTrace& tr);

/// X(0) = all inputs; X(t+1) = values chosen in iteration t.
VertexSet value_set(const ExecutionTrace& tr, int t);

/// Outputs of non-crashed processes.
std::vector<Vertex> surviving_outputs(const ExecutionTrace& tr);

}  // namespace aag
