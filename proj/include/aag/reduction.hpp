#pragma once

#include <functional>
#include <optional>

#include "aag/classify.hpp"
#include "aag/protocol.hpp"
#include "aag/trace.hpp"

namespace aag {

/// The witness cycle without v1, as a path graph on its own vertex ids.
struct ReductionPath {
  Graph path;
  /// to_g[i] is the vertex of G at path position i.
  std::vector<Vertex> to_g;
  int v0_index = 0;
  int v2_index = 0;
  Vertex v0 = 0, v1 = 0, v2 = 0;
};

/// Throws InvalidInput when `lab` is not a valid lower-bound labelling.
ReductionPath reduction_path(const Graph& g, const Labelling& lab);

/// Algorithm A runs among the processes with input 0 or 2 only (in the order
/// of their ids). Processes that crash in A take no step in B.
struct ReductionSchedule {
  std::optional<ScheduleOutcome> a;
  ScheduleOutcome b;
};

struct ReductionRun {
  /// Global ids of the processes that ran A.
  std::vector<int> a_procs;
  std::optional<ExecutionTrace> trace_a;
  ExecutionTrace trace_b;
  /// Labels of the B outputs; nullopt for crashed processes.
  std::vector<std::optional<int>> outputs;
};

/// Solves 2-set agreement on {0,1,2} from approximate agreement: processes
/// with input 0 or 2 run `alg_a` on the path, everybody then runs `alg_b` on
/// G (input-1 processes start at v1) and outputs the label of the result.
ReductionRun reduction_two_set(const Graph& g, const Labelling& lab, const ProtocolSpec& alg_a,
                               const ProtocolSpec& alg_b, const std::vector<int>& inputs,
                               const ReductionSchedule& schedule);

/// Visits every combined schedule with at most `max_crashes` crashes in total.
std::uint64_t for_each_reduction_schedule(const std::vector<int>& inputs, const ProtocolSpec& alg_a,
                                          const ProtocolSpec& alg_b, int max_crashes,
                                          const std::function<void(const ReductionSchedule&)>& visit);

}  // namespace aag
