#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aag/graph.hpp"
#include "aag/trace.hpp"

namespace aag {

struct Verdict {
  Verdict() = default;
  explicit Verdict(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  /// Informational predicates are reported but do not fail a bundle.
  bool gate = true;
  /// Iteration of the first violation; -1 for predicates on the final outputs.
  int t = -1;
  std::string detail;
  /// Per-output justification, e.g. "2 in I(0,4)".
  std::vector<std::string> witnesses;
};

/// Distinct outputs pairwise adjacent.
Verdict check_agreement(const Graph& g, const std::vector<Vertex>& outputs);
/// Every output lies on a shortest path between two inputs.
Verdict check_validity_interval(const Graph& g, const std::vector<Vertex>& inputs, const std::vector<Vertex>& outputs);
/// Every output lies in the convex hull of the inputs.
Verdict check_validity_hull(const Graph& g, const std::vector<Vertex>& inputs, const std::vector<Vertex>& outputs);
/// If the inputs form a clique, every output is an input.
Verdict check_clique_gathering(const Graph& g, const std::vector<Vertex>& inputs, const std::vector<Vertex>& outputs);

enum class ProtocolClass { OneResilient, WaitFreeBridged, Sync };

/// Maps a trace's protocol id to its class; throws InvalidInput if unknown.
ProtocolClass protocol_class_of(const std::string& id);

struct TraceCheckOptions {
  /// Enables the lemmas that need a bridged graph.
  bool bridged = false;
  /// Enables the strict hull shrink lemma.
  bool nicely_bridged = false;
};

struct VerdictBundle {
  std::vector<Verdict> verdicts;
  bool pass() const;
  /// Failed gating verdict with the smallest iteration (final-output
  /// predicates count as last); nullptr when everything passed.
  const Verdict* first_failure() const;
};

/// Checks the task predicates and every per-iteration lemma that applies to
/// the trace's protocol. Throws InvalidInput for malformed traces.
VerdictBundle check_trace(const Graph& g, const ExecutionTrace& tr, const TraceCheckOptions& opt = {});

/// Lemma options implied by classifying `g`.
TraceCheckOptions lemma_options_for(const Graph& g);

}  // namespace aag
