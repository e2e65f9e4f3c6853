#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aag/graph.hpp"

namespace aag {

struct ClassifyBudget {
  /// Largest |V| for the exact nicely-bridged check (2^|V| hulls).
  int nicely_bridged_max_vertices = 15;
  /// Largest |V| for the exhaustive lower-bound labelling search.
  int labelling_max_vertices = 14;
  /// Cap on DFS nodes for cycle enumeration (bridged, wheel checks).
  std::int64_t cycle_search_nodes = 20'000'000;
  /// Largest |V| for the induced 3-sun scan over 6-subsets.
  int sun_max_vertices = 40;
};

struct ChordalityResult {
  bool chordal = false;
  /// Perfect elimination ordering when chordal.
  std::vector<Vertex> elimination_order;
  /// A shortest induced cycle of length >= 4 when not chordal.
  std::vector<Vertex> induced_cycle;
};

struct BridgedResult {
  bool bridged = false;
  /// An isometric cycle of length >= 4 when not bridged.
  std::vector<Vertex> isometric_cycle;
};

/// Vertex labelling into {0,1,2} with its witness cycle. The witness is a
/// simple cycle that contains exactly one vertex labelled 1 (v1), flanked on
/// the cycle by v0 (label 0) and v2 (label 2).
struct Labelling {
  std::vector<int> labels;
  std::vector<Vertex> cycle;
  std::optional<Vertex> v0, v1, v2;
};

struct SufficientConditions {
  bool is_chordal = false;
  bool no_3sun = false;
  bool wheels_uniquely_centered = false;
  bool k4_free = false;

  bool any() const { return is_chordal || no_3sun || wheels_uniquely_centered || k4_free; }
};

struct ClassReport {
  bool chordal = false;
  bool bridged = false;
  /// Absent when the exact check ran out of budget.
  std::optional<bool> nicely_bridged;
  int radius = 0;
  int diameter = 0;
  /// k when the graph is k-self-centered.
  std::optional<int> self_centered_k;
  SufficientConditions sufficient_conditions;
  /// Set when the exhaustive search found one; `lower_bound_searched` tells
  /// whether an absent value means "none exists" or "not searched".
  std::optional<Labelling> lower_bound_labelling;
  bool lower_bound_searched = false;
  std::vector<Vertex> chordal_witness_cycle;
  std::vector<Vertex> bridged_witness_cycle;
};

ChordalityResult check_chordal(const Graph& g);
inline bool is_chordal(const Graph& g) { return check_chordal(g).chordal; }

/// Throws BudgetExceeded when the cycle search exceeds its node budget.
BridgedResult check_bridged(const Graph& g, const ClassifyBudget& budget = {});
inline bool is_bridged(const Graph& g, const ClassifyBudget& budget = {}) { return check_bridged(g, budget).bridged; }

bool is_k_self_centered(const Graph& g, int k);

/// Every 2-self-centered subgraph induced by a convex set is chordal.
/// Throws InvalidInput for non-bridged graphs and BudgetExceeded when |V| is
/// above the budget.
bool is_nicely_bridged_exact(const Graph& g, const ClassifyBudget& budget = {});

/// All convex vertex sets (hulls of every subset), sorted by mask.
std::vector<VertexSet> all_convex_sets(const Graph& g, const ClassifyBudget& budget = {});

bool contains_induced_3sun(const Graph& g, const ClassifyBudget& budget = {});
int max_clique_size(const Graph& g);
bool max_clique_at_most(const Graph& g, int k);
/// Induced cycles of length >= 4, each reported once, starting at its
/// smallest vertex.
std::vector<std::vector<Vertex>> induced_cycles(const Graph& g, const ClassifyBudget& budget = {});
/// No induced cycle C has two distinct hubs x, y with C+x and C+y induced wheels.
bool wheels_uniquely_centered(const Graph& g, const ClassifyBudget& budget = {});

std::optional<Labelling> find_lower_bound_labelling(const Graph& g, const ClassifyBudget& budget = {});
/// Throws InvalidInput when the labelling is not total or has no witness cycle.
bool verify_lower_bound_labelling(const Graph& g, const Labelling& lab);

ClassReport classify(const Graph& g, const ClassifyBudget& budget = {});

}  // namespace aag
