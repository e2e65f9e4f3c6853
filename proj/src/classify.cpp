#include "aag/classify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "aag/error.hpp"

namespace aag {

namespace {

/// Maximum cardinality search; the reverse of the visit order is a perfect
/// elimination ordering iff the graph is chordal.
std::vector<Vertex> mcs_elimination_order(const Graph& g) {
  const int n = g.n();
  std::vector<int> weight(n, 0);
  std::vector<bool> done(n, false);
  std::vector<Vertex> visit;
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!done[v] && (best < 0 || weight[v] > weight[best])) best = v;
    done[best] = true;
    visit.push_back(best);
    for (Vertex w : g.neighbours(best))
      if (!done[w]) ++weight[w];
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

bool is_perfect_elimination_order(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<int> pos(g.n());
  for (int i = 0; i < g.n(); ++i) pos[order[i]] = i;
  for (Vertex v : order) {
    VertexSet later;
    for (Vertex w : g.neighbours(v))
      if (pos[w] > pos[v]) later.insert(w);
    if (!is_clique(g, later)) return false;
  }
  return true;
}

std::vector<Vertex> bfs_path_within(const Graph& g, VertexSet allowed, Vertex from, Vertex to) {
  std::vector<Vertex> parent(g.n(), -1);
  std::deque<Vertex> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (Vertex w : g.neighbours(u))
      if (allowed.contains(w) && parent[w] < 0) {
        parent[w] = u;
        queue.push_back(w);
      }
  }
  if (parent[to] < 0) return {};
  std::vector<Vertex> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Shortest induced cycle of length >= 4, found by closing a chordless path
/// a ~> c around a middle vertex b with a, c non-adjacent neighbours of b.
std::vector<Vertex> shortest_induced_long_cycle(const Graph& g) {
  std::vector<Vertex> best;
  for (Vertex b = 0; b < g.n(); ++b) {
    VertexSet nb = g.neighbour_set(b);
    for (Vertex a : nb)
      for (Vertex c : nb) {
        if (a >= c || g.adjacent(a, c)) continue;
        VertexSet allowed = g.vertices() - nb - VertexSet::single(b);
        allowed.insert(a);
        allowed.insert(c);
        auto p = bfs_path_within(g, allowed, a, c);
        if (p.empty()) continue;
        if (best.empty() || p.size() + 1 < best.size()) {
          best = p;
          best.push_back(b);
        }
      }
  }
  if (!best.empty()) {
    auto it = std::min_element(best.begin(), best.end());
    std::rotate(best.begin(), it, best.end());
  }
  return best;
}

class NodeCounter {
 public:
  NodeCounter(std::int64_t limit, const char* what) : limit_(limit), what_(what) {}
  void tick() {
    if (++count_ > limit_) throw BudgetExceeded(std::string(what_) + ": cycle search exceeded node budget");
  }

 private:
  std::int64_t count_ = 0;
  std::int64_t limit_;
  const char* what_;
};

bool cycle_is_isometric(const Graph& g, const std::vector<Vertex>& cyc) {
  const int k = static_cast<int>(cyc.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.distance(cyc[i], cyc[j]) != std::min(j - i, k - (j - i))) return false;
  return true;
}

bool is_3sun_mask(const Graph& g, VertexSet s) {
  int edges = 0;
  VertexSet hubs, corners;
  for (Vertex v : s) {
    int deg = (g.neighbour_set(v) & s).size();
    edges += deg;
    if (deg == 4)
      hubs.insert(v);
    else if (deg == 2)
      corners.insert(v);
    else
      return false;
  }
  if (edges != 18 || hubs.size() != 3 || corners.size() != 3) return false;
  if (!is_clique(g, hubs)) return false;
  std::vector<VertexSet> seen;
  for (Vertex c : corners) {
    VertexSet nb = g.neighbour_set(c) & s;
    if (!nb.is_subset_of(hubs)) return false;
    if (std::find(seen.begin(), seen.end(), nb) != seen.end()) return false;
    seen.push_back(nb);
  }
  return true;
}

int max_clique_rec(const Graph& g, VertexSet clique_size_dummy, VertexSet candidates, int current, int best) {
  (void)clique_size_dummy;
  if (candidates.empty()) return std::max(best, current);
  while (!candidates.empty()) {
    if (current + candidates.size() <= best) return best;
    Vertex v = candidates.min();
    candidates.erase(v);
    best = max_clique_rec(g, {}, candidates & g.neighbour_set(v), current + 1, best);
  }
  return std::max(best, current);
}

/// Rainbow triangle: three mutually adjacent vertices with labels 0, 1, 2.
bool has_rainbow_triangle(const Graph& g, const std::vector<int>& labels) {
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbours(u)) {
      if (v <= u || labels[v] == labels[u]) continue;
      for (Vertex w : g.neighbour_set(u) & g.neighbour_set(v))
        if (w > v && labels[w] != labels[u] && labels[w] != labels[v]) return true;
    }
  return false;
}

/// Condition (2) for a labelling: some v1 labelled 1 with neighbours v0 (0)
/// and v2 (2) joined by a path through 0/2-labelled vertices. Returns the
/// witness cycle v0, v1, v2, ..., or an empty vector.
std::optional<Labelling> witness_for(const Graph& g, const std::vector<int>& labels) {
  VertexSet zero_two;
  for (Vertex v = 0; v < g.n(); ++v)
    if (labels[v] != 1) zero_two.insert(v);
  for (Vertex v1 = 0; v1 < g.n(); ++v1) {
    if (labels[v1] != 1) continue;
    for (Vertex v0 : g.neighbours(v1)) {
      if (labels[v0] != 0) continue;
      for (Vertex v2 : g.neighbours(v1)) {
        if (labels[v2] != 2) continue;
        auto p = bfs_path_within(g, zero_two, v2, v0);
        if (p.empty()) continue;
        Labelling lab;
        lab.labels = labels;
        lab.cycle = {v0, v1};
        lab.cycle.insert(lab.cycle.end(), p.begin(), p.end() - 1);
        lab.v0 = v0;
        lab.v1 = v1;
        lab.v2 = v2;
        return lab;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ChordalityResult check_chordal(const Graph& g) {
  ChordalityResult r;
  auto order = mcs_elimination_order(g);
  if (is_perfect_elimination_order(g, order)) {
    r.chordal = true;
    r.elimination_order = std::move(order);
  } else {
    r.induced_cycle = shortest_induced_long_cycle(g);
  }
  return r;
}

BridgedResult check_bridged(const Graph& g, const ClassifyBudget& budget) {
  BridgedResult r;
  // Chordal graphs are bridged; skip the search.
  if (is_chordal(g)) {
    r.bridged = true;
    return r;
  }
  const int n = g.n();
  // An isometric k-cycle has diameter floor(k/2) <= diam(G).
  const int max_len = 2 * diameter(g) + 1;
  NodeCounter counter(budget.cycle_search_nodes, "is_bridged");
  std::vector<Vertex> path;
  VertexSet on_path;
  std::function<bool()> extend = [&]() -> bool {
    counter.tick();
    const int m = static_cast<int>(path.size());
    const Vertex last = path.back();
    const Vertex s = path.front();
    if (m >= 4 && g.adjacent(last, s) && path[1] < last && cycle_is_isometric(g, path)) {
      r.isometric_cycle = path;
      return true;
    }
    if (m >= max_len) return false;
    if (m >= 3 && g.adjacent(last, s)) return false;  // chord to the start
    for (Vertex w : g.neighbours(last)) {
      if (w <= s || on_path.contains(w)) continue;
      // In the final cycle (length >= m+1), d_C(p_i, w) >= min(m-i, i+1) and
      // an isometric cycle needs d_G = d_C.
      bool ok = true;
      for (int i = 0; i < m - 1 && ok; ++i)
        if (g.distance(path[i], w) < std::min(m - i, i + 1)) ok = false;
      if (!ok) continue;
      path.push_back(w);
      on_path.insert(w);
      if (extend()) return true;
      path.pop_back();
      on_path.erase(w);
    }
    return false;
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    on_path = VertexSet::single(s);
    if (extend()) return r;
  }
  r.bridged = true;
  return r;
}

bool is_k_self_centered(const Graph& g, int k) {
  for (Vertex v = 0; v < g.n(); ++v)
    if (eccentricity(g, v) != k) return false;
  return true;
}

std::vector<VertexSet> all_convex_sets(const Graph& g, const ClassifyBudget& budget) {
  if (g.n() > budget.nicely_bridged_max_vertices)
    throw BudgetExceeded("convex set enumeration: |V| = " + std::to_string(g.n()) + " exceeds budget " +
                         std::to_string(budget.nicely_bridged_max_vertices));
  std::unordered_set<VertexSet> seen;
  const std::uint64_t limit = std::uint64_t{1} << g.n();
  for (std::uint64_t m = 1; m < limit; ++m) seen.insert(convex_hull(g, VertexSet(m)));
  std::vector<VertexSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) { return a.mask() < b.mask(); });
  return out;
}

bool is_nicely_bridged_exact(const Graph& g, const ClassifyBudget& budget) {
  if (!is_bridged(g, budget)) throw InvalidInput("is_nicely_bridged_exact requires a bridged graph");
  for (VertexSet s : all_convex_sets(g, budget)) {
    bool two_self_centered = true;
    for (Vertex v : s)
      if (eccentricity_within_convex(g, s, v) != 2) {
        two_self_centered = false;
        break;
      }
    if (two_self_centered && !is_chordal(induced_subgraph(g, s).graph)) return false;
  }
  return true;
}

bool contains_induced_3sun(const Graph& g, const ClassifyBudget& budget) {
  if (g.n() > budget.sun_max_vertices)
    throw BudgetExceeded("3-sun scan: |V| exceeds budget " + std::to_string(budget.sun_max_vertices));
  const int n = g.n();
  if (n < 6) return false;
  std::vector<Vertex> pick(6);
  std::function<bool(int, Vertex, VertexSet)> rec = [&](int depth, Vertex from, VertexSet s) -> bool {
    if (depth == 6) return is_3sun_mask(g, s);
    for (Vertex v = from; v <= n - (6 - depth); ++v)
      if (rec(depth + 1, v + 1, s | VertexSet::single(v))) return true;
    return false;
  };
  return rec(0, 0, {});
}

int max_clique_size(const Graph& g) { return max_clique_rec(g, {}, g.vertices(), 0, 0); }

bool max_clique_at_most(const Graph& g, int k) { return max_clique_size(g) <= k; }

std::vector<std::vector<Vertex>> induced_cycles(const Graph& g, const ClassifyBudget& budget) {
  std::vector<std::vector<Vertex>> out;
  NodeCounter counter(budget.cycle_search_nodes, "induced_cycles");
  std::vector<Vertex> path;
  VertexSet on_path;
  std::function<void()> extend = [&]() {
    counter.tick();
    const int m = static_cast<int>(path.size());
    const Vertex last = path.back();
    const Vertex s = path.front();
    if (m >= 3 && g.adjacent(last, s)) {
      if (m >= 4 && path[1] < last) out.push_back(path);
      return;
    }
    for (Vertex w : g.neighbours(last)) {
      if (w <= s || on_path.contains(w)) continue;
      // chordless: w may only touch the last vertex and (when closing) the start
      VertexSet inner = on_path - VertexSet::single(s) - VertexSet::single(last);
      if (!(g.neighbour_set(w) & inner).empty()) continue;
      path.push_back(w);
      on_path.insert(w);
      extend();
      path.pop_back();
      on_path.erase(w);
    }
  };
  for (Vertex s = 0; s < g.n(); ++s) {
    path = {s};
    on_path = VertexSet::single(s);
    extend();
  }
  return out;
}

bool wheels_uniquely_centered(const Graph& g, const ClassifyBudget& budget) {
  for (const auto& cyc : induced_cycles(g, budget)) {
    VertexSet c(cyc);
    int hubs = 0;
    for (Vertex x : g.vertices() - c)
      if (c.is_subset_of(g.neighbour_set(x))) ++hubs;
    if (hubs >= 2) return false;
  }
  return true;
}

std::optional<Labelling> find_lower_bound_labelling(const Graph& g, const ClassifyBudget& budget) {
  const int n = g.n();
  // First try the simple pattern: three consecutive vertices v0 - v1 - v2
  // labelled 0, 1, 2 and every other vertex labelled 2.
  for (Vertex v0 = 0; v0 < n; ++v0)
    for (Vertex v1 : g.neighbours(v0))
      for (Vertex v2 : g.neighbours(v1)) {
        if (v2 == v0) continue;
        std::vector<int> labels(n, 2);
        labels[v0] = 0;
        labels[v1] = 1;
        if (has_rainbow_triangle(g, labels)) continue;
        if (auto lab = witness_for(g, labels)) return lab;
      }

  if (n > budget.labelling_max_vertices)
    throw BudgetExceeded("lower-bound labelling search: |V| = " + std::to_string(n) + " exceeds budget " +
                         std::to_string(budget.labelling_max_vertices));

  // Exhaustive 3^|V| search, pruning as soon as a triangle becomes rainbow.
  std::vector<int> labels(n, -1);
  std::optional<Labelling> found;
  std::function<bool(Vertex)> rec = [&](Vertex v) -> bool {
    if (v == n) {
      found = witness_for(g, labels);
      return found.has_value();
    }
    for (int l = 0; l < 3; ++l) {
      labels[v] = l;
      bool rainbow = false;
      for (Vertex a : g.neighbours(v)) {
        if (a >= v || labels[a] == l) continue;
        for (Vertex b : g.neighbour_set(a) & g.neighbour_set(v))
          if (b < a && labels[b] != l && labels[b] != labels[a]) rainbow = true;
      }
      if (!rainbow && rec(v + 1)) return true;
    }
    labels[v] = -1;
    return false;
  };
  rec(0);
  return found;
}

bool verify_lower_bound_labelling(const Graph& g, const Labelling& lab) {
  if (static_cast<int>(lab.labels.size()) != g.n())
    throw InvalidInput("labelling must assign a label to every vertex");
  for (int l : lab.labels)
    if (l < 0 || l > 2) throw InvalidInput("labels must be in {0,1,2}");
  if (lab.cycle.empty()) throw InvalidInput("lower-bound labelling needs a witness cycle");

  if (has_rainbow_triangle(g, lab.labels)) return false;

  const auto& c = lab.cycle;
  const int k = static_cast<int>(c.size());
  if (k < 3) return false;
  VertexSet seen;
  for (int i = 0; i < k; ++i) {
    if (c[i] < 0 || c[i] >= g.n() || seen.contains(c[i])) return false;
    seen.insert(c[i]);
    if (!g.adjacent(c[i], c[(i + 1) % k])) return false;
  }
  int ones = 0, at = -1;
  for (int i = 0; i < k; ++i)
    if (lab.labels[c[i]] == 1) {
      ++ones;
      at = i;
    }
  if (ones != 1) return false;
  Vertex prev = c[(at + k - 1) % k], next = c[(at + 1) % k];
  int lp = lab.labels[prev], ln = lab.labels[next];
  if (!((lp == 0 && ln == 2) || (lp == 2 && ln == 0))) return false;
  if (lab.v1 && *lab.v1 != c[at]) return false;
  Vertex v0 = lp == 0 ? prev : next, v2 = lp == 0 ? next : prev;
  if (lab.v0 && *lab.v0 != v0) return false;
  if (lab.v2 && *lab.v2 != v2) return false;
  return true;
}

ClassReport classify(const Graph& g, const ClassifyBudget& budget) {
  ClassReport r;
  auto ch = check_chordal(g);
  r.chordal = ch.chordal;
  r.chordal_witness_cycle = ch.induced_cycle;
  auto br = check_bridged(g, budget);
  r.bridged = br.bridged;
  r.bridged_witness_cycle = br.isometric_cycle;
  r.radius = radius(g);
  r.diameter = diameter(g);
  if (r.radius == r.diameter) r.self_centered_k = r.radius;

  r.sufficient_conditions.is_chordal = r.chordal;
  r.sufficient_conditions.no_3sun = !contains_induced_3sun(g, budget);
  r.sufficient_conditions.wheels_uniquely_centered = wheels_uniquely_centered(g, budget);
  r.sufficient_conditions.k4_free = max_clique_at_most(g, 3);

  if (!r.bridged) {
    r.nicely_bridged = false;
  } else {
    try {
      r.nicely_bridged = is_nicely_bridged_exact(g, budget);
    } catch (const BudgetExceeded&) {
      if (r.sufficient_conditions.any()) r.nicely_bridged = true;
    }
  }

  try {
    r.lower_bound_labelling = find_lower_bound_labelling(g, budget);
    r.lower_bound_searched = true;
  } catch (const BudgetExceeded&) {
    r.lower_bound_searched = false;
  }
  return r;
}

}  // namespace aag
