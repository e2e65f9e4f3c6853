#include "aag/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "aag/error.hpp"

namespace aag {

namespace {

std::vector<int> bfs(const std::vector<std::vector<Vertex>>& adj, Vertex src) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<Vertex> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

Graph::Graph(int n, const std::vector<Edge>& edges, std::string name)
    : n_(n), name_(std::move(name)), adj_(n), adj_mask_(n), dist_(n) {
  if (n < 1 || n > kMaxVertices)
    throw InvalidInput("graph must have between 1 and " + std::to_string(kMaxVertices) + " vertices, got " +
                       std::to_string(n));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidInput("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
    if (adj_mask_[u].contains(v))
      throw InvalidInput("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    adj_mask_[u].insert(v);
    adj_mask_[v].insert(u);
  }
  for (int v = 0; v < n; ++v) adj_[v] = adj_mask_[v].to_vector();

  for (Vertex s = 0; s < n; ++s) {
    auto d = bfs(adj_, s);
    for (Vertex t = 0; t < n; ++t) {
      if (d[t] < 0) throw InvalidInput("graph is disconnected (no path " + std::to_string(s) + "-" + std::to_string(t) + ")");
      dist_.at(s, t) = d[t];
    }
  }

  interval_.resize(static_cast<std::size_t>(n) * n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      VertexSet s;
      for (Vertex w = 0; w < n; ++w)
        if (dist_(u, w) + dist_(w, v) == dist_(u, v)) s.insert(w);
      interval_[static_cast<std::size_t>(u) * n + v] = s;
    }
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Graph::edge_count() const {
  int twice = 0;
  for (const auto& a : adj_) twice += static_cast<int>(a.size());
  return twice / 2;
}

const DistanceMatrix& distances(const Graph& g) { return g.distances(); }

int eccentricity(const Graph& g, Vertex v) { return eccentricity_within_convex(g, g.vertices(), v); }

int diameter(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.n(); ++v) best = std::max(best, eccentricity(g, v));
  return best;
}

int radius(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.n(); ++v) best = std::min(best, eccentricity(g, v));
  return best;
}

VertexSet center(const Graph& g) { return center_within_convex(g, g.vertices()); }

int set_diameter(const Graph& g, VertexSet u_set) {
  if (u_set.empty()) throw InvalidInput("set_diameter of an empty set");
  int best = 0;
  for (Vertex u : u_set)
    for (Vertex v : u_set)
      if (u < v) best = std::max(best, g.distance(u, v));
  return best;
}

VertexSet interval(const Graph& g, Vertex u, Vertex v) { return g.interval(u, v); }

VertexSet convex_hull(const Graph& g, VertexSet u_set) {
  if (u_set.empty()) throw InvalidInput("convex_hull of an empty set");
  VertexSet hull = u_set;
  // Pairs already closed stay closed; only pairs touching new vertices need
  // another pass.
  VertexSet fresh = u_set;
  while (!fresh.empty()) {
    VertexSet next = hull;
    for (Vertex u : fresh)
      for (Vertex v : hull) next |= g.interval(u, v);
    fresh = next - hull;
    hull = next;
  }
  return hull;
}

bool is_convex(const Graph& g, VertexSet u_set) {
  for (Vertex u : u_set)
    for (Vertex v : u_set)
      if (u < v && !g.interval(u, v).is_subset_of(u_set)) return false;
  return true;
}

bool is_clique(const Graph& g, VertexSet u_set) {
  for (Vertex u : u_set)
    if (!(u_set - VertexSet::single(u)).is_subset_of(g.neighbour_set(u))) return false;
  return true;
}

VertexSet simplicial_vertices(const Graph& g, VertexSet within) {
  VertexSet out;
  for (Vertex v : within)
    if (is_clique(g, g.neighbour_set(v) & within)) out.insert(v);
  return out;
}

int eccentricity_within_convex(const Graph& g, VertexSet within, Vertex v) {
  int best = 0;
  for (Vertex w : within) best = std::max(best, g.distance(v, w));
  return best;
}

VertexSet center_within_convex(const Graph& g, VertexSet within) {
  VertexSet out;
  int best = std::numeric_limits<int>::max();
  for (Vertex v : within) {
    int e = eccentricity_within_convex(g, within, v);
    if (e < best) {
      best = e;
      out = VertexSet::single(v);
    } else if (e == best) {
      out.insert(v);
    }
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, VertexSet u_set) {
  if (u_set.empty()) throw InvalidInput("induced_subgraph of an empty set");
  std::vector<Vertex> to_parent = u_set.to_vector();
  std::vector<int> to_child(g.n(), -1);
  for (int i = 0; i < static_cast<int>(to_parent.size()); ++i) to_child[to_parent[i]] = i;
  std::vector<Edge> edges;
  for (Vertex u : u_set)
    for (Vertex v : g.neighbour_set(u) & u_set)
      if (u < v) edges.emplace_back(to_child[u], to_child[v]);
  try {
    Graph sub(static_cast<int>(to_parent.size()), edges, g.name().empty() ? "" : g.name() + "[sub]");
    return {std::move(sub), std::move(to_parent)};
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("induced subgraph is not a valid connected graph: ") + e.what());
  }
}

std::vector<Vertex> lex_shortest_path(const Graph& g, Vertex from, Vertex to) {
  std::vector<Vertex> path{from};
  Vertex cur = from;
  while (cur != to) {
    // Neighbours are sorted, so the first one that gets closer is the
    // smallest id and the resulting path is lexicographically least.
    for (Vertex w : g.neighbours(cur)) {
      if (g.distance(w, to) == g.distance(cur, to) - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

Vertex midpoint_g(const Graph& g, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  if (u == v) return u;
  auto path = lex_shortest_path(g, u, v);
  return path[g.distance(u, v) / 2];
}

Graph parse_graph(std::istream& in, std::string name) {
  std::string line;
  int n = -1;
  int lineno = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    auto fail = [&](const std::string& what) {
      throw InvalidInput("graph parse error at line " + std::to_string(lineno) + ": " + what);
    };
    if (n < 0) {
      std::string kw;
      if (!(ls >> kw >> n) || kw != "graph") fail("expected 'graph <n>' header");
      std::string rest;
      if (ls >> rest) fail("trailing text after header");
      if (n < 1) fail("vertex count must be positive");
      continue;
    }
    long long u = 0, v = 0;
    if (!(ls >> u >> v)) fail("expected '<u> <v>'");
    std::string rest;
    if (ls >> rest) fail("trailing text after edge");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex id out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (n < 0) throw InvalidInput("graph parse error: missing 'graph <n>' header");
  return Graph(n, edges, std::move(name));
}

Graph parse_graph_string(const std::string& text, std::string name) {
  std::istringstream in(text);
  return parse_graph(in, std::move(name));
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file " + path);
  std::string name = path;
  auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  auto dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return parse_graph(in, name);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  if (!g.name().empty()) out << "# " << g.name() << "\n";
  out << "graph " << g.n() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

}  // namespace aag
