#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aag/vertex_set.hpp"

namespace aag {

using Edge = std::pair<Vertex, Vertex>;

/// All-pairs hop distances of a connected graph.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  int operator()(Vertex u, Vertex v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  int& at(Vertex u, Vertex v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }

 private:
  int n_ = 0;
  std::vector<int> d_;
};

/// Immutable, undirected, connected simple graph on vertices 0..n-1.
///
/// Distances and geodesic intervals are computed once at construction; every
/// operation below reads them. Construction rejects self-loops, duplicate
/// edges, out-of-range ids and disconnected graphs.
class Graph {
 public:
  Graph(int n, const std::vector<Edge>& edges, std::string name = {});

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
  VertexSet neighbour_set(Vertex v) const { return adj_mask_[v]; }
  bool adjacent(Vertex u, Vertex v) const { return adj_mask_[u].contains(v); }
  std::vector<Edge> edges() const;
  int edge_count() const;
  VertexSet vertices() const { return VertexSet::range(n_); }

  const DistanceMatrix& distances() const { return dist_; }
  int distance(Vertex u, Vertex v) const { return dist_(u, v); }
  /// Vertices on some shortest u-v path (inclusive).
  VertexSet interval(Vertex u, Vertex v) const { return interval_[static_cast<std::size_t>(u) * n_ + v]; }

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_;
  std::string name_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<VertexSet> adj_mask_;
  DistanceMatrix dist_;
  std::vector<VertexSet> interval_;
};

// Graph-core operations. All require a connected graph (guaranteed by Graph).

const DistanceMatrix& distances(const Graph& g);
int eccentricity(const Graph& g, Vertex v);
int diameter(const Graph& g);
int radius(const Graph& g);
VertexSet center(const Graph& g);

/// D(U): largest pairwise distance inside `u_set`. Throws on empty set.
int set_diameter(const Graph& g, VertexSet u_set);
VertexSet interval(const Graph& g, Vertex u, Vertex v);
/// Smallest geodesically convex superset of `u_set`. Throws on empty set.
VertexSet convex_hull(const Graph& g, VertexSet u_set);
bool is_convex(const Graph& g, VertexSet u_set);
/// Distinct members pairwise adjacent. Empty sets and singletons are cliques.
bool is_clique(const Graph& g, VertexSet u_set);
/// Vertices of G[within] whose neighbourhood inside G[within] is a clique.
VertexSet simplicial_vertices(const Graph& g, VertexSet within);

/// Eccentricity of v measured inside G[within]. `within` must be convex, so
/// that distances of the induced subgraph coincide with those of g.
int eccentricity_within_convex(const Graph& g, VertexSet within, Vertex v);
/// Center of G[within] for a convex `within`.
VertexSet center_within_convex(const Graph& g, VertexSet within);

struct InducedSubgraph {
  Graph graph;
  /// to_parent[i] is the vertex of the parent graph that became vertex i.
  std::vector<Vertex> to_parent;
};

/// Relabelled induced subgraph G[u_set]; throws InvalidInput if it is empty
/// or disconnected.
InducedSubgraph induced_subgraph(const Graph& g, VertexSet u_set);

/// Deterministic geodesic midpoint g(u, v): the vertex at position
/// floor(d/2) from min(u,v) along the lexicographically smallest shortest
/// path from min(u,v) to max(u,v). Symmetric in its arguments.
Vertex midpoint_g(const Graph& g, Vertex u, Vertex v);

/// Lexicographically smallest shortest path from `from` to `to`.
std::vector<Vertex> lex_shortest_path(const Graph& g, Vertex from, Vertex to);

// Text format:
//   graph <n>
//   <u> <v>        (one edge per line)
//   # comment
Graph parse_graph(std::istream& in, std::string name = {});
Graph parse_graph_string(const std::string& text, std::string name = {});
Graph load_graph(const std::string& path);
std::string format_graph(const Graph& g);

}  // namespace aag
