#include "aag/protocol.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "aag/error.hpp"

namespace aag {

int ceil_log2(int d) {
  int t = 0;
  std::int64_t p = 1;
  while (p < d) {
    p *= 2;
    ++t;
  }
  return t;
}

int ceil_log_three_halves(int d) {
  // (3/2)^t >= d  <=>  3^t >= d * 2^t
  int t = 0;
  std::int64_t three = 1, two = 1;
  while (three < d * two) {
    three *= 3;
    two *= 2;
    ++t;
  }
  return t;
}

Vertex psi_path(const Graph& g, VertexSet x_set) {
  if (x_set.size() == 1) return x_set.min();
  if (x_set.size() == 2) return midpoint_g(g, x_set.min(), x_set.max());
  throw InvalidInput("psi_path needs a set of one or two vertices, got " + std::to_string(x_set.size()));
}

Vertex psi_center(const Graph& g, VertexSet x_set) {
  if (x_set.empty()) throw InvalidInput("psi_center of an empty set");
  VertexSet hull = convex_hull(g, x_set);
  VertexSet c = center_within_convex(g, hull);
  VertexSet preferred = c - simplicial_vertices(g, hull);
  return preferred.empty() ? c.min() : preferred.min();
}

namespace {

/// Thread-safe memo for a function of a vertex set.
class SetCache {
 public:
  template <class F>
  Vertex get(VertexSet key, F&& compute) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    Vertex v = compute();
    std::unique_lock lock(mu_);
    map_.emplace(key, v);
    return v;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<VertexSet, Vertex> map_;
};

}  // namespace

ProtocolSpec make_one_resilient(const Graph& g) {
  auto shared = std::make_shared<const Graph>(g);
  const int diam = diameter(g);
  ProtocolSpec p;
  p.id = "one-resilient";
  p.wait_rule = WaitRule::f_wait(1);
  p.T = ceil_log2(diam);
  p.num_objects = p.T + 1;
  p.graph = shared;
  p.step = [shared](int t, Vertex, VertexSet view) -> Vertex {
    if (t == 0) return view.min();
    return psi_path(*shared, view);
  };
  p.formula = {"diam(G) = " + std::to_string(diam),
               "T = ceil(log2 diam) = " + std::to_string(p.T),
               "objects = T + 1 = " + std::to_string(p.num_objects)};
  return p;
}

ProtocolSpec make_wait_free_bridged(const Graph& g) {
  auto shared = std::make_shared<const Graph>(g);
  auto cache = std::make_shared<SetCache>();
  const int diam = diameter(g);
  ProtocolSpec p;
  p.id = "wait-free-bridged";
  p.wait_rule = WaitRule::wait_free();
  p.T_star = ceil_log_three_halves(diam) + 1;
  p.T = std::max(g.n(), p.T_star);
  p.num_objects = p.T + 1;
  p.graph = shared;
  p.step = [shared, cache](int, Vertex, VertexSet view) -> Vertex {
    return cache->get(view, [&] { return psi_center(*shared, view); });
  };
  p.formula = {"diam(G) = " + std::to_string(diam),
               "T* = ceil(log_{3/2} diam) + 1 = " + std::to_string(p.T_star),
               "T = max(|V|, T*) = max(" + std::to_string(g.n()) + ", " + std::to_string(p.T_star) +
                   ") = " + std::to_string(p.T),
               "objects = T + 1 = " + std::to_string(p.num_objects)};
  return p;
}

ProtocolSpec make_protocol(const std::string& id, const Graph& g) {
  if (id == "one-resilient") return make_one_resilient(g);
  if (id == "wait-free-bridged") return make_wait_free_bridged(g);
  throw InvalidInput("unknown protocol '" + id + "' (expected one-resilient or wait-free-bridged)");
}

ProtocolMetadata protocol_metadata(const ProtocolSpec& p) { return {p.id, p.num_objects, p.wait_rule, p.formula}; }

}  // namespace aag
