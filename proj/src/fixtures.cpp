#include "aag/fixtures.hpp"

#include <string>

namespace aag::fixtures {

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e, "P" + std::to_string(n));
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e, "C" + std::to_string(n));
}

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e, "K" + std::to_string(n));
}

Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e, "K1," + std::to_string(leaves));
}

Graph wheel(int rim) {
  std::vector<Edge> e;
  for (int i = 0; i < rim; ++i) {
    e.emplace_back(i, (i + 1) % rim);
    e.emplace_back(i, rim);
  }
  return Graph(rim + 1, e, "W" + std::to_string(rim));
}

Graph wheel_minus_spoke(int rim) {
  std::vector<Edge> e;
  for (int i = 0; i < rim; ++i) {
    e.emplace_back(i, (i + 1) % rim);
    if (i != 0) e.emplace_back(i, rim);
  }
  return Graph(rim + 1, e, "W" + std::to_string(rim) + "-spoke");
}

Graph sun3() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {3, 1}, {4, 1}, {4, 2}, {5, 2}, {5, 0}}, "sun3");
}

Graph triangle_strip(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) {
    e.emplace_back(i, i + 1);
    if (i + 2 < n) e.emplace_back(i, i + 2);
  }
  return Graph(n, e, "strip" + std::to_string(n));
}

Graph twin_hub_wheel() {
  std::vector<Edge> e;
  for (int i = 0; i < 6; ++i) {
    e.emplace_back(i, (i + 1) % 6);
    e.emplace_back(i, 6);
    e.emplace_back(i, 7);
  }
  e.emplace_back(6, 7);
  e.insert(e.end(), {{8, 0}, {8, 6}, {9, 0}, {9, 5}, {9, 7}});
  return Graph(10, e, "twin-hub-wheel");
}

Graph no_simplicial_bridged() {
  const std::vector<Edge> e{
      {0, 5}, {0, 7}, {0, 10}, {0, 11}, {1, 6}, {1, 10}, {1, 12}, {1, 13},
      {2, 3}, {2, 7}, {2, 9}, {2, 12}, {3, 4}, {3, 7}, {3, 12}, {4, 6},
      {4, 7}, {4, 8}, {4, 10}, {4, 12}, {5, 7}, {5, 8}, {5, 10}, {6, 10},
      {6, 12}, {7, 8}, {7, 9}, {7, 10}, {7, 11}, {7, 12}, {8, 10}, {9, 11},
      {9, 12}, {10, 11}, {10, 12}, {10, 13}, {11, 12}, {11, 13}, {12, 13}};
  return Graph(14, e, "no-simplicial");
}

}  // namespace aag::fixtures
