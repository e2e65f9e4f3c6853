#include "aag/topology.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "aag/error.hpp"
#include "aag/sat.hpp"

namespace aag {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

using EdgeKey = std::pair<int, int>;
EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::map<EdgeKey, std::vector<int>> edge_triangles(const Complex& cx) {
  std::map<EdgeKey, std::vector<int>> out;
  for (int t = 0; t < static_cast<int>(cx.triangles.size()); ++t) {
    const auto& tri = cx.triangles[t];
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) out[edge_key(tri[i], tri[j])].push_back(t);
  }
  return out;
}

/// For each boundary position, the corner index k such that the position lies
/// on the side from corner k to corner k+1 (corners themselves map to k).
std::vector<int> side_of_position(const Complex& cx) {
  const int m = static_cast<int>(cx.boundary.size());
  std::vector<int> side(m, -1);
  std::vector<int> pos(cx.corners.size());
  for (std::size_t k = 0; k < cx.corners.size(); ++k)
    pos[k] = static_cast<int>(std::find(cx.boundary.begin(), cx.boundary.end(), cx.corners[k]) - cx.boundary.begin());
  for (std::size_t k = 0; k < cx.corners.size(); ++k) {
    int p = pos[k];
    const int stop = pos[(k + 1) % cx.corners.size()];
    do {
      side[p] = static_cast<int>(k);
      p = (p + 1) % m;
    } while (p != stop);
  }
  return side;
}

std::string key_of(int colour, const std::vector<int>& face) {
  std::string s = "p" + std::to_string(colour) + "|";
  for (std::size_t i = 0; i < face.size(); ++i) s += (i ? "," : "") + std::to_string(face[i]);
  return s;
}

}  // namespace

int Complex::num_edges() const {
  std::set<EdgeKey> e;
  for (const auto& t : triangles)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) e.insert(edge_key(t[i], t[j]));
  return static_cast<int>(e.size());
}

void validate_complex(const Complex& cx) {
  const int nv = cx.num_vertices();
  if (static_cast<int>(cx.key.size()) != nv || static_cast<int>(cx.carrier.size()) != nv)
    throw InvalidInput("complex vertex tables have different lengths");
  for (int col : cx.colour)
    if (col < 0 || col > 2) throw InvalidInput("vertex colour must be 0, 1 or 2");
  std::set<EdgeKey> edges;
  for (const auto& t : cx.triangles) {
    for (int v : t)
      if (v < 0 || v >= nv) throw InvalidInput("triangle names an unknown vertex");
    if (cx.colour[t[0]] == cx.colour[t[1]] || cx.colour[t[1]] == cx.colour[t[2]] ||
        cx.colour[t[0]] == cx.colour[t[2]])
      throw InvalidInput("triangle is not rainbow-coloured");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) edges.insert(edge_key(t[i], t[j]));
  }
  const int m = static_cast<int>(cx.boundary.size());
  if (m < 3) throw InvalidInput("boundary must have at least three vertices");
  if (std::set<int>(cx.boundary.begin(), cx.boundary.end()).size() != cx.boundary.size())
    throw InvalidInput("boundary is not a simple cycle");
  for (int i = 0; i < m; ++i)
    if (!edges.count(edge_key(cx.boundary[i], cx.boundary[(i + 1) % m])))
      throw InvalidInput("consecutive boundary vertices are not joined by an edge");
  if (static_cast<int>(cx.corners.size()) != cx.c) throw InvalidInput("need one corner per label");
  int last = -1, wraps = 0;
  for (int k = 0; k < cx.c; ++k) {
    auto it = std::find(cx.boundary.begin(), cx.boundary.end(), cx.corners[k]);
    if (it == cx.boundary.end()) throw InvalidInput("corner is not on the boundary");
    int p = static_cast<int>(it - cx.boundary.begin());
    if (p <= last) ++wraps;
    last = p;
  }
  if (wraps > 0) throw InvalidInput("corners must appear on the boundary in label order");
}

Complex build_H(int c) {
  if (c < 4) throw InvalidInput("H(c) needs c >= 4");
  // Six families of input triples (x0, x1, x2) for processes p0, p1, p2.
  struct Family {
    int k;
    std::array<int, 3> (*f)(int, int);
  };
  const Family families[] = {
      {3, [](int c, int a) { return std::array{3 * a, 3 * a + 1, c - 3 * a - 1}; }},
      {4, [](int c, int a) { return std::array{c - 3 * a - 2, 3 * a + 1, c - 3 * a - 1}; }},
      {5, [](int c, int a) { return std::array{c - 3 * a - 2, 3 * a + 1, 3 * a + 2}; }},
      {6, [](int c, int a) { return std::array{c - 3 * a - 2, c - 3 * a - 3, 3 * a + 2}; }},
      {7, [](int c, int a) { return std::array{3 * a + 3, c - 3 * a - 3, 3 * a + 2}; }},
      {8, [](int c, int a) { return std::array{3 * a + 3, c - 3 * a - 3, c - 3 * a - 4}; }},
  };
  Complex cx;
  cx.c = c;
  // Vertex id = input value; each value belongs to exactly one process.
  cx.colour.assign(c, -1);
  cx.key.assign(c, "");
  cx.carrier.assign(c, 0);
  for (const Family& fam : families)
    for (int a = 0; a <= floor_div(c - fam.k, 6); ++a) {
      const auto x = fam.f(c, a);
      for (int p = 0; p < 3; ++p) {
        if (x[p] < 0 || x[p] >= c) throw Error("H(c) construction produced an out-of-range input");
        if (cx.colour[x[p]] >= 0 && cx.colour[x[p]] != p) throw Error("input value assigned to two processes");
        cx.colour[x[p]] = p;
        cx.key[x[p]] = "p" + std::to_string(p) + ":" + std::to_string(x[p]);
        cx.carrier[x[p]] = std::uint64_t{1} << x[p];
      }
      cx.triangles.push_back(x);
    }
  for (int x = 0; x < c; ++x) {
    if (cx.colour[x] < 0) throw Error("H(c) misses input value " + std::to_string(x));
    cx.boundary.push_back(x);
    cx.corners.push_back(x);
  }
  validate_complex(cx);
  return cx;
}

Complex single_triangle() {
  Complex cx;
  cx.c = 3;
  cx.colour = {0, 1, 2};
  cx.key = {"p0:0", "p1:1", "p2:2"};
  cx.carrier = {1, 2, 4};
  cx.triangles = {{0, 1, 2}};
  cx.boundary = {0, 1, 2};
  cx.corners = {0, 1, 2};
  return cx;
}

Complex subdivide_once(const Complex& cx) {
  validate_complex(cx);
  Complex out;
  out.c = cx.c;
  std::map<std::pair<int, std::vector<int>>, int> ids;
  auto intern = [&](int colour, std::vector<int> face) {
    std::sort(face.begin(), face.end());
    auto [it, fresh] = ids.try_emplace({colour, face}, out.num_vertices());
    if (fresh) {
      std::uint64_t car = 0;
      for (int v : face) car |= cx.carrier[v];
      out.colour.push_back(colour);
      out.key.push_back(key_of(colour, face));
      out.carrier.push_back(car);
    }
    return it->second;
  };
  // The 13 ordered set partitions of {0,1,2}, as block index per colour.
  std::vector<std::array<int, 3>> partitions;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) {
        std::array<int, 3> blk{a, b, d};
        int used = *std::max_element(blk.begin(), blk.end()) + 1;
        bool dense = true;
        for (int i = 0; i < used; ++i)
          if (std::find(blk.begin(), blk.end(), i) == blk.end()) dense = false;
        if (dense) partitions.push_back(blk);
      }
  for (const auto& tri : cx.triangles) {
    std::array<int, 3> by_colour{};
    for (int v : tri) by_colour[cx.colour[v]] = v;
    for (const auto& blk : partitions) {
      std::array<int, 3> t{};
      for (int p = 0; p < 3; ++p) {
        std::vector<int> face;
        for (int q = 0; q < 3; ++q)
          if (blk[q] <= blk[p]) face.push_back(by_colour[q]);
        t[p] = intern(p, face);
      }
      out.triangles.push_back(t);
    }
  }
  // Each boundary edge a-b becomes a_solo - b_ab - a_ab - (b_solo).
  const int m = static_cast<int>(cx.boundary.size());
  for (int i = 0; i < m; ++i) {
    const int a = cx.boundary[i], b = cx.boundary[(i + 1) % m];
    out.boundary.push_back(intern(cx.colour[a], {a}));
    out.boundary.push_back(intern(cx.colour[b], {a, b}));
    out.boundary.push_back(intern(cx.colour[a], {a, b}));
  }
  for (int corner : cx.corners) out.corners.push_back(intern(cx.colour[corner], {corner}));
  validate_complex(out);
  return out;
}

Complex subdivide(const Complex& cx, int rounds) {
  Complex out = cx;
  for (int r = 0; r < rounds; ++r) out = subdivide_once(out);
  return out;
}

std::vector<int> sperner_violations(const Complex& cx, const SpernerLabels& labels) {
  if (static_cast<int>(labels.size()) != cx.num_vertices())
    throw InvalidInput("labelling must assign a label to every vertex");
  std::set<int> bad;
  for (int v = 0; v < cx.num_vertices(); ++v)
    if (labels[v] < 0 || labels[v] >= cx.c) bad.insert(v);
  const auto side = side_of_position(cx);
  for (std::size_t p = 0; p < cx.boundary.size(); ++p) {
    const int v = cx.boundary[p];
    const int k = side[p];
    if (labels[v] != k && labels[v] != (k + 1) % cx.c) bad.insert(v);
  }
  for (int k = 0; k < cx.c; ++k)
    if (labels[cx.corners[k]] != k) bad.insert(cx.corners[k]);
  return {bad.begin(), bad.end()};
}

TrichromaticResult find_trichromatic(const Complex& cx, const SpernerLabels& labels) {
  const auto bad = sperner_violations(cx, labels);
  if (!bad.empty()) {
    std::string list;
    for (int v : bad) list += (list.empty() ? "" : ", ") + std::to_string(v);
    throw InvalidInput("not a Sperner labelling; violating vertices: " + list);
  }
  TrichromaticResult r;
  auto labs = [&](int t) {
    const auto& tri = cx.triangles[t];
    return std::array{labels[tri[0]], labels[tri[1]], labels[tri[2]]};
  };
  for (int t = 0; t < static_cast<int>(cx.triangles.size()); ++t) {
    auto l = labs(t);
    if (l[0] != l[1] && l[1] != l[2] && l[0] != l[2]) {
      r.triangles.push_back(t);
      if (std::count(l.begin(), l.end(), 0) && std::count(l.begin(), l.end(), 1)) ++r.parity_count;
    }
  }

  // Door walk: doors are edges labelled {0,1}. Walks from boundary doors on
  // the side between corners 0 and 1 either leave through another boundary
  // door or stop in a {0,1,x} triangle; an odd door count leaves one that stops.
  const auto et = edge_triangles(cx);
  auto is_door = [&](int a, int b) {
    return (labels[a] == 0 && labels[b] == 1) || (labels[a] == 1 && labels[b] == 0);
  };
  const auto side = side_of_position(cx);
  const int m = static_cast<int>(cx.boundary.size());
  for (int p = 0; p < m && r.walk.empty(); ++p) {
    if (side[p] != 0) continue;
    const int a = cx.boundary[p], b = cx.boundary[(p + 1) % m];
    if (!is_door(a, b)) continue;
    std::vector<int> walk;
    EdgeKey door = edge_key(a, b);
    int tri = et.at(door).front();
    while (true) {
      walk.push_back(tri);
      auto l = labs(tri);
      if (l[0] != l[1] && l[1] != l[2] && l[0] != l[2]) {
        r.walk = walk;
        break;
      }
      const auto& tv = cx.triangles[tri];
      EdgeKey next{-1, -1};
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          EdgeKey e = edge_key(tv[i], tv[j]);
          if (e != door && is_door(tv[i], tv[j])) next = e;
        }
      const auto& across = et.at(next);
      if (across.size() < 2) break;  // left through the boundary
      door = next;
      tri = across[0] == tri ? across[1] : across[0];
    }
  }
  return r;
}

SpernerLabels random_sperner_labelling(const Complex& cx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SpernerLabels labels(cx.num_vertices());
  for (int& l : labels) l = std::uniform_int_distribution<int>(0, cx.c - 1)(rng);
  const auto side = side_of_position(cx);
  for (std::size_t p = 0; p < cx.boundary.size(); ++p) {
    const int k = side[p];
    labels[cx.boundary[p]] = std::uniform_int_distribution<int>(0, 1)(rng) ? (k + 1) % cx.c : k;
  }
  for (int k = 0; k < cx.c; ++k) labels[cx.corners[k]] = k;
  return labels;
}

SearchResult search_protocol(int c, int rounds, const SearchOptions& opt) {
  if (c < 4 || rounds < 0) throw InvalidInput("search needs c >= 4 and rounds >= 0");
  if (c > opt.max_c || rounds > opt.max_rounds)
    throw BudgetExceeded("search_protocol(" + std::to_string(c) + ", " + std::to_string(rounds) +
                         ") exceeds the budget c <= " + std::to_string(opt.max_c) +
                         ", rounds <= " + std::to_string(opt.max_rounds));
  const Complex cx = subdivide(build_H(c), rounds);
  const int nv = cx.num_vertices();

  // Allowed decisions per vertex, from the input values it has seen.
  std::vector<std::vector<int>> domain(nv);
  for (int v = 0; v < nv; ++v) {
    const std::uint64_t car = cx.carrier[v];
    const int seen = std::popcount(car);
    std::vector<int> vals;
    for (int x = 0; x < c; ++x)
      if ((car >> x) & 1U) vals.push_back(x);
    const bool edge = seen == 2 && ((vals[1] - vals[0]) % c == 1 || (vals[0] - vals[1] + c) % c == 1);
    if (!opt.drop_boundary_conditions && seen == 1 && !opt.drop_corner_conditions)
      domain[v] = vals;
    else if (!opt.drop_boundary_conditions && edge)
      domain[v] = vals;
    else
      for (int x = 0; x < c; ++x) domain[v].push_back(x);
  }

  SatSolver s;
  auto var = [c](int v, int l) { return v * c + l + 1; };
  for (int v = 0; v < nv; ++v) {
    std::vector<int> some;
    for (int l : domain[v]) some.push_back(var(v, l));
    s.add_clause(some);
    for (int l = 0; l < c; ++l)
      if (std::find(domain[v].begin(), domain[v].end(), l) == domain[v].end()) s.add_clause({-var(v, l)});
    for (int a = 0; a < c; ++a)
      for (int b = a + 1; b < c; ++b) s.add_clause({-var(v, a), -var(v, b)});
  }
  for (const auto& t : cx.triangles)
    for (int x : domain[t[0]])
      for (int y : domain[t[1]])
        for (int z : domain[t[2]])
          if (x != y && y != z && x != z) s.add_clause({-var(t[0], x), -var(t[1], y), -var(t[2], z)});

  SearchResult r;
  r.c = c;
  r.rounds = rounds;
  r.vertices = nv;
  r.triangles = static_cast<int>(cx.triangles.size());
  r.variables = s.num_vars();
  r.clauses = s.num_clauses();
  r.sat = s.solve();
  if (r.sat) {
    // Fix vertices in id order to the smallest label that stays satisfiable.
    std::vector<int> fixed;
    for (int v = 0; v < nv; ++v)
      for (int l : domain[v]) {
        fixed.push_back(var(v, l));
        if (s.solve(fixed)) {
          r.labels.push_back(l);
          break;
        }
        fixed.pop_back();
      }
    if (static_cast<int>(r.labels.size()) != nv) throw Error("lexicographic witness extraction failed");
  }
  r.decisions = s.stats().decisions;
  r.conflicts = s.stats().conflicts;
  r.propagations = s.stats().propagations;
  return r;
}

}  // namespace aag
