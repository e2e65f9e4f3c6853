#include <cmath>
#include <random>

#include "aag/error.hpp"
#include "aag/fixtures.hpp"
#include "aag/protocol.hpp"
#include "aag/simulator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aag;
namespace fx = aag::fixtures;

namespace {

int log_oracle(long double base, int d) {
  int t = 0;
  long double x = 1;
  while (x < d) {
    x *= base;
    ++t;
  }
  return t;
}

std::vector<std::vector<Vertex>> all_inputs(int n_vertices, int procs) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> cur(procs, 0);
  while (true) {
    out.push_back(cur);
    int i = 0;
    while (i < procs && ++cur[i] == n_vertices) cur[i++] = 0;
    if (i == procs) break;
  }
  return out;
}

}  // namespace

TEST_CASE("integer logarithms") {
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log_three_halves(1) == 0);
  CHECK(ceil_log_three_halves(2) == 2);
  CHECK(ceil_log_three_halves(3) == 3);
  for (int d = 1; d <= 2000; ++d) {
    CHECK(ceil_log2(d) == log_oracle(2.0L, d));
    CHECK(ceil_log_three_halves(d) == log_oracle(1.5L, d));
  }
}

TEST_CASE("psi_path") {
  Graph p5 = fx::path(5);
  CHECK(psi_path(p5, {3}) == 3);
  CHECK(psi_path(p5, {0, 4}) == 2);
  CHECK(psi_path(p5, {1, 2}) == 1);
  CHECK_THROWS_AS(psi_path(p5, {0, 1, 2}), InvalidInput);
  CHECK_THROWS_AS(psi_path(p5, {}), InvalidInput);
}

TEST_CASE("psi_center") {
  Graph sun = fx::sun3();
  CHECK(psi_center(sun, sun.vertices()) == 0);
  CHECK(psi_center(sun, {3, 4}) == 1);
  Graph p5 = fx::path(5);
  CHECK(psi_center(p5, {0, 4}) == 2);
  CHECK(psi_center(p5, {1}) == 1);
  // Center of a path on 4 vertices is {1,2}; both non-simplicial.
  CHECK(psi_center(fx::path(4), {0, 3}) == 1);
  Graph k4 = fx::complete(4);
  CHECK(psi_center(k4, {1, 3}) == 1);
  for (const Graph& g : {fx::wheel(6), fx::triangle_strip(7), fx::sun3()}) {
    const std::uint64_t all = (std::uint64_t{1} << g.n()) - 1;
    for (std::uint64_t m = 1; m <= all; ++m) {
      VertexSet x(m), h = oracle::hull(g, x);
      Vertex c = psi_center(g, x);
      CHECK(h.contains(c));
      int best = 1 << 20;
      for (Vertex v : h) {
        int e = 0;
        for (Vertex w : h) e = std::max(e, g.distance(v, w));
        best = std::min(best, e);
      }
      int ecc = 0;
      for (Vertex w : h) ecc = std::max(ecc, g.distance(c, w));
      CHECK(ecc == best);
    }
  }
}

TEST_CASE("protocol parameters") {
  auto p4 = make_one_resilient(fx::path(4));
  CHECK(p4.id == "one-resilient");
  CHECK(p4.T == 2);
  CHECK(p4.num_objects == 3);
  CHECK(p4.wait_rule == WaitRule::f_wait(1));
  CHECK(make_one_resilient(fx::cycle(5)).num_objects == 2);
  CHECK(make_one_resilient(fx::cycle(6)).num_objects == 3);
  CHECK(make_one_resilient(fx::sun3()).num_objects == 2);

  auto wf = make_wait_free_bridged(fx::sun3());
  CHECK(wf.id == "wait-free-bridged");
  CHECK(wf.T_star == 3);
  CHECK(wf.T == 6);
  CHECK(wf.num_objects == 7);
  CHECK(wf.wait_rule == WaitRule::wait_free());
  CHECK(make_wait_free_bridged(fx::path(2)).num_objects == 3);
  CHECK(make_wait_free_bridged(fx::path(4)).num_objects == 5);
  CHECK(make_wait_free_bridged(fx::triangle_strip(7)).num_objects == 8);
  CHECK_FALSE(wf.formula.empty());

  CHECK(make_protocol("one-resilient", fx::path(3)).id == "one-resilient");
  CHECK(make_protocol("wait-free-bridged", fx::path(3)).id == "wait-free-bridged");
  CHECK_THROWS_AS(make_protocol("nope", fx::path(3)), InvalidInput);
  CHECK(protocol_metadata(wf).num_objects == 7);
}

TEST_CASE("hand-checked one-resilient run") {
  Graph p5 = fx::path(5);
  auto p = make_one_resilient(p5);
  REQUIRE(p.num_objects == 3);
  ScheduleOutcome s{3,
                    {{{1, 2, 0}, {3, 2, 2}}, {{1, 2, 0}, {3, 2, 2}}, {{0, 1, 2}, {3, 3, 3}}},
                    {}};
  auto tr = run(p, p5, {0, 4, 4}, s, 11);
  REQUIRE(tr.iterations.size() == 3);
  CHECK(tr.iterations[0].chosen == std::vector<Vertex>{0, 4, 4});
  CHECK(tr.iterations[1].chosen == std::vector<Vertex>{2, 4, 4});
  CHECK(tr.iterations[1].views[0] == VertexSet{0, 4});
  CHECK(tr.iterations[2].chosen == std::vector<Vertex>{3, 3, 3});
  CHECK(tr.outputs == std::vector<std::optional<Vertex>>{3, 3, 3});
  CHECK(tr.seed == 11u);
  CHECK(tr.protocol == "one-resilient");
  CHECK(value_set(tr, 0) == VertexSet{0, 4});
  CHECK(value_set(tr, 2) == VertexSet{2, 4});
  CHECK(surviving_outputs(tr) == std::vector<Vertex>{3, 3, 3});
}

TEST_CASE("crashed processes produce no output") {
  Graph p3 = fx::path(3);
  auto p = make_wait_free_bridged(p3);
  auto s = random_schedule(3, p.num_objects, p.wait_rule, {0, 0.0, {}}, 1);
  s.crashes.push_back({2, 1, CrashPhase::AfterUpdate});
  for (int t = 1; t < p.num_objects; ++t) {
    auto& o = s.objects[t];
    if (t > 1) std::erase(o.order, 2);
    o.cuts[2] = -1;
    for (int i = 0; i < 2; ++i) {
      int pos = static_cast<int>(std::find(o.order.begin(), o.order.end(), i) - o.order.begin());
      o.cuts[i] = std::clamp(o.cuts[i], pos + 1, static_cast<int>(o.order.size()));
    }
  }
  auto tr = run(p, p3, {0, 1, 2}, s);
  CHECK_FALSE(tr.outputs[2].has_value());
  CHECK(tr.outputs[0].has_value());
  CHECK(tr.iterations[1].chosen[2] == -1);
  CHECK(tr.iterations[1].views[2].empty());
  CHECK(tr.iterations[0].chosen[2] >= 0);
  CHECK(surviving_outputs(tr).size() == 2);
}

TEST_CASE("run rejects schedules outside the protocol's model") {
  Graph p4 = fx::path(4);
  auto p = make_one_resilient(p4);
  RandomScheduleOptions two;
  two.max_crashes = 2;
  auto s = random_schedule(3, p.num_objects, WaitRule::wait_free(), two, 3);
  s.objects[0].cuts = {1, 2, 3};
  s.objects[0].order = {0, 1, 2};
  s.crashes.clear();
  for (auto& o : s.objects) {
    o.order = {0, 1, 2};
    o.cuts = {1, 2, 3};
  }
  CHECK_THROWS_AS(run(p, p4, {0, 1, 2}, s), InvalidInput);
  ScheduleOutcome wrong_objects{3, {}, {}};
  CHECK_THROWS_AS(run(p, p4, {0, 1, 2}, wrong_objects), InvalidInput);
  auto ok = random_schedule(3, p.num_objects, p.wait_rule, {}, 4);
  CHECK_THROWS_AS(run(p, p4, {0, 1, 9}, ok), InvalidInput);
  CHECK_THROWS_AS(run(p, p4, {0, 1}, ok), InvalidInput);
}

TEST_CASE("runs are deterministic and views respect the snapshot model") {
  Graph g = fx::sun3();
  auto p = make_wait_free_bridged(g);
  RandomScheduleOptions opt;
  opt.max_crashes = 2;
  opt.crash_probability = 0.2;
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::vector<Vertex> in{static_cast<int>(rng() % 6), static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)};
    auto s = random_schedule(3, p.num_objects, p.wait_rule, opt, seed);
    auto a = run(p, g, in, s, seed);
    CHECK(a == run(p, g, in, s, seed));
    REQUIRE(static_cast<int>(a.iterations.size()) == p.num_objects);
    std::vector<Vertex> own = in;
    for (int t = 0; t < p.num_objects; ++t) {
      const auto& it = a.iterations[t];
      for (int i = 0; i < 3; ++i) {
        if (it.chosen[i] < 0) continue;
        CHECK(it.views[i].contains(own[i]));
        CHECK(it.views[i].is_subset_of(value_set(a, t)));
        CHECK(it.chosen[i] == p.step(t, own[i], it.views[i]));
      }
      // Views of one object form a chain.
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (it.chosen[i] >= 0 && it.chosen[j] >= 0)
            CHECK((it.views[i].is_subset_of(it.views[j]) || it.views[j].is_subset_of(it.views[i])));
      for (int i = 0; i < 3; ++i)
        if (it.chosen[i] >= 0) own[i] = it.chosen[i];
    }
  }
}

TEST_CASE("exhaustive agreement on a small case") {
  Graph p3 = fx::path(3);
  auto p = make_one_resilient(p3);
  EnumerationOptions opt;
  opt.max_crashes = 1;
  int runs = 0;
  for (const auto& in : all_inputs(3, 3))
    enumerate_schedules(3, p.num_objects, p.wait_rule, opt, [&](const ScheduleOutcome& s) {
      auto tr = run(p, p3, in, s);
      auto outs = surviving_outputs(tr);
      for (Vertex a : outs)
        for (Vertex b : outs) CHECK(p3.distance(a, b) <= 1);
      ++runs;
    });
  CHECK(runs > 0);
}
