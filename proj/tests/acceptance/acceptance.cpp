// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "aag/classify.hpp"
#include "aag/fixtures.hpp"
#include "aag/reduction.hpp"
#include "aag/simulator.hpp"
#include "aag/sync.hpp"
#include "aag/topology.hpp"
#include "aag/verify.hpp"

using namespace aag;
namespace fx = aag::fixtures;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int notes = 0;

  /// Records a failure; keeps the first few messages.
  void fail(const std::string& why) {
    if (pass || notes < 3) {
      if (notes++) detail << "; ";
      detail << why;
    }
    pass = false;
  }
  void note(const std::string& s) {
    if (!pass) return;
    if (notes++) detail << "; ";
    detail << s;
  }
};

std::vector<std::vector<Vertex>> all_triples(int nv) {
  std::vector<std::vector<Vertex>> out;
  for (int a = 0; a < nv; ++a)
    for (int b = 0; b < nv; ++b)
      for (int c = 0; c < nv; ++c) out.push_back({a, b, c});
  return out;
}

std::vector<std::vector<Vertex>> sorted_triples(int nv) {
  std::vector<std::vector<Vertex>> out;
  for (int a = 0; a < nv; ++a)
    for (int b = a; b < nv; ++b)
      for (int c = b; c < nv; ++c) out.push_back({a, b, c});
  return out;
}

std::string str(const std::vector<Vertex>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

const Verdict* verdict(const VerdictBundle& b, const std::string& name) {
  for (const auto& v : b.verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

/// Fails unless every named lemma is present and passing.
void require_lemmas(Outcome& out, const VerdictBundle& b, std::initializer_list<const char*> names,
                    const std::string& where) {
  for (const char* n : names) {
    const Verdict* v = verdict(b, n);
    if (!v)
      out.fail(where + ": lemma " + n + " was not checked");
    else if (!v->pass)
      out.fail(where + ": " + n + " at t=" + std::to_string(v->t) + ": " + v->detail);
  }
}

void check_bundle(Outcome& out, const VerdictBundle& b, const std::string& where) {
  if (!b.pass()) {
    const Verdict* f = b.first_failure();
    out.fail(where + ": " + f->name + " " + f->detail);
  }
}

// A1
Outcome one_resilient_exhaustive() {
  Outcome out;
  std::uint64_t runs = 0;
  for (const Graph& g : {fx::path(4), fx::cycle(5), fx::cycle(6), fx::sun3()}) {
    const ProtocolSpec p = make_one_resilient(g);
    const TraceCheckOptions lemmas = lemma_options_for(g);
    const auto schedules = all_schedules(3, p.num_objects, p.wait_rule, {1, {}, 1'000'000});
    for (const auto& in : all_triples(g.n()))
      for (const auto& s : schedules) {
        const ExecutionTrace tr = run(p, g, in, s);
        const VerdictBundle b = check_trace(g, tr, lemmas);
        const std::string where = g.name() + " inputs " + str(in);
        check_bundle(out, b, where);
        require_lemmas(out, b, {"agreement", "validity-hull", "path-shrink"}, where);
        ++runs;
      }
  }
  out.note(std::to_string(runs) + " runs");
  return out;
}

// A2
Outcome wait_free_nicely_bridged() {
  Outcome out;
  std::uint64_t runs = 0;
  constexpr std::uint64_t kSamples = 100'000;
  for (const Graph& g : {fx::path(4), fx::sun3(), fx::path(3), fx::triangle_strip(7)}) {
    const ProtocolSpec p = make_wait_free_bridged(g);
    const TraceCheckOptions lemmas = lemma_options_for(g);
    if (!lemmas.bridged || !lemmas.nicely_bridged) out.fail(g.name() + " is not classified as nicely bridged");
    auto one = [&](const std::vector<Vertex>& in, const ScheduleOutcome& s, std::optional<std::uint64_t> seed) {
      const ExecutionTrace tr = run(p, g, in, s, seed);
      const VerdictBundle b = check_trace(g, tr, lemmas);
      const std::string where = g.name() + " inputs " + str(in) + (seed ? " seed " + std::to_string(*seed) : "");
      check_bundle(out, b, where);
      require_lemmas(out, b,
                     {"agreement", "validity-hull", "bridged-shrink", "diameter-two-landing", "radius-one-step",
                      "strict-hull-shrink"},
                     where);
      ++runs;
    };
    if (p.num_objects <= 4) {
      const auto schedules = all_schedules(3, p.num_objects, p.wait_rule, {2, {}, 1'000'000});
      for (const auto& in : all_triples(g.n()))
        for (const auto& s : schedules) one(in, s, std::nullopt);
      out.note(g.name() + " exhaustive over " + std::to_string(schedules.size()) + " schedules");
    } else {
      RandomScheduleOptions opt;
      opt.max_crashes = 2;
      opt.crash_probability = 0.1;
      std::uint64_t seed = 0;
      for (const auto& in : sorted_triples(g.n()))
        for (std::uint64_t k = 0; k < kSamples; ++k, ++seed)
          one(in, random_schedule(3, p.num_objects, p.wait_rule, opt, seed), seed);
      out.note(g.name() + " " + std::to_string(kSamples) + " seeds per input multiset");
    }
  }
  out.note(std::to_string(runs) + " runs");
  return out;
}

// A3
Outcome out_of_class_witness() {
  Outcome out;
  const Graph g = fx::cycle(6);
  const ProtocolSpec p = make_wait_free_bridged(g);
  RandomScheduleOptions opt;
  opt.max_crashes = 2;
  opt.crash_probability = 0.1;
  const std::vector<Vertex> in{0, 2, 4};
  for (std::uint64_t seed = 0; seed < 1'000'000; ++seed) {
    const ExecutionTrace tr = run(p, g, in, random_schedule(3, p.num_objects, p.wait_rule, opt, seed), seed);
    const Verdict v = check_agreement(g, surviving_outputs(tr));
    if (!v.pass) {
      out.note("C6 inputs " + str(in) + " seed " + std::to_string(seed) + ": " + v.detail);
      return out;
    }
  }
  out.fail("no agreement violation in 10^6 seeds");
  return out;
}

// A4
Outcome synchronous_bounds() {
  Outcome out;
  std::uint64_t runs = 0;
  for (const Graph& g : {fx::path(5), fx::cycle(6)}) {
    const int diam = diameter(g);
    int log2 = 0;
    while ((1 << log2) < diam) ++log2;
    for (auto [n, f] : {std::pair{3, 0}, std::pair{3, 1}, std::pair{4, 2}}) {
      const int expected_rounds = f / 2 + log2 + 1;
      const int flood = f / 2 + 1;
      std::vector<std::vector<Vertex>> inputs;
      std::vector<Vertex> cur(n, 0);
      for (bool more = true; more;) {
        inputs.push_back(cur);
        int i = 0;
        while (i < n && ++cur[i] == g.n()) cur[i++] = 0;
        more = i < n;
      }
      enumerate_adversaries(n, f, expected_rounds, [&](const RoundAdversary& adv) {
        for (const auto& in : inputs) {
          const ExecutionTrace tr = run_sync(g, in, f, adv);
          const std::string where = g.name() + " n=" + std::to_string(n) + " f=" + std::to_string(f) + " inputs " +
                                    str(in);
          if (static_cast<int>(tr.iterations.size()) != expected_rounds)
            out.fail(where + ": " + std::to_string(tr.iterations.size()) + " rounds");
          if (value_set(tr, flood).size() > 2) out.fail(where + ": flooding left more than two values");
          const auto b = check_trace(g, tr);
          check_bundle(out, b, where);
          require_lemmas(out, b, {"agreement", "validity-hull", "two-set-phase", "path-shrink", "pair-bound"}, where);
          ++runs;
        }
      });
    }
  }
  out.note(std::to_string(runs) + " runs");
  return out;
}

// A5
Outcome sperner_suite() {
  Outcome out;
  int cases = 0;
  for (int c = 4; c <= 8; ++c)
    for (int rounds = 1; rounds <= 2; ++rounds) {
      const Complex cx = subdivide(build_H(c), rounds);
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const SpernerLabels l = random_sperner_labelling(cx, seed);
        const TrichromaticResult r = find_trichromatic(cx, l);
        const std::string where = "c=" + std::to_string(c) + " rounds=" + std::to_string(rounds) + " seed " +
                                  std::to_string(seed);
        if (r.triangles.empty()) out.fail(where + ": no trichromatic triangle");
        if (!r.parity_odd()) out.fail(where + ": even parity " + std::to_string(r.parity_count));
        ++cases;
      }
    }
  const TrichromaticResult single = find_trichromatic(single_triangle(), {0, 1, 2});
  if (single.triangles != std::vector<int>{0}) out.fail("single triangle not returned");
  out.note(std::to_string(cases) + " labellings");
  return out;
}

// A6
Outcome impossibility_search() {
  Outcome out;
  for (int rounds : {1, 2}) {
    const SearchResult r = search_protocol(4, rounds);
    if (r.sat) out.fail("search_protocol(4, " + std::to_string(rounds) + ") is SAT");
    out.note("rounds=" + std::to_string(rounds) + " UNSAT, " + std::to_string(r.conflicts) + " conflicts");
  }
  SearchOptions control;
  control.drop_corner_conditions = true;
  if (!search_protocol(4, 2, control).sat) out.fail("control without corner conditions is UNSAT");
  return out;
}

// A7
Outcome classification_fixtures() {
  Outcome out;
  struct Expect {
    Graph g;
    bool chordal, bridged, nicely, labelling;
  };
  std::vector<Expect> suite;
  for (int n = 2; n <= 6; ++n) suite.push_back({fx::path(n), true, true, true, false});
  for (int n = 4; n <= 8; ++n) suite.push_back({fx::cycle(n), false, false, false, true});
  suite.push_back({fx::complete(4), true, true, true, false});
  suite.push_back({fx::star(4), true, true, true, false});
  suite.push_back({fx::sun3(), true, true, true, false});
  suite.push_back({fx::wheel(6), false, true, true, false});
  suite.push_back({fx::wheel_minus_spoke(6), false, false, false, true});
  suite.push_back({fx::twin_hub_wheel(), false, true, false, false});
  suite.push_back({fx::no_simplicial_bridged(), false, true, false, false});
  for (const Expect& e : suite) {
    const ClassReport r = classify(e.g);
    const std::string name = e.g.name();
    if (r.chordal != e.chordal || oracle::chordal(e.g) != e.chordal) out.fail(name + ": chordal");
    if (r.bridged != e.bridged || oracle::bridged(e.g) != e.bridged) out.fail(name + ": bridged");
    if (r.nicely_bridged != e.nicely) out.fail(name + ": nicely bridged");
    if (!r.lower_bound_searched) out.fail(name + ": labelling search skipped");
    if (r.lower_bound_labelling.has_value() != e.labelling) out.fail(name + ": lower-bound labelling");
    if (r.lower_bound_labelling && !verify_lower_bound_labelling(e.g, *r.lower_bound_labelling))
      out.fail(name + ": labelling does not verify");
    if (r.bridged) {
      const bool exact = is_nicely_bridged_exact(e.g);
      const auto& s = r.sufficient_conditions;
      for (auto [flag, label] : {std::pair{s.is_chordal, "chordal"}, std::pair{s.no_3sun, "no-3-sun"},
                                 std::pair{s.wheels_uniquely_centered, "uniquely-centered"},
                                 std::pair{s.k4_free, "K4-free"}})
        if (flag && !exact) out.fail(name + ": " + label + " flag set but not nicely bridged");
    }
  }
  Labelling c4{{0, 1, 2, 2}, {0, 1, 2, 3}, 0, 1, 2};
  if (!verify_lower_bound_labelling(fx::cycle(4), c4)) out.fail("C4 (0,1,2,2) rejected");
  out.note(std::to_string(suite.size()) + " fixtures");
  return out;
}

// A8
Outcome reduction_round_trip() {
  Outcome out;
  const Graph c4 = fx::cycle(4);
  const Labelling lab{{0, 1, 2, 2}, {0, 1, 2, 3}, 0, 1, 2};
  const ReductionPath rp = reduction_path(c4, lab);
  const ProtocolSpec a = make_one_resilient(rp.path), b = make_one_resilient(c4);
  std::uint64_t runs = 0;
  for (const auto& in : all_triples(3))
    runs += for_each_reduction_schedule(in, a, b, 1, [&](const ReductionSchedule& s) {
      const ReductionRun r = reduction_two_set(c4, lab, a, b, in, s);
      std::set<int> distinct;
      for (const auto& o : r.outputs)
        if (o) {
          distinct.insert(*o);
          if (std::find(in.begin(), in.end(), *o) == in.end())
            out.fail("inputs " + str(in) + ": output " + std::to_string(*o) + " is not an input");
        }
      if (distinct.size() > 2) out.fail("inputs " + str(in) + ": three distinct outputs");
    });
  out.note(std::to_string(runs) + " runs");
  return out;
}

// A9
Outcome oracle_equivalence() {
  Outcome out;
  for (int n = 1; n <= 3; ++n)
    for (int f = 0; f < n; ++f)
      for (int crashes = 0; crashes <= f; ++crashes) {
        const WaitRule rule = f == n - 1 ? WaitRule::wait_free() : WaitRule::f_wait(f);
        std::set<std::vector<int>> got;
        enumerate_schedules(n, 1, rule, {crashes, {}, 1'000'000}, [&](const ScheduleOutcome& s) {
          const auto& o = s.objects[0];
          std::vector<int> key(n, -1);
          int seen = 0;
          for (int i = 0; i < n; ++i) {
            if (o.cuts[i] < 0) continue;
            int m = 0;
            for (int k = 0; k < o.cuts[i]; ++k) m |= 1 << o.order[k];
            key[i] = m;
            seen |= m;
          }
          for (const Crash& c : s.crashes)
            if (c.phase == CrashPhase::AfterUpdate && ((seen >> c.proc) & 1)) key[c.proc] = -2;
          got.insert(key);
        });
        if (got != oracle::naive_object_outcomes(n, f, crashes))
          out.fail("schedule outcomes differ for n=" + std::to_string(n) + " f=" + std::to_string(f) +
                   " crashes=" + std::to_string(crashes));
      }

  std::mt19937_64 rng(2718);
  for (int k = 0; k < 500; ++k) {
    const Graph g = oracle::random_connected_graph(3 + k % 6, 0.35, rng);
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v)
        if (interval(g, u, v) != oracle::interval(g, u, v)) out.fail("interval mismatch");
    const std::uint64_t m = 1 + rng() % ((std::uint64_t{1} << g.n()) - 1);
    if (convex_hull(g, VertexSet(m)) != oracle::hull(g, VertexSet(m))) out.fail("hull mismatch");
  }

  const Complex one = subdivide_once(single_triangle());
  if (one.triangles.size() != 13) out.fail("one-round subdivision has " + std::to_string(one.triangles.size()));
  for (int c = 4; c <= 12; ++c) {
    const Complex h = build_H(c);
    if (h.num_vertices() != c || static_cast<int>(h.triangles.size()) != c - 2)
      out.fail("H(" + std::to_string(c) + ") counts");
  }
  // diameter 2 gives 2 objects, diameter 3 gives 3
  for (auto [g, objects, schedules] : {std::tuple{fx::cycle(4), 2, 298}, std::tuple{fx::cycle(6), 3, 2998},
                                       std::tuple{fx::star(4), 2, 298}}) {
    const auto p = make_one_resilient(g);
    if (p.num_objects != objects) out.fail(g.name() + " object count");
    if (count_schedules(3, p.num_objects, p.wait_rule, {1, {}, 1'000'000}) != schedules)
      out.fail(g.name() + " schedule count");
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"A1 one-resilient exhaustive", one_resilient_exhaustive},
      {"A2 wait-free nicely bridged", wait_free_nicely_bridged},
      {"A3 out-of-class witness", out_of_class_witness},
      {"A4 synchronous bounds", synchronous_bounds},
      {"A5 Sperner suite", sperner_suite},
      {"A6 impossibility search", impossibility_search},
      {"A7 classification fixtures", classification_fixtures},
      {"A8 reduction round trip", reduction_round_trip},
      {"A9 oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
