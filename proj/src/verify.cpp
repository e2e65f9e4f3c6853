#include "aag/verify.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "aag/classify.hpp"
#include "aag/error.hpp"
#include "aag/protocol.hpp"
#include "aag/sync.hpp"

namespace aag {

namespace {

std::string set_str(VertexSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Vertex v : s) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << '}';
  return os.str();
}

VertexSet to_set(const std::vector<Vertex>& vs) {
  VertexSet s;
  for (Vertex v : vs) s.insert(v);
  return s;
}

int diam_or_zero(const Graph& g, VertexSet s) { return s.empty() ? 0 : set_diameter(g, s); }

Verdict fail(Verdict v, int t, std::string detail) {
  if (!v.pass) return v;  // keep the first violation
  v.pass = false;
  v.t = t;
  v.detail = std::move(detail);
  return v;
}

}  // namespace

Verdict check_agreement(const Graph& g, const std::vector<Vertex>& outputs) {
  Verdict v{"agreement"};
  VertexSet s = to_set(outputs);
  for (Vertex a : s)
    for (Vertex b : s)
      if (a < b && !g.adjacent(a, b))
        return fail(v, -1, "outputs " + std::to_string(a) + " and " + std::to_string(b) + " are at distance " +
                               std::to_string(g.distance(a, b)));
  return v;
}

Verdict check_validity_interval(const Graph& g, const std::vector<Vertex>& inputs, const std::vector<Vertex>& outputs) {
  Verdict v{"validity-interval"};
  if (inputs.empty()) throw InvalidInput("validity needs at least one input");
  VertexSet in = to_set(inputs);
  for (Vertex o : to_set(outputs)) {
    bool found = false;
    for (Vertex a : in) {
      for (Vertex b : in)
        if (a <= b && g.interval(a, b).contains(o)) {
          v.witnesses.push_back(std::to_string(o) + " in I(" + std::to_string(a) + "," + std::to_string(b) + ")");
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) v = fail(v, -1, "output " + std::to_string(o) + " is on no shortest path between inputs");
  }
  return v;
}

Verdict check_validity_hull(const Graph& g, const std::vector<Vertex>& inputs, const std::vector<Vertex>& outputs) {
  Verdict v{"validity-hull"};
  if (inputs.empty()) throw InvalidInput("validity needs at least one input");
  VertexSet hull = convex_hull(g, to_set(inputs));
  for (Vertex o : to_set(outputs)) {
    if (hull.contains(o))
      v.witnesses.push_back(std::to_string(o) + " in hull " + set_str(hull));
    else
      v = fail(v, -1, "output " + std::to_string(o) + " is outside the hull " + set_str(hull));
  }
  return v;
}

Verdict check_clique_gathering(const Graph& g, const std::vector<Vertex>& inputs, const std::vector<Vertex>& outputs) {
  Verdict v{"clique-gathering"};
  VertexSet in = to_set(inputs);
  if (!is_clique(g, in)) {
    v.detail = "inputs are not a clique";
    return v;
  }
  for (Vertex o : to_set(outputs)) {
    if (in.contains(o))
      v.witnesses.push_back(std::to_string(o) + " is an input");
    else
      v = fail(v, -1, "inputs form a clique but output " + std::to_string(o) + " is not an input");
  }
  return v;
}

ProtocolClass protocol_class_of(const std::string& id) {
  if (id == "one-resilient") return ProtocolClass::OneResilient;
  if (id == "wait-free-bridged") return ProtocolClass::WaitFreeBridged;
  if (id == "sync-agreement") return ProtocolClass::Sync;
  throw InvalidInput("unknown protocol id '" + id + "'");
}

bool VerdictBundle::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass || !v.gate; });
}

const Verdict* VerdictBundle::first_failure() const {
  const Verdict* best = nullptr;
  auto key = [](const Verdict& v) { return v.t < 0 ? std::numeric_limits<int>::max() : v.t; };
  for (const Verdict& v : verdicts)
    if (!v.pass && v.gate && (!best || key(v) < key(*best))) best = &v;
  return best;
}

VerdictBundle check_trace(const Graph& g, const ExecutionTrace& tr, const TraceCheckOptions& opt) {
  const ProtocolClass cls = protocol_class_of(tr.protocol);
  const int n = static_cast<int>(tr.inputs.size());
  const int iters = static_cast<int>(tr.iterations.size());

  // Shape checks: a malformed trace is an error, not a verdict.
  if (n == 0) throw InvalidInput("trace has no processes");
  if (static_cast<int>(tr.outputs.size()) != n) throw InvalidInput("trace needs one output per process");
  for (Vertex v : tr.inputs)
    if (v < 0 || v >= g.n()) throw InvalidInput("trace input is not a vertex");
  for (int t = 0; t < iters; ++t) {
    const auto& it = tr.iterations[t];
    if (it.t != t) throw InvalidInput("iterations must be numbered 0, 1, ...");
    if (static_cast<int>(it.views.size()) != n || static_cast<int>(it.chosen.size()) != n)
      throw InvalidInput("iteration " + std::to_string(t) + " needs one view and one choice per process");
    for (int i = 0; i < n; ++i) {
      if (it.chosen[i] < -1 || it.chosen[i] >= g.n()) throw InvalidInput("chosen value is not a vertex");
      if (!it.views[i].is_subset_of(g.vertices())) throw InvalidInput("view contains a non-vertex");
    }
  }
  const bool is_sync = cls == ProtocolClass::Sync;
  if (is_sync != std::holds_alternative<SyncSchedule>(tr.schedule))
    throw InvalidInput("schedule kind does not match the protocol");

  // Expected shape from the protocol.
  ProtocolSpec spec;
  int flood = 0;
  int f = 0;
  if (is_sync) {
    f = std::get<SyncSchedule>(tr.schedule).f;
    flood = two_set_rounds(f);
  } else {
    spec = make_protocol(tr.protocol, g);
  }

  VerdictBundle b;
  Verdict length{"iteration-count"}, chain{"snapshot-chain"}, source{"view-source"}, own{"own-value"},
      rule{"step-rule"}, crash{"crash-consistency"}, hull_t{"hull-validity"};
  const int expected = is_sync ? sync_round_count(g, f) : spec.num_objects;
  if (iters != expected)
    length = fail(length, 0, "trace has " + std::to_string(iters) + " iterations, protocol needs " +
                                 std::to_string(expected));

  // x[i] = x_i(t) for the current t; -1 once i stopped.
  std::vector<Vertex> x = tr.inputs;
  const VertexSet hull0 = convex_hull(g, to_set(tr.inputs));
  for (int t = 0; t < iters; ++t) {
    const auto& it = tr.iterations[t];
    const VertexSet current = value_set(tr, t);
    if (!current.is_subset_of(hull0))
      hull_t = fail(hull_t, t, "X(" + std::to_string(t) + ") = " + set_str(current) + " leaves the input hull");
    for (int i = 0; i < n; ++i) {
      const VertexSet view = it.views[i];
      if (x[i] < 0) {
        if (!view.empty() || it.chosen[i] >= 0)
          crash = fail(crash, t, "process " + std::to_string(i) + " acts after it stopped");
        continue;
      }
      if (view.empty()) {
        if (it.chosen[i] >= 0) crash = fail(crash, t, "process " + std::to_string(i) + " chose without a view");
        continue;
      }
      if (it.chosen[i] < 0) {
        crash = fail(crash, t, "process " + std::to_string(i) + " scanned but chose nothing");
        continue;
      }
      if (!view.is_subset_of(current))
        source = fail(source, t, "view of process " + std::to_string(i) + " " + set_str(view) +
                                     " is not drawn from X(" + std::to_string(t) + ") = " + set_str(current));
      if (!view.contains(x[i]))
        own = fail(own, t, "process " + std::to_string(i) + " does not see its own value");
      Vertex want;
      try {
        want = is_sync ? (t < flood ? view.min() : psi_path(g, view)) : spec.step(t, x[i], view);
      } catch (const InvalidInput& e) {
        rule = fail(rule, t, "process " + std::to_string(i) + ": " + e.what());
        continue;
      }
      if (want != it.chosen[i])
        rule = fail(rule, t, "process " + std::to_string(i) + " chose " + std::to_string(it.chosen[i]) +
                                 ", the rule gives " + std::to_string(want));
    }
    if (!is_sync)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          VertexSet a = it.views[i], c = it.views[j];
          if (!a.empty() && !c.empty() && !a.is_subset_of(c) && !c.is_subset_of(a))
            chain = fail(chain, t, "views " + set_str(a) + " and " + set_str(c) + " are incomparable");
        }
    for (int i = 0; i < n; ++i) x[i] = it.chosen[i];
  }
  for (int i = 0; i < n; ++i) {
    std::optional<Vertex> want;
    if (iters == 0)
      want = tr.inputs[i];
    else if (x[i] >= 0)
      want = x[i];
    if (want != tr.outputs[i]) crash = fail(crash, -1, "output of process " + std::to_string(i) + " is not its last value");
  }
  const VertexSet final_x = value_set(tr, iters);
  if (!final_x.is_subset_of(hull0))
    hull_t = fail(hull_t, iters, "X(" + std::to_string(iters) + ") = " + set_str(final_x) + " leaves the input hull");
  for (Verdict* v : {&length, &chain, &source, &own, &rule, &crash, &hull_t})
    if (v != &chain || !is_sync) b.verdicts.push_back(*v);

  auto X = [&](int t) { return value_set(tr, std::min(t, iters)); };
  auto D = [&](int t) { return diam_or_zero(g, X(t)); };

  if (cls == ProtocolClass::OneResilient) {
    Verdict min_phase{"min-phase-two-values"}, shrink{"path-shrink"};
    if (iters >= 1 && X(1).size() > 2) min_phase = fail(min_phase, 0, "X(1) = " + set_str(X(1)) + " has more than two values");
    for (int t = 1; t < iters; ++t)
      if (D(t + 1) > (D(t) + 1) / 2)
        shrink = fail(shrink, t, "D(X(" + std::to_string(t + 1) + ")) = " + std::to_string(D(t + 1)) +
                                     " > ceil(" + std::to_string(D(t)) + "/2)");
    b.verdicts.push_back(min_phase);
    b.verdicts.push_back(shrink);
  }

  if (cls == ProtocolClass::WaitFreeBridged && opt.bridged) {
    Verdict shrink{"bridged-shrink"}, landing{"diameter-two-landing"}, radius1{"radius-one-step"};
    const int t_star = spec.T_star;
    for (int t = 0; t <= t_star && t < iters; ++t)
      if (D(t + 1) > 2 * (D(t) + 1) / 3)
        shrink = fail(shrink, t, "D(X(" + std::to_string(t + 1) + ")) = " + std::to_string(D(t + 1)) +
                                     " > floor(2(" + std::to_string(D(t)) + "+1)/3)");
    if (t_star <= iters && D(t_star) > 2)
      landing = fail(landing, t_star, "D(X(T*)) = " + std::to_string(D(t_star)));
    for (int t = 0; t < iters; ++t) {
      VertexSet xt = X(t);
      if (xt.empty()) continue;
      VertexSet h = convex_hull(g, xt);
      int rad = eccentricity_within_convex(g, h, center_within_convex(g, h).min());
      if (rad == 1 && !is_clique(g, X(t + 1)))
        radius1 = fail(radius1, t, "hull of X(" + std::to_string(t) + ") has radius one but X(" +
                                       std::to_string(t + 1) + ") = " + set_str(X(t + 1)) + " is not a clique");
    }
    b.verdicts.push_back(shrink);
    b.verdicts.push_back(landing);
    b.verdicts.push_back(radius1);
    if (opt.nicely_bridged) {
      Verdict strict{"strict-hull-shrink"};
      for (int t = 0; t < iters; ++t) {
        if (X(t).empty() || X(t + 1).empty() || D(t) < 2) continue;
        VertexSet a = convex_hull(g, X(t)), c = convex_hull(g, X(t + 1));
        if (!c.is_proper_subset_of(a))
          strict = fail(strict, t, "hull of X(" + std::to_string(t + 1) + ") " + set_str(c) +
                                       " is not strictly inside " + set_str(a));
      }
      b.verdicts.push_back(strict);
    }
  }

  if (is_sync) {
    Verdict two_set{"two-set-phase"}, shrink{"path-shrink"}, pair{"pair-bound"};
    if (iters >= flood) {
      VertexSet decided = X(flood);
      if (decided.size() > 2) two_set = fail(two_set, flood - 1, "flooding left " + set_str(decided));
      if (!decided.is_subset_of(to_set(tr.inputs)))
        two_set = fail(two_set, flood - 1, "flooding decided a non-input in " + set_str(decided));
    }
    for (int t = flood; t < iters; ++t) {
      if (D(t + 1) > (D(t) + 1) / 2)
        shrink = fail(shrink, t, "D(X(" + std::to_string(t + 1) + ")) = " + std::to_string(D(t + 1)) +
                                     " > ceil(" + std::to_string(D(t)) + "/2)");
      int sz = X(t + 1).size();
      if (sz < 1 || sz > 2) pair = fail(pair, t, "|X(" + std::to_string(t + 1) + ")| = " + std::to_string(sz));
    }
    b.verdicts.push_back(two_set);
    b.verdicts.push_back(shrink);
    b.verdicts.push_back(pair);
  }

  const std::vector<Vertex> outs = surviving_outputs(tr);
  b.verdicts.push_back(check_agreement(g, outs));
  b.verdicts.push_back(check_validity_hull(g, tr.inputs, outs));
  b.verdicts.push_back(check_clique_gathering(g, tr.inputs, outs));
  Verdict interval = check_validity_interval(g, tr.inputs, outs);
  interval.gate = false;
  b.verdicts.push_back(interval);
  return b;
}

TraceCheckOptions lemma_options_for(const Graph& g) {
  TraceCheckOptions o;
  try {
    o.bridged = is_bridged(g);
    if (o.bridged) o.nicely_bridged = classify(g).nicely_bridged.value_or(false);
  } catch (const BudgetExceeded&) {
  }
  return o;
}

}  // namespace aag
