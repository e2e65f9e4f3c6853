#include "aag/sync.hpp"

#include <algorithm>
#include <random>

#include "aag/error.hpp"
#include "aag/protocol.hpp"

namespace aag {

int two_set_rounds(int f) { return f / 2 + 1; }

int sync_round_count(const Graph& g, int f) { return two_set_rounds(f) + ceil_log2(diameter(g)); }

void validate_adversary(const RoundAdversary& adv, int n, int f, int rounds) {
  if (f < 0 || f >= n) throw InvalidInput("need 0 <= f < n");
  if (static_cast<int>(adv.crashes.size()) > f)
    throw InvalidInput("adversary crashes " + std::to_string(adv.crashes.size()) + " processes, f = " +
                       std::to_string(f));
  std::vector<bool> seen(n, false);
  for (const SyncCrash& c : adv.crashes) {
    if (c.proc < 0 || c.proc >= n) throw InvalidInput("crash names unknown process " + std::to_string(c.proc));
    if (seen[c.proc]) throw InvalidInput("process " + std::to_string(c.proc) + " crashes twice");
    seen[c.proc] = true;
    if (c.round < 0 || c.round >= rounds)
      throw InvalidInput("crash round " + std::to_string(c.round) + " outside 0.." + std::to_string(rounds - 1));
    for (int r : c.recipients)
      if (r < 0 || r >= n || r == c.proc) throw InvalidInput("bad recipient " + std::to_string(r));
  }
}

namespace {

/// One lockstep round. Returns, for each process that survives the round,
/// the set of values it received (its own included); crashed ones get
/// nullopt.
template <class Value>
std::vector<std::optional<std::vector<Value>>> deliver(const std::vector<Value>& x, std::vector<bool>& alive,
                                                       const RoundAdversary& adv, int round) {
  const int n = static_cast<int>(x.size());
  std::vector<const SyncCrash*> crash_now(n, nullptr);
  for (const SyncCrash& c : adv.crashes)
    if (c.round == round && alive[c.proc]) crash_now[c.proc] = &c;
  std::vector<std::optional<std::vector<Value>>> got(n);
  for (int i = 0; i < n; ++i) {
    if (!alive[i] || crash_now[i]) continue;
    std::vector<Value> v;
    for (int j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      if (crash_now[j] && std::find(crash_now[j]->recipients.begin(), crash_now[j]->recipients.end(), i) ==
                              crash_now[j]->recipients.end())
        continue;
      v.push_back(x[j]);
    }
    got[i] = std::move(v);
  }
  for (int i = 0; i < n; ++i)
    if (crash_now[i]) alive[i] = false;
  return got;
}

}  // namespace

std::vector<std::optional<int>> sync_two_set(const std::vector<int>& values, int f, const RoundAdversary& adv) {
  const int n = static_cast<int>(values.size());
  const int rounds = two_set_rounds(f);
  validate_adversary(adv, n, f, rounds);
  std::vector<int> x = values;
  std::vector<bool> alive(n, true);
  for (int r = 0; r < rounds; ++r) {
    auto got = deliver(x, alive, adv, r);
    for (int i = 0; i < n; ++i)
      if (got[i]) x[i] = *std::min_element(got[i]->begin(), got[i]->end());
  }
  std::vector<std::optional<int>> out(n);
  for (int i = 0; i < n; ++i)
    if (alive[i]) out[i] = x[i];
  return out;
}

ExecutionTrace run_sync(const Graph& g, const std::vector<Vertex>& inputs, int f, const RoundAdversary& adv,
                        std::optional<std::uint64_t> seed) {
  const int n = static_cast<int>(inputs.size());
  const int flood = two_set_rounds(f);
  const int rounds = sync_round_count(g, f);
  validate_adversary(adv, n, f, rounds);
  for (Vertex v : inputs)
    if (v < 0 || v >= g.n()) throw InvalidInput("input " + std::to_string(v) + " is not a vertex");

  ExecutionTrace tr;
  tr.graph_name = g.name();
  tr.graph_n = g.n();
  tr.graph_edges = g.edges();
  tr.protocol = "sync-agreement";
  tr.inputs = inputs;
  tr.schedule = SyncSchedule{f, adv};
  tr.seed = seed;

  std::vector<Vertex> x = inputs;
  std::vector<bool> alive(n, true);
  for (int r = 0; r < rounds; ++r) {
    auto got = deliver(x, alive, adv, r);
    IterationRecord rec;
    rec.t = r;
    rec.views.assign(n, VertexSet{});
    rec.chosen.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (!got[i]) continue;
      VertexSet view;
      for (Vertex v : *got[i]) view.insert(v);
      rec.views[i] = view;
      rec.chosen[i] = r < flood ? view.min() : psi_path(g, view);
    }
    for (int i = 0; i < n; ++i)
      if (rec.chosen[i] >= 0) x[i] = rec.chosen[i];
    tr.iterations.push_back(std::move(rec));
  }
  tr.outputs.resize(n);
  for (int i = 0; i < n; ++i)
    if (alive[i]) tr.outputs[i] = x[i];
  return tr;
}

std::uint64_t count_adversaries(int n, int f, int rounds) {
  const std::uint64_t per = static_cast<std::uint64_t>(rounds) << (n - 1);
  std::uint64_t total = 0, binom = 1, power = 1;
  for (int k = 0; k <= f && k <= n; ++k) {
    total += binom * power;
    binom = binom * (n - k) / (k + 1);
    power *= per;
  }
  return total;
}

std::uint64_t enumerate_adversaries(int n, int f, int rounds, const std::function<void(const RoundAdversary&)>& visit,
                                    const AdversaryBudget& budget) {
  if (n < 1 || f < 0 || f >= n || rounds < 1) throw InvalidInput("need n >= 1, 0 <= f < n, rounds >= 1");
  if (n > budget.max_n || f > budget.max_f || rounds > budget.max_rounds)
    throw BudgetExceeded("adversary enumeration for n=" + std::to_string(n) + ", f=" + std::to_string(f) +
                         ", rounds=" + std::to_string(rounds) + " exceeds the budget; use a seed instead");
  RoundAdversary adv;
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      ++count;
      visit(adv);
      return;
    }
    self(self, i + 1);
    if (static_cast<int>(adv.crashes.size()) == f) return;
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    for (int r = 0; r < rounds; ++r)
      for (std::uint32_t m = 0; m < (1U << others.size()); ++m) {
        SyncCrash c{i, r, {}};
        for (std::size_t b = 0; b < others.size(); ++b)
          if ((m >> b) & 1U) c.recipients.push_back(others[b]);
        adv.crashes.push_back(std::move(c));
        self(self, i + 1);
        adv.crashes.pop_back();
      }
  };
  rec(rec, 0);
  return count;
}

RoundAdversary random_adversary(int n, int f, int rounds, double crash_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  RoundAdversary adv;
  for (int i = 0; i < n && static_cast<int>(adv.crashes.size()) < f; ++i) {
    if (coin(rng) >= crash_probability) continue;
    SyncCrash c{i, std::uniform_int_distribution<int>(0, rounds - 1)(rng), {}};
    for (int j = 0; j < n; ++j)
      if (j != i && coin(rng) < 0.5) c.recipients.push_back(j);
    adv.crashes.push_back(std::move(c));
  }
  return adv;
}

}  // namespace aag
