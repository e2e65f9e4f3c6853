#include "aag/schedule.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "aag/error.hpp"

namespace aag {

std::string WaitRule::describe() const {
  return kind == Kind::WaitFree ? "wait-free" : "wait-until-" + std::to_string(f) + "-empty";
}

namespace {

using Mask = std::uint32_t;

bool in(Mask m, int i) { return (m >> i) & 1U; }
int popcount(Mask m) { return std::popcount(m); }

std::string proc_name(int i) { return "process " + std::to_string(i); }

void check_common(int n, int num_objects, const WaitRule& rule, int max_crashes) {
  if (n < 1 || n > 16) throw InvalidInput("process count must be in 1..16");
  if (num_objects < 1) throw InvalidInput("need at least one snapshot object");
  if (rule.kind == WaitRule::Kind::FWait && (rule.f < 0 || rule.f >= std::max(n, 1) + 1))
    throw InvalidInput("wait parameter f out of range");
  if (max_crashes < 0 || max_crashes > n) throw InvalidInput("crash bound out of range");
  if (max_crashes > rule.tolerated(n))
    throw InvalidInput("crash bound " + std::to_string(max_crashes) + " exceeds what " + rule.describe() +
                       " tolerates with n = " + std::to_string(n));
}

struct Choice {
  ObjectSchedule sched;
  std::vector<Crash> crashes;
  Mask alive_after = 0;
  int used = 0;
};

/// Every distinct view-vector outcome of one object. The first schedule (in
/// generation order) producing an outcome is its representative.
std::vector<Choice> object_choices(int n, Mask alive, Mask forced, int budget, const WaitRule& rule) {
  std::vector<Choice> out;
  std::set<std::vector<int>> seen;
  const int min_filled = rule.min_filled(n);
  const Mask optional = alive & ~forced;
  // Crash-before set: forced plus any subset of the other live processes.
  for (Mask extra = 0;; extra = (extra - optional) & optional) {
    const Mask cb = forced | extra;
    const int used_b = popcount(extra);
    if (used_b <= budget) {
      const Mask updaters = alive & ~cb;
      std::vector<int> u;
      for (int i = 0; i < n; ++i)
        if (in(updaters, i)) u.push_back(i);
      const int k = static_cast<int>(u.size());
      for (Mask ca = 0;; ca = (ca - updaters) & updaters) {
        const int used = used_b + popcount(ca);
        if (used <= budget && (ca != updaters || k == 0)) {
          std::vector<int> order = u;
          do {
            std::vector<int> pos(n, -1);
            for (int p = 0; p < k; ++p) pos[order[p]] = p;
            std::vector<int> scanners;
            for (int i : order)
              if (!in(ca, i)) scanners.push_back(i);
            std::vector<int> lo(scanners.size());
            bool blocked = false;
            for (std::size_t s = 0; s < scanners.size(); ++s) {
              lo[s] = std::max(pos[scanners[s]] + 1, min_filled);
              if (lo[s] > k) blocked = true;
            }
            if (blocked) continue;
            std::vector<int> cut(lo);
            while (true) {
              // view of scanner = prefix of order
              std::vector<int> key(n);
              Mask seen_by_someone = 0;
              for (int i = 0; i < n; ++i) key[i] = !in(alive, i) ? -1 : in(cb, i) ? -2 : -3;
              for (std::size_t s = 0; s < scanners.size(); ++s) {
                Mask view = 0;
                for (int p = 0; p < cut[s]; ++p) view |= Mask{1} << order[p];
                key[scanners[s]] = static_cast<int>(view);
                seen_by_someone |= view;
              }
              // An unseen crash after the update is the same as a crash before it.
              if ((ca & ~seen_by_someone) == 0 && seen.insert(key).second) {
                Choice c;
                c.sched.order = order;
                c.sched.cuts.assign(n, -1);
                for (std::size_t s = 0; s < scanners.size(); ++s) c.sched.cuts[scanners[s]] = cut[s];
                for (int i = 0; i < n; ++i) {
                  if (in(cb, i)) c.crashes.push_back({i, 0, CrashPhase::BeforeUpdate});
                  if (in(ca, i)) c.crashes.push_back({i, 0, CrashPhase::AfterUpdate});
                }
                c.alive_after = alive & ~cb & ~ca;
                c.used = used;
                out.push_back(std::move(c));
              }
              std::size_t s = 0;
              for (; s < cut.size(); ++s) {
                if (++cut[s] <= k) break;
                cut[s] = lo[s];
              }
              if (s == cut.size()) break;
            }
          } while (std::next_permutation(order.begin(), order.end()));
        }
        if (ca == updaters) break;
      }
    }
    if (extra == optional) break;
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(int n, int num_objects, const WaitRule& rule, const EnumerationOptions& opt)
      : n_(n), objects_(num_objects), rule_(rule) {
    check_common(n, num_objects, rule, opt.max_crashes);
    if (n > 6) throw InvalidInput("exhaustive enumeration supports at most 6 processes; use random mode");
    for (int p : opt.precrashed) {
      if (p < 0 || p >= n) throw InvalidInput("pre-crashed " + proc_name(p) + " out of range");
      forced_ |= Mask{1} << p;
    }
    budget_ = opt.max_crashes - popcount(forced_);
    if (budget_ < 0) throw InvalidInput("more pre-crashed processes than the crash bound allows");
  }

  std::uint64_t count() { return count_from(0, (Mask{1} << n_) - 1, budget_); }

  void visit(const std::function<void(const ScheduleOutcome&)>& f) {
    ScheduleOutcome s;
    s.n = n_;
    walk(0, (Mask{1} << n_) - 1, budget_, s, f);
  }

 private:
  const std::vector<Choice>& choices(int t, Mask alive, int budget) {
    const bool first = t == 0;
    auto key = std::make_tuple(first, alive, budget);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    // Crash object indices are filled in by walk().
    return memo_.emplace(key, object_choices(n_, alive, first ? forced_ : 0, budget, rule_)).first->second;
  }

  std::uint64_t count_from(int t, Mask alive, int budget) {
    if (t == objects_) return 1;
    auto key = std::make_tuple(t, alive, budget);
    auto it = counts_.find(key);
    if (it != counts_.end()) return it->second;
    std::uint64_t total = 0;
    for (const Choice& c : choices(t, alive, budget)) {
      total += count_from(t + 1, c.alive_after, budget - c.used);
      if (total > (std::uint64_t{1} << 62)) break;
    }
    counts_[key] = total;
    return total;
  }

  void walk(int t, Mask alive, int budget, ScheduleOutcome& s, const std::function<void(const ScheduleOutcome&)>& f) {
    if (t == objects_) {
      f(s);
      return;
    }
    for (const Choice& c : choices(t, alive, budget)) {
      s.objects.push_back(c.sched);
      const std::size_t before = s.crashes.size();
      for (Crash cr : c.crashes) {
        cr.object = t;
        s.crashes.push_back(cr);
      }
      walk(t + 1, c.alive_after, budget - c.used, s, f);
      s.crashes.resize(before);
      s.objects.pop_back();
    }
  }

  int n_;
  int objects_;
  WaitRule rule_;
  Mask forced_ = 0;
  int budget_ = 0;
  std::map<std::tuple<bool, Mask, int>, std::vector<Choice>> memo_;
  std::map<std::tuple<int, Mask, int>, std::uint64_t> counts_;
};

}  // namespace

void validate_schedule(const ScheduleOutcome& s, int num_objects, const WaitRule& rule, int max_crashes) {
  const int n = s.n;
  check_common(n, num_objects, rule, std::min(max_crashes, n));
  if (static_cast<int>(s.objects.size()) != num_objects)
    throw InvalidInput("schedule has " + std::to_string(s.objects.size()) + " objects, protocol needs " +
                       std::to_string(num_objects));
  if (static_cast<int>(s.crashes.size()) > max_crashes)
    throw InvalidInput("schedule has " + std::to_string(s.crashes.size()) + " crashes, bound is " +
                       std::to_string(max_crashes));
  std::vector<const Crash*> crash_of(n, nullptr);
  for (const Crash& c : s.crashes) {
    if (c.proc < 0 || c.proc >= n) throw InvalidInput("crash names unknown " + proc_name(c.proc));
    if (c.object < 0 || c.object >= num_objects)
      throw InvalidInput("crash of " + proc_name(c.proc) + " at unknown object " + std::to_string(c.object));
    if (crash_of[c.proc]) throw InvalidInput(proc_name(c.proc) + " crashes twice");
    crash_of[c.proc] = &c;
  }
  const int min_filled = rule.min_filled(n);
  for (int t = 0; t < num_objects; ++t) {
    const ObjectSchedule& o = s.objects[t];
    const std::string where = "object " + std::to_string(t) + ": ";
    if (static_cast<int>(o.cuts.size()) != n) throw InvalidInput(where + "cut vector must have one entry per process");
    std::vector<int> expected, got = o.order;
    for (int i = 0; i < n; ++i) {
      const Crash* c = crash_of[i];
      bool gone = c && (c->object < t || (c->object == t && c->phase == CrashPhase::BeforeUpdate));
      if (!gone) expected.push_back(i);
    }
    std::sort(got.begin(), got.end());
    if (got != expected) throw InvalidInput(where + "update order must list exactly the live processes");
    const int k = static_cast<int>(o.order.size());
    std::vector<int> pos(n, -1);
    for (int p = 0; p < k; ++p) pos[o.order[p]] = p;
    for (int i = 0; i < n; ++i) {
      const Crash* c = crash_of[i];
      bool scans = pos[i] >= 0 && !(c && c->object == t && c->phase == CrashPhase::AfterUpdate);
      if (!scans) {
        if (o.cuts[i] != -1) throw InvalidInput(where + proc_name(i) + " does not scan but has a cut");
        continue;
      }
      if (o.cuts[i] < pos[i] + 1)
        throw InvalidInput(where + proc_name(i) + " scans before its own update is visible");
      if (o.cuts[i] > k) throw InvalidInput(where + proc_name(i) + " sees more updates than happened");
      if (o.cuts[i] < min_filled)
        throw InvalidInput(where + proc_name(i) + " returns a view with " + std::to_string(o.cuts[i]) +
                           " filled components; " + rule.describe() + " needs at least " +
                           std::to_string(min_filled));
    }
  }
}

std::vector<int> precrashed_processes(const ScheduleOutcome& s) {
  std::vector<int> out;
  for (const Crash& c : s.crashes)
    if (c.object == 0 && c.phase == CrashPhase::BeforeUpdate) out.push_back(c.proc);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_schedules(int n, int num_objects, const WaitRule& rule, const EnumerationOptions& opt) {
  return Enumerator(n, num_objects, rule, opt).count();
}

std::uint64_t enumerate_schedules(int n, int num_objects, const WaitRule& rule, const EnumerationOptions& opt,
                                  const std::function<void(const ScheduleOutcome&)>& visit) {
  Enumerator e(n, num_objects, rule, opt);
  const std::uint64_t total = e.count();
  if (total > opt.budget)
    throw BudgetExceeded(std::to_string(total) + " schedules exceed the enumeration budget of " +
                         std::to_string(opt.budget) + "; use random mode");
  e.visit(visit);
  return total;
}

std::vector<ScheduleOutcome> all_schedules(int n, int num_objects, const WaitRule& rule,
                                           const EnumerationOptions& opt) {
  std::vector<ScheduleOutcome> out;
  enumerate_schedules(n, num_objects, rule, opt, [&](const ScheduleOutcome& s) { out.push_back(s); });
  return out;
}

ScheduleOutcome random_schedule(int n, int num_objects, const WaitRule& rule, const RandomScheduleOptions& opt,
                                std::uint64_t seed) {
  check_common(n, num_objects, rule, opt.max_crashes);
  if (static_cast<int>(opt.precrashed.size()) > opt.max_crashes)
    throw InvalidInput("more pre-crashed processes than the crash bound allows");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  ScheduleOutcome s;
  s.n = n;
  std::vector<bool> alive(n, true);
  int crashes = 0;
  for (int p : opt.precrashed) {
    if (p < 0 || p >= n || !alive[p]) throw InvalidInput("bad pre-crashed process list");
    alive[p] = false;
    s.crashes.push_back({p, 0, CrashPhase::BeforeUpdate});
    ++crashes;
  }
  const int min_filled = rule.min_filled(n);
  for (int t = 0; t < num_objects; ++t) {
    std::vector<int> live;
    for (int i = 0; i < n; ++i)
      if (alive[i]) live.push_back(i);
    std::vector<int> crash_after;
    std::vector<int> order;
    std::shuffle(live.begin(), live.end(), rng);
    for (int i : live) {
      if (crashes < opt.max_crashes && coin(rng) < opt.crash_probability) {
        ++crashes;
        alive[i] = false;
        if (coin(rng) < 0.5) {
          s.crashes.push_back({i, t, CrashPhase::BeforeUpdate});
          continue;
        }
        s.crashes.push_back({i, t, CrashPhase::AfterUpdate});
        crash_after.push_back(i);
      }
      order.push_back(i);
    }
    std::shuffle(order.begin(), order.end(), rng);
    ObjectSchedule o;
    o.order = order;
    o.cuts.assign(n, -1);
    const int k = static_cast<int>(order.size());
    for (int p = 0; p < k; ++p) {
      const int i = order[p];
      if (std::find(crash_after.begin(), crash_after.end(), i) != crash_after.end()) continue;
      const int lo = std::max(p + 1, min_filled);
      o.cuts[i] = std::uniform_int_distribution<int>(lo, k)(rng);
    }
    s.objects.push_back(std::move(o));
  }
  std::sort(s.crashes.begin(), s.crashes.end(),
            [](const Crash& a, const Crash& b) { return std::tie(a.object, a.proc) < std::tie(b.object, b.proc); });
  return s;
}

}  // namespace aag
