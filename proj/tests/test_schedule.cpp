#include <set>

#include "aag/error.hpp"
#include "aag/schedule.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aag;

namespace {

// Same key format as oracle::naive_object_outcomes.
std::vector<int> object_key(const ScheduleOutcome& s, int t) {
  const auto& o = s.objects[t];
  std::vector<int> key(s.n, -1);
  int scanners_mask = 0;
  for (int i = 0; i < s.n; ++i) {
    if (o.cuts[i] < 0) continue;
    int m = 0;
    for (int p = 0; p < o.cuts[i]; ++p) m |= 1 << o.order[p];
    key[i] = m;
    scanners_mask |= m;
  }
  for (const Crash& c : s.crashes)
    if (c.object == t && c.phase == CrashPhase::AfterUpdate && ((scanners_mask >> c.proc) & 1)) key[c.proc] = -2;
  return key;
}

std::set<std::vector<int>> enumerated_keys(int n, const WaitRule& rule, int max_crashes, std::uint64_t* count) {
  std::set<std::vector<int>> keys;
  EnumerationOptions opt;
  opt.max_crashes = max_crashes;
  *count = enumerate_schedules(n, 1, rule, opt, [&](const ScheduleOutcome& s) {
    validate_schedule(s, 1, rule, max_crashes);
    keys.insert(object_key(s, 0));
  });
  return keys;
}

}  // namespace

TEST_CASE("wait rules") {
  CHECK(WaitRule::wait_free().min_filled(4) == 1);
  CHECK(WaitRule::f_wait(1).min_filled(4) == 3);
  CHECK(WaitRule::f_wait(5).min_filled(4) == 1);
  CHECK(WaitRule::wait_free().tolerated(4) == 3);
  CHECK(WaitRule::f_wait(1).tolerated(4) == 1);
}

TEST_CASE("single-object outcomes match a step-level interleaving") {
  for (int n = 1; n <= 3; ++n)
    for (int f = 0; f < n; ++f)
      for (int crashes = 0; crashes <= f; ++crashes) {
        CAPTURE(n);
        CAPTURE(f);
        CAPTURE(crashes);
        const WaitRule rule = f == n - 1 ? WaitRule::wait_free() : WaitRule::f_wait(f);
        std::uint64_t count = 0;
        auto keys = enumerated_keys(n, rule, crashes, &count);
        auto naive = oracle::naive_object_outcomes(n, f, crashes);
        CHECK(keys == naive);
        CHECK(count == keys.size());
        CHECK(count == count_schedules(n, 1, rule, {crashes, {}, 1'000'000}));
      }
}

TEST_CASE("known single-object counts") {
  CHECK(count_schedules(2, 1, WaitRule::wait_free(), {}) == 3);
  CHECK(count_schedules(3, 1, WaitRule::wait_free(), {}) == 19);
  CHECK(count_schedules(3, 1, WaitRule::f_wait(1), {}) == 10);
  CHECK(count_schedules(3, 1, WaitRule::f_wait(1), {1, {}, 1000}) == 28);
  CHECK(count_schedules(3, 1, WaitRule::wait_free(), {2, {}, 1000}) == 61);
}

TEST_CASE("immediate-snapshot views are counted by ordered set partitions") {
  for (int n = 1; n <= 4; ++n) {
    std::set<std::vector<int>> immediate;
    enumerate_schedules(n, 1, WaitRule::wait_free(), {}, [&](const ScheduleOutcome& s) {
      auto key = object_key(s, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (((key[i] >> j) & 1) && (key[j] & ~key[i])) return;
      immediate.insert(key);
    });
    CHECK(static_cast<long>(immediate.size()) == oracle::fubini(n));
  }
}

TEST_CASE("crash-free schedules multiply across objects") {
  const auto one = count_schedules(3, 1, WaitRule::wait_free(), {});
  CHECK(count_schedules(3, 4, WaitRule::wait_free(), {}) == one * one * one * one);
  CHECK(count_schedules(3, 4, WaitRule::wait_free(), {}) == 130321);
  CHECK(count_schedules(3, 4, WaitRule::wait_free(), {1, {}, 1'000'000}) == 374521);
  CHECK(count_schedules(3, 4, WaitRule::wait_free(), {2, {}, 1'000'000}) == 515401);
}

TEST_CASE("enumerated schedules are valid and distinct") {
  EnumerationOptions opt;
  opt.max_crashes = 1;
  auto all = all_schedules(3, 2, WaitRule::f_wait(1), opt);
  CHECK(all.size() == count_schedules(3, 2, WaitRule::f_wait(1), opt));
  std::set<std::vector<std::vector<int>>> seen;
  for (const auto& s : all) {
    validate_schedule(s, 2, WaitRule::f_wait(1), 1);
    std::vector<std::vector<int>> k{object_key(s, 0), object_key(s, 1)};
    CHECK(seen.insert(k).second);
  }
}

TEST_CASE("precrashed processes") {
  EnumerationOptions opt;
  opt.max_crashes = 1;
  opt.precrashed = {2};
  std::uint64_t n = enumerate_schedules(3, 2, WaitRule::f_wait(1), opt, [&](const ScheduleOutcome& s) {
    CHECK(precrashed_processes(s) == std::vector<int>{2});
    CHECK(s.crashes.size() == 1);
    for (const auto& o : s.objects) CHECK(o.cuts[2] == -1);
  });
  // Both survivors must see each other on every object.
  CHECK(n == 1);
  opt.max_crashes = 0;
  CHECK_THROWS_AS(count_schedules(3, 2, WaitRule::f_wait(1), opt), InvalidInput);
}

TEST_CASE("crash bound above tolerance is rejected") {
  CHECK_THROWS_AS(count_schedules(3, 1, WaitRule::f_wait(1), {2, {}, 1000}), InvalidInput);
  CHECK_THROWS_AS(count_schedules(7, 1, WaitRule::wait_free(), {}), InvalidInput);
}

TEST_CASE("enumeration budget") {
  EnumerationOptions opt;
  opt.budget = 100;
  CHECK_THROWS_AS(enumerate_schedules(3, 3, WaitRule::wait_free(), opt, [](const ScheduleOutcome&) {}),
                  BudgetExceeded);
}

TEST_CASE("validate_schedule diagnostics") {
  const WaitRule w = WaitRule::f_wait(1);
  ScheduleOutcome ok{3, {{{0, 1, 2}, {2, 2, 3}}}, {}};
  CHECK_NOTHROW(validate_schedule(ok, 1, w, 1));

  ScheduleOutcome short_view = ok;
  short_view.objects[0].cuts = {1, 2, 3};
  CHECK_THROWS_AS(validate_schedule(short_view, 1, w, 1), InvalidInput);

  ScheduleOutcome own_missing = ok;
  own_missing.objects[0].cuts = {2, 2, 2};
  CHECK_THROWS_AS(validate_schedule(own_missing, 1, w, 1), InvalidInput);

  ScheduleOutcome too_far = ok;
  too_far.objects[0].cuts = {2, 2, 4};
  CHECK_THROWS_AS(validate_schedule(too_far, 1, w, 1), InvalidInput);

  ScheduleOutcome dup = ok;
  dup.objects[0].order = {0, 1, 1};
  CHECK_THROWS_AS(validate_schedule(dup, 1, w, 1), InvalidInput);

  ScheduleOutcome crashed_scans{3, {{{0, 1}, {2, 2, -1}}}, {{2, 0, CrashPhase::BeforeUpdate}}};
  CHECK_NOTHROW(validate_schedule(crashed_scans, 1, w, 1));
  crashed_scans.objects[0].cuts[2] = 2;
  CHECK_THROWS_AS(validate_schedule(crashed_scans, 1, w, 1), InvalidInput);

  ScheduleOutcome after{3, {{{0, 1, 2}, {3, 3, -1}}}, {{2, 0, CrashPhase::AfterUpdate}}};
  CHECK_NOTHROW(validate_schedule(after, 1, w, 1));
  CHECK_THROWS_AS(validate_schedule(after, 1, w, 0), InvalidInput);

  ScheduleOutcome twice{3, {{{0, 1}, {2, 2, -1}}}, {{2, 0, CrashPhase::BeforeUpdate}, {2, 0, CrashPhase::AfterUpdate}}};
  CHECK_THROWS_AS(validate_schedule(twice, 1, WaitRule::wait_free(), 2), InvalidInput);

  CHECK_THROWS_AS(validate_schedule(ok, 2, w, 1), InvalidInput);
}

TEST_CASE("random schedules are legal and reproducible") {
  RandomScheduleOptions opt;
  opt.max_crashes = 2;
  opt.crash_probability = 0.3;
  int with_crash = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto s = random_schedule(4, 5, WaitRule::wait_free(), opt, seed);
    CHECK_NOTHROW(validate_schedule(s, 5, WaitRule::wait_free(), 2));
    CHECK(s == random_schedule(4, 5, WaitRule::wait_free(), opt, seed));
    with_crash += !s.crashes.empty();
  }
  CHECK(with_crash > 0);
  CHECK(random_schedule(4, 5, WaitRule::wait_free(), opt, 1) != random_schedule(4, 5, WaitRule::wait_free(), opt, 2));

  RandomScheduleOptions pre;
  pre.max_crashes = 1;
  pre.precrashed = {0};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = random_schedule(3, 3, WaitRule::f_wait(1), pre, seed);
    CHECK_NOTHROW(validate_schedule(s, 3, WaitRule::f_wait(1), 1));
    CHECK(precrashed_processes(s) == std::vector<int>{0});
  }
}

TEST_CASE("random schedules cover every single-object outcome") {
  std::set<std::vector<int>> hit;
  RandomScheduleOptions opt;
  opt.max_crashes = 1;
  opt.crash_probability = 0.3;
  for (std::uint64_t seed = 0; seed < 20000; ++seed)
    hit.insert(object_key(random_schedule(3, 1, WaitRule::f_wait(1), opt, seed), 0));
  CHECK(hit == oracle::naive_object_outcomes(3, 1, 1));
}
