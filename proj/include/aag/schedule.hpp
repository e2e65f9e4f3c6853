#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace aag {

/// How long a process keeps scanning a snapshot object.
///
/// Wait-free protocols scan once. f-wait protocols scan until at most f of
/// the n components are still EMPTY. A single scan after the own update is
/// the same as f = n-1, so both reduce to a lower bound on the view size.
struct WaitRule {
  enum class Kind { WaitFree, FWait };
  Kind kind = Kind::WaitFree;
  int f = 0;

  static WaitRule wait_free() { return {Kind::WaitFree, 0}; }
  static WaitRule f_wait(int f) { return {Kind::FWait, f}; }

  /// Smallest number of filled components a scan may return.
  int min_filled(int n) const { return kind == Kind::WaitFree ? 1 : std::max(1, n - f); }
  /// Largest number of crashes under which every live process terminates.
  int tolerated(int n) const { return kind == Kind::WaitFree ? n - 1 : f; }
  std::string describe() const;
  bool operator==(const WaitRule&) const = default;
};

enum class CrashPhase { BeforeUpdate, AfterUpdate };

struct Crash {
  int proc = 0;
  int object = 0;
  CrashPhase phase = CrashPhase::BeforeUpdate;
  bool operator==(const Crash&) const = default;
};

/// Adversary decision for one snapshot object.
struct ObjectSchedule {
  /// Processes that update this object, in update order.
  std::vector<int> order;
  /// cuts[i]: number of updates (a prefix of `order`) visible to process i's
  /// final scan, or -1 when i does not scan this object.
  std::vector<int> cuts;
  bool operator==(const ObjectSchedule&) const = default;
};

/// A canonical schedule: all accesses to object t happen before any access to
/// object t+1, so one ObjectSchedule per object plus the crash points
/// describes the whole execution.
struct ScheduleOutcome {
  int n = 0;
  std::vector<ObjectSchedule> objects;
  std::vector<Crash> crashes;
  bool operator==(const ScheduleOutcome&) const = default;
};

/// Throws InvalidInput with a diagnostic when `s` is not a legal schedule for
/// `num_objects` objects under `rule` with at most `max_crashes` crashes.
void validate_schedule(const ScheduleOutcome& s, int num_objects, const WaitRule& rule, int max_crashes);

/// Processes that take no step at all (crash before updating object 0).
std::vector<int> precrashed_processes(const ScheduleOutcome& s);

struct EnumerationOptions {
  /// Total crash bound, including `precrashed`.
  int max_crashes = 0;
  /// Processes crashed before their first step.
  std::vector<int> precrashed;
  /// Refuse to enumerate more than this many schedules.
  std::uint64_t budget = 20'000'000;
};

/// Number of schedules enumerate_schedules would produce.
std::uint64_t count_schedules(int n, int num_objects, const WaitRule& rule, const EnumerationOptions& opt);

/// Visits every canonical schedule once, up to equivalence of the per-object
/// view vectors. Throws BudgetExceeded when the count exceeds `opt.budget`.
/// Returns the number of schedules visited.
std::uint64_t enumerate_schedules(int n, int num_objects, const WaitRule& rule, const EnumerationOptions& opt,
                                  const std::function<void(const ScheduleOutcome&)>& visit);

std::vector<ScheduleOutcome> all_schedules(int n, int num_objects, const WaitRule& rule,
                                           const EnumerationOptions& opt);

struct RandomScheduleOptions {
  int max_crashes = 0;
  /// Chance that a live process crashes at a given object while the crash
  /// budget lasts.
  double crash_probability = 0.1;
  std::vector<int> precrashed;
};

/// Deterministic per seed. Orders are uniform permutations; cuts are uniform
/// over the legal range.
ScheduleOutcome random_schedule(int n, int num_objects, const WaitRule& rule, const RandomScheduleOptions& opt,
                                std::uint64_t seed);

}  // namespace aag
