#pragma once

#include <cstdint>
#include <vector>

namespace aag {

/// Small CDCL solver: two watched literals, first-UIP learning, VSIDS-style
/// activities, Luby restarts and solving under assumptions. Literals use the
/// DIMACS convention: variable v (1-based) is v, its negation -v.
class SatSolver {
 public:
  struct Stats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
    std::uint64_t learnt_clauses = 0;
  };

  /// Returns the new variable (1-based).
  int new_var();
  int num_vars() const { return static_cast<int>(value_.size()); }
  std::size_t num_clauses() const { return clauses_.size(); }

  /// Clauses may be added between solve() calls.
  void add_clause(std::vector<int> lits);

  /// True when satisfiable together with all `assumptions`.
  bool solve(const std::vector<int>& assumptions = {});
  /// Value of a variable in the last model.
  bool model_value(int var) const { return model_[var - 1]; }

  const Stats& stats() const { return stats_; }

 private:
  using Lit = int;  // 2*var + sign, var 0-based
  static Lit to_lit(int dimacs) { return dimacs > 0 ? 2 * (dimacs - 1) : 2 * (-dimacs - 1) + 1; }
  static int var_of(Lit l) { return l >> 1; }
  /// 1 true, 0 false, -1 unassigned
  int lit_value(Lit l) const {
    int a = value_[var_of(l)];
    return a < 0 ? -1 : a ^ (l & 1);
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int lvl);
  void attach(int cref);
  void bump(int var);
  int pick_branch_var() const;

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> value_;
  std::vector<signed char> phase_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<bool> model_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool ok_ = true;
  Stats stats_;
};

}  // namespace aag
