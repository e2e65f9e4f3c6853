#include "aag/sat.hpp"

#include <algorithm>

namespace aag {

namespace {

/// Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
std::uint64_t luby(std::uint64_t i) {
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace

int SatSolver::new_var() {
  value_.push_back(-1);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return num_vars();
}

void SatSolver::add_clause(std::vector<int> dimacs) {
  if (!ok_) return;
  backtrack(0);
  std::vector<Lit> c;
  for (int d : dimacs) {
    while (std::abs(d) > num_vars()) new_var();
    c.push_back(to_lit(d));
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && (c[i] ^ 1) == c[i + 1]) return;  // tautology
    int v = lit_value(c[i]);
    if (v == 1) return;
    if (v == -1) kept.push_back(c[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) ok_ = false;
    return;
  }
  clauses_.push_back(std::move(kept));
  attach(static_cast<int>(clauses_.size()) - 1);
}

void SatSolver::attach(int cref) {
  const auto& c = clauses_[cref];
  watches_[c[0]].push_back(cref);
  watches_[c[1]].push_back(cref);
}

void SatSolver::enqueue(Lit l, int reason) {
  const int v = var_of(l);
  value_[v] = static_cast<signed char>((l & 1) ^ 1);
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = p ^ 1;
    ++stats_.propagations;
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int cref = ws[i++];
      auto& c = clauses_[cref];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[j++] = cref;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k)
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(cref);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[j++] = cref;
      if (lit_value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return cref;
      }
      enqueue(c[0], cref);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::bump(int var) {
  if ((activity_[var] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
  learnt.assign(1, 0);
  int path = 0;
  Lit p = -1;
  int idx = static_cast<int>(trail_.size()) - 1;
  int cref = conflict;
  do {
    const auto& c = clauses_[cref];
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      const Lit q = c[k];
      const int v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (level_[v] >= level())
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[var_of(trail_[idx])]) --idx;
    p = trail_[idx--];
    cref = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1;

  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    if (level_[var_of(learnt[k])] > back_level) {
      back_level = level_[var_of(learnt[k])];
      max_i = k;
    }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[var_of(l)] = 0;
  var_inc_ /= 0.95;
}

void SatSolver::backtrack(int lvl) {
  if (level() <= lvl) return;
  for (int k = static_cast<int>(trail_.size()) - 1; k >= trail_lim_[lvl]; --k) {
    const int v = var_of(trail_[k]);
    phase_[v] = value_[v];
    value_[v] = -1;
    reason_[v] = -1;
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

int SatSolver::pick_branch_var() const {
  int best = -1;
  for (int v = 0; v < num_vars(); ++v)
    if (value_[v] < 0 && (best < 0 || activity_[v] > activity_[best])) best = v;
  return best;
}

bool SatSolver::solve(const std::vector<int>& assumptions) {
  if (!ok_) return false;
  backtrack(0);
  if (propagate() >= 0) {
    ok_ = false;
    return false;
  }
  std::vector<Lit> assume;
  for (int d : assumptions) {
    while (std::abs(d) > num_vars()) new_var();
    assume.push_back(to_lit(d));
  }
  std::uint64_t restart_no = 0;
  std::uint64_t conflicts_here = 0;
  std::uint64_t limit = 100 * luby(restart_no);
  std::vector<Lit> learnt;
  while (true) {
    const int conflict = propagate();
    if (conflict >= 0) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (level() == 0) {
        ok_ = false;
        return false;
      }
      int back = 0;
      analyze(conflict, learnt, back);
      backtrack(back);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back(learnt);
        const int cref = static_cast<int>(clauses_.size()) - 1;
        attach(cref);
        enqueue(learnt[0], cref);
        ++stats_.learnt_clauses;
      }
      continue;
    }
    if (conflicts_here >= limit) {
      ++stats_.restarts;
      conflicts_here = 0;
      limit = 100 * luby(++restart_no);
      backtrack(0);
      continue;
    }
    Lit next = -1;
    while (level() < static_cast<int>(assume.size())) {
      const Lit a = assume[level()];
      const int v = lit_value(a);
      if (v == 1) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));  // already true: empty level
      } else if (v == 0) {
        backtrack(0);
        return false;
      } else {
        next = a;
        break;
      }
    }
    if (next == -1) {
      const int v = pick_branch_var();
      if (v < 0) {
        model_.assign(num_vars(), false);
        for (int u = 0; u < num_vars(); ++u) model_[u] = value_[u] == 1;
        backtrack(0);
        return true;
      }
      next = 2 * v + (phase_[v] == 1 ? 0 : 1);
      ++stats_.decisions;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

}  // namespace aag
