#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aag/graph.hpp"
#include "aag/trace.hpp"

namespace aag {

/// Rounds of the flooding 2-set agreement phase: floor(f/2) + 1.
int two_set_rounds(int f);
/// floor(f/2) + ceil(log2 diam(G)) + 1.
int sync_round_count(const Graph& g, int f);

/// Throws InvalidInput when the adversary crashes more than f processes,
/// crashes a process twice, or names rounds or recipients out of range.
void validate_adversary(const RoundAdversary& adv, int n, int f, int rounds);

/// Min-flooding for two_set_rounds(f) rounds. Decisions of crashed processes
/// are nullopt. The adversary's rounds are counted from 0.
std::vector<std::optional<int>> sync_two_set(const std::vector<int>& values, int f, const RoundAdversary& adv);

/// Flooding 2-set phase followed by ceil(log2 diam) rounds of psi_path.
ExecutionTrace run_sync(const Graph& g, const std::vector<Vertex>& inputs, int f, const RoundAdversary& adv,
                        std::optional<std::uint64_t> seed = std::nullopt);

/// sum over k <= f of C(n,k) * (rounds * 2^(n-1))^k.
std::uint64_t count_adversaries(int n, int f, int rounds);

struct AdversaryBudget {
  int max_n = 4;
  int max_f = 2;
  int max_rounds = 4;
};

/// Every crash plan with at most f crashes: any subset of crashing processes,
/// any round each, any recipient subset of the other processes.
std::uint64_t enumerate_adversaries(int n, int f, int rounds, const std::function<void(const RoundAdversary&)>& visit,
                                    const AdversaryBudget& budget = {});

RoundAdversary random_adversary(int n, int f, int rounds, double crash_probability, std::uint64_t seed);

}  // namespace aag
