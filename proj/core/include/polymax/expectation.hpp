#pragma once

#include <vector>

#include "polymax/distribution.hpp"
#include "polymax/game.hpp"

namespace polymax {

struct ExpectationLimits {
  // Largest profile (or opponent-profile) count any enumeration may visit.
  long long enumeration_guard = 10'000'000;
  // Largest leading-term count served by the direct sorted-linear path; beyond
  // it the dispatch falls back to enumeration under the guard above.
  int k_max = 3;
};

// e.values[i] = expected utility of `player` given it plays i while everyone
// else draws from x.
struct ConditionalExpectations {
  int player = -1;
  std::vector<double> values;
};

// One opponent action as a candidate maximum: the opponent's rank among the
// focal player's opponents (increasing player index), the action, the payoff
// against it, and the action's probability.
struct SweepEntry {
  int opponent = 0;
  int action = 0;
  double value = 0.0;
  double prob = 0.0;
};

// Optional instrumentation filled in by max_sweep.
struct SweepTrace {
  double min_residual = 1.0;       // smallest per-opponent residual mass seen
  double max_residual = 1.0;       // largest
  double final_max_abs = 0.0;      // largest |residual| after the sweep
  bool values_nonincreasing = true;
};

// Expectation by full profile enumeration; the oracle the fast paths are
// checked against. ResourceError when the profile count exceeds the guard.
double brute_expectation(const PolymatrixGame& game, int p,
                         const ProductDistribution& x,
                         const ExpectationLimits& limits = {});

// Conditional expectations for every action of p, dispatched on the
// aggregator: closed forms for sum/max/min, the top-k path for sorted-linear
// with few leading terms, opponent-profile enumeration otherwise.
ConditionalExpectations conditional_action_expectations(const PolymatrixGame& game, int p,
                                                        const ProductDistribution& x,
                                                        const ExpectationLimits& limits = {});

// sum_i x_p(i) * conditional expectation of action i.
double expected_utility(const PolymatrixGame& game, int p,
                        const ProductDistribution& x,
                        const ExpectationLimits& limits = {});

// All (opponent, action) entries seen by player p playing `action`.
std::vector<SweepEntry> sweep_entries(const PolymatrixGame& game, int p, int action,
                                      const ProductDistribution& x);

// E[max over opponents of the drawn payoff] in one pass over the entries in
// descending key order, where the key (value, -opponent, -action) breaks ties
// and each opponent carries the residual probability of its still-unseen
// actions. O(E log E + E * opponents) for E entries.
double max_sweep(std::vector<SweepEntry> entries, int opponent_count,
                 SweepTrace* trace = nullptr);

// E[sum_k coeffs[k] * (k+1)-th largest drawn payoff] for player p playing
// `action`, by enumerating ordered tuples of the K = leading_term_count
// highest entries under the max_sweep key order. ResourceError when K exceeds
// limits.k_max.
double topk_expectation(const PolymatrixGame& game, int p, int action,
                        const ProductDistribution& x, const std::vector<double>& coeffs,
                        const ExpectationLimits& limits = {});

}  // namespace polymax
