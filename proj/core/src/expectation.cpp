#include "polymax/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Descending order of the key (value, -opponent, -action). All keys of a
// well-formed entry list are distinct, which pins down one winner among tied
// values; the same order drives both max_sweep and topk_expectation.
bool key_greater(const SweepEntry& a, const SweepEntry& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.opponent != b.opponent) return a.opponent < b.opponent;
  return a.action < b.action;
}

void check_entries(const std::vector<SweepEntry>& entries, int opponent_count) {
  if (opponent_count <= 0) throw InputError("at least one opponent required");
  std::vector<double> sums(opponent_count, 0.0);
  for (const SweepEntry& e : entries) {
    if (e.opponent < 0 || e.opponent >= opponent_count) {
      throw InputError("entry names opponent " + std::to_string(e.opponent) + " of " +
                       std::to_string(opponent_count));
    }
    if (!std::isfinite(e.value) || !std::isfinite(e.prob) || e.prob < 0.0) {
      throw InputError("entry has a non-finite value or a negative probability");
    }
    sums[e.opponent] += e.prob;
  }
  for (int q = 0; q < opponent_count; ++q) {
    if (std::abs(sums[q] - 1.0) > kProbabilityTolerance) {
      throw InputError("opponent " + std::to_string(q) + " probabilities sum to " +
                       std::to_string(sums[q]));
    }
  }
}

void check_shapes(const PolymatrixGame& game, int p, const ProductDistribution& x) {
  if (game.n < 2 || static_cast<int>(game.strategy_counts.size()) != game.n ||
      game.payoffs.size() != static_cast<size_t>(game.n) * (game.n - 1)) {
    throw InputError("game shape is inconsistent");
  }
  for (int a = 0; a < game.n; ++a) {
    for (int b = 0; b < game.n; ++b) {
      if (a == b) continue;
      const Matrix& u = game.payoffs[a * (game.n - 1) + (b < a ? b : b - 1)];
      if (u.rows != game.strategy_counts[a] || u.cols != game.strategy_counts[b]) {
        throw InputError("payoff matrix (" + std::to_string(a) + "," + std::to_string(b) +
                         ") does not match the strategy counts");
      }
    }
  }
  if (p < 0 || p >= game.n) {
    throw InputError("player " + std::to_string(p) + " out of range for " +
                     std::to_string(game.n) + " players");
  }
  require_valid_distribution(game.strategy_counts, x);
}

long long opponent_profile_count(const PolymatrixGame& game, int p) {
  long long prod = 1;
  for (int q = 0; q < game.n; ++q) {
    if (q == p) continue;
    const int t = game.strategy_counts[q];
    if (prod > std::numeric_limits<long long>::max() / t) {
      return std::numeric_limits<long long>::max();
    }
    prod *= t;
  }
  return prod;
}

double utility_unchecked(const PolymatrixGame& game, int p, const StrategyProfile& s,
                         std::vector<double>* scratch) {
  scratch->clear();
  for (int q = 0; q < game.n; ++q) {
    if (q == p) continue;
    scratch->push_back(game.payoffs[p * (game.n - 1) + (q < p ? q : q - 1)].at(s[p], s[q]));
  }
  return apply_aggregator(game.aggregator, *scratch);
}

// Expectation of p playing `action` by enumerating all opponent profiles.
double conditional_brute(const PolymatrixGame& game, int p, int action,
                         const ProductDistribution& x, const ExpectationLimits& limits) {
  const long long count = opponent_profile_count(game, p);
  if (count > limits.enumeration_guard) {
    throw ResourceError("conditional expectation would enumerate " + std::to_string(count) +
                        " opponent profiles; guard is " +
                        std::to_string(limits.enumeration_guard));
  }
  StrategyProfile s(game.n, 0);
  s[p] = action;
  std::vector<double> scratch;
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (int q = 0; q < game.n; ++q) {
      if (q != p) prob *= x.marginals[q][s[q]];
    }
    total += prob * utility_unchecked(game, p, s, &scratch);
    int q = game.n - 1;
    while (q >= 0) {
      if (q == p) {
        --q;
        continue;
      }
      if (++s[q] < game.strategy_counts[q]) break;
      s[q] = 0;
      --q;
    }
    if (q < 0) break;
  }
  return total;
}

double sum_conditional(const PolymatrixGame& game, int p, int action,
                       const ProductDistribution& x) {
  double total = 0.0;
  for (int q = 0; q < game.n; ++q) {
    if (q == p) continue;
    const Matrix& u = game.payoff_matrix(p, q);
    const std::vector<double>& m = x.marginals[q];
    for (int j = 0; j < u.cols; ++j) total += m[j] * u.at(action, j);
  }
  return total;
}

}  // namespace

std::vector<SweepEntry> sweep_entries(const PolymatrixGame& game, int p, int action,
                                      const ProductDistribution& x) {
  std::vector<SweepEntry> entries;
  size_t total = 0;
  for (int q = 0; q < game.n; ++q) {
    if (q != p) total += game.strategy_counts[q];
  }
  entries.reserve(total);
  int rank = 0;
  for (int q = 0; q < game.n; ++q) {
    if (q == p) continue;
    const Matrix& u = game.payoff_matrix(p, q);
    const std::vector<double>& m = x.marginals[q];
    for (int j = 0; j < u.cols; ++j) {
      entries.push_back({rank, j, u.at(action, j), m[j]});
    }
    ++rank;
  }
  return entries;
}

double max_sweep(std::vector<SweepEntry> entries, int opponent_count, SweepTrace* trace) {
  check_entries(entries, opponent_count);
  std::sort(entries.begin(), entries.end(), key_greater);
  for (size_t k = 1; k < entries.size(); ++k) {
    if (entries[k - 1].opponent == entries[k].opponent &&
        entries[k - 1].action == entries[k].action) {
      throw InputError("duplicate entry for opponent " + std::to_string(entries[k].opponent) +
                       " action " + std::to_string(entries[k].action));
    }
  }

  // residual[q] = probability that opponent q's draw ranks below the entry at
  // hand. Every entry contributes value * P(it is drawn and beats the rest).
  std::vector<double> residual(opponent_count, 1.0);
  double total = 0.0;
  double prev_value = std::numeric_limits<double>::infinity();
  for (const SweepEntry& e : entries) {
    double others = 1.0;
    for (int q = 0; q < opponent_count; ++q) {
      if (q != e.opponent) others *= residual[q];
    }
    total += e.value * e.prob * others;
    residual[e.opponent] -= e.prob;
    if (trace) {
      trace->min_residual = std::min(trace->min_residual, residual[e.opponent]);
      trace->max_residual = std::max(trace->max_residual, residual[e.opponent]);
      if (e.value > prev_value) trace->values_nonincreasing = false;
      prev_value = e.value;
    }
  }
  if (trace) {
    double worst = 0.0;
    for (double r : residual) worst = std::max(worst, std::abs(r));
    trace->final_max_abs = worst;
  }
  return total;
}

double topk_expectation(const PolymatrixGame& game, int p, int action,
                        const ProductDistribution& x, const std::vector<double>& coeffs,
                        const ExpectationLimits& limits) {
  check_shapes(game, p, x);
  if (action < 0 || action >= game.strategy_counts[p]) {
    throw InputError("action " + std::to_string(action) + " out of range for player " +
                     std::to_string(p));
  }
  if (static_cast<int>(coeffs.size()) != game.n - 1) {
    throw InputError("got " + std::to_string(coeffs.size()) + " coefficients for " +
                     std::to_string(game.n - 1) + " opponents");
  }
  const int k = leading_term_count(coeffs);
  if (k == 0) return 0.0;
  if (k > limits.k_max) {
    throw ResourceError("sorted-linear expectation with " + std::to_string(k) +
                        " leading terms exceeds the cap of " + std::to_string(limits.k_max));
  }

  std::vector<SweepEntry> entries = sweep_entries(game, p, action, x);
  std::sort(entries.begin(), entries.end(), key_greater);
  const int count = static_cast<int>(entries.size());
  const int opponents = game.n - 1;

  // For the tuple tail: per opponent, its entries' positions in the sorted
  // array plus suffix probability sums, so that P(opponent's draw ranks below
  // position pos) is one binary search away.
  std::vector<std::vector<int>> positions(opponents);
  std::vector<std::vector<double>> suffix(opponents);
  for (int idx = 0; idx < count; ++idx) positions[entries[idx].opponent].push_back(idx);
  for (int q = 0; q < opponents; ++q) {
    suffix[q].assign(positions[q].size() + 1, 0.0);
    for (int k2 = static_cast<int>(positions[q].size()) - 1; k2 >= 0; --k2) {
      suffix[q][k2] = suffix[q][k2 + 1] + entries[positions[q][k2]].prob;
    }
  }
  const auto below = [&](int q, int pos) {
    const std::vector<int>& ps = positions[q];
    const size_t first = std::upper_bound(ps.begin(), ps.end(), pos) - ps.begin();
    return suffix[q][first];
  };

  // Ordered tuples of k entries, strictly descending in the key order, with
  // pairwise distinct opponents: the probability that the top k draws are
  // exactly the tuple is weight * (everyone else ranking below the last pick).
  std::vector<char> used(opponents, 0);
  double total = 0.0;
  const auto descend = [&](auto&& self, int start, int depth, double weight,
                           double value) -> void {
    if (depth == k) {
      const int last = start - 1;
      double tail = 1.0;
      for (int q = 0; q < opponents; ++q) {
        if (!used[q]) tail *= below(q, last);
      }
      total += value * weight * tail;
      return;
    }
    for (int pos = start; pos < count; ++pos) {
      const SweepEntry& e = entries[pos];
      if (used[e.opponent] || e.prob == 0.0) continue;
      used[e.opponent] = 1;
      self(self, pos + 1, depth + 1, weight * e.prob, value + coeffs[depth] * e.value);
      used[e.opponent] = 0;
    }
  };
  descend(descend, 0, 0, 1.0, 0.0);
  return total;
}

namespace {

ConditionalExpectations conditional_unchecked(const PolymatrixGame& game, int p,
                                              const ProductDistribution& x,
                                              const ExpectationLimits& limits) {
  ConditionalExpectations result;
  result.player = p;
  const int actions = game.strategy_counts[p];
  result.values.resize(actions);

  std::visit(
      Overloaded{
          [&](const SumAggregator&) {
            for (int i = 0; i < actions; ++i) result.values[i] = sum_conditional(game, p, i, x);
          },
          [&](const MaxAggregator&) {
            for (int i = 0; i < actions; ++i) {
              result.values[i] = max_sweep(sweep_entries(game, p, i, x), game.n - 1);
            }
          },
          [&](const MinAggregator&) {
            // min(v) = -max(-v); flipping entry values is the negated game.
            for (int i = 0; i < actions; ++i) {
              std::vector<SweepEntry> entries = sweep_entries(game, p, i, x);
              for (SweepEntry& e : entries) e.value = -e.value;
              result.values[i] = -max_sweep(std::move(entries), game.n - 1);
            }
          },
          [&](const SortedLinearAggregator& s) {
            if (leading_term_count(s.coeffs) <= limits.k_max) {
              for (int i = 0; i < actions; ++i) {
                result.values[i] = topk_expectation(game, p, i, x, s.coeffs, limits);
              }
            } else {
              for (int i = 0; i < actions; ++i) {
                result.values[i] = conditional_brute(game, p, i, x, limits);
              }
            }
          },
          [&](const BooleanFormulaAggregator&) {
            for (int i = 0; i < actions; ++i) {
              result.values[i] = conditional_brute(game, p, i, x, limits);
            }
          }},
      game.aggregator);
  return result;
}

}  // namespace

ConditionalExpectations conditional_action_expectations(const PolymatrixGame& game, int p,
                                                        const ProductDistribution& x,
                                                        const ExpectationLimits& limits) {
  check_shapes(game, p, x);
  return conditional_unchecked(game, p, x, limits);
}

double expected_utility(const PolymatrixGame& game, int p, const ProductDistribution& x,
                        const ExpectationLimits& limits) {
  check_shapes(game, p, x);
  const ConditionalExpectations e = conditional_unchecked(game, p, x, limits);
  double total = 0.0;
  for (size_t i = 0; i < e.values.size(); ++i) total += x.marginals[p][i] * e.values[i];
  return total;
}

double brute_expectation(const PolymatrixGame& game, int p, const ProductDistribution& x,
                         const ExpectationLimits& limits) {
  check_shapes(game, p, x);
  const long long count = game.profile_count();
  if (count > limits.enumeration_guard) {
    throw ResourceError("expectation would enumerate " + std::to_string(count) +
                        " profiles; guard is " + std::to_string(limits.enumeration_guard));
  }
  StrategyProfile s(game.n, 0);
  std::vector<double> scratch;
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (int r = 0; r < game.n; ++r) prob *= x.marginals[r][s[r]];
    total += prob * utility_unchecked(game, p, s, &scratch);
    int r = game.n - 1;
    while (r >= 0 && ++s[r] == game.strategy_counts[r]) {
      s[r] = 0;
      --r;
    }
    if (r < 0) break;
  }
  return total;
}

}  // namespace polymax
