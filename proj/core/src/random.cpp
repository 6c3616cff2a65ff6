#include "polymax/random.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

// Top 53 bits of the generator output; uniform on [0, 1). The standard
// distribution adapters are implementation-defined, this mapping is not.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Shifted to (0, 1) so logarithms stay finite.
double open_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace

PolymatrixGame random_game(int n, std::vector<int> strategy_counts, double payoff_low,
                           double payoff_high, Aggregator aggregator, std::uint64_t seed) {
  if (!(payoff_low <= payoff_high) || !std::isfinite(payoff_low) || !std::isfinite(payoff_high)) {
    throw InputError("payoff range [" + std::to_string(payoff_low) + ", " +
                     std::to_string(payoff_high) + "] is not a finite interval");
  }
  PolymatrixGame game;
  game.n = n;
  game.strategy_counts = std::move(strategy_counts);
  game.aggregator = std::move(aggregator);
  if (game.n < 2 || static_cast<int>(game.strategy_counts.size()) != game.n) {
    throw InputError("random_game needs n >= 2 players and one strategy count per player");
  }
  for (int t : game.strategy_counts) {
    if (t < 1) throw InputError("every player needs at least one strategy");
  }

  std::mt19937_64 gen(seed);
  const bool binary = std::holds_alternative<BooleanFormulaAggregator>(game.aggregator);
  game.payoffs.reserve(static_cast<size_t>(game.n) * (game.n - 1));
  for (int p = 0; p < game.n; ++p) {
    for (int q = 0; q < game.n; ++q) {
      if (q == p) continue;
      Matrix u(game.strategy_counts[p], game.strategy_counts[q]);
      for (double& v : u.values) {
        v = binary ? static_cast<double>(gen() >> 63)
                   : payoff_low + unit_uniform(gen) * (payoff_high - payoff_low);
      }
      game.payoffs.push_back(std::move(u));
    }
  }
  require_valid_game(game);
  return game;
}

ProductDistribution random_product_distribution(const std::vector<int>& strategy_counts,
                                                std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  ProductDistribution x;
  x.marginals.reserve(strategy_counts.size());
  for (size_t p = 0; p < strategy_counts.size(); ++p) {
    if (strategy_counts[p] < 1) {
      throw InputError("player " + std::to_string(p) + " has strategy count " +
                       std::to_string(strategy_counts[p]));
    }
    std::vector<double> m(strategy_counts[p]);
    double sum = 0.0;
    for (double& v : m) {
      v = -std::log(1.0 - open_uniform(gen));
      sum += v;
    }
    for (double& v : m) v /= sum;
    x.marginals.push_back(std::move(m));
  }
  return x;
}

double monte_carlo_expectation(const PolymatrixGame& game, int p, const ProductDistribution& x,
                               long long samples, std::uint64_t seed) {
  require_valid_game(game);
  require_valid_distribution(game.strategy_counts, x);
  if (p < 0 || p >= game.n) throw InputError("player " + std::to_string(p) + " out of range");
  if (samples < 1) throw InputError("sample count must be positive");

  std::mt19937_64 gen(seed);
  StrategyProfile s(game.n);
  double total = 0.0;
  for (long long it = 0; it < samples; ++it) {
    for (int r = 0; r < game.n; ++r) {
      const std::vector<double>& m = x.marginals[r];
      const double u = unit_uniform(gen);
      double cum = 0.0;
      int pick = static_cast<int>(m.size()) - 1;
      for (size_t k = 0; k < m.size(); ++k) {
        cum += m[k];
        if (u < cum) {
          pick = static_cast<int>(k);
          break;
        }
      }
      s[r] = pick;
    }
    total += evaluate_utility(game, p, s);
  }
  return total / static_cast<double>(samples);
}

}  // namespace polymax
