#pragma once

#include <cstdint>

#include "polymax/distribution.hpp"
#include "polymax/game.hpp"

namespace polymax {

// Everything here draws from std::mt19937_64 seeded with `seed` and maps raw
// bits to doubles itself, so identical arguments reproduce identical results
// bit for bit on any platform.

// Payoff entries are uniform in [payoff_low, payoff_high], drawn in pair-index
// order and row-major within each matrix. Under a boolean-formula aggregator
// entries are fair coin flips in {0, 1} instead.
PolymatrixGame random_game(int n, std::vector<int> strategy_counts,
                           double payoff_low, double payoff_high,
                           Aggregator aggregator, std::uint64_t seed);

// Independent Dirichlet(1,...,1) marginals; every entry strictly positive.
ProductDistribution random_product_distribution(const std::vector<int>& strategy_counts,
                                                std::uint64_t seed);

// Sample mean of player p's utility over `samples` profiles drawn from x.
double monte_carlo_expectation(const PolymatrixGame& game, int p,
                               const ProductDistribution& x, long long samples,
                               std::uint64_t seed);

}  // namespace polymax
