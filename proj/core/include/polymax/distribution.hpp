#pragma once

#include <map>
#include <string>
#include <vector>

#include "polymax/game.hpp"

namespace polymax {

// Probability sums are accepted when within this much of 1.
inline constexpr double kProbabilityTolerance = 1e-9;

// Independent play: one marginal distribution per player.
struct ProductDistribution {
  std::vector<std::vector<double>> marginals;
};

// Sparse joint distribution over full strategy profiles.
struct ExplicitDistribution {
  std::map<StrategyProfile, double> atoms;
};

// Convex combination of product distributions.
struct MixtureComponent {
  double weight = 0.0;
  ProductDistribution distribution;
};

struct MixtureDistribution {
  std::vector<MixtureComponent> components;
};

// Shape and probability checks against per-player strategy counts. Empty when
// valid, otherwise one line per violation.
std::vector<std::string> validate_distribution(const std::vector<int>& strategy_counts,
                                               const ProductDistribution& x);
std::vector<std::string> validate_distribution(const std::vector<int>& strategy_counts,
                                               const ExplicitDistribution& d);
std::vector<std::string> validate_distribution(const std::vector<int>& strategy_counts,
                                               const MixtureDistribution& mix);

template <class Distribution>
void require_valid_distribution(const std::vector<int>& strategy_counts,
                                const Distribution& d);

ProductDistribution uniform_product(const std::vector<int>& strategy_counts);
ProductDistribution point_mass_product(const std::vector<int>& strategy_counts,
                                       const StrategyProfile& s);

}  // namespace polymax
