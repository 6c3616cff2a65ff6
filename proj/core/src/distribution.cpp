#include "polymax/distribution.hpp"

#include <cmath>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

bool counts_ok(const std::vector<int>& counts, std::vector<std::string>* out) {
  if (counts.empty()) {
    out->push_back("strategy counts are empty");
    return false;
  }
  for (size_t p = 0; p < counts.size(); ++p) {
    if (counts[p] < 1) {
      out->push_back("player " + std::to_string(p) + " has strategy count " +
                     std::to_string(counts[p]));
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> validate_distribution(const std::vector<int>& strategy_counts,
                                               const ProductDistribution& x) {
  std::vector<std::string> violations;
  if (!counts_ok(strategy_counts, &violations)) return violations;
  if (x.marginals.size() != strategy_counts.size()) {
    violations.push_back("distribution has " + std::to_string(x.marginals.size()) +
                         " marginals for " + std::to_string(strategy_counts.size()) + " players");
    return violations;
  }
  for (size_t p = 0; p < x.marginals.size(); ++p) {
    const std::vector<double>& m = x.marginals[p];
    if (static_cast<int>(m.size()) != strategy_counts[p]) {
      violations.push_back("marginal " + std::to_string(p) + " has " + std::to_string(m.size()) +
                           " entries; expected " + std::to_string(strategy_counts[p]));
      continue;
    }
    double sum = 0.0;
    for (size_t k = 0; k < m.size(); ++k) {
      if (!std::isfinite(m[k]) || m[k] < 0.0) {
        violations.push_back("marginal " + std::to_string(p) + " entry " + std::to_string(k) +
                             " is not a probability");
      } else {
        sum += m[k];
      }
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      violations.push_back("marginal " + std::to_string(p) + " sums to " + std::to_string(sum));
    }
  }
  return violations;
}

std::vector<std::string> validate_distribution(const std::vector<int>& strategy_counts,
                                               const ExplicitDistribution& d) {
  std::vector<std::string> violations;
  if (!counts_ok(strategy_counts, &violations)) return violations;
  double sum = 0.0;
  size_t index = 0;
  for (const auto& [profile, prob] : d.atoms) {
    if (profile.size() != strategy_counts.size()) {
      violations.push_back("atom " + std::to_string(index) + " profile has " +
                           std::to_string(profile.size()) + " entries");
    } else {
      for (size_t p = 0; p < profile.size(); ++p) {
        if (profile[p] < 0 || profile[p] >= strategy_counts[p]) {
          violations.push_back("atom " + std::to_string(index) + " strategy " +
                               std::to_string(profile[p]) + " out of range for player " +
                               std::to_string(p));
        }
      }
    }
    if (!std::isfinite(prob) || prob < 0.0) {
      violations.push_back("atom " + std::to_string(index) + " probability is not a probability");
    } else {
      sum += prob;
    }
    ++index;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    violations.push_back("atom probabilities sum to " + std::to_string(sum));
  }
  return violations;
}

std::vector<std::string> validate_distribution(const std::vector<int>& strategy_counts,
                                               const MixtureDistribution& mix) {
  std::vector<std::string> violations;
  if (!counts_ok(strategy_counts, &violations)) return violations;
  if (mix.components.empty()) {
    violations.push_back("mixture has no components");
    return violations;
  }
  double sum = 0.0;
  for (size_t t = 0; t < mix.components.size(); ++t) {
    const MixtureComponent& c = mix.components[t];
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      violations.push_back("component " + std::to_string(t) + " weight is not a probability");
    } else {
      sum += c.weight;
    }
    for (const std::string& v : validate_distribution(strategy_counts, c.distribution)) {
      violations.push_back("component " + std::to_string(t) + ": " + v);
    }
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    violations.push_back("component weights sum to " + std::to_string(sum));
  }
  return violations;
}

template <class Distribution>
void require_valid_distribution(const std::vector<int>& strategy_counts, const Distribution& d) {
  std::vector<std::string> violations = validate_distribution(strategy_counts, d);
  if (!violations.empty()) throw InputError("invalid distribution: " + violations.front());
}

template void require_valid_distribution<ProductDistribution>(const std::vector<int>&,
                                                              const ProductDistribution&);
template void require_valid_distribution<ExplicitDistribution>(const std::vector<int>&,
                                                               const ExplicitDistribution&);
template void require_valid_distribution<MixtureDistribution>(const std::vector<int>&,
                                                              const MixtureDistribution&);

ProductDistribution uniform_product(const std::vector<int>& strategy_counts) {
  ProductDistribution x;
  x.marginals.reserve(strategy_counts.size());
  for (size_t p = 0; p < strategy_counts.size(); ++p) {
    if (strategy_counts[p] < 1) {
      throw InputError("player " + std::to_string(p) + " has strategy count " +
                       std::to_string(strategy_counts[p]));
    }
    x.marginals.emplace_back(strategy_counts[p], 1.0 / strategy_counts[p]);
  }
  return x;
}

ProductDistribution point_mass_product(const std::vector<int>& strategy_counts,
                                       const StrategyProfile& s) {
  if (s.size() != strategy_counts.size()) {
    throw InputError("profile has " + std::to_string(s.size()) + " entries for " +
                     std::to_string(strategy_counts.size()) + " players");
  }
  ProductDistribution x;
  x.marginals.reserve(strategy_counts.size());
  for (size_t p = 0; p < strategy_counts.size(); ++p) {
    if (s[p] < 0 || s[p] >= strategy_counts[p]) {
      throw InputError("profile entry " + std::to_string(s[p]) + " out of range for player " +
                       std::to_string(p));
    }
    std::vector<double> m(strategy_counts[p], 0.0);
    m[s[p]] = 1.0;
    x.marginals.push_back(std::move(m));
  }
  return x;
}

}  // namespace polymax
