#pragma once

#include <array>
#include <vector>

#include "polymax/distribution.hpp"
#include "polymax/expectation.hpp"
#include "polymax/game.hpp"
#include "polymax/lp.hpp"

namespace polymax {

// One correlated-equilibrium constraint: the expected gain g of following the
// recommendation i over deviating to j, weighted by how often player p is
// recommended i. The distribution is a correlated equilibrium up to eps when
// every g >= -eps.
struct RegretEntry {
  int p = -1;
  int i = -1;
  int j = -1;
  double g = 0.0;
};

struct RegretReport {
  std::vector<RegretEntry> entries;  // ordered by (p, i, j)
  double max_violation = 0.0;        // max(0, -smallest g)
  RegretEntry witness;               // entry with the smallest g; p = -1 when empty

  bool is_ce(double eps) const { return max_violation <= eps; }
};

// Nonnegative weights on the deviation constraints, stored per player as a
// t_p x t_p matrix with zero diagonal. Read as transition rates: weight on
// (i, j) pushes mass from i toward j.
struct DualWeights {
  std::vector<Matrix> per_player;
};

// Canonical constraint order shared by reports, dual weights and the solver
// LPs: p ascending, then i, then j skipping j == i.
int regret_entry_count(const std::vector<int>& strategy_counts);
std::vector<std::array<int, 3>> regret_triples(const std::vector<int>& strategy_counts);
DualWeights dual_from_flat(const std::vector<int>& strategy_counts,
                           const std::vector<double>& flat);
std::vector<double> dual_to_flat(const DualWeights& dual);

// sum over constraints of weight * g.
double dual_pairing(const DualWeights& dual, const RegretReport& report);

// g(p,i,j) = x_p(i) * (e_p[i] - e_p[j]) from per-player conditional action
// expectations; never expands the product.
RegretReport regret_from_product(const PolymatrixGame& game, const ProductDistribution& x,
                                 const ExpectationLimits& limits = {});

// g(p,i,j) accumulated over the support of an explicit joint distribution.
// Works for any aggregator; ResourceError when the support exceeds the guard.
RegretReport regret_from_explicit(const PolymatrixGame& game, const ExplicitDistribution& d,
                                  const ExpectationLimits& limits = {});

struct VerifyResult {
  RegretReport report;
  bool is_ce = false;
};

VerifyResult verify_ce(const PolymatrixGame& game, const ExplicitDistribution& d,
                       double eps, const ExpectationLimits& limits = {});
// Mixture regrets are the weight-combined per-component reports; the joint
// distribution is never expanded.
VerifyResult verify_ce(const PolymatrixGame& game, const MixtureDistribution& mix,
                       double eps, const ExpectationLimits& limits = {});

struct SolveOptions {
  // Largest profile count solve_ce_explicit may enumerate.
  long long explicit_guard = 100'000;
  LpLimits lp;
  ExpectationLimits expectation;
};

// Correlated equilibrium as one probability per full profile, found by a
// phase-1 solve of the deviation constraints over all profile columns.
ExplicitDistribution solve_ce_explicit(const PolymatrixGame& game,
                                       const SolveOptions& options = {});

// Stationary distribution of the continuous-time chain with the given
// nonnegative rate matrix (zero diagonal required). All-zero rates give the
// uniform distribution; otherwise the chain is restricted to the recurrent
// class containing the lowest-numbered state with no escape, that class is
// solved densely, and other states get probability zero. The result satisfies
// the balance equations to 1e-9 relative to the largest rate.
std::vector<double> stationary_distribution(const Matrix& rates);

// Product distribution whose marginals are the stationary distributions of
// each player's dual-weight rate matrix. Pairs to zero against the regrets of
// any product built this way, which is what drives the cut loop below.
ProductDistribution product_from_dual(const std::vector<int>& strategy_counts,
                                      const DualWeights& dual);

struct MixtureSolution {
  MixtureDistribution mixture;
  int rounds = 0;              // cut rounds executed
  bool via_explicit = false;   // round budget ran out; explicit solve supplied the answer
  RegretReport report;         // regrets of the returned mixture
};

// Cut generation over product components: seed with the uniform product, ask
// the LP for component weights making every regret >= -eps/2, and on
// infeasibility turn the certificate into a new component via
// product_from_dual. Falls back to solve_ce_explicit (as a point-mass mixture)
// when rounds run out and the game is within the explicit guard; otherwise
// throws ConvergenceError. Requires an aggregator with a non-enumerating
// conditional-expectation path (sum, max, min, or sorted-linear within k_max).
MixtureSolution solve_ce_mixture(const PolymatrixGame& game, double eps, int max_rounds,
                                 const SolveOptions& options = {});

}  // namespace polymax
