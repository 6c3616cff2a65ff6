#pragma once

#include <string>
#include <vector>

#include "polymax/aggregator.hpp"

namespace polymax {

// Dense row-major matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0);

  double& at(int i, int j) { return values[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * cols + j]; }
};

// One strategy index per player.
using StrategyProfile = std::vector<int>;

// n-player game with one payoff matrix per ordered player pair. Player p's
// utility at a profile is the aggregator applied to its n-1 per-opponent
// payoffs U_pq(s_p, s_q).
struct PolymatrixGame {
  int n = 0;
  std::vector<int> strategy_counts;
  std::vector<Matrix> payoffs;  // indexed by pair_index(p, q)
  Aggregator aggregator;

  // Position of ordered pair (p, q), p != q: pairs sorted by p, then q.
  int pair_index(int p, int q) const;
  const Matrix& payoff_matrix(int p, int q) const { return payoffs[pair_index(p, q)]; }
  Matrix& payoff_matrix(int p, int q) { return payoffs[pair_index(p, q)]; }

  int max_strategies() const;
  // Product of strategy counts, saturating at LLONG_MAX.
  long long profile_count() const;
};

// Empty when every game invariant holds (shapes, finite payoffs, aggregator
// arity, 0/1 payoffs under a boolean formula); otherwise one line per
// violation.
std::vector<std::string> validate_game(const PolymatrixGame& game);

// InputError carrying the first violation, if any.
void require_valid_game(const PolymatrixGame& game);

// Per-opponent payoffs of player p at profile s, ordered by increasing
// opponent index.
std::vector<double> opponent_payoffs(const PolymatrixGame& game, int p,
                                     const StrategyProfile& s);

// Player p's utility at profile s.
double evaluate_utility(const PolymatrixGame& game, int p, const StrategyProfile& s);

}  // namespace polymax
