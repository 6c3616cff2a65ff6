#include "polymax/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymax/errors.hpp"

namespace polymax {

Matrix::Matrix(int r, int c, double fill)
    : rows(r), cols(c), values(static_cast<size_t>(r) * static_cast<size_t>(c), fill) {
  if (r < 0 || c < 0) throw InputError("matrix dimensions must be nonnegative");
}

int PolymatrixGame::pair_index(int p, int q) const {
  if (p < 0 || p >= n || q < 0 || q >= n || p == q) {
    throw InputError("invalid ordered player pair (" + std::to_string(p) + ", " +
                     std::to_string(q) + ") for " + std::to_string(n) + " players");
  }
  return p * (n - 1) + (q < p ? q : q - 1);
}

int PolymatrixGame::max_strategies() const {
  int m = 0;
  for (int t : strategy_counts) m = std::max(m, t);
  return m;
}

long long PolymatrixGame::profile_count() const {
  long long prod = 1;
  for (int t : strategy_counts) {
    if (t <= 0) return 0;
    if (prod > std::numeric_limits<long long>::max() / t) {
      return std::numeric_limits<long long>::max();
    }
    prod *= t;
  }
  return prod;
}

namespace {

std::string pair_name(int p, int q) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

}  // namespace

std::vector<std::string> validate_game(const PolymatrixGame& game) {
  std::vector<std::string> violations;
  if (game.n < 2) {
    violations.push_back("player count " + std::to_string(game.n) + " must be at least 2");
    return violations;
  }
  if (static_cast<int>(game.strategy_counts.size()) != game.n) {
    violations.push_back("strategy_counts has " + std::to_string(game.strategy_counts.size()) +
                         " entries for " + std::to_string(game.n) + " players");
    return violations;
  }
  for (int p = 0; p < game.n; ++p) {
    if (game.strategy_counts[p] < 1) {
      violations.push_back("player " + std::to_string(p) + " has strategy count " +
                           std::to_string(game.strategy_counts[p]) + "; at least 1 required");
    }
  }
  if (!violations.empty()) return violations;

  const size_t expected = static_cast<size_t>(game.n) * (game.n - 1);
  if (game.payoffs.size() != expected) {
    violations.push_back("expected " + std::to_string(expected) + " payoff matrices, found " +
                         std::to_string(game.payoffs.size()));
    return violations;
  }

  const bool binary = std::holds_alternative<BooleanFormulaAggregator>(game.aggregator);
  for (int p = 0; p < game.n; ++p) {
    for (int q = 0; q < game.n; ++q) {
      if (q == p) continue;
      const Matrix& u = game.payoffs[game.pair_index(p, q)];
      if (u.rows != game.strategy_counts[p] || u.cols != game.strategy_counts[q]) {
        violations.push_back("matrix " + pair_name(p, q) + " is " + std::to_string(u.rows) + "x" +
                             std::to_string(u.cols) + "; expected " +
                             std::to_string(game.strategy_counts[p]) + "x" +
                             std::to_string(game.strategy_counts[q]));
        continue;
      }
      for (int i = 0; i < u.rows; ++i) {
        for (int j = 0; j < u.cols; ++j) {
          const double v = u.at(i, j);
          if (!std::isfinite(v)) {
            violations.push_back("matrix " + pair_name(p, q) + " entry [" + std::to_string(i) +
                                 "][" + std::to_string(j) + "] is not finite");
          } else if (binary && v != 0.0 && v != 1.0) {
            violations.push_back("matrix " + pair_name(p, q) + " entry [" + std::to_string(i) +
                                 "][" + std::to_string(j) + "] is " + std::to_string(v) +
                                 "; boolean-formula games need 0/1 payoffs");
          }
        }
      }
    }
  }

  if (const auto* s = std::get_if<SortedLinearAggregator>(&game.aggregator)) {
    if (static_cast<int>(s->coeffs.size()) != game.n - 1) {
      violations.push_back("sorted-linear aggregator has " + std::to_string(s->coeffs.size()) +
                           " coefficients for " + std::to_string(game.n - 1) + " opponents");
    }
    for (size_t k = 0; k < s->coeffs.size(); ++k) {
      if (!std::isfinite(s->coeffs[k])) {
        violations.push_back("sorted-linear coefficient " + std::to_string(k) + " is not finite");
      }
    }
  } else if (const auto* b = std::get_if<BooleanFormulaAggregator>(&game.aggregator)) {
    std::vector<std::string> expr = validate_bool_expr(b->formula);
    violations.insert(violations.end(), expr.begin(), expr.end());
    const int top = max_input_index(b->formula);
    if (top > game.n - 2) {
      violations.push_back("formula input index " + std::to_string(top) +
                           " out of range for " + std::to_string(game.n - 1) + " opponents");
    }
  }
  return violations;
}

void require_valid_game(const PolymatrixGame& game) {
  std::vector<std::string> violations = validate_game(game);
  if (!violations.empty()) throw InputError("invalid game: " + violations.front());
}

namespace {

void require_profile(const PolymatrixGame& game, int p, const StrategyProfile& s) {
  if (p < 0 || p >= game.n) {
    throw InputError("player " + std::to_string(p) + " out of range for " +
                     std::to_string(game.n) + " players");
  }
  if (static_cast<int>(s.size()) != game.n) {
    throw InputError("profile has " + std::to_string(s.size()) + " entries for " +
                     std::to_string(game.n) + " players");
  }
  for (int r = 0; r < game.n; ++r) {
    if (s[r] < 0 || s[r] >= game.strategy_counts[r]) {
      throw InputError("profile entry " + std::to_string(s[r]) + " out of range for player " +
                       std::to_string(r));
    }
  }
}

}  // namespace

std::vector<double> opponent_payoffs(const PolymatrixGame& game, int p,
                                     const StrategyProfile& s) {
  require_profile(game, p, s);
  std::vector<double> values;
  values.reserve(game.n - 1);
  for (int q = 0; q < game.n; ++q) {
    if (q == p) continue;
    values.push_back(game.payoffs[game.pair_index(p, q)].at(s[p], s[q]));
  }
  return values;
}

double evaluate_utility(const PolymatrixGame& game, int p, const StrategyProfile& s) {
  return apply_aggregator(game.aggregator, opponent_payoffs(game, p, s));
}

}  // namespace polymax
