#include <doctest.h>

#include <climits>
#include <limits>
#include <set>
#include <vector>

#include "polymax/errors.hpp"
#include "polymax/game.hpp"

using namespace polymax;

namespace {

PolymatrixGame two_by_two_game() {
  PolymatrixGame game;
  game.n = 2;
  game.strategy_counts = {2, 2};
  game.aggregator = SumAggregator{};
  Matrix a(2, 2);
  a.at(0, 0) = 1.0;
  a.at(0, 1) = 2.0;
  a.at(1, 0) = 3.0;
  a.at(1, 1) = 4.0;
  Matrix b(2, 2);
  b.at(0, 0) = -1.0;
  b.at(1, 1) = -2.0;
  game.payoffs = {a, b};
  return game;
}

PolymatrixGame three_player_max() {
  PolymatrixGame game;
  game.n = 3;
  game.strategy_counts = {2, 2, 2};
  game.aggregator = MaxAggregator{};
  Matrix column_is_value(2, 2);
  column_is_value.at(0, 1) = 1.0;
  column_is_value.at(1, 1) = 1.0;
  game.payoffs.assign(6, column_is_value);
  return game;
}

}  // namespace

TEST_CASE("a well-formed game validates cleanly") {
  CHECK(validate_game(two_by_two_game()).empty());
  CHECK(validate_game(three_player_max()).empty());
  CHECK_NOTHROW(require_valid_game(three_player_max()));
}

TEST_CASE("pair indices enumerate ordered pairs without collision") {
  PolymatrixGame game;
  game.n = 4;
  game.strategy_counts = {2, 2, 2, 2};
  std::set<int> seen;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      if (p == q) continue;
      const int idx = game.pair_index(p, q);
      CHECK(idx >= 0);
      CHECK(idx < 12);
      seen.insert(idx);
    }
  }
  CHECK(seen.size() == 12);
  CHECK_THROWS_AS(game.pair_index(0, 0), InputError);
  CHECK_THROWS_AS(game.pair_index(0, 4), InputError);
}

TEST_CASE("utility on hand-checked profiles") {
  const PolymatrixGame game = two_by_two_game();
  CHECK(evaluate_utility(game, 0, {0, 1}) == 2.0);
  CHECK(evaluate_utility(game, 0, {1, 0}) == 3.0);
  CHECK(evaluate_utility(game, 1, {0, 0}) == -1.0);
  CHECK(evaluate_utility(game, 1, {1, 1}) == -2.0);

  const PolymatrixGame maxed = three_player_max();
  CHECK(evaluate_utility(maxed, 0, {0, 0, 0}) == 0.0);
  CHECK(evaluate_utility(maxed, 0, {0, 1, 0}) == 1.0);
  CHECK(evaluate_utility(maxed, 1, {1, 0, 1}) == 1.0);
}

TEST_CASE("opponent payoffs come back in opponent order") {
  PolymatrixGame game = three_player_max();
  game.payoff_matrix(1, 0).at(0, 1) = 5.0;
  const std::vector<double> values = opponent_payoffs(game, 1, {1, 0, 1});
  REQUIRE(values.size() == 2);
  CHECK(values[0] == game.payoff_matrix(1, 0).at(0, 1));
  CHECK(values[1] == game.payoff_matrix(1, 2).at(0, 1));
}

TEST_CASE("validation flags each structural defect") {
  PolymatrixGame game = two_by_two_game();
  game.n = 1;
  CHECK_FALSE(validate_game(game).empty());

  game = two_by_two_game();
  game.strategy_counts = {2};
  CHECK_FALSE(validate_game(game).empty());

  game = two_by_two_game();
  game.strategy_counts = {2, 0};
  CHECK_FALSE(validate_game(game).empty());

  game = two_by_two_game();
  game.payoffs.pop_back();
  CHECK_FALSE(validate_game(game).empty());

  game = two_by_two_game();
  game.payoffs[0] = Matrix(2, 3);
  CHECK_FALSE(validate_game(game).empty());

  game = two_by_two_game();
  game.payoffs[1].at(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_FALSE(validate_game(game).empty());
  CHECK_THROWS_AS(require_valid_game(game), InputError);
}

TEST_CASE("aggregator arity is part of validation") {
  PolymatrixGame game = three_player_max();
  game.aggregator = SortedLinearAggregator{{1.0}};
  CHECK_FALSE(validate_game(game).empty());
  game.aggregator = SortedLinearAggregator{{1.0, 0.0}};
  CHECK(validate_game(game).empty());

  game.aggregator = BooleanFormulaAggregator{BoolExpr::variable(2)};
  CHECK_FALSE(validate_game(game).empty());
  game.aggregator = BooleanFormulaAggregator{BoolExpr::variable(1)};
  CHECK(validate_game(game).empty());
}

TEST_CASE("boolean games insist on binary payoffs") {
  PolymatrixGame game = three_player_max();
  game.aggregator = BooleanFormulaAggregator{BoolExpr::variable(1)};
  CHECK(validate_game(game).empty());
  game.payoff_matrix(0, 1).at(0, 0) = 0.5;
  CHECK_FALSE(validate_game(game).empty());
}

TEST_CASE("profile counting saturates instead of overflowing") {
  PolymatrixGame game;
  game.n = 4;
  game.strategy_counts = {1 << 20, 1 << 20, 1 << 20, 1 << 20};
  CHECK(game.profile_count() == LLONG_MAX);
  game.strategy_counts = {3, 4, 5, 2};
  CHECK(game.profile_count() == 120);
}
