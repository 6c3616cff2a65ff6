#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polymax/errors.hpp"
#include "polymax/expectation.hpp"
#include "polymax/sat.hpp"

using namespace polymax;

namespace {

CnfFormula make_formula(int variables, std::vector<std::vector<int>> dimacs_clauses) {
  CnfFormula f;
  f.variable_count = variables;
  for (const auto& clause : dimacs_clauses) {
    std::vector<Literal> lits;
    for (const int lit : clause) lits.push_back({std::abs(lit) - 1, lit < 0});
    f.clauses.push_back(lits);
  }
  return f;
}

CnfFormula random_formula(int variables, int clause_count, std::mt19937_64& gen) {
  CnfFormula f;
  f.variable_count = variables;
  for (int c = 0; c < clause_count; ++c) {
    const int size = 1 + static_cast<int>(gen() % 3);
    std::vector<Literal> clause;
    for (int k = 0; k < size; ++k) {
      clause.push_back({static_cast<int>(gen() % variables), gen() % 2 == 0});
    }
    f.clauses.push_back(clause);
  }
  return f;
}

}  // namespace

TEST_CASE("hand-checked formulas get exact expectations") {
  const SatDecision lone = decide_sat_via_expectation(make_formula(1, {{1}}));
  CHECK(lone.satisfiable);
  CHECK(lone.expectation == 0.5);

  const SatDecision contradiction = decide_sat_via_expectation(make_formula(1, {{1}, {-1}}));
  CHECK_FALSE(contradiction.satisfiable);
  CHECK(contradiction.expectation == 0.0);

  const SatDecision wide = decide_sat_via_expectation(make_formula(3, {{1, 2, 3}}));
  CHECK(wide.satisfiable);
  CHECK(wide.expectation == 0.875);
}

TEST_CASE("the reduction has the promised shape") {
  const CnfFormula f = make_formula(3, {{1, -2, 3}, {2}});
  const SatReduction reduction = reduce_3sat(f);
  CHECK(reduction.player == 0);
  CHECK(reduction.game.n == 4);
  REQUIRE(reduction.game.strategy_counts.size() == 4);
  CHECK(reduction.game.strategy_counts[0] == 1);
  for (int v = 1; v <= 3; ++v) CHECK(reduction.game.strategy_counts[v] == 2);

  for (int v = 1; v <= 3; ++v) {
    const Matrix& row = reduction.game.payoff_matrix(0, v);
    CHECK(row.rows == 1);
    CHECK(row.cols == 2);
    CHECK(row.at(0, 0) == 0.0);
    CHECK(row.at(0, 1) == 1.0);
    const Matrix& back = reduction.game.payoff_matrix(v, 0);
    for (const double value : back.values) CHECK(value == 0.0);
  }
  for (int v = 1; v <= 3; ++v) {
    for (int w = 1; w <= 3; ++w) {
      if (v == w) continue;
      for (const double value : reduction.game.payoff_matrix(v, w).values) {
        CHECK(value == 0.0);
      }
    }
  }
  CHECK(validate_game(reduction.game).empty());
  for (int v = 1; v <= 3; ++v) {
    CHECK(reduction.distribution.marginals[v] == std::vector<double>{0.5, 0.5});
  }
}

TEST_CASE("decisions agree with the truth table") {
  std::mt19937_64 gen(113);
  for (int trial = 0; trial < 120; ++trial) {
    const int variables = 2 + static_cast<int>(gen() % 7);
    const int clauses = 1 + static_cast<int>(gen() % 15);
    const CnfFormula f = random_formula(variables, clauses, gen);
    const long long count = testutil::count_satisfying(f);
    const SatDecision decision = decide_sat_via_expectation(f);
    CHECK(decision.satisfiable == (count > 0));
    const double scaled = decision.expectation * std::pow(2.0, variables);
    CHECK(scaled == static_cast<double>(count));
  }
}

TEST_CASE("an unsatisfiable cover of two variables lands on exactly zero") {
  const CnfFormula f = make_formula(2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}});
  const SatDecision decision = decide_sat_via_expectation(f);
  CHECK_FALSE(decision.satisfiable);
  CHECK(decision.expectation == 0.0);
}

TEST_CASE("variable budgets are enforced") {
  const CnfFormula f = make_formula(6, {{1, 2, 3}});
  CHECK_THROWS_AS(decide_sat_via_expectation(f, 5), ResourceError);
  CHECK_NOTHROW(decide_sat_via_expectation(f, 6));
}

TEST_CASE("dimacs files parse with comments and blank lines") {
  const std::string text =
      "c a comment\n"
      "\n"
      "p cnf 3 2\n"
      "1 -2 3 0\n"
      "c interleaved\n"
      "2 0\n";
  const CnfFormula f = parse_dimacs(text);
  CHECK(f.variable_count == 3);
  REQUIRE(f.clauses.size() == 2);
  REQUIRE(f.clauses[0].size() == 3);
  CHECK(f.clauses[0][1].var == 1);
  CHECK(f.clauses[0][1].negated);
  CHECK(f.clauses[1][0].var == 1);
  CHECK_FALSE(f.clauses[1][0].negated);
  CHECK(validate_cnf(f).empty());
}

TEST_CASE("dimacs defects are parse errors") {
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);                       // no header
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 1 2 0\n"), ParseError);        // clause too wide
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), ParseError);              // literal range
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);              // missing terminator
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);              // count mismatch
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 frog 0\n"), ParseError);         // stray token
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);   // double header
}

TEST_CASE("clause sizes one through three are accepted, larger are not") {
  CHECK(validate_cnf(make_formula(4, {{1}, {1, 2}, {2, 3, 4}})).empty());
  CHECK_FALSE(validate_cnf(make_formula(4, {{1, 2, 3, 4}})).empty());
  CHECK_FALSE(validate_cnf(make_formula(0, {})).empty());
}

TEST_CASE("the reduction expectation is reachable through the generic path") {
  const CnfFormula f = make_formula(3, {{1, -2, 3}, {2, 3}});
  const SatReduction reduction = reduce_3sat(f);
  const double direct = brute_expectation(reduction.game, 0, reduction.distribution);
  const SatDecision decision = decide_sat_via_expectation(f);
  CHECK(direct == decision.expectation);
}
