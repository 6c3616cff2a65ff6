#include "polymax/sat.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "polymax/errors.hpp"
#include "polymax/expectation.hpp"

namespace polymax {

std::vector<std::string> validate_cnf(const CnfFormula& formula) {
  std::vector<std::string> violations;
  if (formula.variable_count < 1) {
    violations.push_back("variable count " + std::to_string(formula.variable_count) +
                         " must be at least 1");
    return violations;
  }
  for (size_t c = 0; c < formula.clauses.size(); ++c) {
    const auto& clause = formula.clauses[c];
    if (clause.empty() || clause.size() > 3) {
      violations.push_back("clause " + std::to_string(c) + " has " +
                           std::to_string(clause.size()) + " literals; 1 to 3 allowed");
    }
    for (const Literal& lit : clause) {
      if (lit.var < 0 || lit.var >= formula.variable_count) {
        violations.push_back("clause " + std::to_string(c) + " names variable " +
                             std::to_string(lit.var) + " of " +
                             std::to_string(formula.variable_count));
      }
    }
  }
  return violations;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula formula;
  bool header_seen = false;
  long long declared_clauses = 0;
  std::vector<Literal> clause;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (header_seen) throw ParseError("line " + std::to_string(line_no) + ": duplicate header");
      std::string kind;
      long long vars = 0;
      long long clauses = 0;
      if (!(tokens >> kind >> vars >> clauses) || kind != "cnf") {
        throw ParseError("line " + std::to_string(line_no) + ": header must be 'p cnf <vars> <clauses>'");
      }
      if (vars < 1 || vars > 1'000'000 || clauses < 0) {
        throw ParseError("line " + std::to_string(line_no) + ": header declares " +
                         std::to_string(vars) + " variables and " + std::to_string(clauses) +
                         " clauses");
      }
      formula.variable_count = static_cast<int>(vars);
      declared_clauses = clauses;
      header_seen = true;
      continue;
    }
    if (!header_seen) {
      throw ParseError("line " + std::to_string(line_no) + ": clause before the 'p cnf' header");
    }
    std::istringstream rest(line);
    long long token = 0;
    while (rest >> token) {
      if (token == 0) {
        if (clause.empty() || clause.size() > 3) {
          throw ParseError("line " + std::to_string(line_no) + ": clause " +
                           std::to_string(formula.clauses.size()) + " has " +
                           std::to_string(clause.size()) + " literals; 1 to 3 allowed");
        }
        formula.clauses.push_back(clause);
        clause.clear();
        continue;
      }
      const long long var = token > 0 ? token : -token;
      if (var > formula.variable_count) {
        throw ParseError("line " + std::to_string(line_no) + ": literal " + std::to_string(token) +
                         " names a variable beyond " + std::to_string(formula.variable_count));
      }
      clause.push_back({static_cast<int>(var - 1), token < 0});
    }
    if (!rest.eof()) {
      throw ParseError("line " + std::to_string(line_no) + ": clause lines must hold integers");
    }
  }
  if (!header_seen) throw ParseError("missing 'p cnf' header");
  if (!clause.empty()) throw ParseError("last clause is not terminated by 0");
  if (static_cast<long long>(formula.clauses.size()) != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(formula.clauses.size()));
  }
  return formula;
}

SatReduction reduce_3sat(const CnfFormula& formula) {
  const std::vector<std::string> violations = validate_cnf(formula);
  if (!violations.empty()) throw InputError("invalid formula: " + violations.front());

  const int vars = formula.variable_count;
  SatReduction reduction;
  PolymatrixGame& game = reduction.game;
  game.n = vars + 1;
  game.strategy_counts.assign(game.n, 2);
  game.strategy_counts[0] = 1;

  // Player 0 earns the truth value of each variable player: payoff j against
  // action j of variable players, zero everywhere else.
  game.payoffs.reserve(static_cast<size_t>(game.n) * (game.n - 1));
  for (int p = 0; p < game.n; ++p) {
    for (int q = 0; q < game.n; ++q) {
      if (q == p) continue;
      Matrix u(game.strategy_counts[p], game.strategy_counts[q]);
      if (p == 0) {
        for (int j = 0; j < u.cols; ++j) u.at(0, j) = static_cast<double>(j);
      }
      game.payoffs.push_back(std::move(u));
    }
  }

  // The formula reads variable v through opponent slot v (player v+1).
  std::vector<BoolExpr> clause_exprs;
  clause_exprs.reserve(formula.clauses.size());
  for (const auto& clause : formula.clauses) {
    std::vector<BoolExpr> literals;
    literals.reserve(clause.size());
    for (const Literal& lit : clause) {
      BoolExpr v = BoolExpr::variable(lit.var);
      literals.push_back(lit.negated ? BoolExpr::negation(std::move(v)) : std::move(v));
    }
    clause_exprs.push_back(BoolExpr::disjunction(std::move(literals)));
  }
  if (clause_exprs.empty()) {
    // No clauses: the formula is a tautology.
    clause_exprs.push_back(BoolExpr::disjunction(
        {BoolExpr::variable(0), BoolExpr::negation(BoolExpr::variable(0))}));
  }
  game.aggregator = BooleanFormulaAggregator{BoolExpr::conjunction(std::move(clause_exprs))};
  require_valid_game(game);

  reduction.distribution = uniform_product(game.strategy_counts);
  reduction.player = 0;
  return reduction;
}

SatDecision decide_sat_via_expectation(const CnfFormula& formula, int max_variables) {
  if (max_variables < 1) throw InputError("variable cap must be positive");
  const std::vector<std::string> violations = validate_cnf(formula);
  if (!violations.empty()) throw InputError("invalid formula: " + violations.front());
  if (formula.variable_count > max_variables) {
    throw ResourceError("formula has " + std::to_string(formula.variable_count) +
                        " variables; cap is " + std::to_string(max_variables));
  }
  const SatReduction reduction = reduce_3sat(formula);
  ExpectationLimits limits;
  limits.enumeration_guard =
      std::max(limits.enumeration_guard, 1LL << formula.variable_count);
  SatDecision decision;
  decision.expectation =
      brute_expectation(reduction.game, reduction.player, reduction.distribution, limits);
  decision.satisfiable = decision.expectation > 0.0;
  return decision;
}

}  // namespace polymax
