#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polymax/distribution.hpp"
#include "polymax/game.hpp"

namespace polymax {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;
};

// CNF with 1- to 3-literal clauses.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<Literal>> clauses;
};

std::vector<std::string> validate_cnf(const CnfFormula& formula);

// DIMACS cnf reader: 'c' comment lines, one 'p cnf <vars> <clauses>' header,
// then 0-terminated clauses. Clause sizes outside 1..3, literals out of range,
// or counts disagreeing with the header are ParseErrors.
CnfFormula parse_dimacs(std::string_view text);

// A game and distribution whose designated player's expected utility equals
// (number of satisfying assignments) / 2^variable_count.
struct SatReduction {
  PolymatrixGame game;
  ProductDistribution distribution;
  int player = 0;
};

// Player 0 has a single strategy and earns 0/1 against each variable player
// mirroring its truth value; the boolean-formula aggregator is the CNF itself
// and every variable player mixes uniformly.
SatReduction reduce_3sat(const CnfFormula& formula);

struct SatDecision {
  bool satisfiable = false;
  double expectation = 0.0;  // exactly 0 when unsatisfiable
};

// Decides satisfiability by evaluating the reduction's expectation exactly.
// ResourceError when variable_count exceeds max_variables.
SatDecision decide_sat_via_expectation(const CnfFormula& formula, int max_variables = 24);

}  // namespace polymax
