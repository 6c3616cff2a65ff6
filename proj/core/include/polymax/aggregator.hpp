#pragma once

#include <string>
#include <variant>
#include <vector>

namespace polymax {

// Node of a boolean expression over numbered input slots. `Not` takes exactly
// one argument, `And`/`Or` take at least one, `Var` takes none.
struct BoolExpr {
  enum class Op { Var, Not, And, Or };

  Op op = Op::Var;
  int var = -1;
  std::vector<BoolExpr> args;

  static BoolExpr variable(int index);
  static BoolExpr negation(BoolExpr arg);
  static BoolExpr conjunction(std::vector<BoolExpr> args);
  static BoolExpr disjunction(std::vector<BoolExpr> args);
};

bool eval_bool_expr(const BoolExpr& expr, const std::vector<bool>& inputs);

// Largest Var index appearing in the expression, -1 if there is none.
int max_input_index(const BoolExpr& expr);

// Empty when the expression is well formed; otherwise one line per problem.
std::vector<std::string> validate_bool_expr(const BoolExpr& expr);

// How a player's per-opponent payoffs combine into a single utility.
struct SumAggregator {};
struct MaxAggregator {};
struct MinAggregator {};

// coeffs[k] weights the (k+1)-th largest per-opponent payoff. Length must
// equal the opponent count. (1,0,...,0) is Max, all ones is Sum.
struct SortedLinearAggregator {
  std::vector<double> coeffs;
};

// Payoffs must all be 0 or 1; the formula's inputs are the per-opponent
// payoffs in opponent order and the utility is the 0/1 truth value.
struct BooleanFormulaAggregator {
  BoolExpr formula;
};

using Aggregator = std::variant<SumAggregator, MaxAggregator, MinAggregator,
                                SortedLinearAggregator, BooleanFormulaAggregator>;

// Serialization tag: "sum", "max", "min", "sorted_linear", "boolean_formula".
std::string aggregator_tag(const Aggregator& agg);

// Number of coefficients up to and including the last nonzero one; 0 when all
// coefficients are zero.
int leading_term_count(const std::vector<double>& coeffs);

// Combine one value per opponent (ordered by increasing opponent index).
// Throws DomainError if a boolean formula meets a value other than 0 or 1.
double apply_aggregator(const Aggregator& agg, const std::vector<double>& values);

}  // namespace polymax
