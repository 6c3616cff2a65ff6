#include "polymax/aggregator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

BoolExpr BoolExpr::variable(int index) {
  BoolExpr e;
  e.op = Op::Var;
  e.var = index;
  return e;
}

BoolExpr BoolExpr::negation(BoolExpr arg) {
  BoolExpr e;
  e.op = Op::Not;
  e.args.push_back(std::move(arg));
  return e;
}

BoolExpr BoolExpr::conjunction(std::vector<BoolExpr> args) {
  BoolExpr e;
  e.op = Op::And;
  e.args = std::move(args);
  return e;
}

BoolExpr BoolExpr::disjunction(std::vector<BoolExpr> args) {
  BoolExpr e;
  e.op = Op::Or;
  e.args = std::move(args);
  return e;
}

bool eval_bool_expr(const BoolExpr& expr, const std::vector<bool>& inputs) {
  switch (expr.op) {
    case BoolExpr::Op::Var:
      if (expr.var < 0 || expr.var >= static_cast<int>(inputs.size())) {
        throw InputError("boolean formula input index " + std::to_string(expr.var) +
                         " out of range for " + std::to_string(inputs.size()) + " inputs");
      }
      return inputs[expr.var];
    case BoolExpr::Op::Not:
      if (expr.args.size() != 1) throw InputError("'not' node must have exactly one argument");
      return !eval_bool_expr(expr.args[0], inputs);
    case BoolExpr::Op::And:
      if (expr.args.empty()) throw InputError("'and' node must have at least one argument");
      return std::all_of(expr.args.begin(), expr.args.end(),
                         [&](const BoolExpr& a) { return eval_bool_expr(a, inputs); });
    case BoolExpr::Op::Or:
      if (expr.args.empty()) throw InputError("'or' node must have at least one argument");
      return std::any_of(expr.args.begin(), expr.args.end(),
                         [&](const BoolExpr& a) { return eval_bool_expr(a, inputs); });
  }
  throw InputError("boolean formula node has an unknown operator");
}

int max_input_index(const BoolExpr& expr) {
  if (expr.op == BoolExpr::Op::Var) return expr.var;
  int best = -1;
  for (const BoolExpr& a : expr.args) best = std::max(best, max_input_index(a));
  return best;
}

namespace {

void collect_expr_violations(const BoolExpr& expr, std::vector<std::string>* out) {
  switch (expr.op) {
    case BoolExpr::Op::Var:
      if (expr.var < 0) out->push_back("formula input index " + std::to_string(expr.var) + " is negative");
      if (!expr.args.empty()) out->push_back("'var' node must not have arguments");
      return;
    case BoolExpr::Op::Not:
      if (expr.args.size() != 1) out->push_back("'not' node must have exactly one argument");
      break;
    case BoolExpr::Op::And:
      if (expr.args.empty()) out->push_back("'and' node must have at least one argument");
      break;
    case BoolExpr::Op::Or:
      if (expr.args.empty()) out->push_back("'or' node must have at least one argument");
      break;
  }
  for (const BoolExpr& a : expr.args) collect_expr_violations(a, out);
}

}  // namespace

std::vector<std::string> validate_bool_expr(const BoolExpr& expr) {
  std::vector<std::string> violations;
  collect_expr_violations(expr, &violations);
  return violations;
}

std::string aggregator_tag(const Aggregator& agg) {
  return std::visit(Overloaded{[](const SumAggregator&) { return std::string("sum"); },
                               [](const MaxAggregator&) { return std::string("max"); },
                               [](const MinAggregator&) { return std::string("min"); },
                               [](const SortedLinearAggregator&) { return std::string("sorted_linear"); },
                               [](const BooleanFormulaAggregator&) { return std::string("boolean_formula"); }},
                    agg);
}

int leading_term_count(const std::vector<double>& coeffs) {
  for (int k = static_cast<int>(coeffs.size()); k > 0; --k) {
    if (coeffs[k - 1] != 0.0) return k;
  }
  return 0;
}

double apply_aggregator(const Aggregator& agg, const std::vector<double>& values) {
  if (values.empty()) throw InputError("aggregator applied to an empty value list");
  return std::visit(
      Overloaded{
          [&](const SumAggregator&) {
            return std::accumulate(values.begin(), values.end(), 0.0);
          },
          [&](const MaxAggregator&) { return *std::max_element(values.begin(), values.end()); },
          [&](const MinAggregator&) { return *std::min_element(values.begin(), values.end()); },
          [&](const SortedLinearAggregator& s) {
            if (s.coeffs.size() != values.size()) {
              throw InputError("sorted-linear aggregator has " + std::to_string(s.coeffs.size()) +
                               " coefficients for " + std::to_string(values.size()) + " values");
            }
            std::vector<std::pair<double, int>> order(values.size());
            for (size_t k = 0; k < values.size(); ++k) order[k] = {values[k], static_cast<int>(k)};
            std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
            double total = 0.0;
            for (size_t k = 0; k < order.size(); ++k) total += s.coeffs[k] * order[k].first;
            return total;
          },
          [&](const BooleanFormulaAggregator& b) {
            std::vector<bool> bits(values.size());
            for (size_t k = 0; k < values.size(); ++k) {
              if (values[k] == 0.0) {
                bits[k] = false;
              } else if (values[k] == 1.0) {
                bits[k] = true;
              } else {
                throw DomainError("boolean formula met a payoff of " + std::to_string(values[k]) +
                                  "; only 0 and 1 are allowed");
              }
            }
            return eval_bool_expr(b.formula, bits) ? 1.0 : 0.0;
          }},
      agg);
}

}  // namespace polymax
