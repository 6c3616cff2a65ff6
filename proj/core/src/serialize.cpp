#include "polymax/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

using nlohmann::json;

json parse_document(std::string_view bytes) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "/" + key + ": missing field");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<int>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

json formula_to_json(const BoolExpr& expr) {
  if (expr.op == BoolExpr::Op::Var) return json{{"var", expr.var}};
  json args = json::array();
  for (const BoolExpr& a : expr.args) args.push_back(formula_to_json(a));
  const char* op = expr.op == BoolExpr::Op::Not ? "not" : expr.op == BoolExpr::Op::And ? "and" : "or";
  return json{{"op", op}, {"args", std::move(args)}};
}

BoolExpr formula_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  if (j.contains("op")) {
    const std::string op = as_string(j.at("op"), path + "/op");
    const json& args = as_array(field(j, "args", path), path + "/args");
    std::vector<BoolExpr> parsed;
    parsed.reserve(args.size());
    for (size_t k = 0; k < args.size(); ++k) {
      parsed.push_back(formula_from_json(args[k], path + "/args/" + std::to_string(k)));
    }
    if (op == "not") {
      if (parsed.size() != 1) throw ParseError(path + "/args: 'not' takes exactly one argument");
      return BoolExpr::negation(std::move(parsed.front()));
    }
    if (op == "and" || op == "or") {
      if (parsed.empty()) throw ParseError(path + "/args: '" + op + "' takes at least one argument");
      return op == "and" ? BoolExpr::conjunction(std::move(parsed))
                         : BoolExpr::disjunction(std::move(parsed));
    }
    throw ParseError(path + "/op: unknown operator '" + op + "'");
  }
  if (j.contains("var")) {
    const int var = as_int(j.at("var"), path + "/var");
    if (var < 0) throw ParseError(path + "/var: input index must be nonnegative");
    return BoolExpr::variable(var);
  }
  throw ParseError(path + ": formula node needs 'op' or 'var'");
}

json aggregator_to_json(const Aggregator& agg) {
  json out{{"type", aggregator_tag(agg)}};
  if (const auto* s = std::get_if<SortedLinearAggregator>(&agg)) {
    out["coeffs"] = s->coeffs;
  } else if (const auto* b = std::get_if<BooleanFormulaAggregator>(&agg)) {
    out["formula"] = formula_to_json(b->formula);
  }
  return out;
}

Aggregator aggregator_from_json(const json& j, const std::string& path) {
  const std::string tag = as_string(field(j, "type", path), path + "/type");
  if (tag == "sum") return SumAggregator{};
  if (tag == "max") return MaxAggregator{};
  if (tag == "min") return MinAggregator{};
  if (tag == "sorted_linear") {
    const json& coeffs = as_array(field(j, "coeffs", path), path + "/coeffs");
    SortedLinearAggregator s;
    s.coeffs.reserve(coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k) {
      s.coeffs.push_back(as_number(coeffs[k], path + "/coeffs/" + std::to_string(k)));
    }
    return s;
  }
  if (tag == "boolean_formula") {
    return BooleanFormulaAggregator{formula_from_json(field(j, "formula", path), path + "/formula")};
  }
  throw ParseError(path + "/type: unknown aggregator tag '" + tag + "'");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int rows, int cols, const std::string& path) {
  const json& outer = as_array(j, path);
  if (static_cast<int>(outer.size()) != rows) {
    throw ParseError(path + ": expected " + std::to_string(rows) + " rows, found " +
                     std::to_string(outer.size()));
  }
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string row_path = path + "/" + std::to_string(i);
    const json& row = as_array(outer[i], row_path);
    if (static_cast<int>(row.size()) != cols) {
      throw ParseError(row_path + ": expected " + std::to_string(cols) + " entries, found " +
                       std::to_string(row.size()));
    }
    for (int c = 0; c < cols; ++c) {
      m.at(i, c) = as_number(row[c], row_path + "/" + std::to_string(c));
    }
  }
  return m;
}

bool parse_pair_key(const std::string& key, int* p, int* q) {
  const size_t comma = key.find(',');
  if (comma == std::string::npos) return false;
  const char* begin = key.data();
  auto first = std::from_chars(begin, begin + comma, *p);
  if (first.ec != std::errc() || first.ptr != begin + comma) return false;
  auto second = std::from_chars(begin + comma + 1, begin + key.size(), *q);
  return second.ec == std::errc() && second.ptr == begin + key.size();
}

std::vector<std::vector<double>> marginals_from_json(const json& j, const std::string& path) {
  const json& outer = as_array(j, path);
  if (outer.empty()) throw ParseError(path + ": needs at least one marginal");
  std::vector<std::vector<double>> marginals;
  marginals.reserve(outer.size());
  for (size_t p = 0; p < outer.size(); ++p) {
    const std::string mpath = path + "/" + std::to_string(p);
    const json& inner = as_array(outer[p], mpath);
    if (inner.empty()) throw ParseError(mpath + ": marginal is empty");
    std::vector<double> m;
    m.reserve(inner.size());
    double sum = 0.0;
    for (size_t k = 0; k < inner.size(); ++k) {
      const double v = as_number(inner[k], mpath + "/" + std::to_string(k));
      if (v < 0.0) throw ParseError(mpath + "/" + std::to_string(k) + ": negative probability");
      sum += v;
      m.push_back(v);
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      throw ParseError(mpath + ": probabilities sum to " + std::to_string(sum));
    }
    marginals.push_back(std::move(m));
  }
  return marginals;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string encode_game(const PolymatrixGame& game) {
  require_valid_game(game);
  json payoffs = json::object();
  for (int p = 0; p < game.n; ++p) {
    for (int q = 0; q < game.n; ++q) {
      if (q == p) continue;
      payoffs[std::to_string(p) + "," + std::to_string(q)] =
          matrix_to_json(game.payoff_matrix(p, q));
    }
  }
  const json out{{"n", game.n},
                 {"strategy_counts", game.strategy_counts},
                 {"aggregator", aggregator_to_json(game.aggregator)},
                 {"payoffs", std::move(payoffs)}};
  return dump(out);
}

PolymatrixGame decode_game(std::string_view bytes) {
  const json j = parse_document(bytes);
  PolymatrixGame game;
  game.n = as_int(field(j, "n", ""), "/n");
  if (game.n < 2) throw ParseError("/n: player count must be at least 2");

  const json& counts = as_array(field(j, "strategy_counts", ""), "/strategy_counts");
  if (static_cast<int>(counts.size()) != game.n) {
    throw ParseError("/strategy_counts: expected " + std::to_string(game.n) + " entries, found " +
                     std::to_string(counts.size()));
  }
  for (size_t p = 0; p < counts.size(); ++p) {
    const int t = as_int(counts[p], "/strategy_counts/" + std::to_string(p));
    if (t < 1) throw ParseError("/strategy_counts/" + std::to_string(p) + ": must be at least 1");
    game.strategy_counts.push_back(t);
  }

  game.aggregator = aggregator_from_json(field(j, "aggregator", ""), "/aggregator");

  const json& payoffs = field(j, "payoffs", "");
  if (!payoffs.is_object()) throw ParseError("/payoffs: expected an object");
  game.payoffs.assign(static_cast<size_t>(game.n) * (game.n - 1), Matrix());
  std::vector<char> filled(game.payoffs.size(), 0);
  for (const auto& [key, value] : payoffs.items()) {
    int p = 0;
    int q = 0;
    const std::string path = "/payoffs/" + key;
    if (!parse_pair_key(key, &p, &q)) {
      throw ParseError(path + ": key must be 'p,q' with integer player indices");
    }
    if (p < 0 || p >= game.n || q < 0 || q >= game.n || p == q) {
      throw ParseError(path + ": not an ordered pair of distinct players");
    }
    const int index = game.pair_index(p, q);
    game.payoffs[index] =
        matrix_from_json(value, game.strategy_counts[p], game.strategy_counts[q], path);
    filled[index] = 1;
  }
  for (int p = 0; p < game.n; ++p) {
    for (int q = 0; q < game.n; ++q) {
      if (q != p && !filled[game.pair_index(p, q)]) {
        throw ParseError("/payoffs: missing matrix for pair " + std::to_string(p) + "," +
                         std::to_string(q));
      }
    }
  }

  const std::vector<std::string> violations = validate_game(game);
  if (!violations.empty()) throw ParseError("invalid game: " + violations.front());
  return game;
}

std::string encode_product(const ProductDistribution& x) {
  if (x.marginals.empty()) throw InputError("distribution has no marginals");
  return dump(json{{"marginals", x.marginals}});
}

ProductDistribution decode_product(std::string_view bytes) {
  const json j = parse_document(bytes);
  ProductDistribution x;
  x.marginals = marginals_from_json(field(j, "marginals", ""), "/marginals");
  return x;
}

std::string encode_explicit(const ExplicitDistribution& d) {
  if (d.atoms.empty()) throw InputError("distribution has no atoms");
  json atoms = json::array();
  for (const auto& [profile, prob] : d.atoms) {
    atoms.push_back(json{{"profile", profile}, {"prob", prob}});
  }
  return dump(json{{"atoms", std::move(atoms)}});
}

ExplicitDistribution decode_explicit(std::string_view bytes) {
  const json j = parse_document(bytes);
  const json& atoms = as_array(field(j, "atoms", ""), "/atoms");
  if (atoms.empty()) throw ParseError("/atoms: needs at least one atom");
  ExplicitDistribution d;
  double sum = 0.0;
  size_t width = 0;
  for (size_t k = 0; k < atoms.size(); ++k) {
    const std::string path = "/atoms/" + std::to_string(k);
    const json& profile = as_array(field(atoms[k], "profile", path), path + "/profile");
    StrategyProfile s;
    s.reserve(profile.size());
    for (size_t r = 0; r < profile.size(); ++r) {
      const int v = as_int(profile[r], path + "/profile/" + std::to_string(r));
      if (v < 0) throw ParseError(path + "/profile/" + std::to_string(r) + ": negative strategy");
      s.push_back(v);
    }
    if (k == 0) {
      width = s.size();
      if (width == 0) throw ParseError(path + "/profile: profile is empty");
    } else if (s.size() != width) {
      throw ParseError(path + "/profile: expected " + std::to_string(width) + " entries");
    }
    const double prob = as_number(field(atoms[k], "prob", path), path + "/prob");
    if (prob < 0.0) throw ParseError(path + "/prob: negative probability");
    if (!d.atoms.emplace(std::move(s), prob).second) {
      throw ParseError(path + "/profile: duplicate profile");
    }
    sum += prob;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw ParseError("/atoms: probabilities sum to " + std::to_string(sum));
  }
  return d;
}

std::string encode_mixture(const MixtureDistribution& mix) {
  if (mix.components.empty()) throw InputError("mixture has no components");
  json components = json::array();
  for (const MixtureComponent& c : mix.components) {
    components.push_back(json{{"weight", c.weight}, {"marginals", c.distribution.marginals}});
  }
  return dump(json{{"components", std::move(components)}});
}

MixtureDistribution decode_mixture(std::string_view bytes) {
  const json j = parse_document(bytes);
  const json& components = as_array(field(j, "components", ""), "/components");
  if (components.empty()) throw ParseError("/components: needs at least one component");
  MixtureDistribution mix;
  double sum = 0.0;
  for (size_t t = 0; t < components.size(); ++t) {
    const std::string path = "/components/" + std::to_string(t);
    MixtureComponent c;
    c.weight = as_number(field(components[t], "weight", path), path + "/weight");
    if (c.weight < 0.0) throw ParseError(path + "/weight: negative weight");
    c.distribution.marginals =
        marginals_from_json(field(components[t], "marginals", path), path + "/marginals");
    if (t > 0 && c.distribution.marginals.size() != mix.components.front().distribution.marginals.size()) {
      throw ParseError(path + "/marginals: component shapes disagree");
    }
    sum += c.weight;
    mix.components.push_back(std::move(c));
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw ParseError("/components: weights sum to " + std::to_string(sum));
  }
  return mix;
}

std::string encode_regret_report(const RegretReport& report) {
  json entries = json::array();
  for (const RegretEntry& e : report.entries) {
    entries.push_back(json{{"p", e.p}, {"i", e.i}, {"j", e.j}, {"g", e.g}});
  }
  const json witness{{"p", report.witness.p}, {"i", report.witness.i}, {"j", report.witness.j}};
  return dump(json{{"entries", std::move(entries)},
                   {"max_violation", report.max_violation},
                   {"witness", witness}});
}

RegretReport decode_regret_report(std::string_view bytes) {
  const json j = parse_document(bytes);
  RegretReport report;
  const json& entries = as_array(field(j, "entries", ""), "/entries");
  report.entries.reserve(entries.size());
  for (size_t k = 0; k < entries.size(); ++k) {
    const std::string path = "/entries/" + std::to_string(k);
    RegretEntry e;
    e.p = as_int(field(entries[k], "p", path), path + "/p");
    e.i = as_int(field(entries[k], "i", path), path + "/i");
    e.j = as_int(field(entries[k], "j", path), path + "/j");
    e.g = as_number(field(entries[k], "g", path), path + "/g");
    report.entries.push_back(e);
  }
  report.max_violation = as_number(field(j, "max_violation", ""), "/max_violation");
  const json& witness = field(j, "witness", "");
  report.witness.p = as_int(field(witness, "p", "/witness"), "/witness/p");
  report.witness.i = as_int(field(witness, "i", "/witness"), "/witness/i");
  report.witness.j = as_int(field(witness, "j", "/witness"), "/witness/j");
  for (const RegretEntry& e : report.entries) {
    if (e.p == report.witness.p && e.i == report.witness.i && e.j == report.witness.j) {
      report.witness.g = e.g;
      break;
    }
  }
  return report;
}

std::string encode_formula(const BoolExpr& expr) {
  const std::vector<std::string> violations = validate_bool_expr(expr);
  if (!violations.empty()) throw InputError("invalid formula: " + violations.front());
  return dump(formula_to_json(expr));
}

BoolExpr decode_formula(std::string_view bytes) {
  return formula_from_json(parse_document(bytes), "");
}

DistributionKind detect_distribution(std::string_view bytes) {
  const json j = parse_document(bytes);
  if (!j.is_object()) throw ParseError(": expected an object");
  if (j.contains("marginals")) return DistributionKind::Product;
  if (j.contains("atoms")) return DistributionKind::Explicit;
  if (j.contains("components")) return DistributionKind::Mixture;
  throw ParseError(": no 'marginals', 'atoms' or 'components' key; not a distribution document");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw InputError("cannot read file: " + path.string());
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file: " + path.string());
  out << content;
  out.flush();
  if (!out) throw InputError("cannot write file: " + path.string());
}

}  // namespace polymax
