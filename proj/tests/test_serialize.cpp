#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polymax/equilibrium.hpp"
#include "polymax/errors.hpp"
#include "polymax/random.hpp"
#include "polymax/serialize.hpp"

using namespace polymax;

TEST_CASE("games of every aggregator survive the round trip bit for bit") {
  std::mt19937_64 gen(127);
  std::vector<Aggregator> aggregators{
      SumAggregator{}, MaxAggregator{}, MinAggregator{},
      SortedLinearAggregator{{0.5, -0.25, 0.0}},
      BooleanFormulaAggregator{BoolExpr::disjunction(
          {BoolExpr::variable(0),
           BoolExpr::negation(BoolExpr::conjunction(
               {BoolExpr::variable(1), BoolExpr::variable(2)}))})}};
  for (const Aggregator& agg : aggregators) {
    const bool boolean = aggregator_tag(agg) == "boolean_formula";
    const PolymatrixGame game =
        random_game(4, {2, 3, 2, 2}, boolean ? 0.0 : -1.0, 1.0, agg, gen());
    const std::string bytes = encode_game(game);
    const PolymatrixGame back = decode_game(bytes);
    CHECK(back.n == game.n);
    CHECK(back.strategy_counts == game.strategy_counts);
    CHECK(aggregator_tag(back.aggregator) == aggregator_tag(game.aggregator));
    for (std::size_t k = 0; k < game.payoffs.size(); ++k) {
      CHECK(back.payoffs[k].values == game.payoffs[k].values);
    }
    CHECK(encode_game(back) == bytes);
  }
}

TEST_CASE("distributions round-trip exactly") {
  const std::vector<int> counts{2, 3};
  const ProductDistribution x = random_product_distribution(counts, 5);
  const std::string product_bytes = encode_product(x);
  CHECK(decode_product(product_bytes).marginals == x.marginals);
  CHECK(encode_product(decode_product(product_bytes)) == product_bytes);

  ExplicitDistribution d;
  d.atoms[{0, 0}] = 0.25;
  d.atoms[{1, 2}] = 0.75;
  const std::string explicit_bytes = encode_explicit(d);
  const ExplicitDistribution d_back = decode_explicit(explicit_bytes);
  CHECK(d_back.atoms == d.atoms);
  CHECK(encode_explicit(d_back) == explicit_bytes);

  MixtureDistribution mix;
  mix.components.push_back({0.375, random_product_distribution(counts, 6)});
  mix.components.push_back({0.625, random_product_distribution(counts, 7)});
  const std::string mixture_bytes = encode_mixture(mix);
  const MixtureDistribution mix_back = decode_mixture(mixture_bytes);
  REQUIRE(mix_back.components.size() == 2);
  CHECK(mix_back.components[0].weight == 0.375);
  CHECK(mix_back.components[1].distribution.marginals ==
        mix.components[1].distribution.marginals);
  CHECK(encode_mixture(mix_back) == mixture_bytes);
}

TEST_CASE("regret reports round-trip with their witness") {
  const PolymatrixGame game = random_game(2, {2, 2}, -1.0, 1.0, SumAggregator{}, 9);
  const RegretReport report =
      regret_from_product(game, random_product_distribution({2, 2}, 10));
  const std::string bytes = encode_regret_report(report);
  const RegretReport back = decode_regret_report(bytes);
  REQUIRE(back.entries.size() == report.entries.size());
  for (std::size_t k = 0; k < report.entries.size(); ++k) {
    CHECK(back.entries[k].p == report.entries[k].p);
    CHECK(back.entries[k].i == report.entries[k].i);
    CHECK(back.entries[k].j == report.entries[k].j);
    CHECK(back.entries[k].g == report.entries[k].g);
  }
  CHECK(back.max_violation == report.max_violation);
  CHECK(back.witness.p == report.witness.p);
  CHECK(back.witness.g == report.witness.g);
  CHECK(encode_regret_report(back) == bytes);
}

TEST_CASE("formulas round-trip as standalone documents") {
  const BoolExpr expr = BoolExpr::conjunction(
      {BoolExpr::variable(2),
       BoolExpr::disjunction({BoolExpr::negation(BoolExpr::variable(0)), BoolExpr::variable(1)})});
  const std::string bytes = encode_formula(expr);
  const BoolExpr back = decode_formula(bytes);
  CHECK(encode_formula(back) == bytes);
  CHECK(eval_bool_expr(back, {false, false, true}) == eval_bool_expr(expr, {false, false, true}));
  CHECK(eval_bool_expr(back, {true, false, true}) == eval_bool_expr(expr, {true, false, true}));
}

TEST_CASE("distribution kinds are detected by their top-level key") {
  CHECK(detect_distribution(encode_product(uniform_product({2, 2}))) ==
        DistributionKind::Product);
  ExplicitDistribution d;
  d.atoms[{0, 0}] = 1.0;
  CHECK(detect_distribution(encode_explicit(d)) == DistributionKind::Explicit);
  MixtureDistribution mix;
  mix.components.push_back({1.0, uniform_product({2, 2})});
  CHECK(detect_distribution(encode_mixture(mix)) == DistributionKind::Mixture);
  CHECK_THROWS_AS(detect_distribution("{\"payload\": 3}"), ParseError);
  CHECK_THROWS_AS(detect_distribution("[1, 2]"), ParseError);
}

TEST_CASE("malformed documents name the offending path") {
  CHECK_THROWS_AS(decode_game("{\"n\": 2"), ParseError);  // truncated
  CHECK_THROWS_AS(decode_game("{\"n\": 2}"), ParseError);  // missing fields
  CHECK_THROWS_AS(
      decode_game("{\"n\": 2, \"strategy_counts\": [2, 2], "
                  "\"aggregator\": {\"type\": \"median\"}, \"payoffs\": {}}"),
      ParseError);

  const PolymatrixGame game = random_game(2, {2, 2}, -1.0, 1.0, SumAggregator{}, 13);
  std::string bytes = encode_game(game);
  const std::string needle = "\"1,0\"";
  bytes.replace(bytes.find(needle), needle.size(), "\"1,9\"");
  CHECK_THROWS_AS(decode_game(bytes), ParseError);

  CHECK_THROWS_AS(decode_product("{\"marginals\": [[0.5, 0.6]]}"), ParseError);
  CHECK_THROWS_AS(decode_product("{\"marginals\": [[0.5, -0.5, 1.0]]}"), ParseError);
  CHECK_THROWS_AS(decode_product("{\"marginals\": []}"), ParseError);

  CHECK_THROWS_AS(
      decode_explicit("{\"atoms\": [{\"profile\": [0], \"prob\": 0.5}, "
                      "{\"profile\": [0], \"prob\": 0.5}]}"),
      ParseError);  // duplicate profile
  CHECK_THROWS_AS(
      decode_explicit("{\"atoms\": [{\"profile\": [0], \"prob\": 0.5}, "
                      "{\"profile\": [0, 1], \"prob\": 0.5}]}"),
      ParseError);  // ragged profiles

  CHECK_THROWS_AS(decode_mixture("{\"components\": []}"), ParseError);
  CHECK_THROWS_AS(
      decode_mixture("{\"components\": [{\"weight\": 0.5, \"marginals\": [[1.0]]}]}"),
      ParseError);  // weights sum to one half
}

TEST_CASE("wrong payoff shapes are caught during decode") {
  const PolymatrixGame game = random_game(2, {2, 3}, -1.0, 1.0, SumAggregator{}, 17);
  std::string bytes = encode_game(game);
  // Drop one entry from the first payoff row of the "0,1" matrix.
  const std::string::size_type key = bytes.find("\"0,1\"");
  REQUIRE(key != std::string::npos);
  const std::string::size_type open = bytes.find('[', key);
  const std::string::size_type comma = bytes.find(',', open + 2);
  std::string mutated = bytes.substr(0, open + 1) + bytes.substr(comma + 1);
  CHECK_THROWS_AS(decode_game(mutated), ParseError);
}

TEST_CASE("file helpers read back what they wrote and reject bad paths") {
  const std::string path = testutil::temp_path("roundtrip.json");
  write_text_file(path, "payload\n");
  CHECK(read_text_file(path) == "payload\n");
  CHECK_THROWS_AS(read_text_file(testutil::temp_path("missing/deep/file.json")), InputError);
  CHECK_THROWS_AS(write_text_file(testutil::temp_path("missing/deep/file.json"), "x"), InputError);
}
