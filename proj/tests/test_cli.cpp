#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polymax/equilibrium.hpp"
#include "polymax/random.hpp"
#include "polymax/serialize.hpp"

using namespace polymax;
using testutil::run_cli;
using testutil::temp_path;

namespace {

std::string write_opponent_action_game() {
  PolymatrixGame game;
  game.n = 3;
  game.strategy_counts = {2, 2, 2};
  game.aggregator = MaxAggregator{};
  Matrix column_is_value(2, 2);
  column_is_value.at(0, 1) = 1.0;
  column_is_value.at(1, 1) = 1.0;
  game.payoffs.assign(6, column_is_value);
  const std::string path = temp_path("cli_max_game.json");
  write_text_file(path, encode_game(game));
  return path;
}

std::string write_planted_pair() {
  PolymatrixGame game;
  game.n = 2;
  game.strategy_counts = {2, 2};
  game.aggregator = SumAggregator{};
  Matrix forward(2, 2);
  forward.at(1, 0) = 1.0;
  game.payoffs = {forward, Matrix(2, 2)};
  write_text_file(temp_path("cli_planted_game.json"), encode_game(game));
  ExplicitDistribution d;
  d.atoms[{0, 0}] = 0.5;
  d.atoms[{0, 1}] = 0.5;
  write_text_file(temp_path("cli_planted_dist.json"), encode_explicit(d));
  return temp_path("cli_planted_game.json");
}

}  // namespace

TEST_CASE("expect prints the hand-checked uniform value") {
  const std::string game_path = write_opponent_action_game();
  const auto fast = run_cli("expect " + game_path + " --uniform");
  CHECK(fast.exit_code == 0);
  CHECK(fast.output == "0.75\n");
  const auto brute = run_cli("expect " + game_path + " --uniform --method brute");
  CHECK(brute.exit_code == 0);
  CHECK(brute.output == "0.75\n");
  const auto sampled =
      run_cli("expect " + game_path + " --uniform --method mc --samples 200000 --seed 4");
  CHECK(sampled.exit_code == 0);
  CHECK(std::abs(std::stod(sampled.output) - 0.75) < 0.01);
}

TEST_CASE("gen is deterministic per seed") {
  const std::string first = temp_path("gen_a.json");
  const std::string second = temp_path("gen_b.json");
  CHECK(run_cli("gen --n 3 --counts 2,3,2 --agg sum --seed 11 --out " + first).exit_code == 0);
  CHECK(run_cli("gen --n 3 --counts 2,3,2 --agg sum --seed 11 --out " + second).exit_code == 0);
  const std::string a = testutil::read_file(first);
  CHECK_FALSE(a.empty());
  CHECK(a == testutil::read_file(second));
  CHECK(run_cli("gen --n 3 --counts 2,3,2 --agg sum --seed 12 --out " + second).exit_code == 0);
  CHECK(a != testutil::read_file(second));
}

TEST_CASE("gen broadcasts a single count and honors aggregator flags") {
  const std::string path = temp_path("gen_broadcast.json");
  CHECK(run_cli("gen --n 4 --counts 3 --agg sorted_linear --coeffs 1,0.5,0 --seed 2 --out " +
                path)
            .exit_code == 0);
  const PolymatrixGame game = decode_game(testutil::read_file(path));
  CHECK(game.n == 4);
  CHECK(game.strategy_counts == std::vector<int>{3, 3, 3, 3});
  CHECK(aggregator_tag(game.aggregator) == "sorted_linear");

  const std::string formula_path = temp_path("gen_formula.json");
  const auto made = run_cli(
      "gen --n 3 --counts 2 --agg boolean_formula "
      "--formula \"{\\\"op\\\": \\\"or\\\", \\\"args\\\": [{\\\"var\\\": 0}, {\\\"var\\\": 1}]}\" "
      "--seed 3 --out " +
      formula_path);
  CHECK(made.exit_code == 0);
  const PolymatrixGame boolean_game = decode_game(testutil::read_file(formula_path));
  CHECK(aggregator_tag(boolean_game.aggregator) == "boolean_formula");
}

TEST_CASE("solve then verify closes the loop at exit zero") {
  const std::string game_path = temp_path("solve_game.json");
  REQUIRE(run_cli("gen --n 3 --counts 2,2,2 --agg max --seed 21 --out " + game_path).exit_code ==
          0);
  const std::string mixture_path = temp_path("solve_mixture.json");
  const auto solved = run_cli("solve " + game_path + " --out " + mixture_path);
  CHECK(solved.exit_code == 0);
  CHECK(solved.output.find("components ") == 0);
  CHECK(solved.output.find("max_violation ") != std::string::npos);
  const auto verified = run_cli("verify " + game_path + " " + mixture_path);
  CHECK(verified.exit_code == 0);

  const std::string explicit_path = temp_path("solve_explicit.json");
  const auto explicit_solved =
      run_cli("solve " + game_path + " --backend explicit --out " + explicit_path);
  CHECK(explicit_solved.exit_code == 0);
  const auto explicit_verified = run_cli("verify " + game_path + " " + explicit_path);
  CHECK(explicit_verified.exit_code == 0);
}

TEST_CASE("verify flags the planted deviation with a witness line") {
  const std::string game_path = write_planted_pair();
  const std::string dist_path = temp_path("cli_planted_dist.json");
  const std::string report_path = temp_path("cli_planted_report.json");
  const auto verified =
      run_cli("verify " + game_path + " " + dist_path + " --report " + report_path);
  CHECK(verified.exit_code == 1);
  CHECK(verified.output.find("max_violation 0.5") == 0);
  CHECK(verified.output.find("witness p=0 i=0 j=1 g=-0.5") != std::string::npos);
  const RegretReport report = decode_regret_report(testutil::read_file(report_path));
  CHECK(report.max_violation == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report.witness.p == 0);
}

TEST_CASE("a product file passes through verify as a one-component mixture") {
  const std::string game_path = write_opponent_action_game();
  const std::string dist_path = temp_path("cli_uniform_product.json");
  write_text_file(dist_path, encode_product(uniform_product({2, 2, 2})));
  const auto verified = run_cli("verify " + game_path + " " + dist_path + " --eps 1.0");
  CHECK(verified.exit_code == 0);
  CHECK(verified.output.find("max_violation ") == 0);
}

TEST_CASE("sat prints the expectation and uses the exit code as the verdict") {
  const std::string sat_path = temp_path("cli_sat.cnf");
  testutil::write_file(sat_path, "c sample\np cnf 2 2\n1 2 0\n-1 0\n");
  const auto satisfiable = run_cli("sat " + sat_path);
  CHECK(satisfiable.exit_code == 0);
  CHECK(satisfiable.output == "SAT 0.25\n");

  const std::string unsat_path = temp_path("cli_unsat.cnf");
  testutil::write_file(unsat_path, "p cnf 1 2\n1 0\n-1 0\n");
  const auto contradiction = run_cli("sat " + unsat_path);
  CHECK(contradiction.exit_code == 1);
  CHECK(contradiction.output == "UNSAT 0\n");

  const std::string broken_path = temp_path("cli_broken.cnf");
  testutil::write_file(broken_path, "p cnf 1 1\n1 2 3 4 0\n");
  CHECK(run_cli("sat " + broken_path).exit_code == 2);
}

TEST_CASE("bench emits a parsable csv with tight fast-brute agreement") {
  const std::string csv_path = temp_path("cli_bench.csv");
  const auto ran =
      run_cli("bench --n-list 2,3 --m-list 2 --agg max --seeds 1 --csv " + csv_path);
  CHECK(ran.exit_code == 0);
  std::istringstream lines(testutil::read_file(csv_path));
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "n,m,agg,fast_s,brute_s,abs_diff");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string n, m, agg, fast_s, brute_s, abs_diff;
    std::getline(cells, n, ',');
    std::getline(cells, m, ',');
    std::getline(cells, agg, ',');
    std::getline(cells, fast_s, ',');
    std::getline(cells, brute_s, ',');
    std::getline(cells, abs_diff, ',');
    CHECK(agg == "max");
    CHECK(std::stod(fast_s) > 0.0);
    CHECK(std::stod(brute_s) > 0.0);
    CHECK(std::stod(abs_diff) <= 1e-9);
  }
  CHECK(rows == 2);
}

TEST_CASE("input mistakes exit with status two") {
  CHECK(run_cli("expect " + temp_path("no_such_game.json") + " --uniform").exit_code == 2);
  CHECK(run_cli("expect").exit_code == 2);
  const std::string game_path = write_opponent_action_game();
  CHECK(run_cli("expect " + game_path + " --uniform --method warp").exit_code == 2);
  const std::string dist_path = temp_path("cli_uniform_product.json");
  write_text_file(dist_path, encode_product(uniform_product({2, 2, 2})));
  CHECK(run_cli("expect " + game_path + " --uniform --dist " + dist_path).exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("gen --n 3 --counts 2,2 --agg sum --seed 1 --out " + temp_path("bad.json"))
            .exit_code == 2);
  CHECK(run_cli("bench --n-list 2 --m-list 2 --agg sorted_linear").exit_code == 2);
}

TEST_CASE("expect rejects a distribution with the wrong shape") {
  const std::string game_path = write_opponent_action_game();
  const std::string dist_path = temp_path("cli_wrong_shape.json");
  write_text_file(dist_path, encode_product(uniform_product({2, 2})));
  CHECK(run_cli("expect " + game_path + " --dist " + dist_path).exit_code == 2);
}
