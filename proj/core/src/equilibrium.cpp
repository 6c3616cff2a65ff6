#include "polymax/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

void check_counts(const std::vector<int>& counts) {
  if (counts.empty()) throw InputError("strategy counts are empty");
  for (size_t p = 0; p < counts.size(); ++p) {
    if (counts[p] < 1) {
      throw InputError("player " + std::to_string(p) + " has strategy count " +
                       std::to_string(counts[p]));
    }
  }
}

RegretReport finalize_report(std::vector<RegretEntry> entries) {
  RegretReport report;
  report.entries = std::move(entries);
  report.witness = RegretEntry{};
  double smallest = std::numeric_limits<double>::infinity();
  for (const RegretEntry& e : report.entries) {
    if (e.g < smallest) {
      smallest = e.g;
      report.witness = e;
    }
  }
  report.max_violation = report.entries.empty() ? 0.0 : std::max(0.0, -smallest);
  return report;
}

// Regret values in canonical (p, i, j) order for a product distribution.
std::vector<double> regret_column(const PolymatrixGame& game, const ProductDistribution& x,
                                  const ExpectationLimits& limits) {
  std::vector<double> g;
  g.reserve(regret_entry_count(game.strategy_counts));
  for (int p = 0; p < game.n; ++p) {
    if (game.strategy_counts[p] < 2) continue;
    const ConditionalExpectations e = conditional_action_expectations(game, p, x, limits);
    for (int i = 0; i < game.strategy_counts[p]; ++i) {
      for (int j = 0; j < game.strategy_counts[p]; ++j) {
        if (j != i) g.push_back(x.marginals[p][i] * (e.values[i] - e.values[j]));
      }
    }
  }
  return g;
}

}  // namespace

int regret_entry_count(const std::vector<int>& strategy_counts) {
  check_counts(strategy_counts);
  int total = 0;
  for (int t : strategy_counts) total += t * (t - 1);
  return total;
}

std::vector<std::array<int, 3>> regret_triples(const std::vector<int>& strategy_counts) {
  check_counts(strategy_counts);
  std::vector<std::array<int, 3>> triples;
  for (size_t p = 0; p < strategy_counts.size(); ++p) {
    for (int i = 0; i < strategy_counts[p]; ++i) {
      for (int j = 0; j < strategy_counts[p]; ++j) {
        if (j != i) triples.push_back({static_cast<int>(p), i, j});
      }
    }
  }
  return triples;
}

DualWeights dual_from_flat(const std::vector<int>& strategy_counts,
                           const std::vector<double>& flat) {
  const int expected = regret_entry_count(strategy_counts);
  if (static_cast<int>(flat.size()) != expected) {
    throw InputError("got " + std::to_string(flat.size()) + " weights for " +
                     std::to_string(expected) + " constraints");
  }
  DualWeights dual;
  dual.per_player.reserve(strategy_counts.size());
  size_t next = 0;
  for (int t : strategy_counts) {
    Matrix rates(t, t);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        if (j == i) continue;
        const double w = flat[next++];
        if (!std::isfinite(w) || w < 0.0) {
          throw InputError("dual weight " + std::to_string(next - 1) + " is " +
                           std::to_string(w) + "; weights must be nonnegative");
        }
        rates.at(i, j) = w;
      }
    }
    dual.per_player.push_back(std::move(rates));
  }
  return dual;
}

std::vector<double> dual_to_flat(const DualWeights& dual) {
  std::vector<double> flat;
  for (const Matrix& rates : dual.per_player) {
    for (int i = 0; i < rates.rows; ++i) {
      for (int j = 0; j < rates.cols; ++j) {
        if (j != i) flat.push_back(rates.at(i, j));
      }
    }
  }
  return flat;
}

double dual_pairing(const DualWeights& dual, const RegretReport& report) {
  double total = 0.0;
  for (const RegretEntry& e : report.entries) {
    if (e.p < 0 || e.p >= static_cast<int>(dual.per_player.size())) {
      throw InputError("report entry names player " + std::to_string(e.p) +
                       " outside the dual weights");
    }
    const Matrix& rates = dual.per_player[e.p];
    if (e.i < 0 || e.i >= rates.rows || e.j < 0 || e.j >= rates.cols) {
      throw InputError("report entry (" + std::to_string(e.p) + "," + std::to_string(e.i) + "," +
                       std::to_string(e.j) + ") outside the dual weights");
    }
    total += rates.at(e.i, e.j) * e.g;
  }
  return total;
}

RegretReport regret_from_product(const PolymatrixGame& game, const ProductDistribution& x,
                                 const ExpectationLimits& limits) {
  const std::vector<double> g = regret_column(game, x, limits);
  const std::vector<std::array<int, 3>> triples = regret_triples(game.strategy_counts);
  std::vector<RegretEntry> entries(triples.size());
  for (size_t k = 0; k < triples.size(); ++k) {
    entries[k] = {triples[k][0], triples[k][1], triples[k][2], g[k]};
  }
  return finalize_report(std::move(entries));
}

RegretReport regret_from_explicit(const PolymatrixGame& game, const ExplicitDistribution& d,
                                  const ExpectationLimits& limits) {
  require_valid_game(game);
  require_valid_distribution(game.strategy_counts, d);
  if (static_cast<long long>(d.atoms.size()) > limits.enumeration_guard) {
    throw ResourceError("support of " + std::to_string(d.atoms.size()) +
                        " atoms exceeds the guard of " + std::to_string(limits.enumeration_guard));
  }

  const std::vector<std::array<int, 3>> triples = regret_triples(game.strategy_counts);
  std::vector<int> base(game.n, 0);
  for (int p = 1; p < game.n; ++p) {
    base[p] = base[p - 1] + game.strategy_counts[p - 1] * (game.strategy_counts[p - 1] - 1);
  }
  const auto entry_index = [&](int p, int i, int j) {
    return base[p] + i * (game.strategy_counts[p] - 1) + (j < i ? j : j - 1);
  };

  std::vector<double> scratch;
  const auto utility = [&](const StrategyProfile& s, int p) {
    scratch.clear();
    for (int q = 0; q < game.n; ++q) {
      if (q == p) continue;
      scratch.push_back(game.payoffs[p * (game.n - 1) + (q < p ? q : q - 1)].at(s[p], s[q]));
    }
    return apply_aggregator(game.aggregator, scratch);
  };

  std::vector<double> g(triples.size(), 0.0);
  for (const auto& [profile, prob] : d.atoms) {
    StrategyProfile s = profile;
    for (int p = 0; p < game.n; ++p) {
      if (game.strategy_counts[p] < 2) continue;
      const int i = profile[p];
      const double kept = utility(s, p);
      for (int j = 0; j < game.strategy_counts[p]; ++j) {
        if (j == i) continue;
        s[p] = j;
        g[entry_index(p, i, j)] += prob * (kept - utility(s, p));
      }
      s[p] = i;
    }
  }

  std::vector<RegretEntry> entries(triples.size());
  for (size_t k = 0; k < triples.size(); ++k) {
    entries[k] = {triples[k][0], triples[k][1], triples[k][2], g[k]};
  }
  return finalize_report(std::move(entries));
}

VerifyResult verify_ce(const PolymatrixGame& game, const ExplicitDistribution& d, double eps,
                       const ExpectationLimits& limits) {
  if (!(eps >= 0.0)) throw InputError("eps must be nonnegative");
  VerifyResult result;
  result.report = regret_from_explicit(game, d, limits);
  result.is_ce = result.report.is_ce(eps);
  return result;
}

VerifyResult verify_ce(const PolymatrixGame& game, const MixtureDistribution& mix, double eps,
                       const ExpectationLimits& limits) {
  if (!(eps >= 0.0)) throw InputError("eps must be nonnegative");
  require_valid_game(game);
  require_valid_distribution(game.strategy_counts, mix);

  const std::vector<std::array<int, 3>> triples = regret_triples(game.strategy_counts);
  std::vector<double> combined(triples.size(), 0.0);
  for (const MixtureComponent& c : mix.components) {
    const std::vector<double> g = regret_column(game, c.distribution, limits);
    for (size_t k = 0; k < combined.size(); ++k) combined[k] += c.weight * g[k];
  }
  std::vector<RegretEntry> entries(triples.size());
  for (size_t k = 0; k < triples.size(); ++k) {
    entries[k] = {triples[k][0], triples[k][1], triples[k][2], combined[k]};
  }
  VerifyResult result;
  result.report = finalize_report(std::move(entries));
  result.is_ce = result.report.is_ce(eps);
  return result;
}

ExplicitDistribution solve_ce_explicit(const PolymatrixGame& game, const SolveOptions& options) {
  require_valid_game(game);
  const long long count = game.profile_count();
  if (count > options.explicit_guard) {
    throw ResourceError("explicit solve over " + std::to_string(count) +
                        " profiles exceeds the guard of " + std::to_string(options.explicit_guard));
  }
  const std::vector<std::array<int, 3>> triples = regret_triples(game.strategy_counts);
  const int rows = static_cast<int>(triples.size());
  const int cols = static_cast<int>(count);
  if (rows > options.lp.max_rows || cols > options.lp.max_cols) {
    throw ResourceError("equilibrium system is " + std::to_string(rows) + "x" +
                        std::to_string(cols) + "; limits are " +
                        std::to_string(options.lp.max_rows) + "x" +
                        std::to_string(options.lp.max_cols));
  }

  std::vector<int> base(game.n, 0);
  for (int p = 1; p < game.n; ++p) {
    base[p] = base[p - 1] + game.strategy_counts[p - 1] * (game.strategy_counts[p - 1] - 1);
  }
  const auto entry_index = [&](int p, int i, int j) {
    return base[p] + i * (game.strategy_counts[p] - 1) + (j < i ? j : j - 1);
  };
  std::vector<double> scratch;
  const auto utility = [&](const StrategyProfile& s, int p) {
    scratch.clear();
    for (int q = 0; q < game.n; ++q) {
      if (q == p) continue;
      scratch.push_back(game.payoffs[p * (game.n - 1) + (q < p ? q : q - 1)].at(s[p], s[q]));
    }
    return apply_aggregator(game.aggregator, scratch);
  };

  // One column per profile in lexicographic order: the gain of following the
  // recommendation s_p over deviating to j, for every (p, s_p, j).
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
  StrategyProfile s(game.n, 0);
  for (int col = 0; col < cols; ++col) {
    for (int p = 0; p < game.n; ++p) {
      if (game.strategy_counts[p] < 2) continue;
      const int i = s[p];
      const double kept = utility(s, p);
      for (int j = 0; j < game.strategy_counts[p]; ++j) {
        if (j == i) continue;
        s[p] = j;
        a[entry_index(p, i, j)][col] = kept - utility(s, p);
        s[p] = i;
      }
    }
    int r = game.n - 1;
    while (r >= 0 && ++s[r] == game.strategy_counts[r]) {
      s[r] = 0;
      --r;
    }
  }

  const LpResult res = lp_feasibility(cols, a, std::vector<double>(rows, 0.0), options.lp);
  if (!res.feasible) {
    throw NumericalError("the equilibrium system reported infeasible; this is a solver defect");
  }

  ExplicitDistribution d;
  std::fill(s.begin(), s.end(), 0);
  for (int col = 0; col < cols; ++col) {
    if (res.point[col] > 0.0) d.atoms[s] = res.point[col];
    int r = game.n - 1;
    while (r >= 0 && ++s[r] == game.strategy_counts[r]) {
      s[r] = 0;
      --r;
    }
  }
  return d;
}

namespace {

// Strongly connected components by two depth-first passes; ids are assigned in
// reverse finish order.
std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj, int* count_out) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> radj(n);
  for (int v = 0; v < n; ++v) {
    for (int w : adj[v]) radj[w].push_back(v);
  }
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  std::vector<std::pair<int, int>> stack;
  for (int s0 = 0; s0 < n; ++s0) {
    if (seen[s0]) continue;
    seen[s0] = 1;
    stack.emplace_back(s0, 0);
    while (!stack.empty()) {
      const auto [v, k] = stack.back();
      if (k < static_cast<int>(adj[v].size())) {
        ++stack.back().second;
        const int w = adj[v][k];
        if (!seen[w]) {
          seen[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  std::vector<int> work;
  for (int idx = n - 1; idx >= 0; --idx) {
    const int s0 = order[idx];
    if (comp[s0] >= 0) continue;
    comp[s0] = ncomp;
    work.assign(1, s0);
    while (!work.empty()) {
      const int v = work.back();
      work.pop_back();
      for (int w : radj[v]) {
        if (comp[w] < 0) {
          comp[w] = ncomp;
          work.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  *count_out = ncomp;
  return comp;
}

std::vector<double> solve_dense(std::vector<std::vector<double>> m, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int i = col + 1; i < n; ++i) {
      if (std::abs(m[i][col]) > std::abs(m[pivot][col])) pivot = i;
    }
    if (std::abs(m[pivot][col]) < 1e-12) {
      throw NumericalError("stationary system is singular");
    }
    std::swap(m[pivot], m[col]);
    std::swap(b[pivot], b[col]);
    for (int i = col + 1; i < n; ++i) {
      const double factor = m[i][col] / m[col][col];
      if (factor == 0.0) continue;
      for (int j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
      b[i] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
    x[i] = acc / m[i][i];
  }
  return x;
}

}  // namespace

std::vector<double> stationary_distribution(const Matrix& rates) {
  if (rates.rows != rates.cols || rates.rows < 1) {
    throw InputError("rate matrix must be square and nonempty");
  }
  const int t = rates.rows;
  double max_rate = 0.0;
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      const double v = rates.at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("rate (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is " + std::to_string(v) + "; rates must be finite and nonnegative");
      }
      if (i == j && v != 0.0) throw InputError("rate matrix diagonal must be zero");
      max_rate = std::max(max_rate, v);
    }
  }
  if (t == 1) return {1.0};
  if (max_rate == 0.0) return std::vector<double>(t, 1.0 / t);

  // Stationarity is invariant under scaling all rates, so work with rates
  // relative to the largest one. Transitions below 1e-12 of the largest rate
  // carry no probability at the solver's own tolerance, but they would stitch
  // otherwise-separate classes together and leave the dense solve singular,
  // so they do not count as edges.
  std::vector<std::vector<int>> adj(t);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      if (rates.at(i, j) > max_rate * 1e-12) adj[i].push_back(j);
    }
  }
  int ncomp = 0;
  const std::vector<int> comp = scc_ids(adj, &ncomp);

  // A component with no escape edge is a recurrent class; mass placed on one
  // stays there. Pick the one containing the lowest-numbered such state.
  std::vector<char> escapes(ncomp, 0);
  for (int i = 0; i < t; ++i) {
    for (int j : adj[i]) {
      if (comp[j] != comp[i]) escapes[comp[i]] = 1;
    }
  }
  int chosen = -1;
  for (int i = 0; i < t && chosen < 0; ++i) {
    if (!escapes[comp[i]]) chosen = comp[i];
  }

  std::vector<int> members;
  for (int i = 0; i < t; ++i) {
    if (comp[i] == chosen) members.push_back(i);
  }
  const int k = static_cast<int>(members.size());
  std::vector<double> x(t, 0.0);
  if (k == 1) {
    x[members[0]] = 1.0;
  } else {
    // Balance equations of the restricted chain with the last row replaced by
    // normalization (the balance rows sum to zero, so one is redundant).
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
    std::vector<double> b(k, 0.0);
    for (int row = 0; row < k - 1; ++row) {
      const int j = members[row];
      for (int idx = 0; idx < k; ++idx) {
        const int i = members[idx];
        if (i == j) continue;
        m[row][idx] = rates.at(i, j) / max_rate;
      }
      double out = 0.0;
      for (int l = 0; l < t; ++l) out += rates.at(j, l) / max_rate;
      m[row][row] -= out;
    }
    std::fill(m[k - 1].begin(), m[k - 1].end(), 1.0);
    b[k - 1] = 1.0;
    std::vector<double> solved = solve_dense(std::move(m), std::move(b));
    double sum = 0.0;
    for (double& v : solved) {
      if (v < 0.0) {
        if (v < -1e-9) throw NumericalError("stationary solve produced probability " + std::to_string(v));
        v = 0.0;
      }
      sum += v;
    }
    for (int idx = 0; idx < k; ++idx) x[members[idx]] = solved[idx] / sum;
  }

  double residual = 0.0;
  for (int j = 0; j < t; ++j) {
    double flow = 0.0;
    for (int i = 0; i < t; ++i) {
      if (i != j) flow += x[i] * rates.at(i, j) / max_rate;
    }
    double out = 0.0;
    for (int l = 0; l < t; ++l) out += rates.at(j, l) / max_rate;
    residual = std::max(residual, std::abs(flow - x[j] * out));
  }
  if (residual > 1e-9) {
    throw NumericalError("stationary distribution misses balance by " + std::to_string(residual));
  }
  return x;
}

ProductDistribution product_from_dual(const std::vector<int>& strategy_counts,
                                      const DualWeights& dual) {
  check_counts(strategy_counts);
  if (dual.per_player.size() != strategy_counts.size()) {
    throw InputError("dual weights cover " + std::to_string(dual.per_player.size()) +
                     " players; expected " + std::to_string(strategy_counts.size()));
  }
  ProductDistribution x;
  x.marginals.reserve(strategy_counts.size());
  for (size_t p = 0; p < strategy_counts.size(); ++p) {
    const Matrix& rates = dual.per_player[p];
    if (rates.rows != strategy_counts[p] || rates.cols != strategy_counts[p]) {
      throw InputError("dual weights for player " + std::to_string(p) +
                       " do not match its strategy count");
    }
    x.marginals.push_back(stationary_distribution(rates));
  }
  return x;
}

MixtureSolution solve_ce_mixture(const PolymatrixGame& game, double eps, int max_rounds,
                                 const SolveOptions& options) {
  require_valid_game(game);
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InputError("eps must be finite and nonnegative");
  if (max_rounds < 1) throw InputError("at least one round required");
  if (std::holds_alternative<BooleanFormulaAggregator>(game.aggregator)) {
    throw InputError("boolean-formula games have no closed conditional-expectation path");
  }
  if (const auto* s = std::get_if<SortedLinearAggregator>(&game.aggregator)) {
    if (leading_term_count(s->coeffs) > options.expectation.k_max) {
      throw InputError("sorted-linear aggregator with " +
                       std::to_string(leading_term_count(s->coeffs)) +
                       " leading terms has no closed conditional-expectation path");
    }
  }

  const std::vector<std::array<int, 3>> triples = regret_triples(game.strategy_counts);
  const int rows = static_cast<int>(triples.size());

  std::vector<ProductDistribution> components;
  std::vector<std::vector<double>> columns;
  components.push_back(uniform_product(game.strategy_counts));
  columns.push_back(regret_column(game, components.back(), options.expectation));

  // The LP asks for weights keeping every regret above -relax; the headroom
  // between relax and eps absorbs the LP's own feasibility tolerance so that
  // an accepted mixture also passes verify_ce at eps.
  double relax = eps / 2.0;

  const auto flatten = [](const ProductDistribution& x) {
    std::vector<double> u;
    for (const std::vector<double>& marginal : x.marginals) {
      u.insert(u.end(), marginal.begin(), marginal.end());
    }
    return u;
  };
  std::vector<double> prev_flat;
  std::vector<double> prev_prev_flat;

  for (int round = 1; round <= max_rounds; ++round) {
    const int terms = static_cast<int>(components.size());
    std::vector<std::vector<double>> a(rows, std::vector<double>(terms, 0.0));
    for (int row = 0; row < rows; ++row) {
      for (int term = 0; term < terms; ++term) a[row][term] = columns[term][row];
    }
    const LpResult res =
        lp_feasibility(terms, a, std::vector<double>(rows, -relax), options.lp);

    if (res.feasible) {
      MixtureDistribution mixture;
      for (int term = 0; term < terms; ++term) {
        if (res.point[term] > 0.0) mixture.components.push_back({res.point[term], components[term]});
      }
      const VerifyResult vr = verify_ce(game, mixture, eps, options.expectation);
      if (vr.is_ce) {
        MixtureSolution solution;
        solution.mixture = std::move(mixture);
        solution.rounds = round;
        solution.report = vr.report;
        return solution;
      }
      // Feasible for the relaxed system yet above eps once re-verified: only
      // possible when relax sits too close to eps, so tighten it.
      if (relax <= 1e-12) {
        throw NumericalError("verification misses eps = " + std::to_string(eps) +
                             " although the relaxed system is satisfied");
      }
      relax /= 2.0;
      continue;
    }

    std::vector<double> alpha = res.certificate;
    double scale = 0.0;
    for (double v : alpha) scale += v;
    if (scale <= 0.0) throw NumericalError("infeasibility certificate is identically zero");
    for (double& v : alpha) v /= scale;

    const DualWeights dual = dual_from_flat(game.strategy_counts, alpha);
    ProductDistribution fresh = product_from_dual(game.strategy_counts, dual);
    std::vector<double> column = regret_column(game, fresh, options.expectation);

    // The certificate priced every existing component below -relax, while the
    // stationary construction pairs it to zero against the new component, so
    // the same certificate can never be produced again.
    double pairing = 0.0;
    for (int row = 0; row < rows; ++row) pairing += alpha[row] * column[row];
    if (std::abs(pairing) > 1e-6) {
      throw NumericalError("new component pairs to " + std::to_string(pairing) +
                           " against its certificate; expected zero");
    }
    components.push_back(fresh);
    columns.push_back(std::move(column));

    // Certificate products can tail off: each one creeps geometrically toward
    // a limit product the hull never quite reaches. When three consecutive
    // certificate products line up that way, also add the Aitken-extrapolated
    // limit; any product is admissible as a component, and landing the limit
    // in the hull lets the next LP close the gap at once.
    const std::vector<double> now_flat = flatten(fresh);
    if (!prev_flat.empty() && !prev_prev_flat.empty()) {
      double dot = 0.0;
      double d1_sq = 0.0;
      double d2_sq = 0.0;
      for (std::size_t k = 0; k < now_flat.size(); ++k) {
        const double d1 = prev_flat[k] - prev_prev_flat[k];
        const double d2 = now_flat[k] - prev_flat[k];
        dot += d1 * d2;
        d1_sq += d1 * d1;
        d2_sq += d2 * d2;
      }
      if (d1_sq > 0.0 && d2_sq > 0.0) {
        const double rate = dot / d1_sq;
        const double cosine = dot / std::sqrt(d1_sq * d2_sq);
        if (rate > 0.5 && rate < 0.999 && cosine > 0.9) {
          const double gain = rate / (1.0 - rate);
          ProductDistribution guess = fresh;
          std::size_t flat_index = 0;
          bool usable = true;
          for (std::vector<double>& marginal : guess.marginals) {
            double total = 0.0;
            for (double& v : marginal) {
              v = std::max(0.0, v + gain * (now_flat[flat_index] - prev_flat[flat_index]));
              total += v;
              ++flat_index;
            }
            if (total <= 0.0) {
              usable = false;
              break;
            }
            for (double& v : marginal) v /= total;
          }
          if (usable) {
            columns.push_back(regret_column(game, guess, options.expectation));
            components.push_back(std::move(guess));
          }
        }
      }
    }
    prev_prev_flat = std::move(prev_flat);
    prev_flat = now_flat;
  }

  if (game.profile_count() <= options.explicit_guard) {
    const ExplicitDistribution d = solve_ce_explicit(game, options);
    MixtureDistribution mixture;
    for (const auto& [profile, prob] : d.atoms) {
      mixture.components.push_back({prob, point_mass_product(game.strategy_counts, profile)});
    }
    const VerifyResult vr = verify_ce(game, mixture, eps, options.expectation);
    MixtureSolution solution;
    solution.mixture = std::move(mixture);
    solution.rounds = max_rounds;
    solution.via_explicit = true;
    solution.report = vr.report;
    return solution;
  }
  throw ConvergenceError("no verified mixture within " + std::to_string(max_rounds) + " rounds");
}

}  // namespace polymax
