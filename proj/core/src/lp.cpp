#include "polymax/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "polymax/errors.hpp"

namespace polymax {

namespace {

// Dense Gauss-Jordan inverse with partial pivoting. The matrices here are
// tiny (one row per constraint), so inverting afresh is cheap.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot_row = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(m[i][k]) > std::abs(m[pivot_row][k])) pivot_row = i;
    }
    if (std::abs(m[pivot_row][k]) < 1e-12) {
      throw NumericalError("basis matrix became singular");
    }
    std::swap(m[k], m[pivot_row]);
    std::swap(inv[k], inv[pivot_row]);
    const double pivot = m[k][k];
    for (int j = 0; j < n; ++j) {
      m[k][j] /= pivot;
      inv[k][j] /= pivot;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0.0) continue;
      const double factor = m[i][k];
      for (int j = 0; j < n; ++j) {
        m[i][j] -= factor * m[k][j];
        inv[i][j] -= factor * inv[k][j];
      }
      m[i][k] = 0.0;
    }
  }
  return inv;
}

}  // namespace

// Phase-1 of the simplex method on the equality form
//   sign_i * (A_i d - s_i) + art_i = sign_i * rhs_i   (rows flipped so the
//   right-hand side is nonnegative),  sum(d) + art_r = 1,
// minimizing the sum of artificials. Column order d, s, art. Bland's rule
// picks the lowest eligible index for entering and leaving, which rules out
// cycling. The basis inverse is rebuilt from the original data every
// iteration rather than updated in place: the regret columns this solver
// sees are often nearly collinear, and pivot-by-pivot tableau updates let
// one badly conditioned step contaminate everything after it. A minimum at
// zero yields a feasible point; a positive minimum yields row multipliers
// that combine the rows into the contradiction max_col(y . A_col) < y . rhs.
LpResult lp_feasibility(int cols, const std::vector<std::vector<double>>& a,
                        const std::vector<double>& rhs, const LpLimits& limits) {
  const int r = static_cast<int>(a.size());
  if (cols < 1) throw InputError("feasibility problem needs at least one column");
  if (static_cast<int>(rhs.size()) != r) {
    throw InputError("got " + std::to_string(rhs.size()) + " right-hand sides for " +
                     std::to_string(r) + " rows");
  }
  if (r > limits.max_rows || cols > limits.max_cols) {
    throw ResourceError("feasibility problem is " + std::to_string(r) + "x" +
                        std::to_string(cols) + "; limits are " + std::to_string(limits.max_rows) +
                        "x" + std::to_string(limits.max_cols));
  }
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(a[i].size()) != cols) {
      throw InputError("row " + std::to_string(i) + " has " + std::to_string(a[i].size()) +
                       " columns; expected " + std::to_string(cols));
    }
    for (double v : a[i]) {
      if (!std::isfinite(v)) throw InputError("row " + std::to_string(i) + " has a non-finite entry");
    }
    if (!std::isfinite(rhs[i])) throw InputError("right-hand side " + std::to_string(i) + " is not finite");
  }

  const int rows_total = r + 1;            // inequality rows plus the sum-to-one row
  const int art0 = cols + r;               // first artificial column
  const int priced = cols + r;             // artificials never re-enter
  const double tol = limits.pivot_tolerance;

  // Distinct tiny offsets knock the polytope out of degenerate position, so
  // every pivot strictly lowers the objective and the walk cannot revisit a
  // basis. Loosening (never tightening) keeps systems whose solutions sit
  // exactly on the boundary feasible; the offsets stay far below both the
  // feasibility tolerance and the slack the callers solve with, and the
  // final answer is checked against the rows as given.
  std::vector<double> loosened(r);
  for (int i = 0; i < r; ++i) loosened[i] = rhs[i] - 1e-9 * (i + 1);

  std::vector<double> sign(r, 1.0);
  for (int i = 0; i < r; ++i) sign[i] = loosened[i] < 0.0 ? -1.0 : 1.0;

  std::vector<double> rhs_vec(rows_total, 1.0);
  for (int i = 0; i < r; ++i) rhs_vec[i] = sign[i] * loosened[i];

  const auto fill_column = [&](int v, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    if (v < cols) {
      for (int i = 0; i < r; ++i) out[i] = sign[i] * a[i][v];
      out[r] = 1.0;
    } else if (v < art0) {
      out[v - cols] = -sign[v - cols];
    } else {
      out[v - art0] = 1.0;
    }
  };

  std::vector<int> basis(rows_total);
  std::vector<char> in_basis(art0 + rows_total, 0);
  for (int i = 0; i < rows_total; ++i) {
    basis[i] = art0 + i;
    in_basis[art0 + i] = 1;
  }

  std::vector<std::vector<double>> b(rows_total, std::vector<double>(rows_total));
  std::vector<double> col(rows_total);
  std::vector<double> x(rows_total);
  std::vector<double> y(rows_total);
  std::vector<double> u(rows_total);
  double objective = 0.0;

  for (long long pivots = 0;; ++pivots) {
    if (pivots > limits.max_pivots) {
      throw NumericalError("simplex exceeded " + std::to_string(limits.max_pivots) + " pivots");
    }

    for (int i = 0; i < rows_total; ++i) {
      fill_column(basis[i], col);
      for (int k = 0; k < rows_total; ++k) b[k][i] = col[k];
    }
    const std::vector<std::vector<double>> binv = invert(b);

    for (int i = 0; i < rows_total; ++i) {
      double v = 0.0;
      for (int k = 0; k < rows_total; ++k) v += binv[i][k] * rhs_vec[k];
      x[i] = v;
    }
    objective = 0.0;
    for (int i = 0; i < rows_total; ++i) {
      if (basis[i] >= art0) objective += std::max(x[i], 0.0);
    }
    // y = cost-of-basis times the basis inverse; prices of the artificials.
    for (int k = 0; k < rows_total; ++k) {
      double v = 0.0;
      for (int i = 0; i < rows_total; ++i) {
        if (basis[i] >= art0) v += binv[i][k];
      }
      y[k] = v;
    }

    int enter = -1;
    for (int j = 0; j < priced; ++j) {
      if (in_basis[j]) continue;
      fill_column(j, col);
      double rc = 0.0;
      for (int k = 0; k < rows_total; ++k) rc -= y[k] * col[k];
      if (rc < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    fill_column(enter, col);
    for (int i = 0; i < rows_total; ++i) {
      double v = 0.0;
      for (int k = 0; k < rows_total; ++k) v += binv[i][k] * col[k];
      u[i] = v;
    }

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows_total; ++i) {
      if (u[i] <= tol) continue;
      const double ratio = x[i] / u[i];
      if (ratio < best_ratio) {
        best_ratio = ratio;
        leave = i;
      } else if (ratio == best_ratio && basis[i] < basis[leave]) {
        leave = i;
      }
    }
    if (leave < 0) {
      throw NumericalError("phase-1 objective became unbounded, which marks numerical corruption");
    }

    in_basis[basis[leave]] = 0;
    in_basis[enter] = 1;
    basis[leave] = enter;
  }

  LpResult result;
  if (objective <= 1e-9) {
    result.feasible = true;
    result.point.assign(cols, 0.0);
    for (int i = 0; i < rows_total; ++i) {
      if (basis[i] < cols) result.point[basis[i]] = std::max(x[i], 0.0);
    }
    double raw_sum = 0.0;
    for (double v : result.point) raw_sum += v;
    if (raw_sum > 0.0) {
      for (double& v : result.point) v /= raw_sum;
    }
    double sum = 0.0;
    for (double v : result.point) sum += v;
    double violation = std::abs(sum - 1.0);
    for (int i = 0; i < r; ++i) {
      double lhs = 0.0;
      for (int j = 0; j < cols; ++j) lhs += a[i][j] * result.point[j];
      violation = std::max(violation, rhs[i] - lhs);
    }
    if (violation > limits.feasibility_tolerance) {
      throw NumericalError("simplex returned a point violating a constraint by " +
                           std::to_string(violation));
    }
    return result;
  }

  // Multiplier of flipped row i is its price unflipped; pricing of the
  // surplus columns at optimality forces the multipliers nonnegative.
  result.feasible = false;
  result.certificate.assign(r, 0.0);
  for (int i = 0; i < r; ++i) {
    double alpha = sign[i] * y[i];
    if (alpha < 0.0) {
      if (alpha < -limits.feasibility_tolerance) {
        throw NumericalError("infeasibility certificate has a negative multiplier " +
                             std::to_string(alpha));
      }
      alpha = 0.0;
    }
    result.certificate[i] = alpha;
  }
  double cert_rhs = 0.0;
  for (int i = 0; i < r; ++i) cert_rhs += result.certificate[i] * rhs[i];
  double cert_max = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < cols; ++j) {
    double dot = 0.0;
    for (int i = 0; i < r; ++i) dot += result.certificate[i] * a[i][j];
    cert_max = std::max(cert_max, dot);
  }
  if (!(cert_max < cert_rhs + limits.feasibility_tolerance)) {
    throw NumericalError("infeasibility certificate fails to separate: max column " +
                         std::to_string(cert_max) + " vs right-hand side " +
                         std::to_string(cert_rhs));
  }
  return result;
}

}  // namespace polymax
