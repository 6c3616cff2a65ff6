#pragma once

#include <vector>

namespace polymax {

struct LpLimits {
  int max_rows = 2000;
  int max_cols = 20000;
  long long max_pivots = 1'000'000;
  // Reduced costs and ratio-test pivots below this count as zero.
  double pivot_tolerance = 1e-9;
  // Returned points satisfy every constraint to within this.
  double feasibility_tolerance = 1e-7;
};

// Outcome of the feasibility problem {d >= 0, sum(d) = 1, A d >= rhs}.
struct LpResult {
  bool feasible = false;
  // Size cols when feasible.
  std::vector<double> point;
  // Size rows when infeasible: y >= 0 with max over columns of (y . A_col)
  // strictly below y . rhs, witnessing that no simplex point satisfies A d >= rhs.
  std::vector<double> certificate;
};

// Dense phase-1 simplex with Bland's rule. `a` holds `rhs.size()` rows of
// length `cols`; cols may exceed the row count and rows may be empty (then any
// simplex point works and the first coordinate is returned). Throws
// ResourceError beyond the size limits and NumericalError on a pivot-cap hit.
LpResult lp_feasibility(int cols, const std::vector<std::vector<double>>& a,
                        const std::vector<double>& rhs, const LpLimits& limits = {});

}  // namespace polymax
