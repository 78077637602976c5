#pragma once

#include <vector>

namespace vlftbc {

// Phase-1 feasibility for { x >= 0 : A x = b }. Minimizes the sum of
// artificial variables with Bland's rule (no cycling). `objective` is the
// residual infeasibility at termination; `x` is a feasible point when
// objective is (numerically) zero.
struct FeasibilityResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

FeasibilityResult phase1_feasible(const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& b,
                                  double tol = 1e-9);

}  // namespace vlftbc
