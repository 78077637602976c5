#include "vlftbc/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace vlftbc {

FeasibilityResult phase1_feasible(const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& b, double tol) {
    const int m = static_cast<int>(A.size());
    if (m == 0) return FeasibilityResult{true, 0.0, {}};
    const int n = static_cast<int>(A.front().size());
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("ragged constraint matrix");

    // Tableau rows 0..m-1: constraints with artificials appended; row m: phase-1
    // objective (sum of artificials expressed in non-basic terms).
    const int cols = n + m + 1;
    std::vector<std::vector<double>> t(static_cast<size_t>(m + 1),
                                       std::vector<double>(static_cast<size_t>(cols), 0.0));
    std::vector<int> basis(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        double sign = b[static_cast<size_t>(i)] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j)
            t[static_cast<size_t>(i)][static_cast<size_t>(j)] = sign * A[static_cast<size_t>(i)][static_cast<size_t>(j)];
        t[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1.0;
        t[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)] = sign * b[static_cast<size_t>(i)];
        basis[static_cast<size_t>(i)] = n + i;
    }
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += t[static_cast<size_t>(i)][static_cast<size_t>(j)];
        t[static_cast<size_t>(m)][static_cast<size_t>(j)] = (j >= n && j < n + m) ? 0.0 : -s;
    }

    const long pivot_cap = 200000;
    for (long it = 0; it < pivot_cap; ++it) {
        // Bland: entering = lowest-index column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < cols - 1; ++j) {
            if (t[static_cast<size_t>(m)][static_cast<size_t>(j)] < -1e-11) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            double a = t[static_cast<size_t>(i)][static_cast<size_t>(enter)];
            if (a <= 1e-11) continue;
            double ratio = t[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)] / a;
            if (leave < 0 || ratio < best - 1e-14 ||
                (std::abs(ratio - best) <= 1e-14 &&
                 basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded cannot happen in phase 1; stop defensively
        double piv = t[static_cast<size_t>(leave)][static_cast<size_t>(enter)];
        for (int j = 0; j < cols; ++j) t[static_cast<size_t>(leave)][static_cast<size_t>(j)] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = t[static_cast<size_t>(i)][static_cast<size_t>(enter)];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j)
                t[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * t[static_cast<size_t>(leave)][static_cast<size_t>(j)];
        }
        basis[static_cast<size_t>(leave)] = enter;
    }

    double obj = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] >= n)
            obj += t[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)];

    FeasibilityResult r;
    r.objective = std::abs(obj);
    r.feasible = r.objective <= tol;
    r.x.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] < n)
            r.x[static_cast<size_t>(basis[static_cast<size_t>(i)])] =
                std::max(0.0, t[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)]);
    return r;
}

}  // namespace vlftbc
