#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "vlftbc/prob.hpp"

namespace vlftbc {

struct ConvergenceError : std::runtime_error {
    double bracket_lo;
    double bracket_hi;
    ConvergenceError(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " (bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "])"),
          bracket_lo(lo),
          bracket_hi(hi) {}
};

// Result of an exhaustive max over ordered input pairs; ties go to the
// lexicographically smallest (x, x').
struct PairScan {
    ExtReal value;
    int x = 0;
    int xprime = 0;
};

// Capacity-style optimization result. `value` is the objective at `px`
// (a certified lower end); `upper` bounds the true optimum from above,
// with upper - value < tol on successful return.
struct Capacity {
    double value = 0.0;
    Distribution px;
    double upper = 0.0;
    long iterations = 0;
};

PairScan compute_Bj(const BroadcastChannel& bc, int j);
PairScan compute_B(const BroadcastChannel& bc);
ExtReal compute_Tj(const BroadcastChannel& bc, int j);
Capacity compute_Cj(const BroadcastChannel& bc, int j, double tol = 1e-6);
Capacity compute_C(const BroadcastChannel& bc, double tol = 1e-6);
double compute_Cbar(const BroadcastChannel& bc, double tol = 1e-6);

// (x)_a = x * 1{x >= a}
double clip_below(double x, double a);

// max_j (ln T_j)_a; infinite when some T_j is infinite.
ExtReal compute_varphi(const BroadcastChannel& bc, double a);
ExtReal varphi_of(const std::vector<ExtReal>& Tj, double a);

struct InfoSummary {
    ExtReal B;
    std::vector<ExtReal> Bj;
    ExtReal Bmax;
    std::vector<ExtReal> Tj;
    std::vector<double> Cj;
    double C = 0.0;
    double Cbar = 0.0;
    std::pair<int, int> argmax_pair_B{0, 0};
    Distribution pstar;
    double tol = 1e-6;
};

InfoSummary summarize(const BroadcastChannel& bc, double tol = 1e-6);

}  // namespace vlftbc
