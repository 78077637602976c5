#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vlftbc/prob.hpp"

namespace vlftbc {

enum class Verdict { Yes, No, NotApplicable, Indeterminate, Undetermined };

const char* verdict_name(Verdict v);

struct StochasticResult {
    Verdict verdict = Verdict::No;
    // witness post-processing channels Y_j -> Y_1, one per branch j >= 2
    std::vector<ChannelMatrix> witnesses;
    double residual = 0.0;  // worst phase-1 objective across branches
};

struct LessCapableResult {
    Verdict verdict = Verdict::Undetermined;
    std::optional<Distribution> counterexample;
    double min_gap = 0.0;  // smallest min_{j>=2} I_j - I_1 seen by the search
    std::string diagnostics;
};

struct OrderingReport {
    Verdict physically_degraded = Verdict::NotApplicable;
    StochasticResult stochastic;
    LessCapableResult less_capable;
};

// Markov chain X - Y_j - Y_1 for all j >= 2 under the joint law;
// NotApplicable when the channel carries no joint tensor.
Verdict check_physically_degraded(const BroadcastChannel& bc);

// Existence of row-stochastic W_j with branches[j] * W_j = branches[1],
// decided per branch by phase-1 simplex feasibility.
StochasticResult check_stochastically_degraded(const BroadcastChannel& bc);

// I(X;Y_1) <= min_j I(X;Y_j) for all P_X. Sound refuter (counterexample
// search) plus a certified yes for binary inputs on positive channels;
// `stochastic_yes` short-circuits via the degradation implication.
LessCapableResult check_less_capable(const BroadcastChannel& bc, int restarts, double tol,
                                     bool stochastic_yes = false);

OrderingReport classify(const BroadcastChannel& bc, int restarts = 16, double tol = 1e-7);

}  // namespace vlftbc
