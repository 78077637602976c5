#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vlftbc/info.hpp"
#include "vlftbc/prob.hpp"
#include "vlftbc/rng.hpp"

namespace vlftbc {

// Per-branch output histories, outer index = branch.
using History = std::vector<std::vector<int>>;

// Deterministic encoder x = f(w, y_1^n, ..., y_K^n). The full-history
// posterior over messages is supplied for adaptive policies; it is a
// function of (histories, policy) so measurability is preserved.
using EncoderPolicy =
    std::function<int(int w, const History& h, const std::vector<double>& posterior)>;

EncoderPolicy repetition_policy(int input_size);
EncoderPolicy cycle_policy(int input_size);
// posterior-rank balancing: messages sorted by current posterior get symbols
// round-robin, splitting the posterior mass across inputs
EncoderPolicy greedy_policy(int input_size);
EncoderPolicy random_policy(int input_size, uint64_t seed);

// Exact per-branch posterior table at one time step.
struct BranchPosteriors {
    std::vector<double> hist_prob;                 // indexed by base-|Y_j| history code
    std::vector<std::vector<double>> posterior;    // P(W = . | y_j^n)
    std::vector<double> cond_entropy;              // H(W | y_j^n)
};

struct PosteriorState {
    int n = 0;
    std::vector<BranchPosteriors> branch;  // one per receiver
};

// Full forward enumeration; also keeps the joint path measure for the
// stopping-time checks.
struct PosteriorTrace {
    int M = 0;
    int n_max = 0;
    std::vector<int> out_sizes;
    std::vector<PosteriorState> states;            // n = 0..n_max
    std::vector<std::vector<double>> joint;        // per n: measure over (w, joint history)
};

PosteriorTrace enumerate_posteriors(const BroadcastChannel& bc, const EncoderPolicy& policy,
                                    int M, int n_max, long state_cap = 1000000);

struct CheckReport {
    std::string name;
    bool pass = true;
    double worst_slack = 0.0;  // max over checks of (lhs - bound); <= 0 when pass
    long checks = 0;
    std::string witness;  // offending history when pass == false
};

CheckReport check_entropy_drop(const PosteriorTrace& trace, const InfoSummary& info);
CheckReport check_log_drop(const PosteriorTrace& trace, const InfoSummary& info);
CheckReport check_pointwise_log_drop(const PosteriorTrace& trace, const InfoSummary& info);
CheckReport check_clipped_drop(const PosteriorTrace& trace, const InfoSummary& info, double a);

// Log-sum bound over random nonnegative arrays (L, N <= 6).
CheckReport check_logsum(long trials, uint64_t seed);

// Bounded stopping rule on one branch's history; forced stop at n_max.
using StoppingRule =
    std::function<bool(int branch, const std::vector<int>& hist, const std::vector<double>& posterior, int n)>;

StoppingRule stop_at(int n);
StoppingRule entropy_threshold(double theta);

CheckReport check_fano_stopping(const PosteriorTrace& trace, const StoppingRule& rule, int M);

}  // namespace vlftbc
