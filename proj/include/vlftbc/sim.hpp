#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlftbc/info.hpp"
#include "vlftbc/prob.hpp"
#include "vlftbc/rng.hpp"

namespace vlftbc {

// Two-phase block scheme parameters. Message mode occupies round(gamma*L)
// symbols of each length-L block, control mode the rest.
struct SchemeConfig {
    double R = 0.0;       // target rate, nats per channel use
    int L = 0;            // block length
    double gamma = 0.0;   // message-mode fraction; derive_gamma fills it from R
    double delta = 0.3;   // typicality band half-width (relative)
    double epsilon = 1e-9;  // capacity backoff when gamma is derived
    long long M = 0;      // message count; 0 -> ceil(e^{RL})
    long long trials = 0;
    uint64_t seed = 0;
    int max_blocks = 64;  // session cap; hitting it counts as an error
    bool fixed_codebook = false;

    int message_len() const;
    int control_len() const { return L - message_len(); }
};

// gamma = R / (C - epsilon)
double derive_gamma(double R, double C, double epsilon);

// Validates and resolves defaults (gamma from R when unset, M from R and L).
SchemeConfig resolve_config(SchemeConfig cfg, const InfoSummary& info);

struct Codebook {
    std::vector<std::vector<int>> message_words;  // M words of length message_len
    int x_confirm = 0;
    int x_deny = 0;
};

enum class ControlSymbol { Confirm, Deny };

struct SessionRecord {
    int message = 0;
    std::vector<long> tau;        // per receiver, multiples of L
    std::vector<int> decoded;     // -1 when truncated before acceptance
    int blocks = 0;
    bool truncated = false;
};

// Per-receiver block-level tallies accumulated across a run; they back the
// empirical repeat probability and its two-phase factorization.
struct BlockTally {
    long long active_blocks = 0;
    long long deny_decodes = 0;       // blocks the receiver rejected
    long long message_errors = 0;     // message-mode estimate wrong
    long long confirm_sent = 0;       // blocks where x_c was transmitted
    long long confirm_sent_deny = 0;  // ... and this receiver rejected (P_2ce)
    long long deny_sent = 0;
    long long deny_sent_confirm = 0;  // x_e sent but accepted (P_2ec)
};

struct SimResult {
    SchemeConfig config;
    double pe_hat = 0.0;
    double pe_ci_lo = 0.0;
    double pe_ci_hi = 0.0;
    std::vector<double> pe_j_hat;
    std::vector<double> mean_tau_j;
    std::vector<double> var_tau_j;
    double mean_tau_max = 0.0;
    std::vector<double> q_hat_j;       // empirical per-block repeat probability
    std::vector<double> q_pred_j;      // P_1e(1-P_2ec) + (1-P_1e)P_2ce from tallies
    std::vector<double> p1e_hat_j;
    std::vector<double> p2ce_hat_j;
    std::vector<double> p2ec_hat_j;
    std::optional<double> empirical_exponent;  // absent when no errors observed
    long long error_sessions = 0;
    long long truncated_sessions = 0;
};

Codebook build_codebook(const InfoSummary& info, const SchemeConfig& cfg, RngStream& rng);

// Per-receiver maximum-likelihood estimates; ties to the smallest index.
std::vector<int> decode_message(const std::vector<std::vector<int>>& block_outputs,
                                const Codebook& codebook, const BroadcastChannel& bc);

// Typicality rule around P(.|x_c): confirm iff every letter's empirical
// frequency lies within (1 +- delta) of its probability.
ControlSymbol decode_control(const std::vector<int>& outputs, int receiver,
                             const SchemeConfig& cfg, const Codebook& codebook,
                             const BroadcastChannel& bc);
std::vector<ControlSymbol> decode_control(const std::vector<std::vector<int>>& block_outputs,
                                          const SchemeConfig& cfg, const Codebook& codebook,
                                          const BroadcastChannel& bc);

SessionRecord run_session(const BroadcastChannel& bc, const Codebook& codebook,
                          const SchemeConfig& cfg, RngStream& rng,
                          std::vector<BlockTally>* tally = nullptr);

SimResult estimate(const BroadcastChannel& bc, const InfoSummary& info, SchemeConfig cfg,
                   std::vector<SessionRecord>* sessions = nullptr);

// Eqs: E(tau) = L/(1-q), Var(tau) = L^2 q/(1-q)^2 for block repeat prob q.
std::pair<double, double> geometric_stats(double q, double L);

}  // namespace vlftbc
