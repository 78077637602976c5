#include "vlftbc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace vlftbc {

int worker_count() {
    if (const char* env = std::getenv("VLFTBC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    if (n <= 0) return;
    int workers = std::min<long>(worker_count(), n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next(0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

int SchemeConfig::message_len() const {
    int m = static_cast<int>(std::lround(gamma * L));
    return std::max(1, std::min(m, L - 1));
}

double derive_gamma(double R, double C, double epsilon) {
    if (epsilon <= 0.0 || epsilon >= C) throw std::invalid_argument("epsilon outside (0, C)");
    double g = R / (C - epsilon);
    if (!(g > 0.0 && g < 1.0))
        throw std::invalid_argument("derived gamma outside (0,1); rate too close to capacity");
    return g;
}

SchemeConfig resolve_config(SchemeConfig cfg, const InfoSummary& info) {
    if (cfg.L < 2) throw std::invalid_argument("block length must be >= 2");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.max_blocks < 1) throw std::invalid_argument("max_blocks must be >= 1");
    if (cfg.delta <= 0.0) throw std::invalid_argument("delta must be positive");
    if (cfg.gamma == 0.0) cfg.gamma = derive_gamma(cfg.R, info.C, cfg.epsilon);
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw std::invalid_argument("gamma outside (0,1)");
    if (cfg.M == 0) {
        double m = std::ceil(std::exp(cfg.R * cfg.L));
        if (m > (1 << 20))
            throw std::invalid_argument(
                "default message count ceil(e^{RL}) is too large to simulate; pass M explicitly");
        cfg.M = static_cast<long long>(m);
    }
    if (cfg.M < 2) throw std::invalid_argument("M must be >= 2");
    if (cfg.M > (1 << 20)) throw std::invalid_argument("M too large to simulate");
    return cfg;
}

Codebook build_codebook(const InfoSummary& info, const SchemeConfig& cfg, RngStream& rng) {
    // Infinite B only sharpens the control test (some output is impossible
    // under the other symbol), so the codebook stays constructible.
    Codebook cb;
    cb.x_confirm = info.argmax_pair_B.first;
    cb.x_deny = info.argmax_pair_B.second;
    const int ml = cfg.message_len();
    cb.message_words.assign(static_cast<size_t>(cfg.M), std::vector<int>(static_cast<size_t>(ml)));
    const std::vector<double>& p = info.pstar.probs();
    for (auto& word : cb.message_words)
        for (int t = 0; t < ml; ++t) word[static_cast<size_t>(t)] = rng.categorical(p);
    return cb;
}

namespace {

// log-likelihood table per branch, -inf encoded as a large negative finite
// value so ties between impossible words still resolve by index
std::vector<std::vector<double>> log_table(const ChannelMatrix& w) {
    std::vector<std::vector<double>> t(static_cast<size_t>(w.input_size()),
                                       std::vector<double>(static_cast<size_t>(w.output_size())));
    for (int x = 0; x < w.input_size(); ++x)
        for (int y = 0; y < w.output_size(); ++y)
            t[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                w(x, y) > 0.0 ? std::log(w(x, y)) : -1e300;
    return t;
}

int ml_decode(const std::vector<int>& outputs, const Codebook& cb,
              const std::vector<std::vector<double>>& logw) {
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (size_t wdx = 0; wdx < cb.message_words.size(); ++wdx) {
        const auto& word = cb.message_words[wdx];
        double ll = 0.0;
        for (size_t t = 0; t < word.size(); ++t)
            ll += logw[static_cast<size_t>(word[t])][static_cast<size_t>(outputs[t])];
        if (ll > best_ll) {
            best_ll = ll;
            best = static_cast<int>(wdx);
        }
    }
    return best;
}

struct JointSampler {
    const BroadcastChannel& bc;
    std::vector<std::vector<double>> slices;  // joint rows per x when present

    explicit JointSampler(const BroadcastChannel& b) : bc(b) {
        if (!bc.has_joint()) return;
        const JointTensor& t = bc.joint();
        const int block = t.block_size();
        slices.assign(static_cast<size_t>(bc.input_size()), {});
        for (int x = 0; x < bc.input_size(); ++x)
            slices[static_cast<size_t>(x)].assign(
                t.probs.begin() + static_cast<long>(x) * block,
                t.probs.begin() + static_cast<long>(x + 1) * block);
    }

    // sample outputs for the active receivers only
    void sample(int x, const std::vector<bool>& active, RngStream& rng,
                std::vector<int>& out) const {
        if (!slices.empty()) {
            const JointTensor& t = bc.joint();
            int flat = rng.categorical(slices[static_cast<size_t>(x)]);
            for (int j = bc.receivers() - 1; j >= 0; --j) {
                int s = t.output_sizes[static_cast<size_t>(j)];
                out[static_cast<size_t>(j)] = flat % s;
                flat /= s;
            }
            return;
        }
        for (int j = 0; j < bc.receivers(); ++j)
            if (active[static_cast<size_t>(j)])
                out[static_cast<size_t>(j)] = rng.categorical(bc.branch(j).row(x).probs());
    }
};

}  // namespace

std::vector<int> decode_message(const std::vector<std::vector<int>>& block_outputs,
                                const Codebook& codebook, const BroadcastChannel& bc) {
    std::vector<int> est(static_cast<size_t>(bc.receivers()));
    for (int j = 0; j < bc.receivers(); ++j)
        est[static_cast<size_t>(j)] =
            ml_decode(block_outputs[static_cast<size_t>(j)], codebook, log_table(bc.branch(j)));
    return est;
}

ControlSymbol decode_control(const std::vector<int>& outputs, int receiver,
                             const SchemeConfig& cfg, const Codebook& codebook,
                             const BroadcastChannel& bc) {
    const ChannelMatrix& w = bc.branch(receiver);
    const int l = static_cast<int>(outputs.size());
    std::vector<int> counts(static_cast<size_t>(w.output_size()), 0);
    for (int y : outputs) counts[static_cast<size_t>(y)]++;
    for (int y = 0; y < w.output_size(); ++y) {
        double p = w(codebook.x_confirm, y);
        double freq = static_cast<double>(counts[static_cast<size_t>(y)]) / l;
        // band clipped into [0,1]; frequencies cannot leave it anyway
        double lo = (1.0 - cfg.delta) * p;
        double hi = std::min(1.0, (1.0 + cfg.delta) * p);
        if (freq < lo || freq > hi) return ControlSymbol::Deny;
    }
    return ControlSymbol::Confirm;
}

std::vector<ControlSymbol> decode_control(const std::vector<std::vector<int>>& block_outputs,
                                          const SchemeConfig& cfg, const Codebook& codebook,
                                          const BroadcastChannel& bc) {
    std::vector<ControlSymbol> out(static_cast<size_t>(bc.receivers()));
    for (int j = 0; j < bc.receivers(); ++j)
        out[static_cast<size_t>(j)] =
            decode_control(block_outputs[static_cast<size_t>(j)], j, cfg, codebook, bc);
    return out;
}

SessionRecord run_session(const BroadcastChannel& bc, const Codebook& codebook,
                          const SchemeConfig& cfg, RngStream& rng,
                          std::vector<BlockTally>* tally) {
    const int K = bc.receivers();
    const int ml = cfg.message_len();
    const int cl = cfg.control_len();
    SessionRecord rec;
    rec.message = static_cast<int>(rng.next() % static_cast<uint64_t>(cfg.M));
    rec.tau.assign(static_cast<size_t>(K), 0);
    rec.decoded.assign(static_cast<size_t>(K), -1);

    std::vector<std::vector<std::vector<double>>> logw;
    logw.reserve(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j) logw.push_back(log_table(bc.branch(j)));

    JointSampler sampler(bc);
    std::vector<bool> active(static_cast<size_t>(K), true);
    std::vector<std::vector<int>> msg_out(static_cast<size_t>(K),
                                          std::vector<int>(static_cast<size_t>(ml)));
    std::vector<std::vector<int>> ctl_out(static_cast<size_t>(K),
                                          std::vector<int>(static_cast<size_t>(cl)));
    std::vector<int> symbols(static_cast<size_t>(K), 0);
    std::vector<int> est(static_cast<size_t>(K), -1);
    int stopped = 0;

    const auto& word = codebook.message_words[static_cast<size_t>(rec.message)];
    for (int blk = 0; blk < cfg.max_blocks && stopped < K; ++blk) {
        ++rec.blocks;
        // message mode
        for (int t = 0; t < ml; ++t) {
            sampler.sample(word[static_cast<size_t>(t)], active, rng, symbols);
            for (int j = 0; j < K; ++j)
                if (active[static_cast<size_t>(j)])
                    msg_out[static_cast<size_t>(j)][static_cast<size_t>(t)] =
                        symbols[static_cast<size_t>(j)];
        }
        bool all_correct = true;
        for (int j = 0; j < K; ++j) {
            if (!active[static_cast<size_t>(j)]) continue;
            est[static_cast<size_t>(j)] = ml_decode(msg_out[static_cast<size_t>(j)], codebook,
                                                    logw[static_cast<size_t>(j)]);
            if (est[static_cast<size_t>(j)] != rec.message) all_correct = false;
        }
        // control mode: confirm only when every still-active receiver is correct
        int xctl = all_correct ? codebook.x_confirm : codebook.x_deny;
        for (int t = 0; t < cl; ++t) {
            sampler.sample(xctl, active, rng, symbols);
            for (int j = 0; j < K; ++j)
                if (active[static_cast<size_t>(j)])
                    ctl_out[static_cast<size_t>(j)][static_cast<size_t>(t)] =
                        symbols[static_cast<size_t>(j)];
        }
        for (int j = 0; j < K; ++j) {
            if (!active[static_cast<size_t>(j)]) continue;
            ControlSymbol sym =
                decode_control(ctl_out[static_cast<size_t>(j)], j, cfg, codebook, bc);
            if (tally) {
                BlockTally& bt = (*tally)[static_cast<size_t>(j)];
                bt.active_blocks++;
                if (est[static_cast<size_t>(j)] != rec.message) bt.message_errors++;
                if (all_correct) {
                    bt.confirm_sent++;
                    if (sym == ControlSymbol::Deny) bt.confirm_sent_deny++;
                } else {
                    bt.deny_sent++;
                    if (sym == ControlSymbol::Confirm) bt.deny_sent_confirm++;
                }
                if (sym == ControlSymbol::Deny) bt.deny_decodes++;
            }
            if (sym == ControlSymbol::Confirm) {
                active[static_cast<size_t>(j)] = false;
                rec.tau[static_cast<size_t>(j)] = static_cast<long>(blk + 1) * cfg.L;
                rec.decoded[static_cast<size_t>(j)] = est[static_cast<size_t>(j)];
                ++stopped;
            }
        }
    }
    if (stopped < K) {
        rec.truncated = true;
        for (int j = 0; j < K; ++j)
            if (active[static_cast<size_t>(j)])
                rec.tau[static_cast<size_t>(j)] = static_cast<long>(cfg.max_blocks) * cfg.L;
    }
    return rec;
}

SimResult estimate(const BroadcastChannel& bc, const InfoSummary& info, SchemeConfig cfg,
                   std::vector<SessionRecord>* sessions) {
    cfg = resolve_config(cfg, info);
    const int K = bc.receivers();
    const long long n = cfg.trials;

    std::optional<Codebook> shared;
    if (cfg.fixed_codebook) {
        RngStream rng = RngStream::derive(cfg.seed, 0xC0DEULL);
        shared = build_codebook(info, cfg, rng);
    }

    std::vector<SessionRecord> recs(static_cast<size_t>(n));
    std::vector<std::vector<BlockTally>> tallies(
        static_cast<size_t>(n), std::vector<BlockTally>(static_cast<size_t>(K)));
    parallel_for(n, [&](long i) {
        RngStream rng = RngStream::derive(cfg.seed, static_cast<uint64_t>(i) + 1);
        if (shared) {
            recs[static_cast<size_t>(i)] =
                run_session(bc, *shared, cfg, rng, &tallies[static_cast<size_t>(i)]);
        } else {
            Codebook cb = build_codebook(info, cfg, rng);
            recs[static_cast<size_t>(i)] =
                run_session(bc, cb, cfg, rng, &tallies[static_cast<size_t>(i)]);
        }
    });

    SimResult out;
    out.config = cfg;
    out.pe_j_hat.assign(static_cast<size_t>(K), 0.0);
    out.mean_tau_j.assign(static_cast<size_t>(K), 0.0);
    out.var_tau_j.assign(static_cast<size_t>(K), 0.0);
    std::vector<BlockTally> total(static_cast<size_t>(K));
    long long errors = 0;
    double tau_max_sum = 0.0;
    for (long long i = 0; i < n; ++i) {
        const SessionRecord& r = recs[static_cast<size_t>(i)];
        bool any_wrong = r.truncated;
        long tmax = 0;
        for (int j = 0; j < K; ++j) {
            if (r.decoded[static_cast<size_t>(j)] != r.message) {
                out.pe_j_hat[static_cast<size_t>(j)] += 1.0;
                any_wrong = true;
            }
            out.mean_tau_j[static_cast<size_t>(j)] += static_cast<double>(r.tau[static_cast<size_t>(j)]);
            tmax = std::max(tmax, r.tau[static_cast<size_t>(j)]);
        }
        tau_max_sum += static_cast<double>(tmax);
        if (any_wrong) ++errors;
        if (r.truncated) ++out.truncated_sessions;
        for (int j = 0; j < K; ++j) {
            const BlockTally& bt = tallies[static_cast<size_t>(i)][static_cast<size_t>(j)];
            BlockTally& tj = total[static_cast<size_t>(j)];
            tj.active_blocks += bt.active_blocks;
            tj.deny_decodes += bt.deny_decodes;
            tj.message_errors += bt.message_errors;
            tj.confirm_sent += bt.confirm_sent;
            tj.confirm_sent_deny += bt.confirm_sent_deny;
            tj.deny_sent += bt.deny_sent;
            tj.deny_sent_confirm += bt.deny_sent_confirm;
        }
    }
    for (int j = 0; j < K; ++j) {
        out.pe_j_hat[static_cast<size_t>(j)] /= static_cast<double>(n);
        out.mean_tau_j[static_cast<size_t>(j)] /= static_cast<double>(n);
    }
    for (long long i = 0; i < n; ++i)
        for (int j = 0; j < K; ++j) {
            double d = static_cast<double>(recs[static_cast<size_t>(i)].tau[static_cast<size_t>(j)]) -
                       out.mean_tau_j[static_cast<size_t>(j)];
            out.var_tau_j[static_cast<size_t>(j)] += d * d;
        }
    for (int j = 0; j < K; ++j)
        out.var_tau_j[static_cast<size_t>(j)] /= static_cast<double>(std::max<long long>(1, n - 1));

    out.error_sessions = errors;
    out.pe_hat = static_cast<double>(errors) / static_cast<double>(n);
    double se = std::sqrt(std::max(0.0, out.pe_hat * (1.0 - out.pe_hat) / static_cast<double>(n)));
    out.pe_ci_lo = std::max(0.0, out.pe_hat - 1.96 * se);
    out.pe_ci_hi = std::min(1.0, out.pe_hat + 1.96 * se);
    out.mean_tau_max = tau_max_sum / static_cast<double>(n);

    out.q_hat_j.assign(static_cast<size_t>(K), 0.0);
    out.q_pred_j.assign(static_cast<size_t>(K), 0.0);
    out.p1e_hat_j.assign(static_cast<size_t>(K), 0.0);
    out.p2ce_hat_j.assign(static_cast<size_t>(K), 0.0);
    out.p2ec_hat_j.assign(static_cast<size_t>(K), 0.0);
    for (int j = 0; j < K; ++j) {
        const BlockTally& t = total[static_cast<size_t>(j)];
        if (t.active_blocks > 0) {
            out.q_hat_j[static_cast<size_t>(j)] =
                static_cast<double>(t.deny_decodes) / static_cast<double>(t.active_blocks);
            out.p1e_hat_j[static_cast<size_t>(j)] =
                static_cast<double>(t.message_errors) / static_cast<double>(t.active_blocks);
        }
        double p2ce = t.confirm_sent > 0 ? static_cast<double>(t.confirm_sent_deny) /
                                               static_cast<double>(t.confirm_sent)
                                         : 0.0;
        double p2ec = t.deny_sent > 0 ? static_cast<double>(t.deny_sent_confirm) /
                                            static_cast<double>(t.deny_sent)
                                      : 0.0;
        out.p2ce_hat_j[static_cast<size_t>(j)] = p2ce;
        out.p2ec_hat_j[static_cast<size_t>(j)] = p2ec;
        double p1e = out.p1e_hat_j[static_cast<size_t>(j)];
        out.q_pred_j[static_cast<size_t>(j)] = p1e * (1.0 - p2ec) + (1.0 - p1e) * p2ce;
    }
    if (errors > 0 && out.mean_tau_max > 0.0)
        out.empirical_exponent = -std::log(out.pe_hat) / out.mean_tau_max;
    if (sessions) *sessions = std::move(recs);
    return out;
}

std::pair<double, double> geometric_stats(double q, double L) {
    if (!(q >= 0.0 && q < 1.0)) throw std::domain_error("repeat probability outside [0,1)");
    double mean = L / (1.0 - q);
    double var = L * L * q / ((1.0 - q) * (1.0 - q));
    return {mean, var};
}

}  // namespace vlftbc
