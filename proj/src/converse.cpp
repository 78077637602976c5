#include "vlftbc/converse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vlftbc {

namespace {

constexpr double kSlack = 1e-9;
constexpr double kZeroEntropy = 1e-13;

std::string history_label(int branch, int code, int n, int base) {
    std::string s = "j=" + std::to_string(branch + 1) + " y^" + std::to_string(n) + "=";
    std::string digits;
    for (int t = 0; t < n; ++t) {
        digits.insert(0, std::to_string(code % base));
        code /= base;
    }
    return s + (n == 0 ? "()" : digits);
}

}  // namespace

EncoderPolicy repetition_policy(int input_size) {
    return [input_size](int w, const History&, const std::vector<double>&) {
        return w % input_size;
    };
}

EncoderPolicy cycle_policy(int input_size) {
    return [input_size](int w, const History& h, const std::vector<double>&) {
        int n = h.empty() ? 0 : static_cast<int>(h.front().size());
        return (w + n) % input_size;
    };
}

EncoderPolicy greedy_policy(int input_size) {
    return [input_size](int w, const History&, const std::vector<double>& posterior) {
        // rank of w when messages are ordered by posterior mass (desc, index asc)
        int rank = 0;
        for (size_t i = 0; i < posterior.size(); ++i) {
            if (static_cast<int>(i) == w) continue;
            if (posterior[i] > posterior[static_cast<size_t>(w)] ||
                (posterior[i] == posterior[static_cast<size_t>(w)] && static_cast<int>(i) < w))
                ++rank;
        }
        return rank % input_size;
    };
}

EncoderPolicy random_policy(int input_size, uint64_t seed) {
    return [input_size, seed](int w, const History& h, const std::vector<double>&) {
        uint64_t acc = splitmix64(seed ^ (0x9e37ULL + static_cast<uint64_t>(w)));
        for (const auto& branch : h) {
            acc = splitmix64(acc ^ 0xABCDULL);
            for (int y : branch) acc = splitmix64(acc + static_cast<uint64_t>(y) + 1);
        }
        return static_cast<int>(acc % static_cast<uint64_t>(input_size));
    };
}

PosteriorTrace enumerate_posteriors(const BroadcastChannel& bc, const EncoderPolicy& policy,
                                    int M, int n_max, long state_cap) {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    const int K = bc.receivers();
    const int nx = bc.input_size();
    long bprod = 1;
    std::vector<int> sizes(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j) {
        sizes[static_cast<size_t>(j)] = bc.branch(j).output_size();
        bprod *= sizes[static_cast<size_t>(j)];
    }
    double states = static_cast<double>(M) * std::pow(static_cast<double>(bprod), n_max);
    if (states > static_cast<double>(state_cap))
        throw std::length_error("posterior enumeration would exceed the state cap");

    // per-step joint output law for each input symbol, tuple index y_1 slowest
    std::vector<std::vector<double>> step(static_cast<size_t>(nx),
                                          std::vector<double>(static_cast<size_t>(bprod), 0.0));
    if (bc.has_joint()) {
        const JointTensor& t = bc.joint();
        for (int x = 0; x < nx; ++x)
            for (long i = 0; i < bprod; ++i)
                step[static_cast<size_t>(x)][static_cast<size_t>(i)] =
                    t.probs[static_cast<size_t>(x * bprod + i)];
    } else {
        for (int x = 0; x < nx; ++x)
            for (long i = 0; i < bprod; ++i) {
                double p = 1.0;
                long rest = i;
                for (int j = K - 1; j >= 0; --j) {
                    int y = static_cast<int>(rest % sizes[static_cast<size_t>(j)]);
                    rest /= sizes[static_cast<size_t>(j)];
                    p *= bc.branch(j)(x, y);
                }
                step[static_cast<size_t>(x)][static_cast<size_t>(i)] = p;
            }
    }

    PosteriorTrace trace;
    trace.M = M;
    trace.n_max = n_max;
    trace.out_sizes = sizes;
    trace.joint.resize(static_cast<size_t>(n_max) + 1);
    trace.states.resize(static_cast<size_t>(n_max) + 1);

    long gcount = 1;
    trace.joint[0].assign(static_cast<size_t>(M), 1.0 / M);
    History hist(static_cast<size_t>(K));
    std::vector<double> posterior(static_cast<size_t>(M));

    for (int n = 0; n <= n_max; ++n) {
        // branch marginals at level n
        PosteriorState& st = trace.states[static_cast<size_t>(n)];
        st.n = n;
        st.branch.resize(static_cast<size_t>(K));
        const std::vector<double>& jm = trace.joint[static_cast<size_t>(n)];
        for (int j = 0; j < K; ++j) {
            long bcodes = 1;
            for (int t = 0; t < n; ++t) bcodes *= sizes[static_cast<size_t>(j)];
            BranchPosteriors& bp = st.branch[static_cast<size_t>(j)];
            bp.hist_prob.assign(static_cast<size_t>(bcodes), 0.0);
            bp.posterior.assign(static_cast<size_t>(bcodes),
                                std::vector<double>(static_cast<size_t>(M), 0.0));
            for (long g = 0; g < gcount; ++g) {
                // branch-j history code from the joint code
                long bj = 0;
                long rest = g;
                for (int t = n - 1; t >= 0; --t) {
                    long digit = rest;
                    for (int tt = 0; tt < t; ++tt) digit /= bprod;
                    digit %= bprod;
                    long inner = 1;
                    for (int k = j + 1; k < K; ++k) inner *= sizes[static_cast<size_t>(k)];
                    int yj = static_cast<int>((digit / inner) % sizes[static_cast<size_t>(j)]);
                    bj = bj * sizes[static_cast<size_t>(j)] + yj;
                }
                for (int w = 0; w < M; ++w) {
                    double m = jm[static_cast<size_t>(w) * static_cast<size_t>(gcount) +
                                  static_cast<size_t>(g)];
                    bp.hist_prob[static_cast<size_t>(bj)] += m;
                    bp.posterior[static_cast<size_t>(bj)][static_cast<size_t>(w)] += m;
                }
            }
            bp.cond_entropy.assign(static_cast<size_t>(bcodes), 0.0);
            for (long b = 0; b < bcodes; ++b) {
                double hp = bp.hist_prob[static_cast<size_t>(b)];
                if (hp <= 0.0) continue;
                for (int w = 0; w < M; ++w) bp.posterior[static_cast<size_t>(b)][static_cast<size_t>(w)] /= hp;
                bp.cond_entropy[static_cast<size_t>(b)] = entropy(bp.posterior[static_cast<size_t>(b)]);
            }
        }
        if (n == n_max) break;

        // advance the joint measure one step
        std::vector<double>& cur = trace.joint[static_cast<size_t>(n)];
        std::vector<double>& nxt = trace.joint[static_cast<size_t>(n) + 1];
        nxt.assign(static_cast<size_t>(M) * static_cast<size_t>(gcount) * static_cast<size_t>(bprod),
                   0.0);
        for (long g = 0; g < gcount; ++g) {
            double hmass = 0.0;
            for (int w = 0; w < M; ++w)
                hmass += cur[static_cast<size_t>(w) * static_cast<size_t>(gcount) +
                             static_cast<size_t>(g)];
            if (hmass <= 0.0) continue;
            for (int w = 0; w < M; ++w)
                posterior[static_cast<size_t>(w)] =
                    cur[static_cast<size_t>(w) * static_cast<size_t>(gcount) +
                        static_cast<size_t>(g)] /
                    hmass;
            // decode histories for the policy
            for (int j = 0; j < K; ++j) hist[static_cast<size_t>(j)].assign(static_cast<size_t>(n), 0);
            long rest = g;
            for (int t = n - 1; t >= 0; --t) {
                long digit = rest % bprod;
                rest /= bprod;
                long inner = 1;
                for (int j = K - 1; j >= 0; --j) {
                    hist[static_cast<size_t>(j)][static_cast<size_t>(t)] =
                        static_cast<int>((digit / inner) % sizes[static_cast<size_t>(j)]);
                    inner *= sizes[static_cast<size_t>(j)];
                }
            }
            for (int w = 0; w < M; ++w) {
                double m = cur[static_cast<size_t>(w) * static_cast<size_t>(gcount) +
                               static_cast<size_t>(g)];
                if (m <= 0.0) continue;
                int x = policy(w, hist, posterior);
                if (x < 0 || x >= nx) throw std::invalid_argument("policy returned invalid symbol");
                for (long tup = 0; tup < bprod; ++tup) {
                    double p = step[static_cast<size_t>(x)][static_cast<size_t>(tup)];
                    if (p <= 0.0) continue;
                    long gnew = g * bprod + tup;
                    nxt[static_cast<size_t>(w) * static_cast<size_t>(gcount * bprod) +
                        static_cast<size_t>(gnew)] += m * p;
                }
            }
        }
        gcount *= bprod;
    }
    return trace;
}

CheckReport check_entropy_drop(const PosteriorTrace& trace, const InfoSummary& info) {
    CheckReport rep{"entropy_drop", true, -1e9, 0, ""};
    const int K = static_cast<int>(trace.out_sizes.size());
    for (int n = 0; n < trace.n_max; ++n) {
        const PosteriorState& st = trace.states[static_cast<size_t>(n)];
        const PosteriorState& nx = trace.states[static_cast<size_t>(n) + 1];
        for (int j = 0; j < K; ++j) {
            double bound = info.Cj[static_cast<size_t>(j)] + info.tol;  // bracket top
            int base = trace.out_sizes[static_cast<size_t>(j)];
            const BranchPosteriors& bp = st.branch[static_cast<size_t>(j)];
            const BranchPosteriors& bn = nx.branch[static_cast<size_t>(j)];
            for (long h = 0; h < static_cast<long>(bp.hist_prob.size()); ++h) {
                double ph = bp.hist_prob[static_cast<size_t>(h)];
                if (ph <= 0.0) continue;
                double exp_child = 0.0;
                for (int y = 0; y < base; ++y) {
                    long c = h * base + y;
                    double pc = bn.hist_prob[static_cast<size_t>(c)];
                    if (pc <= 0.0) continue;
                    exp_child += (pc / ph) * bn.cond_entropy[static_cast<size_t>(c)];
                }
                double drop = bp.cond_entropy[static_cast<size_t>(h)] - exp_child;
                ++rep.checks;
                double slack = drop - bound;
                if (slack > rep.worst_slack) rep.worst_slack = slack;
                if (drop > bound + kSlack) {
                    rep.pass = false;
                    if (rep.witness.empty())
                        rep.witness = history_label(j, static_cast<int>(h), n, base);
                }
            }
        }
    }
    return rep;
}

CheckReport check_log_drop(const PosteriorTrace& trace, const InfoSummary& info) {
    CheckReport rep{"log_drop", true, -1e9, 0, ""};
    const int K = static_cast<int>(trace.out_sizes.size());
    for (int j = 0; j < K; ++j) {
        if (!info.Bj[static_cast<size_t>(j)].finite()) continue;  // bound is infinite
        double bound = info.Bj[static_cast<size_t>(j)].value;
        int base = trace.out_sizes[static_cast<size_t>(j)];
        for (int n = 0; n < trace.n_max; ++n) {
            const BranchPosteriors& bp = trace.states[static_cast<size_t>(n)].branch[static_cast<size_t>(j)];
            const BranchPosteriors& bn =
                trace.states[static_cast<size_t>(n) + 1].branch[static_cast<size_t>(j)];
            for (long h = 0; h < static_cast<long>(bp.hist_prob.size()); ++h) {
                double ph = bp.hist_prob[static_cast<size_t>(h)];
                if (ph <= 0.0 || bp.cond_entropy[static_cast<size_t>(h)] <= kZeroEntropy) continue;
                double exp_log_child = 0.0;
                bool degenerate = false;
                for (int y = 0; y < base; ++y) {
                    long c = h * base + y;
                    double pc = bn.hist_prob[static_cast<size_t>(c)];
                    if (pc <= 0.0) continue;
                    double hc = bn.cond_entropy[static_cast<size_t>(c)];
                    if (hc <= 0.0) {
                        degenerate = true;
                        break;
                    }
                    exp_log_child += (pc / ph) * std::log(hc);
                }
                double drop = degenerate
                                  ? std::numeric_limits<double>::infinity()
                                  : std::log(bp.cond_entropy[static_cast<size_t>(h)]) - exp_log_child;
                ++rep.checks;
                double slack = drop - bound;
                if (slack > rep.worst_slack) rep.worst_slack = slack;
                if (drop > bound + kSlack) {
                    rep.pass = false;
                    if (rep.witness.empty())
                        rep.witness = history_label(j, static_cast<int>(h), n, base);
                }
            }
        }
    }
    return rep;
}

CheckReport check_pointwise_log_drop(const PosteriorTrace& trace, const InfoSummary& info) {
    CheckReport rep{"pointwise_log_drop", true, -1e9, 0, ""};
    const int K = static_cast<int>(trace.out_sizes.size());
    for (int j = 0; j < K; ++j) {
        if (!info.Tj[static_cast<size_t>(j)].finite()) continue;
        double bound = std::log(info.Tj[static_cast<size_t>(j)].value);
        int base = trace.out_sizes[static_cast<size_t>(j)];
        for (int n = 0; n < trace.n_max; ++n) {
            const BranchPosteriors& bp = trace.states[static_cast<size_t>(n)].branch[static_cast<size_t>(j)];
            const BranchPosteriors& bn =
                trace.states[static_cast<size_t>(n) + 1].branch[static_cast<size_t>(j)];
            for (long h = 0; h < static_cast<long>(bp.hist_prob.size()); ++h) {
                double ph = bp.hist_prob[static_cast<size_t>(h)];
                double hp = bp.cond_entropy[static_cast<size_t>(h)];
                if (ph <= 0.0 || hp <= kZeroEntropy) continue;
                for (int y = 0; y < base; ++y) {
                    long c = h * base + y;
                    if (bn.hist_prob[static_cast<size_t>(c)] <= 0.0) continue;
                    double hc = bn.cond_entropy[static_cast<size_t>(c)];
                    if (hc <= kZeroEntropy) continue;  // both entropies must be positive
                    double drop = std::log(hp) - std::log(hc);
                    ++rep.checks;
                    double slack = drop - bound;
                    if (slack > rep.worst_slack) rep.worst_slack = slack;
                    if (drop > bound + kSlack) {
                        rep.pass = false;
                        if (rep.witness.empty())
                            rep.witness = history_label(j, static_cast<int>(h), n, base) + " y=" +
                                          std::to_string(y);
                    }
                }
            }
        }
    }
    return rep;
}

CheckReport check_clipped_drop(const PosteriorTrace& trace, const InfoSummary& info, double a) {
    CheckReport rep{"clipped_drop", true, -1e9, 0, ""};
    ExtReal phi = varphi_of(info.Tj, a);
    if (!phi.finite()) return rep;  // infinite bound holds trivially
    double bound = phi.value;
    const int K = static_cast<int>(trace.out_sizes.size());
    for (int j = 0; j < K; ++j) {
        int base = trace.out_sizes[static_cast<size_t>(j)];
        for (int n = 0; n < trace.n_max; ++n) {
            const BranchPosteriors& bp = trace.states[static_cast<size_t>(n)].branch[static_cast<size_t>(j)];
            const BranchPosteriors& bn =
                trace.states[static_cast<size_t>(n) + 1].branch[static_cast<size_t>(j)];
            for (long h = 0; h < static_cast<long>(bp.hist_prob.size()); ++h) {
                double ph = bp.hist_prob[static_cast<size_t>(h)];
                double hp = bp.cond_entropy[static_cast<size_t>(h)];
                if (ph <= 0.0 || hp <= kZeroEntropy) continue;
                double clipped = 0.0;
                bool degenerate = false;
                for (int y = 0; y < base; ++y) {
                    long c = h * base + y;
                    double pc = bn.hist_prob[static_cast<size_t>(c)];
                    if (pc <= 0.0) continue;
                    double hc = bn.cond_entropy[static_cast<size_t>(c)];
                    if (hc <= 0.0) {
                        degenerate = true;
                        break;
                    }
                    clipped += (pc / ph) * clip_below(std::log(hp) - std::log(hc), a);
                }
                double lhs = degenerate ? std::numeric_limits<double>::infinity() : clipped;
                ++rep.checks;
                double slack = lhs - bound;
                if (slack > rep.worst_slack) rep.worst_slack = slack;
                if (lhs > bound + kSlack) {
                    rep.pass = false;
                    if (rep.witness.empty())
                        rep.witness = history_label(j, static_cast<int>(h), n, base);
                }
            }
        }
    }
    return rep;
}

CheckReport check_logsum(long trials, uint64_t seed) {
    CheckReport rep{"logsum", true, -1e9, 0, ""};
    RngStream rng(seed);
    const int denom = 12;
    for (long t = 0; t < trials; ++t) {
        int L = 1 + static_cast<int>(rng.next() % 6);
        int N = 1 + static_cast<int>(rng.next() % 6);
        std::vector<double> p(static_cast<size_t>(L)), f(static_cast<size_t>(N));
        std::vector<std::vector<double>> beta(static_cast<size_t>(N),
                                              std::vector<double>(static_cast<size_t>(L)));
        for (double& v : p) v = static_cast<double>(rng.next() % (denom + 1)) / denom;
        for (double& v : f) v = static_cast<double>(rng.next() % (denom + 1)) / denom;
        for (auto& row : beta)
            for (double& v : row) v = static_cast<double>(rng.next() % (denom + 1)) / denom;

        double fsum = std::accumulate(f.begin(), f.end(), 0.0);
        if (fsum <= 0.0) continue;
        bool skip = false;
        double lhs = 0.0;
        for (int l = 0; l < L && !skip; ++l) {
            if (p[static_cast<size_t>(l)] == 0.0) continue;
            double bsum = 0.0;
            for (int i = 0; i < N; ++i) bsum += beta[static_cast<size_t>(i)][static_cast<size_t>(l)];
            if (bsum <= 0.0) {
                skip = true;  // division by zero configuration
                break;
            }
            lhs += p[static_cast<size_t>(l)] * std::log(fsum / bsum);
        }
        if (skip) continue;
        double rhs = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < N; ++i) {
            double s = 0.0;
            bool inf = false, dead = false;
            for (int l = 0; l < L; ++l) {
                if (p[static_cast<size_t>(l)] == 0.0) continue;
                double fi = f[static_cast<size_t>(i)];
                double bil = beta[static_cast<size_t>(i)][static_cast<size_t>(l)];
                if (bil == 0.0 && fi > 0.0) {
                    inf = true;
                    break;
                }
                if (fi == 0.0 && bil == 0.0) {
                    dead = true;  // 0/0 ratio; skip this i
                    break;
                }
                if (fi == 0.0) {
                    s = -std::numeric_limits<double>::infinity();
                    continue;
                }
                s += p[static_cast<size_t>(l)] * std::log(fi / bil);
            }
            if (dead) continue;
            if (inf) {
                rhs = std::numeric_limits<double>::infinity();
                break;
            }
            rhs = std::max(rhs, s);
        }
        ++rep.checks;
        double slack = lhs - rhs;
        if (slack > rep.worst_slack) rep.worst_slack = slack;
        if (lhs > rhs + 1e-12) {
            rep.pass = false;
            if (rep.witness.empty()) rep.witness = "trial " + std::to_string(t);
        }
    }
    return rep;
}

StoppingRule stop_at(int n) {
    return [n](int, const std::vector<int>& hist, const std::vector<double>&, int) {
        return static_cast<int>(hist.size()) >= n;
    };
}

StoppingRule entropy_threshold(double theta) {
    return [theta](int, const std::vector<int>&, const std::vector<double>& posterior, int) {
        return entropy(posterior) <= theta;
    };
}

CheckReport check_fano_stopping(const PosteriorTrace& trace, const StoppingRule& rule, int M) {
    CheckReport rep{"fano_stopping", true, -1e9, 0, ""};
    if (M < 2) throw std::invalid_argument("fano check needs M >= 2");
    const int K = static_cast<int>(trace.out_sizes.size());

    // per branch: first-hit sets, conditional entropy at stop and MAP estimates
    std::vector<std::vector<std::vector<int>>> stop_level(static_cast<size_t>(K));
    std::vector<double> eh(static_cast<size_t>(K), 0.0);
    for (int j = 0; j < K; ++j) {
        int base = trace.out_sizes[static_cast<size_t>(j)];
        auto& levels = stop_level[static_cast<size_t>(j)];
        levels.resize(static_cast<size_t>(trace.n_max) + 1);
        long codes = 1;
        for (int n = 0; n <= trace.n_max; ++n) {
            levels[static_cast<size_t>(n)].assign(static_cast<size_t>(codes), -1);
            codes *= base;
        }
        std::vector<int> hist;
        // walk the branch history tree; stop at first rule hit or n_max
        std::function<void(int, long)> walk = [&](int n, long code) {
            const BranchPosteriors& bp =
                trace.states[static_cast<size_t>(n)].branch[static_cast<size_t>(j)];
            if (bp.hist_prob[static_cast<size_t>(code)] <= 0.0) return;
            const std::vector<double>& post = bp.posterior[static_cast<size_t>(code)];
            bool stop = n == trace.n_max || rule(j, hist, post, n);
            if (stop) {
                int map = 0;
                for (int w = 1; w < M; ++w)
                    if (post[static_cast<size_t>(w)] > post[static_cast<size_t>(map)]) map = w;
                levels[static_cast<size_t>(n)][static_cast<size_t>(code)] = map;
                eh[static_cast<size_t>(j)] += bp.hist_prob[static_cast<size_t>(code)] *
                                              bp.cond_entropy[static_cast<size_t>(code)];
                return;
            }
            int base_j = trace.out_sizes[static_cast<size_t>(j)];
            for (int y = 0; y < base_j; ++y) {
                hist.push_back(y);
                walk(n + 1, code * base_j + y);
                hist.pop_back();
            }
        };
        walk(0, 0);
    }

    // exact union error over full joint paths at n_max
    const std::vector<double>& jm = trace.joint[static_cast<size_t>(trace.n_max)];
    long bprod = 1;
    for (int s : trace.out_sizes) bprod *= s;
    long gcount = 1;
    for (int t = 0; t < trace.n_max; ++t) gcount *= bprod;
    double pe = 0.0;
    for (long g = 0; g < gcount; ++g) {
        // per-branch full history codes and their stop-time estimates
        std::vector<long> bcode(static_cast<size_t>(K), 0);
        long rest = g;
        std::vector<long> digits(static_cast<size_t>(trace.n_max));
        for (int t = trace.n_max - 1; t >= 0; --t) {
            digits[static_cast<size_t>(t)] = rest % bprod;
            rest /= bprod;
        }
        std::vector<int> what(static_cast<size_t>(K), -1);
        for (int j = 0; j < K; ++j) {
            long inner = 1;
            for (int k = j + 1; k < K; ++k) inner *= trace.out_sizes[static_cast<size_t>(k)];
            long code = 0;
            if (stop_level[static_cast<size_t>(j)][0][0] >= 0)
                what[static_cast<size_t>(j)] = stop_level[static_cast<size_t>(j)][0][0];
            for (int t = 0; t < trace.n_max && what[static_cast<size_t>(j)] < 0; ++t) {
                int yj = static_cast<int>((digits[static_cast<size_t>(t)] / inner) %
                                          trace.out_sizes[static_cast<size_t>(j)]);
                code = code * trace.out_sizes[static_cast<size_t>(j)] + yj;
                int est = stop_level[static_cast<size_t>(j)][static_cast<size_t>(t + 1)]
                                    [static_cast<size_t>(code)];
                if (est >= 0) what[static_cast<size_t>(j)] = est;
            }
        }
        for (int w = 0; w < M; ++w) {
            double m = jm[static_cast<size_t>(w) * static_cast<size_t>(gcount) +
                          static_cast<size_t>(g)];
            if (m <= 0.0) continue;
            bool err = false;
            for (int j = 0; j < K; ++j)
                if (what[static_cast<size_t>(j)] != w) err = true;
            if (err) pe += m;
        }
    }

    double pe_c = std::min(pe, static_cast<double>(M - 1) / M);
    double rhs = binary_entropy(pe_c) + pe_c * std::log(static_cast<double>(M - 1));
    for (int j = 0; j < K; ++j) {
        ++rep.checks;
        double slack = eh[static_cast<size_t>(j)] - rhs;
        if (slack > rep.worst_slack) rep.worst_slack = slack;
        if (eh[static_cast<size_t>(j)] > rhs + kSlack) {
            rep.pass = false;
            if (rep.witness.empty())
                rep.witness = "branch " + std::to_string(j + 1) + " E[H]=" +
                              std::to_string(eh[static_cast<size_t>(j)]) +
                              " Pe=" + std::to_string(pe);
        }
    }
    return rep;
}

}  // namespace vlftbc
