// Acceptance suite: one labelled pass/fail line per criterion, nonzero exit
// when any criterion fails. Tolerances are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vlftbc/bounds.hpp"
#include "vlftbc/converse.hpp"
#include "vlftbc/serialize.hpp"
#include "vlftbc/sim.hpp"

using namespace vlftbc;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

BroadcastChannel bsc_pair(double p1, double p2) {
    return BroadcastChannel({ChannelMatrix::bsc(p1), ChannelMatrix::bsc(p2)});
}

ChannelMatrix random_stochastic(std::mt19937_64& rng, int nin, int nout, double floor) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> rows(static_cast<size_t>(nin),
                                          std::vector<double>(static_cast<size_t>(nout)));
    for (auto& r : rows) {
        double s = 0.0;
        for (double& v : r) {
            v = floor + u(rng);
            s += v;
        }
        for (double& v : r) v /= s;
    }
    return ChannelMatrix(rows);
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    bool pass = true;
    std::ostringstream os;
    os << "BSC capacities:";
    for (double p : {0.05, 0.1, 0.2}) {
        double t0 = now_seconds();
        Capacity c = compute_Cj(BroadcastChannel({ChannelMatrix::bsc(p)}), 0, 1e-6);
        double dt = now_seconds() - t0;
        double truth = std::log(2.0) - binary_entropy(p);
        double err = std::abs(c.value - truth);
        if (err > 1e-6 || dt > 1.0) pass = false;
        os << " p=" << p << " err=" << err << " (" << dt << "s)";
    }
    report(1, pass, os.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
    bool pass = true;
    std::ostringstream os;
    for (double p : {0.05, 0.1, 0.2, 0.25}) {
        BroadcastChannel bc({ChannelMatrix::bsc(p)});
        double bj = compute_Bj(bc, 0).value.value;
        double truth = (1 - 2 * p) * std::log((1 - p) / p);
        if (std::abs(bj - truth) > 1e-9) pass = false;
        ExtReal tj = compute_Tj(bc, 0);
        if (tj.infinite || tj.value != (1.0 - p) / p) pass = false;
    }
    os << "B_j within 1e-9 of (1-2p)ln((1-p)/p), T_j exact";
    report(2, pass, os.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
    BroadcastChannel bc = bsc_pair(0.1, 0.2);
    Capacity c = compute_C(bc, 1e-6);
    double truth = std::log(2.0) - binary_entropy(0.2);
    double grid_best = 0.0;
    for (int i = 0; i <= 4096; ++i) {
        double q = static_cast<double>(i) / 4096;
        Distribution p({1 - q, q});
        grid_best = std::max(grid_best, std::min(mutual_information(p, bc.branch(0)),
                                                 mutual_information(p, bc.branch(1))));
    }
    bool pass = std::abs(c.value - truth) <= 1e-5 && std::abs(c.value - grid_best) <= 1e-5;
    std::ostringstream os;
    os << "C=" << c.value << " closed-form err=" << std::abs(c.value - truth)
       << " grid err=" << std::abs(c.value - grid_best);
    report(3, pass, os.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    bool pass = true;
    std::ostringstream os;

    BroadcastChannel deg = bsc_pair(0.2, 0.1);
    StochasticResult sr = check_stochastically_degraded(deg);
    if (sr.verdict != Verdict::Yes || sr.witnesses.empty()) pass = false;
    else {
        double q = sr.witnesses[0](0, 1);
        if (std::abs(q - 0.125) > 1e-6) pass = false;
        os << "witness crossover " << q << "; ";
    }
    if (check_stochastically_degraded(bsc_pair(0.1, 0.2)).verdict != Verdict::No) pass = false;

    ChannelMatrix b01 = ChannelMatrix::bsc(0.1);
    ChannelMatrix b0125 = ChannelMatrix::bsc(0.125);
    BroadcastChannel casc({compose(b01, b0125), b01}, cascade_joint({b01, b0125}));
    if (check_physically_degraded(casc) != Verdict::Yes) pass = false;

    // implication chain over bundled channels and 100 random ones
    const std::string dir = VLFTBC_CHANNEL_DIR;
    std::vector<BroadcastChannel> pool;
    for (const char* name : {"bsc_pair", "identical_pair", "cascade_joint", "asym3"})
        pool.push_back(load_channel(dir + "/" + name + ".json"));
    std::mt19937_64 rng(404);
    for (int t = 0; t < 100; ++t) {
        int kind = t % 3;
        if (kind == 0) {
            ChannelMatrix s1 = random_stochastic(rng, 2, 2, 0.05);
            ChannelMatrix s2 = random_stochastic(rng, 2, 2, 0.05);
            pool.emplace_back(
                BroadcastChannel({compose(s1, s2), s1}, cascade_joint({s1, s2})));
        } else if (kind == 1) {
            std::vector<ChannelMatrix> branches{random_stochastic(rng, 2, 2, 0.05),
                                                random_stochastic(rng, 2, 2, 0.05)};
            pool.emplace_back(BroadcastChannel(branches, product_joint(branches)));
        } else {
            int K = 2 + static_cast<int>(rng() % 2);
            std::vector<ChannelMatrix> branches;
            for (int j = 0; j < K; ++j)
                branches.push_back(random_stochastic(rng, 2, 2 + static_cast<int>(rng() % 2), 0.05));
            pool.emplace_back(BroadcastChannel(branches));
        }
    }
    int chain_checked = 0;
    for (const auto& bc : pool) {
        OrderingReport rep = classify(bc, 6);
        ++chain_checked;
        if (rep.physically_degraded == Verdict::Yes && rep.stochastic.verdict == Verdict::No)
            pass = false;
        if (rep.stochastic.verdict == Verdict::Yes && rep.less_capable.verdict == Verdict::No)
            pass = false;
    }
    os << "implication chain on " << chain_checked << " channels";
    report(4, pass, os.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
    bool pass = true;
    std::mt19937_64 rng(505);
    // bound ordering on random positive-entry channels
    for (int t = 0; t < 100; ++t) {
        int K = 1 + static_cast<int>(rng() % 3);
        int nx = 2 + static_cast<int>(rng() % 2);
        std::vector<ChannelMatrix> branches;
        for (int j = 0; j < K; ++j)
            branches.push_back(
                random_stochastic(rng, nx, 2 + static_cast<int>(rng() % 2), 0.03));
        InfoSummary s = summarize(BroadcastChannel(branches), 1e-6);
        for (int i = 0; i < 11; ++i) {
            double R = 0.99 * s.C * i / 10;
            if (lower_bound(s, R) > upper_bound(s, R) + 1e-12) pass = false;
        }
    }
    // tightness on certified degraded channels
    int certified = 0;
    double worst_gap = 0.0;
    for (int t = 0; t < 20; ++t) {
        ChannelMatrix strong = random_stochastic(rng, 2, 2 + static_cast<int>(rng() % 2), 0.05);
        ChannelMatrix post =
            random_stochastic(rng, strong.output_size(), 2 + static_cast<int>(rng() % 2), 0.05);
        BroadcastChannel bc({compose(strong, post), strong});
        OrderingReport rep = classify(bc);
        if (rep.stochastic.verdict != Verdict::Yes) continue;
        ++certified;
        InfoSummary s = summarize(bc, 1e-8);
        for (int i = 0; i < 11; ++i) {
            double R = 0.99 * s.Cj[0] * i / 10;
            if (R >= s.C) continue;
            double gap = std::abs(lower_bound(s, R) - upper_bound(s, R));
            worst_gap = std::max(worst_gap, gap);
            if (gap > 2e-5) pass = false;
        }
    }
    if (certified < 15) pass = false;
    std::ostringstream os;
    os << "ordering on 100 random channels; " << certified
       << " degraded instances, worst |lower-upper| = " << worst_gap;
    report(5, pass, os.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
    bool pass = true;
    std::ostringstream os;
    RngStream rng(606);
    for (auto [q, L] : std::vector<std::pair<double, double>>{{0.5, 10}, {0.9, 7}, {0.1, 100}}) {
        const long n = 1000000;
        std::vector<double> taus(static_cast<size_t>(n));
        double sum = 0.0;
        for (long i = 0; i < n; ++i) {
            long blocks = 1;
            while (rng.uniform01() < q) ++blocks;
            taus[static_cast<size_t>(i)] = blocks * L;
            sum += taus[static_cast<size_t>(i)];
        }
        double mean = sum / n;
        double var = 0.0, m4 = 0.0;
        for (double t : taus) {
            double d = t - mean;
            var += d * d;
            m4 += d * d * d * d;
        }
        var /= (n - 1);
        m4 /= n;
        auto [em, ev] = geometric_stats(q, L);
        double se_mean = std::sqrt(ev / n);
        double se_var = std::sqrt(std::max(0.0, m4 - var * var) / n);
        if (std::abs(mean - em) > 3 * se_mean) pass = false;
        if (std::abs(var - ev) > 3 * se_var) pass = false;
        os << "(q=" << q << ",L=" << L << ") dmean=" << std::abs(mean - em) / se_mean
           << "se dvar=" << std::abs(var - ev) / se_var << "se; ";
    }
    report(6, pass, os.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
    // Stated thresholds pinned as written. The block-repeat probability of the
    // relative-delta typicality rule at these lengths makes E[max tau] exceed
    // L + 5 sqrt(L); the run below reports the honest measurement.
    bool pass = true;
    std::ostringstream os;
    double t0 = now_seconds();
    BroadcastChannel bc = bsc_pair(0.1, 0.1);
    InfoSummary info = summarize(bc, 1e-6);
    for (int L : {150, 300}) {
        SchemeConfig cfg;
        cfg.R = 0.5 * info.C;
        cfg.L = L;
        cfg.delta = 0.3;
        cfg.M = 64;  // ceil(e^{RL}) is far beyond any storable codebook
        cfg.trials = 10000;
        cfg.seed = 707;
        cfg.max_blocks = 64;
        SimResult r = estimate(bc, info, cfg);
        double dev = std::abs(r.mean_tau_max - L);
        double limit = 5.0 * std::sqrt(static_cast<double>(L));
        os << "L=" << L << " mean_tau_max=" << r.mean_tau_max << " |dev|=" << dev
           << " allowed=" << limit << "; ";
        if (dev > limit) pass = false;
    }
    double dt = now_seconds() - t0;
    os << "runtime " << dt << "s";
    if (dt > 120.0) pass = false;
    report(7, pass, os.str());
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
    bool pass = true;
    std::ostringstream os;
    BroadcastChannel bc = bsc_pair(0.1, 0.1);
    InfoSummary info = summarize(bc, 1e-6);
    double R = 0.5 * info.C;
    std::vector<SimResult> runs;
    for (int L : {100, 200, 400}) {
        SchemeConfig cfg;
        cfg.R = R;
        cfg.L = L;
        cfg.delta = 0.3;
        cfg.M = 64;
        cfg.trials = 10000;
        cfg.seed = 808;
        cfg.max_blocks = 4;  // truncation dominates the measured error
        runs.push_back(estimate(bc, info, cfg));
    }
    for (size_t i = 0; i + 1 < runs.size(); ++i)
        if (!(runs[i].pe_hat > runs[i + 1].pe_hat)) pass = false;
    // 95% CI separation between the first and last rung
    if (!(runs[0].pe_ci_lo > runs[2].pe_ci_hi)) pass = false;

    double ub = upper_bound(info, R);
    for (const auto& r : runs) {
        if (!r.empirical_exponent) continue;
        if (!(*r.empirical_exponent > 0.0)) pass = false;
        if (*r.empirical_exponent > ub + 0.2) pass = false;
    }
    if (!runs[0].empirical_exponent) pass = false;  // L=100 must register errors
    os << "pe_hat = " << runs[0].pe_hat << " > " << runs[1].pe_hat << " > " << runs[2].pe_hat
       << "; exponent(L=100) = "
       << (runs[0].empirical_exponent ? *runs[0].empirical_exponent : -1.0)
       << " vs bound " << ub + 0.2;
    report(8, pass, os.str());
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
    bool pass = true;
    double t0 = now_seconds();
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long instances = 0;
    double worst = -1e9;
    for (int t = 0; t < 100; ++t) {
        int nx = 2 + static_cast<int>(rng() % 2);
        int K = 1 + static_cast<int>(rng() % 2);
        std::vector<ChannelMatrix> branches;
        for (int j = 0; j < K; ++j)
            branches.push_back(
                random_stochastic(rng, nx, 2 + static_cast<int>(rng() % 2), 0.02));
        BroadcastChannel bc{branches};
        int M = 2 + static_cast<int>(rng() % 3);
        int nmax = 1 + static_cast<int>(rng() % 3);
        InfoSummary info = summarize(bc, 1e-9);
        std::vector<EncoderPolicy> pols{repetition_policy(nx), greedy_policy(nx),
                                        random_policy(nx, rng())};
        for (const auto& pol : pols) {
            PosteriorTrace tr = enumerate_posteriors(bc, pol, M, nmax);
            for (const CheckReport& r :
                 {check_entropy_drop(tr, info), check_log_drop(tr, info), check_pointwise_log_drop(tr, info),
                  check_clipped_drop(tr, info, 0.0), check_clipped_drop(tr, info, 0.5),
                  check_clipped_drop(tr, info, 2.0),
                  check_fano_stopping(tr, stop_at(std::max(0, nmax - 1)), M),
                  check_fano_stopping(tr, entropy_threshold(0.3), M)}) {
                if (!r.pass) pass = false;
                worst = std::max(worst, r.worst_slack);
            }
        }
        ++instances;
    }
    CheckReport ls = check_logsum(10000, 909);
    if (!ls.pass) pass = false;
    double dt = now_seconds() - t0;
    if (dt > 60.0) pass = false;
    std::ostringstream os;
    os << instances << " instances x 3 policies, worst slack " << worst << ", logsum "
       << (ls.pass ? "ok" : "violated") << ", runtime " << dt << "s";
    report(9, pass, os.str());
}

// --------------------------------------------------------------- criterion 10
std::string run_command(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

void criterion10() {
    const std::string cli = VLFTBC_CLI_PATH;
    const std::string base = cli + " simulate " + VLFTBC_CHANNEL_DIR +
                             "/identical_pair.json --R 0.18 --L 60 --M 16 --trials 500 --seed 9";
    std::string a = run_command("VLFTBC_THREADS=1 " + base);
    std::string b = run_command("VLFTBC_THREADS=8 " + base);
    std::string c = run_command("VLFTBC_THREADS=8 " + base);
    bool pass = !a.empty() && a == b && b == c;
    std::ostringstream os;
    os << "byte-identical JSON over repeated runs and worker counts 1/8 (" << a.size()
       << " bytes)";
    report(10, pass, os.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
