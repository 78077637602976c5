#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vlftbc/converse.hpp"

using namespace vlftbc;

namespace {

BroadcastChannel random_channel(std::mt19937_64& rng, int max_x, int max_y, int max_k,
                                double floor) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int nx = 2 + static_cast<int>(rng() % static_cast<uint64_t>(max_x - 1));
    int K = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_k));
    std::vector<ChannelMatrix> branches;
    for (int j = 0; j < K; ++j) {
        int ny = 2 + static_cast<int>(rng() % static_cast<uint64_t>(max_y - 1));
        std::vector<std::vector<double>> rows(static_cast<size_t>(nx),
                                              std::vector<double>(static_cast<size_t>(ny)));
        for (auto& r : rows) {
            double s = 0.0;
            for (double& v : r) {
                v = floor + u(rng);
                s += v;
            }
            for (double& v : r) v /= s;
        }
        branches.emplace_back(rows);
    }
    return BroadcastChannel(branches);
}

}  // namespace

TEST_CASE("posterior enumeration basics") {
    BroadcastChannel bc({ChannelMatrix::bsc(0.1)});
    PosteriorTrace t = enumerate_posteriors(bc, repetition_policy(2), 2, 2);

    // n = 0: uniform prior, entropy ln M
    CHECK(t.states[0].branch[0].cond_entropy[0] == doctest::Approx(std::log(2.0)));
    CHECK(t.states[0].branch[0].posterior[0][0] == doctest::Approx(0.5));

    // n = 1 with repetition: observing y matching the codeword gives (0.9, 0.1)
    const BranchPosteriors& b1 = t.states[1].branch[0];
    CHECK(b1.posterior[0][0] == doctest::Approx(0.9));
    CHECK(b1.posterior[0][1] == doctest::Approx(0.1));
    CHECK(b1.posterior[1][0] == doctest::Approx(0.1));
    CHECK(b1.cond_entropy[0] == doctest::Approx(binary_entropy(0.1)));
    CHECK(b1.hist_prob[0] == doctest::Approx(0.5));

    // identical-rows channel: posterior stays uniform at every history
    ChannelMatrix blind(std::vector<std::vector<double>>{{0.6, 0.4}, {0.6, 0.4}});
    PosteriorTrace tb = enumerate_posteriors(BroadcastChannel({blind}),
                                             repetition_policy(2), 3, 2);
    for (const auto& st : tb.states)
        for (size_t h = 0; h < st.branch[0].hist_prob.size(); ++h)
            if (st.branch[0].hist_prob[h] > 0)
                CHECK(st.branch[0].cond_entropy[h] == doctest::Approx(std::log(3.0)));

    // state cap triggers before allocation
    CHECK_THROWS_AS(enumerate_posteriors(bc, repetition_policy(2), 4, 30), std::length_error);
}

TEST_CASE("posteriors form a martingale (chain rule)") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        BroadcastChannel bc = random_channel(rng, 3, 3, 2, 0.02);
        int M = 2 + static_cast<int>(rng() % 3);
        PosteriorTrace tr = enumerate_posteriors(bc, random_policy(bc.input_size(), rng()), M, 2);
        for (int n = 0; n < 2; ++n)
            for (int j = 0; j < bc.receivers(); ++j) {
                const BranchPosteriors& bp = tr.states[static_cast<size_t>(n)].branch[static_cast<size_t>(j)];
                const BranchPosteriors& bn = tr.states[static_cast<size_t>(n) + 1].branch[static_cast<size_t>(j)];
                int base = bc.branch(j).output_size();
                for (size_t h = 0; h < bp.hist_prob.size(); ++h) {
                    if (bp.hist_prob[h] <= 0) continue;
                    for (int w = 0; w < M; ++w) {
                        double mixed = 0.0;
                        for (int y = 0; y < base; ++y) {
                            size_t c = h * static_cast<size_t>(base) + static_cast<size_t>(y);
                            if (bn.hist_prob[c] <= 0) continue;
                            mixed += (bn.hist_prob[c] / bp.hist_prob[h]) *
                                     bn.posterior[c][static_cast<size_t>(w)];
                        }
                        CHECK(mixed ==
                              doctest::Approx(bp.posterior[h][static_cast<size_t>(w)]).epsilon(1e-10));
                    }
                }
            }
    }
}

TEST_CASE("entropy drop: expected entropy drop vs branch capacity") {
    // identical rows: zero drop against zero capacity
    ChannelMatrix blind(std::vector<std::vector<double>>{{0.6, 0.4}, {0.6, 0.4}});
    BroadcastChannel bb({blind});
    InfoSummary ib = summarize(bb, 1e-9);
    PosteriorTrace tb = enumerate_posteriors(bb, repetition_policy(2), 2, 2);
    CheckReport rb = check_entropy_drop(tb, ib);
    CHECK(rb.pass);

    // noiseless branch, M=2, n=0: the drop attains C_j = ln 2 exactly
    BroadcastChannel noiseless({ChannelMatrix::identity(2)});
    InfoSummary in = summarize(noiseless, 1e-9);
    PosteriorTrace tn = enumerate_posteriors(noiseless, repetition_policy(2), 2, 1);
    CheckReport rn = check_entropy_drop(tn, in);
    CHECK(rn.pass);
    CHECK(rn.worst_slack == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("log drop: log-entropy drop vs B_j on a hand instance") {
    BroadcastChannel bc({ChannelMatrix::bsc(0.1)});
    InfoSummary info = summarize(bc, 1e-9);
    PosteriorTrace t = enumerate_posteriors(bc, repetition_policy(2), 2, 1);
    CheckReport r = check_log_drop(t, info);
    CHECK(r.pass);
    // oracle: at n=0 the drop is ln(ln 2) - ln h(0.1), far below 0.8 ln 9
    double drop = std::log(std::log(2.0)) - std::log(binary_entropy(0.1));
    CHECK(r.worst_slack == doctest::Approx(drop - 0.8 * std::log(9.0)).epsilon(1e-9));
}

TEST_CASE("pointwise log drop: pointwise drop vs ln T_j") {
    ChannelMatrix blind(std::vector<std::vector<double>>{{0.6, 0.4}, {0.6, 0.4}});
    BroadcastChannel bb({blind});
    PosteriorTrace tb = enumerate_posteriors(bb, repetition_policy(2), 2, 2);
    CheckReport rb = check_pointwise_log_drop(tb, summarize(bb, 1e-9));
    CHECK(rb.pass);
    CHECK(rb.worst_slack <= 1e-12);  // T_j = 1: no pointwise increase possible

    BroadcastChannel bc({ChannelMatrix::bsc(0.1)});
    PosteriorTrace t = enumerate_posteriors(bc, repetition_policy(2), 2, 3);
    CheckReport r = check_pointwise_log_drop(t, summarize(bc, 1e-9));
    CHECK(r.pass);
}

TEST_CASE("clipped drop: clipped drops vs varphi") {
    BroadcastChannel bc({ChannelMatrix::bsc(0.1)});
    InfoSummary info = summarize(bc, 1e-9);
    PosteriorTrace t = enumerate_posteriors(bc, repetition_policy(2), 2, 3);
    // a = 0 reduces to the pointwise bound taken in expectation
    CHECK(check_clipped_drop(t, info, 0.0).pass);
    // a above ln T_max: varphi = 0 and no drop may pass the clip
    CHECK(check_clipped_drop(t, info, std::log(9.0) + 0.01).pass);
    CHECK(check_clipped_drop(t, info, 0.5).pass);
}

TEST_CASE("drop-inequality checks pass over seeded random instances and policies") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 40; ++t) {
        BroadcastChannel bc = random_channel(rng, 3, 3, 2, 0.02);
        int M = 2 + static_cast<int>(rng() % 3);
        int nmax = 1 + static_cast<int>(rng() % 3);
        InfoSummary info = summarize(bc, 1e-9);
        std::vector<EncoderPolicy> policies{repetition_policy(bc.input_size()),
                                            cycle_policy(bc.input_size()),
                                            greedy_policy(bc.input_size()),
                                            random_policy(bc.input_size(), rng())};
        for (const auto& pol : policies) {
            PosteriorTrace tr = enumerate_posteriors(bc, pol, M, nmax);
            CHECK(check_entropy_drop(tr, info).pass);
            CHECK(check_log_drop(tr, info).pass);
            CheckReport l7 = check_pointwise_log_drop(tr, info);
            CHECK(l7.pass);
            for (double a : {0.0, 0.5, 2.0}) CHECK(check_clipped_drop(tr, info, a).pass);
            // the pointwise bound implies the clipped bound with varphi
            ExtReal phi = varphi_of(info.Tj, 0.0);
            if (phi.finite()) CHECK(l7.worst_slack <= 1e-9);
        }
    }
}

TEST_CASE("log-sum inequality") {
    CheckReport r = check_logsum(10000, 7);
    CHECK(r.pass);
    CHECK(r.worst_slack <= 1e-12);
    // single-column draws attain equality, so the supremum slack is exactly 0
    CHECK(r.worst_slack >= -1e-12);
    CHECK(r.checks > 5000);  // plenty of non-skipped configurations
}

TEST_CASE("fano at stopping times") {
    // stop at n=0 with M=2: uniform guess, equality h(1/2) = ln 2
    BroadcastChannel bc({ChannelMatrix::bsc(0.1)});
    PosteriorTrace t0 = enumerate_posteriors(bc, repetition_policy(2), 2, 1);
    CheckReport r0 = check_fano_stopping(t0, stop_at(0), 2);
    CHECK(r0.pass);
    CHECK(r0.worst_slack == doctest::Approx(0.0).epsilon(1e-9));

    // noiseless, stop at n=1: both sides vanish
    BroadcastChannel noiseless({ChannelMatrix::identity(2)});
    PosteriorTrace tn = enumerate_posteriors(noiseless, repetition_policy(2), 2, 1);
    CheckReport rn = check_fano_stopping(tn, stop_at(1), 2);
    CHECK(rn.pass);
    CHECK(rn.worst_slack == doctest::Approx(0.0).epsilon(1e-9));

    // BSC(0.1), M=2, stop at n=2 with MAP decisions
    PosteriorTrace t2 = enumerate_posteriors(bc, repetition_policy(2), 2, 2);
    CHECK(check_fano_stopping(t2, stop_at(2), 2).pass);

    // entropy-threshold rules across random instances
    std::mt19937_64 rng(43);
    for (int t = 0; t < 25; ++t) {
        BroadcastChannel rc = random_channel(rng, 3, 3, 2, 0.02);
        int M = 2 + static_cast<int>(rng() % 3);
        PosteriorTrace tr =
            enumerate_posteriors(rc, random_policy(rc.input_size(), rng()), M, 3);
        CHECK(check_fano_stopping(tr, stop_at(2), M).pass);
        CHECK(check_fano_stopping(tr, entropy_threshold(0.4), M).pass);
    }
}
