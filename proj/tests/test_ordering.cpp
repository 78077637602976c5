#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vlftbc/lp.hpp"
#include "vlftbc/ordering.hpp"

using namespace vlftbc;

namespace {

ChannelMatrix random_stochastic(std::mt19937_64& rng, int nin, int nout, double floor = 0.0) {
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

}  // namespace

TEST_CASE("physically degraded") {
    // cascade X -> Y2 (BSC 0.1) -> Y1 (extra BSC 0.125): Markov by construction
    ChannelMatrix b01 = ChannelMatrix::bsc(0.1);
    ChannelMatrix b0125 = ChannelMatrix::bsc(0.125);
    BroadcastChannel casc({compose(b01, b0125), b01}, cascade_joint({b01, b0125}));
    CHECK(check_physically_degraded(casc) == Verdict::Yes);

    // conditionally independent branches with B_1 > 0: P(y1|x,y2) varies in x
    std::vector<ChannelMatrix> branches{ChannelMatrix::bsc(0.2), ChannelMatrix::bsc(0.1)};
    BroadcastChannel prod(branches, product_joint(branches));
    CHECK(check_physically_degraded(prod) == Verdict::No);

    // K=1 holds vacuously; absent joint is not-applicable
    JointTensor single;
    single.output_sizes = {2};
    single.probs = {0.9, 0.1, 0.1, 0.9};
    CHECK(check_physically_degraded(BroadcastChannel({b01}, single)) == Verdict::Yes);
    CHECK(check_physically_degraded(BroadcastChannel(branches)) == Verdict::NotApplicable);
}

TEST_CASE("stochastically degraded: bsc pair with exact witness") {
    // Y_1 = BSC(0.2) reachable from Y_2 = BSC(0.1) through BSC(1/8)
    BroadcastChannel bc({ChannelMatrix::bsc(0.2), ChannelMatrix::bsc(0.1)});
    StochasticResult r = check_stochastically_degraded(bc);
    REQUIRE(r.verdict == Verdict::Yes);
    REQUIRE(r.witnesses.size() == 1);
    const ChannelMatrix& w = r.witnesses[0];
    CHECK(w(0, 1) == doctest::Approx(0.125).epsilon(1e-6));
    CHECK(w(1, 0) == doctest::Approx(0.125).epsilon(1e-6));
    ChannelMatrix composed = compose(bc.branch(1), w);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            CHECK(std::abs(composed(x, y) - bc.branch(0)(x, y)) <= 1e-7);

    // reversed order: degrading cannot reduce the crossover
    BroadcastChannel rev({ChannelMatrix::bsc(0.1), ChannelMatrix::bsc(0.2)});
    CHECK(check_stochastically_degraded(rev).verdict == Verdict::No);

    // identical branches: identity witness works
    BroadcastChannel ident({ChannelMatrix::bsc(0.1), ChannelMatrix::bsc(0.1)});
    StochasticResult ri = check_stochastically_degraded(ident);
    CHECK(ri.verdict == Verdict::Yes);
    ChannelMatrix ci = compose(ident.branch(1), ri.witnesses[0]);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            CHECK(std::abs(ci(x, y) - ident.branch(0)(x, y)) <= 1e-7);
}

TEST_CASE("simplex feasibility agrees with brute force on random 2x2x2 instances") {
    std::mt19937_64 rng(31);
    int checked = 0;
    while (checked < 60) {
        ChannelMatrix w1 = random_stochastic(rng, 2, 2);
        ChannelMatrix w2 = random_stochastic(rng, 2, 2);
        // brute force: scan the two free witness parameters on a fine grid
        double best = 1e9;
        const int g = 512;
        for (int ia = 0; ia <= g; ++ia)
            for (int ib = 0; ib <= g; ++ib) {
                double a = static_cast<double>(ia) / g, b = static_cast<double>(ib) / g;
                double dev = 0.0;
                for (int x = 0; x < 2; ++x) {
                    double c0 = w2(x, 0) * a + w2(x, 1) * b;
                    dev = std::max(dev, std::abs(c0 - w1(x, 0)));
                }
                best = std::min(best, dev);
            }
        // skip razor-margin instances the coarse grid cannot adjudicate
        if (best > 1e-4 && best < 5e-3) continue;
        ++checked;
        StochasticResult r = check_stochastically_degraded(BroadcastChannel({w1, w2}));
        if (best <= 1e-4) CHECK(r.verdict == Verdict::Yes);
        else CHECK(r.verdict == Verdict::No);
    }
}

TEST_CASE("less capable verdicts") {
    // degradation implies less capable
    BroadcastChannel deg({ChannelMatrix::bsc(0.2), ChannelMatrix::bsc(0.1)});
    OrderingReport rep = classify(deg);
    CHECK(rep.less_capable.verdict == Verdict::Yes);

    // Y_1 noiseless, Y_2 constant: uniform input is a counterexample
    ChannelMatrix constant(std::vector<std::vector<double>>{{0.5, 0.5}, {0.5, 0.5}});
    BroadcastChannel adversarial({ChannelMatrix::identity(2), constant});
    LessCapableResult lc = check_less_capable(adversarial, 8, 1e-7);
    CHECK(lc.verdict == Verdict::No);
    REQUIRE(lc.counterexample.has_value());
    double gap = mutual_information(*lc.counterexample, adversarial.branch(1)) -
                 mutual_information(*lc.counterexample, adversarial.branch(0));
    CHECK(gap < -1e-7 / 2);

    // identical branches
    BroadcastChannel ident({ChannelMatrix::bsc(0.1), ChannelMatrix::bsc(0.1)});
    CHECK(check_less_capable(ident, 4, 1e-7).verdict == Verdict::Yes);

    // K = 1 is vacuously less capable
    CHECK(check_less_capable(BroadcastChannel({ChannelMatrix::bsc(0.1)}), 4, 1e-7).verdict ==
          Verdict::Yes);
}

TEST_CASE("less capable certified yes on a non-degraded pair (binary input)") {
    // branch 1 strictly outside the degraded cone of BSC(0.1) yet weaker at
    // every input law (gap stays positive in the interior)
    ChannelMatrix weak(std::vector<std::vector<double>>{{0.95, 0.05}, {0.5, 0.5}});
    BroadcastChannel bc({weak, ChannelMatrix::bsc(0.1)});
    CHECK(check_stochastically_degraded(bc).verdict == Verdict::No);
    LessCapableResult lc = check_less_capable(bc, 8, 1e-7);
    CHECK(lc.verdict == Verdict::Yes);
}

TEST_CASE("implication chain on random channels") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 60; ++t) {
        BroadcastChannel bc = [&] {
            int kind = static_cast<int>(rng() % 3);
            if (kind == 0) {
                // genuine cascade: physically degraded by construction
                ChannelMatrix stage1 = random_stochastic(rng, 2, 2, 0.05);
                ChannelMatrix stage2 = random_stochastic(rng, 2, 2, 0.05);
                return BroadcastChannel({compose(stage1, stage2), stage1},
                                        cascade_joint({stage1, stage2}));
            }
            if (kind == 1) {
                std::vector<ChannelMatrix> branches{random_stochastic(rng, 2, 2, 0.05),
                                                    random_stochastic(rng, 2, 2, 0.05)};
                return BroadcastChannel(branches, product_joint(branches));
            }
            return BroadcastChannel({random_stochastic(rng, 2, 3, 0.05),
                                     random_stochastic(rng, 2, 2, 0.05)});
        }();
        OrderingReport rep = classify(bc, 6);
        if (rep.physically_degraded == Verdict::Yes)
            CHECK(rep.stochastic.verdict == Verdict::Yes);
        if (rep.stochastic.verdict == Verdict::Yes) {
            CHECK(rep.less_capable.verdict != Verdict::No);
            for (size_t j = 0; j < rep.stochastic.witnesses.size(); ++j) {
                ChannelMatrix c = compose(bc.branch(static_cast<int>(j) + 1),
                                          rep.stochastic.witnesses[j]);
                for (int x = 0; x < bc.input_size(); ++x)
                    for (int y = 0; y < bc.branch(0).output_size(); ++y)
                        CHECK(std::abs(c(x, y) - bc.branch(0)(x, y)) <= 1e-7);
            }
        }
        if (rep.less_capable.verdict == Verdict::No) {
            REQUIRE(rep.less_capable.counterexample.has_value());
            const Distribution& p = *rep.less_capable.counterexample;
            double others = mutual_information(p, bc.branch(1));
            double gap = others - mutual_information(p, bc.branch(0));
            CHECK(gap < -1e-7 / 2);
        }
    }
}

TEST_CASE("phase-1 simplex basics") {
    // x1 + x2 = 1, x1 - x2 = 0 -> x = (1/2, 1/2)
    FeasibilityResult r = phase1_feasible({{1, 1}, {1, -1}}, {1, 0});
    CHECK(r.feasible);
    CHECK(r.x[0] == doctest::Approx(0.5));
    CHECK(r.x[1] == doctest::Approx(0.5));
    // x1 + x2 = -1 with x >= 0: infeasible
    FeasibilityResult inf = phase1_feasible({{1, 1}}, {-1});
    CHECK_FALSE(inf.feasible);
    CHECK(inf.objective > 0.5);
}
