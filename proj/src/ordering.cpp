#include "vlftbc/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "vlftbc/lp.hpp"

namespace vlftbc {

namespace {

constexpr double kMarkovTol = 1e-9;
constexpr double kWitnessTol = 1e-7;
constexpr double kMarginalBandLo = 1e-9;  // phase-1 objective in (lo, hi) -> indeterminate
constexpr double kMarginalBandHi = 1e-6;

std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    for (double& x : v) x = std::max(0.0, x - theta);
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= s;
    return v;
}

// min_{j>=2} I(P,W_j) - I(P,W_1); negative values refute "less capable"
double capability_gap(const BroadcastChannel& bc, const Distribution& p) {
    double others = mutual_information(p, bc.branch(1));
    for (int j = 2; j < bc.receivers(); ++j)
        others = std::min(others, mutual_information(p, bc.branch(j)));
    return others - mutual_information(p, bc.branch(0));
}

// gradient of the gap at p (active weaker-branch gradient minus branch-1 gradient)
std::vector<double> gap_gradient(const BroadcastChannel& bc, const Distribution& p) {
    int jstar = 1;
    double best = mutual_information(p, bc.branch(1));
    for (int j = 2; j < bc.receivers(); ++j) {
        double v = mutual_information(p, bc.branch(j));
        if (v < best) {
            best = v;
            jstar = j;
        }
    }
    const int nx = bc.input_size();
    std::vector<double> g(static_cast<size_t>(nx), 0.0);
    for (int pm = 0; pm < 2; ++pm) {
        int j = pm == 0 ? jstar : 0;
        double sign = pm == 0 ? 1.0 : -1.0;
        Distribution q = output_distribution(p, bc.branch(j));
        const ChannelMatrix& w = bc.branch(j);
        for (int x = 0; x < nx; ++x) {
            double dx = 0.0;
            for (int y = 0; y < w.output_size(); ++y)
                if (w(x, y) > 0.0) dx += w(x, y) * std::log(w(x, y) / q[y]);
            g[static_cast<size_t>(x)] += sign * dx;
        }
    }
    return g;
}

Distribution descend_gap(const BroadcastChannel& bc, Distribution p, int steps) {
    const int nx = bc.input_size();
    double cur = capability_gap(bc, p);
    for (int t = 1; t <= steps; ++t) {
        std::vector<double> g = gap_gradient(bc, p);
        double step = 0.5;
        for (int bt = 0; bt < 20; ++bt) {
            std::vector<double> cand = p.probs();
            for (int x = 0; x < nx; ++x) cand[static_cast<size_t>(x)] -= step * g[static_cast<size_t>(x)];
            Distribution pd(project_simplex(std::move(cand)));
            double v = capability_gap(bc, pd);
            if (v < cur - 1e-15) {
                p = pd;
                cur = v;
                break;
            }
            step *= 0.5;
        }
        if (step < 1e-7) break;
    }
    return p;
}

void enumerate_grid(int dims, int denom, std::vector<int>& point, int pos, int left,
                    const std::function<void(const std::vector<int>&)>& fn) {
    if (pos == dims - 1) {
        point[static_cast<size_t>(pos)] = left;
        fn(point);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        point[static_cast<size_t>(pos)] = k;
        enumerate_grid(dims, denom, point, pos + 1, left - k, fn);
    }
}

// curvature bound for I(P, W) along the binary-input segment: |I''| <=
// sum_y (w1(y)-w0(y))^2 / min(w0(y), w1(y)) whenever both rows are positive
double binary_curvature(const ChannelMatrix& w) {
    double k = 0.0;
    for (int y = 0; y < w.output_size(); ++y) {
        double d = w(1, y) - w(0, y);
        double m = std::min(w(0, y), w(1, y));
        if (d != 0.0) {
            if (m <= 0.0) return std::numeric_limits<double>::infinity();
            k += d * d / m;
        }
    }
    return k;
}

double binary_gap(const BroadcastChannel& bc, double q) {
    return capability_gap(bc, Distribution({1.0 - q, q}));
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::NotApplicable: return "not_applicable";
        case Verdict::Indeterminate: return "indeterminate";
        case Verdict::Undetermined: return "undetermined";
    }
    return "?";
}

Verdict check_physically_degraded(const BroadcastChannel& bc) {
    if (!bc.has_joint()) return Verdict::NotApplicable;
    if (bc.receivers() == 1) return Verdict::Yes;
    const JointTensor& t = bc.joint();
    const int nx = bc.input_size();
    const int block = t.block_size();
    const int ny1 = t.output_sizes[0];
    for (int j = 1; j < bc.receivers(); ++j) {
        const int nyj = t.output_sizes[static_cast<size_t>(j)];
        int inner = 1;
        for (size_t k = static_cast<size_t>(j) + 1; k < t.output_sizes.size(); ++k)
            inner *= t.output_sizes[k];
        int inner1 = block / ny1;  // stride structure: y_1 slowest
        // pairwise law P(y_1, y_j | x)
        std::vector<double> pair(static_cast<size_t>(nx * ny1 * nyj), 0.0);
        for (int x = 0; x < nx; ++x)
            for (int i = 0; i < block; ++i) {
                int y1 = i / inner1;
                int yj = (i / inner) % nyj;
                pair[static_cast<size_t>((x * ny1 + y1) * nyj + yj)] +=
                    t.probs[static_cast<size_t>(x * block + i)];
            }
        for (int yj = 0; yj < nyj; ++yj) {
            // P(y_1 | x, y_j) must not depend on x wherever defined
            std::vector<double> ref;
            for (int x = 0; x < nx; ++x) {
                double pyj = 0.0;
                for (int y1 = 0; y1 < ny1; ++y1)
                    pyj += pair[static_cast<size_t>((x * ny1 + y1) * nyj + yj)];
                if (pyj <= 0.0) continue;
                std::vector<double> cond(static_cast<size_t>(ny1));
                for (int y1 = 0; y1 < ny1; ++y1)
                    cond[static_cast<size_t>(y1)] =
                        pair[static_cast<size_t>((x * ny1 + y1) * nyj + yj)] / pyj;
                if (ref.empty()) {
                    ref = cond;
                } else {
                    for (int y1 = 0; y1 < ny1; ++y1)
                        if (std::abs(cond[static_cast<size_t>(y1)] - ref[static_cast<size_t>(y1)]) >
                            kMarkovTol)
                            return Verdict::No;
                }
            }
        }
    }
    return Verdict::Yes;
}

StochasticResult check_stochastically_degraded(const BroadcastChannel& bc) {
    StochasticResult res;
    res.verdict = Verdict::Yes;
    const ChannelMatrix& w1 = bc.branch(0);
    const int nx = bc.input_size();
    const int ny1 = w1.output_size();
    for (int j = 1; j < bc.receivers(); ++j) {
        const ChannelMatrix& wj = bc.branch(j);
        const int nyj = wj.output_size();
        // variables v[a][b] = W_j(b|a), a in Y_j, b in Y_1
        const int nvars = nyj * ny1;
        std::vector<std::vector<double>> A;
        std::vector<double> rhs;
        for (int x = 0; x < nx; ++x)
            for (int b = 0; b < ny1; ++b) {
                std::vector<double> row(static_cast<size_t>(nvars), 0.0);
                for (int a = 0; a < nyj; ++a) row[static_cast<size_t>(a * ny1 + b)] = wj(x, a);
                A.push_back(std::move(row));
                rhs.push_back(w1(x, b));
            }
        for (int a = 0; a < nyj; ++a) {
            std::vector<double> row(static_cast<size_t>(nvars), 0.0);
            for (int b = 0; b < ny1; ++b) row[static_cast<size_t>(a * ny1 + b)] = 1.0;
            A.push_back(std::move(row));
            rhs.push_back(1.0);
        }
        FeasibilityResult f = phase1_feasible(A, rhs, kMarginalBandLo);
        res.residual = std::max(res.residual, f.objective);
        if (!f.feasible) {
            if (f.objective < kMarginalBandHi) {
                res.verdict = Verdict::Indeterminate;
                continue;
            }
            res.verdict = Verdict::No;
            res.witnesses.clear();
            return res;
        }
        std::vector<std::vector<double>> rows(static_cast<size_t>(nyj),
                                              std::vector<double>(static_cast<size_t>(ny1), 0.0));
        for (int a = 0; a < nyj; ++a) {
            double s = 0.0;
            for (int b = 0; b < ny1; ++b) s += f.x[static_cast<size_t>(a * ny1 + b)];
            for (int b = 0; b < ny1; ++b)
                rows[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    s > 0.0 ? f.x[static_cast<size_t>(a * ny1 + b)] / s : 1.0 / ny1;
        }
        ChannelMatrix witness(rows);
        ChannelMatrix composed = compose(wj, witness);
        double dev = 0.0;
        for (int x = 0; x < nx; ++x)
            for (int b = 0; b < ny1; ++b) dev = std::max(dev, std::abs(composed(x, b) - w1(x, b)));
        if (dev > kWitnessTol) {
            res.verdict = Verdict::Indeterminate;
            res.residual = std::max(res.residual, dev);
            continue;
        }
        if (res.verdict == Verdict::Yes) res.witnesses.push_back(std::move(witness));
    }
    if (res.verdict != Verdict::Yes) res.witnesses.clear();
    return res;
}

LessCapableResult check_less_capable(const BroadcastChannel& bc, int restarts, double tol,
                                     bool stochastic_yes) {
    LessCapableResult res;
    const int K = bc.receivers();
    const int nx = bc.input_size();
    if (K == 1) {
        res.verdict = Verdict::Yes;
        res.diagnostics = "single receiver";
        return res;
    }
    bool identical = true;
    for (int j = 1; j < K && identical; ++j) identical = bc.branch(j) == bc.branch(0);
    if (identical) {
        res.verdict = Verdict::Yes;
        res.diagnostics = "all branches identical";
        return res;
    }

    // refutation search: deterministic grid + multi-start descent
    double best = capability_gap(bc, Distribution::uniform(nx));
    Distribution bestp = Distribution::uniform(nx);
    auto consider = [&](const Distribution& p) {
        double v = capability_gap(bc, p);
        if (v < best) {
            best = v;
            bestp = p;
        }
    };
    if (nx <= 3) {
        const int denom = 32;
        std::vector<int> point(static_cast<size_t>(nx));
        enumerate_grid(nx, denom, point, 0, denom, [&](const std::vector<int>& pt) {
            std::vector<double> probs(pt.size());
            for (size_t i = 0; i < pt.size(); ++i) probs[i] = static_cast<double>(pt[i]) / denom;
            consider(Distribution(probs));
        });
    }
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int r = 0; r < std::max(1, restarts); ++r) {
        std::vector<double> probs(static_cast<size_t>(nx));
        double s = 0.0;
        for (double& v : probs) {
            v = -std::log(1.0 - unif(rng));
            s += v;
        }
        for (double& v : probs) v /= s;
        consider(descend_gap(bc, Distribution(probs), 80));
    }
    consider(descend_gap(bc, bestp, 120));
    res.min_gap = best;

    if (best < -tol) {
        // recompute to back the verdict with a concrete witness
        double confirmed = capability_gap(bc, bestp);
        if (confirmed < -tol / 2) {
            res.verdict = Verdict::No;
            res.counterexample = bestp;
            res.diagnostics = "counterexample gap " + std::to_string(confirmed);
            return res;
        }
    }
    if (stochastic_yes) {
        res.verdict = Verdict::Yes;
        res.diagnostics = "implied by stochastic degradation";
        return res;
    }

    if (nx == 2) {
        // certified sign: endpoint expansions + Lipschitz grid on the interior
        double lips = 0.0, curv = 0.0;
        bool positive = true;
        for (int j = 0; j < K && positive; ++j) {
            const ChannelMatrix& w = bc.branch(j);
            double tj = 1.0;
            for (int y = 0; y < w.output_size() && positive; ++y) {
                double lo = std::min(w(0, y), w(1, y)), hi = std::max(w(0, y), w(1, y));
                if (hi == 0.0) continue;  // dead letter
                if (lo <= 0.0) positive = false;
                else tj = std::max(tj, hi / lo);
            }
            if (!positive) break;
            lips += std::log(tj);  // |dI_j/dq| <= ln T_j
            curv = std::max(curv, binary_curvature(w));
        }
        if (positive) {
            curv *= 2.0;  // gap mixes two branches
            double s10 = kl_divergence(bc.branch(0).row(1), bc.branch(0).row(0)).value;
            double s11 = kl_divergence(bc.branch(0).row(0), bc.branch(0).row(1)).value;
            double sj0 = 0.0, sj1 = 0.0;
            for (int j = 1; j < K; ++j) {
                double a = kl_divergence(bc.branch(j).row(1), bc.branch(j).row(0)).value;
                double b = kl_divergence(bc.branch(j).row(0), bc.branch(j).row(1)).value;
                if (j == 1 || a < sj0) sj0 = a;
                if (j == 1 || b < sj1) sj1 = b;
            }
            double sigma0 = sj0 - s10, sigma1 = sj1 - s11;
            if (sigma0 > 0.0 && sigma1 > 0.0 && curv > 0.0) {
                // gap(q) >= q(sigma0 - curv q / 2) > 0 on (0, q0], mirrored at 1
                double q0 = std::min(sigma0 / curv, 0.125);
                double q1 = std::min(sigma1 / curv, 0.125);
                const int steps = 1024;
                double cellw = (1.0 - q1 - q0) / steps;
                bool ok = cellw > 0.0;
                double prev = binary_gap(bc, q0);
                for (int i = 1; i <= steps && ok; ++i) {
                    double g = binary_gap(bc, q0 + cellw * i);
                    if ((g + prev) / 2.0 < lips * cellw / 2.0) ok = false;
                    prev = g;
                }
                if (ok) {
                    res.verdict = Verdict::Yes;
                    res.diagnostics = "certified by endpoint expansion + Lipschitz grid";
                    return res;
                }
            }
        }
    }

    res.verdict = Verdict::Undetermined;
    res.diagnostics = "no counterexample found (min gap " + std::to_string(best) + ")";
    return res;
}

OrderingReport classify(const BroadcastChannel& bc, int restarts, double tol) {
    OrderingReport rep;
    rep.physically_degraded = check_physically_degraded(bc);
    rep.stochastic = check_stochastically_degraded(bc);
    if (rep.physically_degraded == Verdict::Yes && rep.stochastic.verdict == Verdict::No)
        throw std::logic_error("classifier contradiction: physical => stochastic violated");
    rep.less_capable =
        check_less_capable(bc, restarts, tol, rep.stochastic.verdict == Verdict::Yes);
    if (rep.stochastic.verdict == Verdict::Yes && rep.less_capable.verdict == Verdict::No)
        throw std::logic_error("classifier contradiction: stochastic => less capable violated");
    return rep;
}

}  // namespace vlftbc
