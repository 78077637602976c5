#include "vlftbc/info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vlftbc {

namespace {

constexpr long kIterationCap = 1000000;
constexpr double kProbFloor = 1e-15;

// Euclidean projection onto the probability simplex (Duchi et al. 2008).
std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    int rho = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    (void)rho;
    for (double& x : v) x = std::max(0.0, x - theta);
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= s;
    return v;
}

std::vector<double> floored(std::vector<double> p) {
    double s = 0.0;
    for (double& v : p) {
        if (v < kProbFloor) v = kProbFloor;
        s += v;
    }
    for (double& v : p) v /= s;
    return p;
}

// Alternating maximization of sum_j lam_j I_j(p). Each pass brackets the
// optimum by [sum_x p_x d_x, max_x d_x] where d_x = sum_j lam_j D(W_j(.|x) || p W_j);
// the upper end is valid for any p, so the returned bracket is a certificate.
Capacity weighted_ba(const BroadcastChannel& bc, const std::vector<double>& lam, double tol,
                     long cap = kIterationCap) {
    const int nx = bc.input_size();
    const int K = bc.receivers();
    std::vector<double> p(static_cast<size_t>(nx), 1.0 / nx);
    std::vector<double> d(static_cast<size_t>(nx), 0.0);
    std::vector<std::vector<double>> q(static_cast<size_t>(K));
    double lo = 0.0, hi = 0.0;
    for (long it = 1; it <= cap; ++it) {
        for (int j = 0; j < K; ++j) {
            if (lam[static_cast<size_t>(j)] == 0.0) continue;
            const ChannelMatrix& w = bc.branch(j);
            auto& qj = q[static_cast<size_t>(j)];
            qj.assign(static_cast<size_t>(w.output_size()), 0.0);
            for (int x = 0; x < nx; ++x)
                for (int y = 0; y < w.output_size(); ++y)
                    qj[static_cast<size_t>(y)] += p[static_cast<size_t>(x)] * w(x, y);
        }
        lo = 0.0;
        hi = -1.0;
        for (int x = 0; x < nx; ++x) {
            double dx = 0.0;
            for (int j = 0; j < K; ++j) {
                double l = lam[static_cast<size_t>(j)];
                if (l == 0.0) continue;
                const ChannelMatrix& w = bc.branch(j);
                const auto& qj = q[static_cast<size_t>(j)];
                for (int y = 0; y < w.output_size(); ++y) {
                    double v = w(x, y);
                    if (v > 0.0) dx += l * v * std::log(v / qj[static_cast<size_t>(y)]);
                }
            }
            d[static_cast<size_t>(x)] = dx;
            lo += p[static_cast<size_t>(x)] * dx;
            hi = std::max(hi, dx);
        }
        if (hi - lo < tol) {
            return Capacity{std::max(lo, 0.0), Distribution(p), std::max(hi, 0.0), it};
        }
        for (int x = 0; x < nx; ++x)
            p[static_cast<size_t>(x)] *= std::exp(d[static_cast<size_t>(x)] - hi);
        p = floored(std::move(p));
    }
    throw ConvergenceError("capacity iteration exceeded cap", lo, hi);
}

double min_mi(const BroadcastChannel& bc, const Distribution& p) {
    double m = mutual_information(p, bc.branch(0));
    for (int j = 1; j < bc.receivers(); ++j)
        m = std::min(m, mutual_information(p, bc.branch(j)));
    return m;
}

// Supergradient of min_j I_j at p: average the MI gradients of the branches
// active at the min (ties averaged).
std::vector<double> minmi_supergradient(const BroadcastChannel& bc, const Distribution& p) {
    const int nx = bc.input_size();
    std::vector<double> mis(static_cast<size_t>(bc.receivers()));
    for (int j = 0; j < bc.receivers(); ++j)
        mis[static_cast<size_t>(j)] = mutual_information(p, bc.branch(j));
    double m = *std::min_element(mis.begin(), mis.end());
    std::vector<double> g(static_cast<size_t>(nx), 0.0);
    int active = 0;
    for (int j = 0; j < bc.receivers(); ++j) {
        if (mis[static_cast<size_t>(j)] > m + 1e-10) continue;
        ++active;
        Distribution qj = output_distribution(p, bc.branch(j));
        const ChannelMatrix& w = bc.branch(j);
        for (int x = 0; x < nx; ++x) {
            double dx = 0.0;
            for (int y = 0; y < w.output_size(); ++y) {
                double v = w(x, y);
                if (v > 0.0) dx += v * std::log(v / qj[y]);
            }
            g[static_cast<size_t>(x)] += dx;
        }
    }
    for (double& v : g) v /= active;
    return g;
}

}  // namespace

PairScan compute_Bj(const BroadcastChannel& bc, int j) {
    const ChannelMatrix& w = bc.branch(j);
    PairScan best{ExtReal::of(0.0), 0, 0};
    bool first = true;
    for (int x = 0; x < w.input_size(); ++x)
        for (int xp = 0; xp < w.input_size(); ++xp) {
            ExtReal d = kl_divergence(w.row(x), w.row(xp));
            if (first || best.value < d) {
                best = PairScan{d, x, xp};
                first = false;
            }
        }
    return best;
}

PairScan compute_B(const BroadcastChannel& bc) {
    const int nx = bc.input_size();
    PairScan best{ExtReal::of(0.0), 0, 0};
    bool first = true;
    for (int x = 0; x < nx; ++x)
        for (int xp = 0; xp < nx; ++xp) {
            ExtReal inner = kl_divergence(bc.branch(0).row(x), bc.branch(0).row(xp));
            for (int j = 1; j < bc.receivers(); ++j)
                inner = min(inner, kl_divergence(bc.branch(j).row(x), bc.branch(j).row(xp)));
            if (first || best.value < inner) {
                best = PairScan{inner, x, xp};
                first = false;
            }
        }
    return best;
}

ExtReal compute_Tj(const BroadcastChannel& bc, int j) {
    const ChannelMatrix& w = bc.branch(j);
    ExtReal best = ExtReal::of(0.0);
    bool any = false;
    for (int x = 0; x < w.input_size(); ++x)
        for (int xp = 0; xp < w.input_size(); ++xp)
            for (int y = 0; y < w.output_size(); ++y) {
                double num = w(x, y), den = w(xp, y);
                if (num == 0.0 && den == 0.0) continue;  // 0/0 skipped
                if (den == 0.0) return ExtReal::inf();
                ExtReal r = ExtReal::of(num / den);
                if (!any || best < r) best = r;
                any = true;
            }
    return any ? best : ExtReal::of(1.0);
}

Capacity compute_Cj(const BroadcastChannel& bc, int j, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    std::vector<double> lam(static_cast<size_t>(bc.receivers()), 0.0);
    lam[static_cast<size_t>(j)] = 1.0;
    return weighted_ba(bc, lam, tol);
}

Capacity compute_C(const BroadcastChannel& bc, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const int K = bc.receivers();
    const int nx = bc.input_size();
    if (K == 1) return compute_Cj(bc, 0, tol);

    std::vector<Capacity> caps;
    caps.reserve(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j) caps.push_back(compute_Cj(bc, j, tol / 4));
    int weakest = 0;
    for (int j = 1; j < K; ++j)
        if (caps[static_cast<size_t>(j)].upper < caps[static_cast<size_t>(weakest)].upper)
            weakest = j;
    double upper = caps[static_cast<size_t>(weakest)].upper;  // C <= Cbar
    long iters = 0;
    for (const auto& c : caps) iters += c.iterations;

    Distribution pbest = Distribution::uniform(nx);
    double lower = min_mi(bc, pbest);
    auto consider = [&](const Distribution& p) {
        double g = min_mi(bc, p);
        if (g > lower) {
            lower = g;
            pbest = p;
        }
    };
    // ternary search for the equalizing law on the segment between two
    // candidates (min_j I_j is concave, so the restriction is unimodal)
    auto segment_polish = [&](const Distribution& a, const Distribution& b) {
        double lo = 0.0, hi = 1.0;
        auto mix = [&](double t) {
            std::vector<double> m(static_cast<size_t>(nx));
            for (int x = 0; x < nx; ++x) m[static_cast<size_t>(x)] = (1 - t) * a[x] + t * b[x];
            return Distribution(m);
        };
        for (int it = 0; it < 60; ++it) {
            double t1 = lo + (hi - lo) / 3, t2 = hi - (hi - lo) / 3;
            if (min_mi(bc, mix(t1)) < min_mi(bc, mix(t2))) lo = t1;
            else hi = t2;
        }
        consider(mix(0.5 * (lo + hi)));
    };
    for (const auto& c : caps) consider(c.px);
    for (int j = 0; j < K; ++j)
        if (j != weakest) segment_polish(caps[static_cast<size_t>(weakest)].px,
                                         caps[static_cast<size_t>(j)].px);
    if (upper - lower < tol) return Capacity{lower, pbest, upper, iters};

    // Dual side: C = min_lam max_P sum_j lam_j I_j(P) (minimax over two
    // simplices), and lam -> C(lam) is convex. 1-D golden section solves K=2;
    // pairwise coordinate sweeps handle K >= 3. Every evaluation tightens the
    // upper bound and supplies a primal candidate.
    std::optional<Distribution> prev_px;
    auto eval_lam = [&](const std::vector<double>& lam) {
        Capacity ba = weighted_ba(bc, lam, tol / 8);
        iters += ba.iterations;
        upper = std::min(upper, ba.upper);
        consider(ba.px);
        if (prev_px) segment_polish(*prev_px, ba.px);
        segment_polish(pbest, ba.px);
        prev_px = ba.px;
        return ba.upper;
    };
    const double golden = 0.6180339887498949;
    if (K == 2) {
        double a = 0.0, b = 1.0;
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = eval_lam({1 - x1, x1}), f2 = eval_lam({1 - x2, x2});
        for (int it = 0; it < 240 && upper - lower >= tol && b - a > 1e-14; ++it) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = eval_lam({1 - x1, x1});
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = eval_lam({1 - x2, x2});
            }
        }
    } else {
        std::vector<double> lam(static_cast<size_t>(K), 0.3 / (K - 1));
        lam[static_cast<size_t>(weakest)] = 0.7;
        auto with_pair = [&](int i, int j, double t) {
            std::vector<double> l = lam;
            double m = lam[static_cast<size_t>(i)] + lam[static_cast<size_t>(j)];
            l[static_cast<size_t>(i)] = t * m;
            l[static_cast<size_t>(j)] = (1 - t) * m;
            return l;
        };
        for (int sweep = 0; sweep < 40 && upper - lower >= tol; ++sweep) {
            for (int i = 0; i < K && upper - lower >= tol; ++i)
                for (int j = i + 1; j < K && upper - lower >= tol; ++j) {
                    if (lam[static_cast<size_t>(i)] + lam[static_cast<size_t>(j)] < 1e-12) continue;
                    double a = 0.0, b = 1.0;
                    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
                    double f1 = eval_lam(with_pair(i, j, x1));
                    double f2 = eval_lam(with_pair(i, j, x2));
                    for (int it = 0; it < 40 && upper - lower >= tol; ++it) {
                        if (f1 <= f2) {
                            b = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = b - golden * (b - a);
                            f1 = eval_lam(with_pair(i, j, x1));
                        } else {
                            a = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = a + golden * (b - a);
                            f2 = eval_lam(with_pair(i, j, x2));
                        }
                    }
                    lam = with_pair(i, j, 0.5 * (a + b));
                }
        }
    }

    // final primal ascent in case the certificate needs the last few digits
    std::vector<double> p = pbest.probs();
    for (int t = 1; t <= 400 && upper - lower >= tol; ++t) {
        Distribution pd(p);
        consider(pd);
        std::vector<double> s = minmi_supergradient(bc, pd);
        double mean = std::accumulate(s.begin(), s.end(), 0.0) / nx;
        double norm2 = 0.0;
        for (double v : s) norm2 += (v - mean) * (v - mean);
        if (norm2 < 1e-18) break;
        double step = (upper - min_mi(bc, pd)) / norm2;
        for (int x = 0; x < nx; ++x) p[static_cast<size_t>(x)] += step * s[static_cast<size_t>(x)];
        p = project_simplex(std::move(p));
    }

    if (upper - lower < tol) return Capacity{lower, pbest, upper, iters};
    throw ConvergenceError("max-min capacity failed to certify tolerance", lower, upper);
}

double compute_Cbar(const BroadcastChannel& bc, double tol) {
    double m = compute_Cj(bc, 0, tol).value;
    for (int j = 1; j < bc.receivers(); ++j) m = std::min(m, compute_Cj(bc, j, tol).value);
    return m;
}

double clip_below(double x, double a) { return x >= a ? x : 0.0; }

ExtReal varphi_of(const std::vector<ExtReal>& Tj, double a) {
    ExtReal best = ExtReal::of(0.0);
    for (const ExtReal& t : Tj) {
        if (!t.finite()) return ExtReal::inf();
        best = max(best, ExtReal::of(clip_below(std::log(t.value), a)));
    }
    return best;
}

ExtReal compute_varphi(const BroadcastChannel& bc, double a) {
    std::vector<ExtReal> Tj;
    Tj.reserve(static_cast<size_t>(bc.receivers()));
    for (int j = 0; j < bc.receivers(); ++j) Tj.push_back(compute_Tj(bc, j));
    return varphi_of(Tj, a);
}

InfoSummary summarize(const BroadcastChannel& bc, double tol) {
    const int K = bc.receivers();
    PairScan b = compute_B(bc);
    InfoSummary s{b.value,
                  {},
                  ExtReal::of(0.0),
                  {},
                  {},
                  0.0,
                  0.0,
                  {b.x, b.xprime},
                  Distribution::uniform(bc.input_size()),
                  tol};
    for (int j = 0; j < K; ++j) {
        s.Bj.push_back(compute_Bj(bc, j).value);
        s.Tj.push_back(compute_Tj(bc, j));
        s.Cj.push_back(compute_Cj(bc, j, tol).value);
    }
    s.Bmax = s.Bj[0];
    ExtReal bmin = s.Bj[0];
    for (const ExtReal& v : s.Bj) {
        s.Bmax = max(s.Bmax, v);
        bmin = min(bmin, v);
    }
    Capacity c = compute_C(bc, tol);
    s.C = c.value;
    s.pstar = c.px;
    s.Cbar = *std::min_element(s.Cj.begin(), s.Cj.end());
    // C <= Cbar = min_j C_j must survive the tolerance of the two solvers.
    s.C = std::min(s.C, s.Cbar);

    if (bmin < s.B) throw std::logic_error("invariant violated: B > min_j B_j");
    for (int j = 0; j < K; ++j) {
        if (s.Tj[static_cast<size_t>(j)].finite() &&
            (!s.Bj[static_cast<size_t>(j)].finite() ||
             s.Bj[static_cast<size_t>(j)].value >
                 std::log(s.Tj[static_cast<size_t>(j)].value) + 1e-9))
            throw std::logic_error("invariant violated: B_j > ln T_j");
    }
    return s;
}

}  // namespace vlftbc
