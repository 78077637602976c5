#include "vlftbc/bounds.hpp"

#include <algorithm>

namespace vlftbc {

double lower_bound(const InfoSummary& info, double R) {
    if (!info.Bmax.finite())
        throw std::invalid_argument("achievability bound requires B_max < infinity");
    if (R < 0.0 || R >= info.C)
        throw std::out_of_range("rate outside [0, C)");
    return info.B.value * (1.0 - R / info.C);
}

double upper_bound(const InfoSummary& info, double R) {
    if (R < 0.0 || R >= info.Cbar)
        throw std::out_of_range("rate outside [0, Cbar)");
    double best = 0.0;
    bool first = true;
    for (size_t j = 0; j < info.Bj.size(); ++j) {
        if (!info.Bj[j].finite()) continue;  // an infinite B_j never attains the min
        double v = info.Bj[j].value * (1.0 - R / info.Cj[j]);
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    if (first) throw std::invalid_argument("all B_j infinite; converse bound undefined");
    return best;
}

std::optional<double> exact_if_degraded(const InfoSummary& info, const OrderingReport& ordering,
                                        double R) {
    bool degraded = ordering.stochastic.verdict == Verdict::Yes ||
                    ordering.physically_degraded == Verdict::Yes;
    if (!degraded || !info.Bj[0].finite()) return std::nullopt;
    if (R < 0.0 || R >= info.Cj[0]) return std::nullopt;
    return info.Bj[0].value * (1.0 - R / info.Cj[0]);
}

CapacityBounds capacity_bounds(const InfoSummary& info, const OrderingReport& ordering) {
    CapacityBounds b{info.C, info.Cbar, std::nullopt};
    if (ordering.less_capable.verdict == Verdict::Yes) b.exact = info.Cj[0];
    return b;
}

std::vector<RatePoint> rate_sweep(const InfoSummary& info, const OrderingReport& ordering,
                                  const std::vector<double>& grid) {
    std::vector<RatePoint> out;
    out.reserve(grid.size());
    for (double R : grid) {
        RatePoint pt;
        pt.R = R;
        pt.valid_lower = R >= 0.0 && R < info.C && info.Bmax.finite();
        pt.valid_upper = R >= 0.0 && R < info.Cbar;
        if (pt.valid_lower) pt.lower_E = lower_bound(info, R);
        if (pt.valid_upper) pt.upper_E = upper_bound(info, R);
        pt.exact = exact_if_degraded(info, ordering, R);
        out.push_back(pt);
    }
    return out;
}

}  // namespace vlftbc
