#pragma once

#include <optional>
#include <vector>

#include "vlftbc/info.hpp"
#include "vlftbc/ordering.hpp"

namespace vlftbc {

struct RatePoint {
    double R = 0.0;
    double lower_E = 0.0;  // meaningful only when valid_lower
    double upper_E = 0.0;  // meaningful only when valid_upper
    std::optional<double> exact;
    bool valid_lower = false;  // R < C
    bool valid_upper = false;  // R < Cbar
};

struct CapacityBounds {
    double low = 0.0;
    double high = 0.0;
    std::optional<double> exact;
};

// B (1 - R/C); requires R < C and B_max finite.
double lower_bound(const InfoSummary& info, double R);

// min_j B_j (1 - R/C_j); requires R < Cbar.
double upper_bound(const InfoSummary& info, double R);

// B_1 (1 - R/C_1) when degradation is certified, absent otherwise.
std::optional<double> exact_if_degraded(const InfoSummary& info, const OrderingReport& ordering,
                                        double R);

CapacityBounds capacity_bounds(const InfoSummary& info, const OrderingReport& ordering);

std::vector<RatePoint> rate_sweep(const InfoSummary& info, const OrderingReport& ordering,
                                  const std::vector<double>& grid);

}  // namespace vlftbc
