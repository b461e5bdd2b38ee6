// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isac {

/// Normal-approximation interval mean +/- 1.645 s / sqrt(n). Needs >= 2 samples.
std::pair<double, double> confidence_interval_90(std::span<const double> samples);

/// Right-continuous empirical CDF on the sorted unique values; last fraction is 1.
std::vector<std::pair<int, double>> empirical_cdf(std::span<const int> samples);

struct SummaryStats {
    double mean = 0.0;
    double ci90_low = 0.0;
    double ci90_high = 0.0;
    int count = 0;   // successful trials
    int failed = 0;  // trials with no feasible subset
    std::vector<std::pair<int, double>> cdf_points;  // iterations used
};

/// Decimal text with 9 significant digits, the serialization used for every output number.
std::string format_number(double v);

/// Value after a round trip through format_number.
double quantize(double v);

}  // namespace isac
