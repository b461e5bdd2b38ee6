// SPDX-License-Identifier: Apache-2.0
#include "isac/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace isac {

std::pair<double, double> confidence_interval_90(std::span<const double> samples) {
    const auto n = samples.size();
    if (n < 2) throw std::invalid_argument("confidence_interval_90: need at least 2 samples");
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double half = 1.645 * sd / std::sqrt(static_cast<double>(n));
    return {mean - half, mean + half};
}

std::vector<std::pair<int, double>> empirical_cdf(std::span<const int> samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_cdf: empty sample");
    std::vector<int> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<int, double>> out;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        out.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double quantize(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace isac
