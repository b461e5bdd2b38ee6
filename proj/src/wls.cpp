// SPDX-License-Identifier: Apache-2.0
#include "isac/wls.hpp"

#include <string>

namespace isac {

std::string_view to_string(InitMode m) {
    switch (m) {
        case InitMode::GridSearch: return "grid-search";
        case InitMode::CentroidOfSubset: return "centroid-of-subset";
        case InitMode::FixedPoint: return "fixed-point";
        case InitMode::WarmStart: return "warm-start";
    }
    return "unknown";
}

void WlsConfig::validate() const {
    std::vector<std::string> issues;
    if (!(epsilon > 0.0)) issues.push_back("wls.epsilon: must be > 0");
    if (max_iters < 1) issues.push_back("wls.max_iters: must be >= 1");
    if (!(grid_step > 0.0)) issues.push_back("wls.grid_step: must be > 0");
    if (grid_seeds < 1) issues.push_back("wls.grid_seeds: must be >= 1");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

WlsResult<double> solve_wls(const std::vector<RangeMeasurement>& measurements,
                            const PointSet<double>& anchors, const WlsConfig& cfg,
                            const Point2d& init) {
    const auto n = static_cast<Eigen::Index>(measurements.size());
    VectorX<double> ranges(n);
    VectorX<double> crlbs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ranges[i] = measurements[i].range;
        crlbs[i] = measurements[i].weight_crlb;
    }
    return solve_wls(anchors, ranges, crlbs, cfg, init);
}

}  // namespace isac
