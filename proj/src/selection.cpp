// SPDX-License-Identifier: Apache-2.0
#include "isac/selection.hpp"

#include "isac/ranging.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isac {

namespace {

constexpr double kTieTolerance = 1e-12;

// Per-anchor terms of H^T W H: w * h h^T stored as (xx, xy, yy).
struct AnchorTerm {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
    double weight = 0.0;
    double log_weight = 0.0;
    bool degenerate = false;
};

// Advances a strictly increasing index tuple to its lexicographic successor.
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

}  // namespace

const SubsetSelection& better_subset(const SubsetSelection& a, const SubsetSelection& b) {
    if (!a.feasible) return b;
    if (!b.feasible) return a;
    const double scale = std::max(a.wgdop, b.wgdop);
    if (std::abs(a.wgdop - b.wgdop) <= kTieTolerance * scale) return a.members <= b.members ? a : b;
    return a.wgdop < b.wgdop ? a : b;
}

SubsetSelection select_subset(const Point2d& q_hat, const std::vector<Point2d>& positions,
                              const SensingParams& params, int k) {
    const int n = static_cast<int>(positions.size());
    if (k < 3 || n < k) throw std::invalid_argument("select_subset: requires N >= k >= 3");

    std::vector<AnchorTerm> terms(n);
    for (int i = 0; i < n; ++i) {
        const Point2d diff = q_hat - positions[i];
        const double norm = diff.norm();
        auto& t = terms[i];
        if (!(norm > 0.0)) {
            t.degenerate = true;
            continue;
        }
        const Point2d h = diff / norm;
        t.weight = 1.0 / ecrlb(q_hat, positions[i], params);
        t.log_weight = std::log(t.weight);
        t.xx = h.x() * h.x();
        t.xy = h.x() * h.y();
        t.yy = h.y() * h.y();
    }

    // Squared WGDOP is compared to avoid a sqrt per subset.
    double best_sq = std::numeric_limits<double>::infinity();
    std::vector<int> best;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    do {
        double log_sum = 0.0;
        bool skip = false;
        for (int i : idx) {
            if (terms[i].degenerate) {
                skip = true;
                break;
            }
            log_sum += terms[i].log_weight;
        }
        if (skip) continue;
        const double gmean = std::exp(log_sum / k);
        double a = 0.0, b = 0.0, c = 0.0;
        for (int i : idx) {
            const double w = terms[i].weight / gmean;
            a += w * terms[i].xx;
            b += w * terms[i].xy;
            c += w * terms[i].yy;
        }
        const double det = a * c - b * b;
        if (!(det > kSingularDet)) continue;
        const double score_sq = (a + c) / det / gmean;
        if (score_sq < best_sq * (1.0 - 2.0 * kTieTolerance)) {
            best_sq = score_sq;
            best = idx;
        }
    } while (next_combination(idx, n));

    if (best.empty()) throw NoFeasibleSubset("select_subset: every subset is singular");
    return {std::move(best), std::sqrt(best_sq), true};
}

}  // namespace isac
