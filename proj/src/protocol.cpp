// SPDX-License-Identifier: Apache-2.0
#include "isac/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace isac {

namespace {

// Absorbs representation error in ratios such as 0.010 / 0.005.
constexpr double kRatioSlack = 1e-9;

struct Fused {
    IterationRecord record;
    int clamped = 0;
};

Fused sense_and_fuse(const Scene& scene, const SensingParams& params, const ChannelModel& model,
                     const std::vector<int>& subset, const WlsConfig& wls_cfg,
                     const std::optional<Point2d>& warm, Rng& rng) {
    Fused out;
    auto& rec = out.record;
    rec.subset = subset;
    rec.measurements.reserve(subset.size());
    for (int n : subset) {
        const double d = std::max(distance(scene.target, scene.subnet_positions[n]), kMinRange);
        const EchoBlock block = simulate_echo(params, model, d, rng);
        rec.measurements.push_back(measure_range(n, block, params));
        if (!rec.measurements.back().valid) ++out.clamped;
    }
    const PointSet<double> anchors = gather(scene.subnet_positions, subset);
    VectorX<double> ranges(anchors.rows());
    VectorX<double> crlbs(anchors.rows());
    for (Eigen::Index i = 0; i < anchors.rows(); ++i) {
        ranges[i] = rec.measurements[i].range;
        crlbs[i] = rec.measurements[i].weight_crlb;
    }
    if (wls_cfg.init_mode == InitMode::CentroidOfSubset || wls_cfg.init_mode == InitMode::FixedPoint) {
        Point2d init = anchors.colwise().mean().transpose();
        if (warm) init = *warm;
        else if (wls_cfg.init_mode == InitMode::FixedPoint) init = Point2d::Constant(0.5 * scene.area_side);
        rec.wls = solve_wls(anchors, ranges, crlbs, wls_cfg, init);
    } else {
        std::vector<Point2d> starts =
            grid_seeds(anchors, ranges, crlbs, scene.area_side, wls_cfg.grid_step, wls_cfg.grid_seeds);
        if (warm) starts.insert(starts.begin(), *warm);
        rec.wls = solve_wls_multistart(anchors, ranges, crlbs, wls_cfg, starts, scene.area_side);
    }
    rec.estimate = rec.wls.estimate;
    rec.abs_error = distance(rec.estimate, scene.target);
    return out;
}

}  // namespace

void FrameConfig::validate(int k) const {
    std::vector<std::string> issues;
    if (!(frame_duration > 0.0)) issues.push_back("frame.frame_duration: must be > 0");
    if (slots_per_frame < 1) issues.push_back("frame.slots_per_frame: must be >= 1");
    if (rbs_per_slot_grid < 1) issues.push_back("frame.rbs_per_slot_grid: must be >= 1");
    if (!(sense_duration > 0.0)) issues.push_back("frame.sense_duration: must be > 0");
    if (!(feedback_duration >= 0.0)) issues.push_back("frame.feedback_duration: must be >= 0");
    if (!(slot_duration > 0.0)) issues.push_back("frame.slot_duration: must be > 0");
    if (!(time_budget * (1.0 + kRatioSlack) >= sense_duration + feedback_duration))
        issues.push_back("frame.time_budget: must cover one sense + feedback period");
    if (k < 1) {
        issues.push_back("k: must be >= 1");
    } else {
        if (sensing_rbs_per_iter < k) issues.push_back("frame.sensing_rbs_per_iter: must be >= k");
        if (sensing_rbs_per_iter % k != 0)
            issues.push_back("frame.sensing_rbs_per_iter: must be divisible by k");
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

int FrameConfig::iteration_slots() const {
    return static_cast<int>(
        std::ceil((sense_duration + feedback_duration) / slot_duration - kRatioSlack));
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::Proposed: return "proposed";
        case Strategy::Benchmark1: return "benchmark1";
        case Strategy::Benchmark2: return "benchmark2";
        case Strategy::Benchmark3: return "benchmark3";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Proposed, Strategy::Benchmark1, Strategy::Benchmark2,
                       Strategy::Benchmark3})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

int max_iterations(const FrameConfig& frame) {
    return static_cast<int>(
        std::floor(frame.time_budget / (frame.sense_duration + frame.feedback_duration) + kRatioSlack));
}

int rbs_per_subnet(const FrameConfig& frame, int k, Strategy strategy, int j_max) {
    frame.validate(k);
    const int per_iter = frame.sensing_rbs_per_iter / k;
    return strategy == Strategy::Benchmark1 ? j_max * per_iter : per_iter;
}

int rb_allocation(const FrameConfig& frame, int k, Strategy strategy, int j_max, int pilots_per_rb) {
    return rbs_per_subnet(frame, k, strategy, j_max) * pilots_per_rb;
}

std::vector<int> random_subset(int n, int k, Rng& rng) {
    if (k < 0 || k > n) throw std::invalid_argument("random_subset: need 0 <= k <= n");
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

LocalizationRecord run_localization(const Scene& scene, const SensingParams& params,
                                    const ChannelModel& model, const FrameConfig& frame, int k,
                                    Strategy strategy, const WlsConfig& wls_cfg, Rng& rng,
                                    int j_max) {
    const int bound = max_iterations(frame);
    if (j_max == 0) j_max = bound;
    if (j_max < 1 || j_max > bound)
        throw std::invalid_argument("run_localization: j_max must lie in [1, max_iterations]");
    if (k < 3 || scene.size() < k) throw std::invalid_argument("run_localization: requires N >= k >= 3");
    wls_cfg.validate();

    SensingParams p = params;
    p.rbs_per_subnet = rbs_per_subnet(frame, k, strategy, j_max);
    p.validate();
    const bool always_warm = wls_cfg.init_mode == InitMode::WarmStart;

    LocalizationRecord out;
    SelectionState state;

    auto push = [&](Fused&& fused) {
        out.clamped_measurements += fused.clamped;
        state.estimate = fused.record.estimate;
        state.history.push_back(std::move(fused.record));
    };

    switch (strategy) {
        case Strategy::Proposed: {
            state.subset.members = random_subset(scene.size(), k, rng);
            while (state.j < j_max) {
                std::optional<Point2d> warm;
                if (state.j > 0) warm = state.estimate;
                push(sense_and_fuse(scene, p, model, state.subset.members, wls_cfg, warm, rng));
                ++state.j;
                SubsetSelection next = select_subset(state.estimate, scene, p, k);
                if (next.members == state.subset.members) {
                    out.converged = true;
                    state.subset = std::move(next);
                    break;
                }
                state.subset = std::move(next);
            }
            out.estimate = state.estimate;
            out.sensing_rbs = static_cast<int>(state.history.size()) * frame.sensing_rbs_per_iter;
            break;
        }
        case Strategy::Benchmark1: {
            state.subset.members = random_subset(scene.size(), k, rng);
            push(sense_and_fuse(scene, p, model, state.subset.members, wls_cfg, std::nullopt, rng));
            state.j = 1;
            out.estimate = state.estimate;
            out.converged = state.history.back().wls.converged;
            out.sensing_rbs = j_max * frame.sensing_rbs_per_iter;
            break;
        }
        case Strategy::Benchmark2:
        case Strategy::Benchmark3: {
            const bool warm_start = strategy == Strategy::Benchmark3 || always_warm;
            Point2d sum = Point2d::Zero();
            for (; state.j < j_max; ++state.j) {
                state.subset.members = random_subset(scene.size(), k, rng);
                std::optional<Point2d> warm;
                if (warm_start && state.j > 0) warm = state.estimate;
                push(sense_and_fuse(scene, p, model, state.subset.members, wls_cfg, warm, rng));
                sum += state.estimate;
            }
            out.estimate = sum / static_cast<double>(state.history.size());
            out.converged = state.history.back().wls.converged;
            out.sensing_rbs = j_max * frame.sensing_rbs_per_iter;
            break;
        }
    }

    out.abs_error = distance(out.estimate, scene.target);
    out.iterations_used = static_cast<int>(state.history.size());
    out.final_subset = state.subset.members;
    out.history = std::move(state.history);
    return out;
}

}  // namespace isac
