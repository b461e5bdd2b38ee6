// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/channel.hpp"
#include "isac/random.hpp"
#include "isac/ranging.hpp"
#include "isac/scene.hpp"
#include "isac/selection.hpp"
#include "isac/wls.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace isac {

/// Frame and sensing-budget timing. Durations in seconds.
struct FrameConfig {
    double frame_duration = 0.010;
    int slots_per_frame = 10;
    int rbs_per_slot_grid = 106;
    double sense_duration = 0.001;
    double feedback_duration = 0.0;
    double time_budget = 0.010;
    int sensing_rbs_per_iter = 3;  // rho
    double slot_duration = 0.001;

    /// Checks timing invariants and rho >= k with k | rho.
    void validate(int k) const;

    /// Slots spanned by one sense + feedback iteration, ceil((T_s + T_L) / slot).
    int iteration_slots() const;
};

enum class Strategy { Proposed, Benchmark1, Benchmark2, Benchmark3 };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// floor(T_c / (T_s + T_L)).
int max_iterations(const FrameConfig& frame);

/// Sensing RBs given to each selected subnetwork in one iteration: rho / k, or
/// j_max * rho / k for Benchmark 1's single concentrated iteration.
int rbs_per_subnet(const FrameConfig& frame, int k, Strategy strategy, int j_max);

/// Pilot REs per subnetwork per iteration (rbs_per_subnet * pilots_per_rb).
int rb_allocation(const FrameConfig& frame, int k, Strategy strategy, int j_max,
                  int pilots_per_rb = 168);

struct IterationRecord {
    std::vector<int> subset;
    std::vector<RangeMeasurement> measurements;
    Point2d estimate = Point2d::Zero();
    double abs_error = 0.0;
    WlsResult<double> wls;
};

/// Loop state of the iterative selection/refinement procedure.
struct SelectionState {
    int j = 0;
    SubsetSelection subset;
    Point2d estimate = Point2d::Zero();
    std::vector<IterationRecord> history;
};

struct LocalizationRecord {
    Point2d estimate = Point2d::Zero();
    double abs_error = 0.0;
    int iterations_used = 0;
    bool converged = false;  // Proposed: subset repeated; benchmarks: last WLS converged
    int clamped_measurements = 0;
    int sensing_rbs = 0;
    std::vector<int> final_subset;
    std::vector<IterationRecord> history;
};

/// Runs one localization trial with the given strategy.
///
/// j_max = 0 uses max_iterations(frame). With GridSearch (and WarmStart) every fusion
/// runs Gauss-Newton from the lowest grid_seeds local minima of the objective over the
/// deployment square, plus the previous estimate when warm; the result inside the square
/// with the lowest objective wins. CentroidOfSubset and FixedPoint run a single solve from
/// the subset centroid or the area centre, or from the previous estimate when warm.
/// Proposed (j >= 1) and Benchmark 3 are warm; WarmStart makes Benchmark 2 warm too.
/// Throws NoFeasibleSubset if a selection step finds no non-singular subset.
LocalizationRecord run_localization(const Scene& scene, const SensingParams& params,
                                    const ChannelModel& model, const FrameConfig& frame, int k,
                                    Strategy strategy, const WlsConfig& wls_cfg, Rng& rng,
                                    int j_max = 0);

/// Uniformly random sorted k-subset of {0..n-1}.
std::vector<int> random_subset(int n, int k, Rng& rng);

}  // namespace isac
