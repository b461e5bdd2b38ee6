// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/channel.hpp"
#include "isac/comms.hpp"
#include "isac/protocol.hpp"
#include "isac/scene.hpp"
#include "isac/stats.hpp"
#include "isac/wls.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isac {

enum class Experiment { ErrorVsIterations, ErrorVsAntennas, ConvergenceCdf, TradeoffVsFeedback, Custom };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

/// One swept parameter. Recognised names: j_max, rho_factor, antennas, feedback_ms,
/// k, channel, n_subnets, rician_k.
struct SweepAxis {
    std::string param;
    std::vector<std::string> values;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Custom;
    int trials = 2000;
    std::uint64_t seed = 1;
    std::vector<SweepAxis> sweep;  // cartesian product, first axis outermost
    DeployConfig deploy;
    SensingParams sensing;
    FrameConfig frame;
    CommsParams comms;
    std::vector<Strategy> strategies{Strategy::Proposed};
    ChannelModel channel;
    WlsConfig wls;
    int k = 3;
    int j_max = 0;       // 0: the frame's iteration budget
    int rho_factor = 1;  // rho = rho_factor * k
};

/// Fully resolved parameters of one sweep point.
struct SweepPoint {
    std::string label;  // "param=value;param=value"
    DeployConfig deploy;
    SensingParams sensing;
    FrameConfig frame;
    ChannelModel channel;
    int k = 3;
    int j_max = 1;
};

struct TrialRecord {
    int trial_id = 0;
    Strategy strategy = Strategy::Proposed;
    std::string sweep_point;
    double abs_error = 0.0;  // NaN for failed trials
    int iterations_used = 0;
    bool converged = false;
    int clamped_measurements = 0;
    double throughput_loss = 0.0;
    bool failed = false;
};

struct SummaryRow {
    std::string sweep_point;
    Strategy strategy = Strategy::Proposed;
    SummaryStats stats;
};

struct ThroughputRow {
    std::string sweep_point;
    double loss = 0.0;
    double sum_rate_ideal = 0.0;
    double sum_rate_effective = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<SweepPoint> points;
    std::vector<TrialRecord> records;  // ordered by point, strategy, trial_id
    std::vector<SummaryRow> summary;
    std::vector<ThroughputRow> throughput;
};

/// Expands the sweep and resolves every point. Throws ConfigError listing all problems.
std::vector<SweepPoint> resolve_points(const ExperimentConfig& cfg);

/// Full validation of a configuration (including every sweep point).
void validate(const ExperimentConfig& cfg);

/// Runs `trials` independent trials for each sweep point and strategy. A trial draws
/// its deployment from trial_rng(seed, trial_id), so results do not depend on `workers`.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 1);

/// Groups records in order of first appearance and aggregates them.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

}  // namespace isac
