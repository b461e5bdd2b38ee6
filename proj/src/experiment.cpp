// SPDX-License-Identifier: Apache-2.0
#include "isac/experiment.hpp"

#include "text.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace isac {

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::ErrorVsIterations: return "error-vs-iterations";
        case Experiment::ErrorVsAntennas: return "error-vs-antennas";
        case Experiment::ConvergenceCdf: return "convergence-cdf";
        case Experiment::TradeoffVsFeedback: return "tradeoff-vs-feedback";
        case Experiment::Custom: return "custom";
    }
    return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (Experiment e : {Experiment::ErrorVsIterations, Experiment::ErrorVsAntennas,
                         Experiment::ConvergenceCdf, Experiment::TradeoffVsFeedback, Experiment::Custom})
        if (to_string(e) == name) return e;
    return std::nullopt;
}

namespace {

struct PointDraft {
    std::string label;
    DeployConfig deploy;
    SensingParams sensing;
    FrameConfig frame;
    ChannelModel channel;
    int k = 3;
    int j_max = 0;
    int rho_factor = 1;
};

void apply(PointDraft& p, const std::string& param, const std::string& value,
           std::vector<std::string>& issues) {
    const std::string where = "sweep." + param;
    auto as_int = [&]() -> std::optional<int> {
        auto v = text::parse_number<int>(value);
        if (!v) issues.push_back(where + ": '" + value + "' is not an integer");
        return v;
    };
    auto as_double = [&]() -> std::optional<double> {
        auto v = text::parse_number<double>(value);
        if (!v) issues.push_back(where + ": '" + value + "' is not a number");
        return v;
    };
    if (param == "j_max") {
        if (auto v = as_int()) p.j_max = *v;
    } else if (param == "rho_factor") {
        if (auto v = as_int()) p.rho_factor = *v;
    } else if (param == "antennas") {
        if (auto v = as_int()) p.sensing.n_antennas = *v;
    } else if (param == "feedback_ms") {
        if (auto v = as_double()) p.frame.feedback_duration = *v * 1e-3;
    } else if (param == "k") {
        if (auto v = as_int()) p.k = *v;
    } else if (param == "n_subnets") {
        if (auto v = as_int()) p.deploy.n_subnets = *v;
    } else if (param == "rician_k") {
        if (auto v = as_double()) p.channel.rician_k = *v;
    } else if (param == "channel") {
        if (auto f = parse_fading(value))
            p.channel.kind = *f;
        else
            issues.push_back(where + ": unknown channel '" + value + "'");
    } else {
        issues.push_back(where + ": unknown sweep parameter");
    }
}

// Odometer step over the cartesian product, last axis fastest.
bool advance(std::vector<std::size_t>& idx, const std::vector<SweepAxis>& sweep) {
    for (std::size_t a = sweep.size(); a-- > 0;) {
        if (++idx[a] < sweep[a].values.size()) return true;
        idx[a] = 0;
    }
    return false;
}

}  // namespace

std::vector<SweepPoint> resolve_points(const ExperimentConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.sweep.empty()) issues.push_back("sweep: must contain at least one axis");
    for (const auto& axis : cfg.sweep)
        if (axis.values.empty()) issues.push_back("sweep." + axis.param + ": no values");
    if (!issues.empty()) throw ConfigError(std::move(issues));

    std::vector<std::size_t> idx(cfg.sweep.size(), 0);
    std::vector<SweepPoint> points;
    do {
        PointDraft d;
        d.deploy = cfg.deploy;
        d.sensing = cfg.sensing;
        d.frame = cfg.frame;
        d.channel = cfg.channel;
        d.k = cfg.k;
        d.j_max = cfg.j_max;
        d.rho_factor = cfg.rho_factor;
        for (std::size_t a = 0; a < cfg.sweep.size(); ++a) {
            const auto& axis = cfg.sweep[a];
            const auto& value = axis.values[idx[a]];
            apply(d, axis.param, value, issues);
            if (!d.label.empty()) d.label += ';';
            d.label += axis.param + "=" + value;
        }

        const std::string at = " (at " + d.label + ")";
        if (d.rho_factor < 1) issues.push_back("rho_factor: must be >= 1" + at);
        d.frame.sensing_rbs_per_iter = d.rho_factor * d.k;
        if (d.k < 3) issues.push_back("k: must be >= 3" + at);
        if (d.deploy.n_subnets < d.k) issues.push_back("deploy.n_subnets: must be >= k" + at);
        auto collect = [&](auto&& fn) {
            try {
                fn();
            } catch (const ConfigError& e) {
                for (const auto& s : e.issues()) issues.push_back(s + at);
            }
        };
        collect([&] { d.deploy.validate(); });
        collect([&] { d.sensing.validate(); });
        if (d.k >= 1) collect([&] { d.frame.validate(d.k); });
        if (d.channel.rician_k < 0.0) issues.push_back("channel.rician_k: must be >= 0" + at);
        const int bound = (d.frame.sense_duration > 0.0) ? max_iterations(d.frame) : 0;
        if (bound < 1) issues.push_back("frame: time budget admits no sensing iteration" + at);
        if (d.j_max == 0) d.j_max = bound;
        if (d.j_max < 1 || d.j_max > bound)
            issues.push_back("j_max: must lie in [1, " + std::to_string(bound) + "]" + at);

        SweepPoint p;
        p.label = d.label;
        p.deploy = d.deploy;
        p.sensing = d.sensing;
        p.frame = d.frame;
        p.channel = d.channel;
        p.k = d.k;
        p.j_max = d.j_max;
        points.push_back(std::move(p));

    } while (advance(idx, cfg.sweep));
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return points;
}

void validate(const ExperimentConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.trials < 1) issues.push_back("trials: must be >= 1");
    if (cfg.strategies.empty()) issues.push_back("strategies: must list at least one strategy");
    auto collect = [&](auto&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            issues.insert(issues.end(), e.issues().begin(), e.issues().end());
        }
    };
    collect([&] { cfg.comms.validate(); });
    collect([&] { cfg.wls.validate(); });
    collect([&] { resolve_points(cfg); });
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    std::vector<SummaryRow> rows;
    std::map<std::pair<std::string, Strategy>, std::size_t> index;
    std::vector<std::vector<double>> errors;
    std::vector<std::vector<int>> iterations;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.sweep_point, r.strategy);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, rows.size()).first;
            rows.push_back({r.sweep_point, r.strategy, {}});
            errors.emplace_back();
            iterations.emplace_back();
        }
        auto& row = rows[it->second];
        if (r.failed) {
            ++row.stats.failed;
            continue;
        }
        errors[it->second].push_back(r.abs_error);
        iterations[it->second].push_back(r.iterations_used);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& s = rows[i].stats;
        const auto& e = errors[i];
        s.count = static_cast<int>(e.size());
        if (e.empty()) {
            s.mean = s.ci90_low = s.ci90_high = std::nan("");
            continue;
        }
        double sum = 0.0;
        for (double v : e) sum += v;
        s.mean = sum / static_cast<double>(e.size());
        if (e.size() >= 2) {
            std::tie(s.ci90_low, s.ci90_high) = confidence_interval_90(e);
        } else {
            s.ci90_low = s.ci90_high = s.mean;
        }
        s.cdf_points = empirical_cdf(iterations[i]);
    }
    return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers) {
    validate(cfg);
    ExperimentResult result;
    result.config = cfg;
    result.points = resolve_points(cfg);

    const auto n_points = result.points.size();
    const auto n_strat = cfg.strategies.size();
    const auto n_trials = static_cast<std::size_t>(cfg.trials);

    // slot[(point * n_strat + strategy) * n_trials + trial]
    std::vector<TrialRecord> slots(n_points * n_strat * n_trials);
    std::vector<double> rates(n_points * n_trials, 0.0);
    std::vector<double> losses(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        const auto& pt = result.points[p];
        losses[p] = quantize(average_throughput_loss(pt.frame, pt.k, pt.j_max));
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= n_trials) return;
            try {
                const Rng base = trial_rng(cfg.seed, t);
                for (std::size_t p = 0; p < n_points; ++p) {
                    const auto& pt = result.points[p];
                    Rng rng = base;
                    const Scene scene = generate_scene(pt.deploy, rng);
                    const std::vector<double> powers(scene.size(), pt.sensing.tx_power);
                    rates[p * n_trials + t] = sum_rate(scene, powers, cfg.comms);
                    for (std::size_t s = 0; s < n_strat; ++s) {
                        Rng trial = rng;
                        TrialRecord& rec = slots[(p * n_strat + s) * n_trials + t];
                        rec.trial_id = static_cast<int>(t);
                        rec.strategy = cfg.strategies[s];
                        rec.sweep_point = pt.label;
                        rec.throughput_loss = losses[p];
                        try {
                            const auto out = run_localization(scene, pt.sensing, pt.channel, pt.frame,
                                                              pt.k, cfg.strategies[s], cfg.wls, trial,
                                                              pt.j_max);
                            rec.abs_error = quantize(out.abs_error);
                            rec.iterations_used = out.iterations_used;
                            rec.converged = out.converged;
                            rec.clamped_measurements = out.clamped_measurements;
                        } catch (const NoFeasibleSubset&) {
                            rec.failed = true;
                            rec.abs_error = std::nan("");
                        }
                    }
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n_trials);
                return;
            }
        }
    };

    const int n_workers = std::max(1, workers);
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);

    result.records = std::move(slots);
    result.summary = summarize(result.records);
    for (std::size_t p = 0; p < n_points; ++p) {
        double r0 = 0.0;
        for (std::size_t t = 0; t < n_trials; ++t) r0 += rates[p * n_trials + t];
        r0 /= static_cast<double>(n_trials);
        result.throughput.push_back({result.points[p].label, losses[p], r0, r0 * (1.0 - losses[p])});
    }
    return result;
}

}  // namespace isac
