// SPDX-License-Identifier: Apache-2.0
#include "isac/config.hpp"

#include "text.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace isac {

namespace pt = boost::property_tree;

ExperimentConfig preset(Experiment experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    const auto all = std::vector<Strategy>{Strategy::Proposed, Strategy::Benchmark1,
                                           Strategy::Benchmark2, Strategy::Benchmark3};
    switch (experiment) {
        case Experiment::ErrorVsIterations:
            cfg.strategies = all;
            cfg.channel.kind = Fading::Awgn;
            cfg.sweep = {{"rho_factor", {"1", "2"}}, {"j_max", {"1", "2", "3", "4", "5"}}};
            break;
        case Experiment::ErrorVsAntennas:
            cfg.sweep = {{"channel", {"rayleigh", "rician"}},
                         {"antennas", {"1", "2", "4", "8", "16", "32", "64"}}};
            break;
        case Experiment::ConvergenceCdf:
            cfg.sweep = {{"channel", {"rayleigh", "rician"}}, {"antennas", {"1", "2", "4", "8"}}};
            break;
        case Experiment::TradeoffVsFeedback:
            cfg.sweep = {{"channel", {"awgn", "rician", "rayleigh"}},
                         {"k", {"3", "4"}},
                         {"feedback_ms", {"0", "1", "2", "3", "4", "5"}}};
            break;
        case Experiment::Custom:
            break;
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (Experiment e : {Experiment::ErrorVsIterations, Experiment::ErrorVsAntennas,
                         Experiment::ConvergenceCdf, Experiment::TradeoffVsFeedback, Experiment::Custom})
        out.emplace_back(to_string(e));
    return out;
}

namespace {

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

using Setter = std::function<std::optional<std::string>(const std::string&)>;

template <typename T>
Setter number(T& field) {
    return [&field](const std::string& v) -> std::optional<std::string> {
        if (auto x = text::parse_number<T>(v)) {
            field = *x;
            return std::nullopt;
        }
        return "'" + v + "' is not a valid number";
    };
}

Setter converted(double& field, double (*convert)(double)) {
    return [&field, convert](const std::string& v) -> std::optional<std::string> {
        if (auto x = text::parse_number<double>(v)) {
            field = convert(*x);
            return std::nullopt;
        }
        return "'" + v + "' is not a valid number";
    };
}

std::map<std::string, Setter> setters(ExperimentConfig& c) {
    std::map<std::string, Setter> s;
    s["trials"] = number(c.trials);
    s["seed"] = number(c.seed);
    s["k"] = number(c.k);
    s["j_max"] = number(c.j_max);
    s["rho_factor"] = number(c.rho_factor);
    s["strategies"] = [&c](const std::string& v) -> std::optional<std::string> {
        c.strategies.clear();
        for (const auto& name : text::split_list(v)) {
            auto st = parse_strategy(name);
            if (!st) return "unknown strategy '" + name + "'";
            c.strategies.push_back(*st);
        }
        return std::nullopt;
    };

    s["deploy.n_subnets"] = number(c.deploy.n_subnets);
    s["deploy.users_per_subnet"] = number(c.deploy.users_per_subnet);
    s["deploy.area_side"] = number(c.deploy.area_side);
    s["deploy.user_r_min"] = number(c.deploy.user_r_min);
    s["deploy.user_r_max"] = number(c.deploy.user_r_max);

    s["sensing.tx_power"] = number(c.sensing.tx_power);
    s["sensing.tx_power_dbm"] = converted(c.sensing.tx_power, dbm_to_watts);
    s["sensing.g_t"] = number(c.sensing.g_t);
    s["sensing.g_t_db"] = converted(c.sensing.g_t, db_to_linear);
    s["sensing.g_r"] = number(c.sensing.g_r);
    s["sensing.g_r_db"] = converted(c.sensing.g_r, db_to_linear);
    s["sensing.rcs"] = number(c.sensing.rcs);
    s["sensing.rcs_db"] = converted(c.sensing.rcs, db_to_linear);
    s["sensing.wavelength"] = number(c.sensing.wavelength);
    s["sensing.noise_power"] = number(c.sensing.noise_power);
    s["sensing.noise_power_dbm"] = converted(c.sensing.noise_power, dbm_to_watts);
    s["sensing.pilots_per_rb"] = number(c.sensing.pilots_per_rb);
    s["sensing.n_antennas"] = number(c.sensing.n_antennas);

    s["channel.kind"] = [&c](const std::string& v) -> std::optional<std::string> {
        if (auto f = parse_fading(v)) {
            c.channel.kind = *f;
            return std::nullopt;
        }
        return "unknown channel '" + v + "'";
    };
    s["channel.rician_k"] = number(c.channel.rician_k);
    s["channel.rician_k_db"] = converted(c.channel.rician_k, db_to_linear);
    s["channel.coherence"] = [&c](const std::string& v) -> std::optional<std::string> {
        if (auto co = parse_coherence(v)) {
            c.channel.coherence = *co;
            return std::nullopt;
        }
        return "expected per-antenna or per-element, got '" + v + "'";
    };

    s["frame.frame_duration"] = number(c.frame.frame_duration);
    s["frame.slots_per_frame"] = number(c.frame.slots_per_frame);
    s["frame.rbs_per_slot_grid"] = number(c.frame.rbs_per_slot_grid);
    s["frame.sense_duration"] = number(c.frame.sense_duration);
    s["frame.feedback_duration"] = number(c.frame.feedback_duration);
    s["frame.time_budget"] = number(c.frame.time_budget);
    s["frame.slot_duration"] = number(c.frame.slot_duration);

    s["comms.per_user_bandwidth"] = number(c.comms.per_user_bandwidth);
    s["comms.user_noise_power"] = number(c.comms.user_noise_power);
    s["comms.user_noise_power_dbm"] = converted(c.comms.user_noise_power, dbm_to_watts);
    s["comms.total_bandwidth"] = number(c.comms.total_bandwidth);
    s["comms.wavelength"] = number(c.comms.wavelength);

    s["wls.epsilon"] = number(c.wls.epsilon);
    s["wls.max_iters"] = number(c.wls.max_iters);
    s["wls.grid_step"] = number(c.wls.grid_step);
    s["wls.grid_seeds"] = number(c.wls.grid_seeds);
    s["wls.init_mode"] = [&c](const std::string& v) -> std::optional<std::string> {
        if (v == "grid-search") c.wls.init_mode = InitMode::GridSearch;
        else if (v == "centroid-of-subset") c.wls.init_mode = InitMode::CentroidOfSubset;
        else if (v == "fixed-point") c.wls.init_mode = InitMode::FixedPoint;
        else if (v == "warm-start") c.wls.init_mode = InitMode::WarmStart;
        else return "unknown init mode '" + v + "'";
        return std::nullopt;
    };
    return s;
}

// Strips a unit suffix so "sensing.tx_power_dbm" and "sensing.tx_power" collide.
std::string base_key(const std::string& key) {
    for (const char* suffix : {"_dbm", "_db"}) {
        const std::string sfx(suffix);
        if (key.size() > sfx.size() && key.compare(key.size() - sfx.size(), sfx.size(), sfx) == 0)
            return key.substr(0, key.size() - sfx.size());
    }
    return key;
}

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError({"line " + std::to_string(e.line()) + ": " + e.message()});
    }

    std::vector<std::string> issues;
    Experiment experiment = Experiment::Custom;
    if (auto name = tree.get_optional<std::string>("experiment")) {
        if (auto e = parse_experiment(std::string(text::trim(*name))))
            experiment = *e;
        else
            issues.push_back("experiment: unknown experiment '" + *name + "'");
    }
    ExperimentConfig cfg = preset(experiment);
    auto table = setters(cfg);

    std::set<std::string> seen_base;
    std::vector<SweepAxis> sweep;
    bool has_sweep = false;
    auto assign = [&](const std::string& key, const std::string& raw) {
        const std::string value(text::trim(raw));
        auto it = table.find(key);
        if (it == table.end()) {
            issues.push_back(key + ": unknown key");
            return;
        }
        if (!seen_base.insert(base_key(key)).second) {
            issues.push_back(key + ": given more than once (possibly with another unit suffix)");
            return;
        }
        if (auto err = it->second(value)) issues.push_back(key + ": " + *err);
    };

    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            if (name != "experiment") assign(name, node.data());
            continue;
        }
        if (name == "sweep") {
            has_sweep = true;
            for (const auto& [param, value] : node)
                sweep.push_back({param, text::split_list(value.data())});
            continue;
        }
        for (const auto& [key, value] : node) assign(name + "." + key, value.data());
    }
    if (has_sweep) cfg.sweep = std::move(sweep);
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
    return parse_config(in);
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "experiment = " << to_string(c.experiment) << "\n";
    out << "trials = " << c.trials << "\n";
    out << "seed = " << c.seed << "\n";
    out << "k = " << c.k << "\n";
    out << "j_max = " << c.j_max << "\n";
    out << "rho_factor = " << c.rho_factor << "\n";
    out << "strategies = ";
    for (std::size_t i = 0; i < c.strategies.size(); ++i)
        out << (i ? "," : "") << to_string(c.strategies[i]);
    out << "\n\n[deploy]\n"
        << "n_subnets = " << c.deploy.n_subnets << "\n"
        << "users_per_subnet = " << c.deploy.users_per_subnet << "\n"
        << "area_side = " << exact(c.deploy.area_side) << "\n"
        << "user_r_min = " << exact(c.deploy.user_r_min) << "\n"
        << "user_r_max = " << exact(c.deploy.user_r_max) << "\n";
    out << "\n[sensing]\n"
        << "tx_power = " << exact(c.sensing.tx_power) << "\n"
        << "g_t = " << exact(c.sensing.g_t) << "\n"
        << "g_r = " << exact(c.sensing.g_r) << "\n"
        << "rcs = " << exact(c.sensing.rcs) << "\n"
        << "wavelength = " << exact(c.sensing.wavelength) << "\n"
        << "noise_power = " << exact(c.sensing.noise_power) << "\n"
        << "pilots_per_rb = " << c.sensing.pilots_per_rb << "\n"
        << "n_antennas = " << c.sensing.n_antennas << "\n";
    out << "\n[channel]\n"
        << "kind = " << to_string(c.channel.kind) << "\n"
        << "rician_k = " << exact(c.channel.rician_k) << "\n"
        << "coherence = " << to_string(c.channel.coherence) << "\n";
    out << "\n[frame]\n"
        << "frame_duration = " << exact(c.frame.frame_duration) << "\n"
        << "slots_per_frame = " << c.frame.slots_per_frame << "\n"
        << "rbs_per_slot_grid = " << c.frame.rbs_per_slot_grid << "\n"
        << "sense_duration = " << exact(c.frame.sense_duration) << "\n"
        << "feedback_duration = " << exact(c.frame.feedback_duration) << "\n"
        << "time_budget = " << exact(c.frame.time_budget) << "\n"
        << "slot_duration = " << exact(c.frame.slot_duration) << "\n";
    out << "\n[comms]\n"
        << "per_user_bandwidth = " << exact(c.comms.per_user_bandwidth) << "\n"
        << "user_noise_power = " << exact(c.comms.user_noise_power) << "\n"
        << "total_bandwidth = " << exact(c.comms.total_bandwidth) << "\n"
        << "wavelength = " << exact(c.comms.wavelength) << "\n";
    out << "\n[wls]\n"
        << "epsilon = " << exact(c.wls.epsilon) << "\n"
        << "max_iters = " << c.wls.max_iters << "\n"
        << "grid_step = " << exact(c.wls.grid_step) << "\n"
        << "grid_seeds = " << c.wls.grid_seeds << "\n"
        << "init_mode = " << to_string(c.wls.init_mode) << "\n";
    if (!c.sweep.empty()) {
        out << "\n[sweep]\n";
        for (const auto& axis : c.sweep) {
            out << axis.param << " = ";
            for (std::size_t i = 0; i < axis.values.size(); ++i) out << (i ? "," : "") << axis.values[i];
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace isac
