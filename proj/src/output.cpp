// SPDX-License-Identifier: Apache-2.0
#include "isac/output.hpp"

#include "isac/config.hpp"
#include "text.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isac {

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string records_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << kRecordsHeader << "\n";
    for (const auto& r : records) {
        out << r.trial_id << ',' << to_string(r.strategy) << ',' << r.sweep_point << ','
            << (r.failed ? std::string("nan") : format_number(r.abs_error)) << ','
            << r.iterations_used << ',' << (r.converged ? 1 : 0) << ',' << r.clamped_measurements
            << ',' << format_number(r.throughput_loss) << "\n";
    }
    return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << kSummaryHeader << "\n";
    for (const auto& row : rows) {
        const auto& s = row.stats;
        out << row.sweep_point << ',' << to_string(row.strategy) << ',' << format_number(s.mean) << ','
            << format_number(s.ci90_low) << ',' << format_number(s.ci90_high) << ',' << s.count << "\n";
    }
    return out.str();
}

std::string meta_json(const ExperimentResult& result) {
    using nlohmann::ordered_json;
    const auto& c = result.config;
    ordered_json meta;
    meta["artifact_version"] = kArtifactVersion;
    meta["experiment"] = std::string(to_string(c.experiment));
    meta["seed"] = c.seed;
    meta["trials"] = c.trials;
    meta["seed_rule"] = "mt19937_64 seeded with splitmix64(seed ^ splitmix64(trial_id))";
    meta["ci_method"] = "normal approximation, mean +/- 1.645 * sample_std / sqrt(n)";
    meta["throughput_loss"] = "j_max * rho / (slots_per_frame * rbs_per_slot_grid)";
    meta["config"] = render_config(c);

    ordered_json points = ordered_json::array();
    for (const auto& p : result.points) {
        ordered_json jp;
        jp["label"] = p.label;
        jp["k"] = p.k;
        jp["j_max"] = p.j_max;
        jp["rho"] = p.frame.sensing_rbs_per_iter;
        jp["n_subnets"] = p.deploy.n_subnets;
        jp["n_antennas"] = p.sensing.n_antennas;
        jp["channel"] = std::string(to_string(p.channel.kind));
        jp["rician_k"] = p.channel.rician_k;
        jp["coherence"] = std::string(to_string(p.channel.coherence));
        jp["feedback_duration_s"] = p.frame.feedback_duration;
        points.push_back(std::move(jp));
    }
    meta["points"] = std::move(points);

    ordered_json failed = ordered_json::array();
    for (const auto& row : result.summary) {
        if (row.stats.failed == 0) continue;
        failed.push_back({{"sweep_point", row.sweep_point},
                          {"strategy", std::string(to_string(row.strategy))},
                          {"failed", row.stats.failed}});
    }
    meta["failed_trials"] = std::move(failed);
    return meta.dump(2) + "\n";
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "records.csv", records_csv(result.records));
    write_file(dir / "summary.csv", summary_csv(result.summary));

    std::ostringstream cdf;
    cdf << "sweep_point,strategy,iterations,fraction\n";
    for (const auto& row : result.summary)
        for (const auto& [iters, frac] : row.stats.cdf_points)
            cdf << row.sweep_point << ',' << to_string(row.strategy) << ',' << iters << ','
                << format_number(frac) << "\n";
    write_file(dir / "cdf.csv", cdf.str());

    std::ostringstream tput;
    tput << "sweep_point,loss,sum_rate_ideal_bps,sum_rate_effective_bps\n";
    for (const auto& t : result.throughput)
        tput << t.sweep_point << ',' << format_number(t.loss) << ',' << format_number(t.sum_rate_ideal)
             << ',' << format_number(t.sum_rate_effective) << "\n";
    write_file(dir / "throughput.csv", tput.str());

    write_file(dir / "meta.json", meta_json(result));
}

std::vector<TrialRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kRecordsHeader)
        throw std::runtime_error(path.string() + ": unexpected header");
    std::vector<TrialRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_fields(line);
        auto bad = [&] { return std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed row"); };
        if (f.size() != 8) throw bad();
        TrialRecord r;
        auto id = text::parse_number<int>(f[0]);
        auto st = parse_strategy(f[1]);
        auto iters = text::parse_number<int>(f[4]);
        auto conv = text::parse_number<int>(f[5]);
        auto clamped = text::parse_number<int>(f[6]);
        auto loss = text::parse_number<double>(f[7]);
        if (!id || !st || !iters || !conv || !clamped || !loss) throw bad();
        r.trial_id = *id;
        r.strategy = *st;
        r.sweep_point = f[2];
        if (f[3] == "nan") {
            r.failed = true;
            r.abs_error = std::nan("");
        } else {
            auto err = text::parse_number<double>(f[3]);
            if (!err) throw bad();
            r.abs_error = *err;
        }
        r.iterations_used = *iters;
        r.converged = *conv != 0;
        r.clamped_measurements = *clamped;
        r.throughput_loss = *loss;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace isac
