// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace isac {

inline constexpr const char* kArtifactVersion = "0.1.0";

inline constexpr const char* kRecordsHeader =
    "trial_id,strategy,sweep_point,abs_error_m,iterations,converged,clamped,loss";
inline constexpr const char* kSummaryHeader = "sweep_point,strategy,mean,ci90_low,ci90_high,count";

/// Writes records.csv, summary.csv, cdf.csv, throughput.csv and meta.json into `dir`.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// Parses a records.csv written by write_outputs. Failed trials carry abs_error "nan".
std::vector<TrialRecord> read_records(const std::filesystem::path& path);

/// records.csv / summary.csv bodies, exposed for tests.
std::string records_csv(const std::vector<TrialRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// meta.json document: resolved config, points, seed, version and CI method.
std::string meta_json(const ExperimentResult& result);

}  // namespace isac
