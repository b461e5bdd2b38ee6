// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/experiment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace isac {

/// Defaults for a named experiment: Table-style deployment and radio constants plus
/// the sweep and strategy set of that experiment.
ExperimentConfig preset(Experiment experiment);

/// All preset names, in display order.
std::vector<std::string> preset_names();

/// Parses the INI-style key/value format. `experiment` selects the preset that the
/// remaining keys override; a [sweep] section replaces the preset's sweep entirely.
/// Keys ending in `_dbm` / `_db` are converted to watts / linear at parse time.
/// Throws ConfigError with every offending key.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Renders a configuration back into the same format (linear units).
std::string render_config(const ExperimentConfig& cfg);

}  // namespace isac
