// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/random.hpp"
#include "isac/types.hpp"

#include <cstdint>
#include <vector>

namespace isac {

struct DeployConfig {
    int n_subnets = 40;
    int users_per_subnet = 5;
    double area_side = 200.0;
    double user_r_min = 2.0;
    double user_r_max = 6.0;
    std::uint64_t seed = 0;

    /// Throws ConfigError listing every violated field.
    void validate() const;
};

/// Deployment snapshot. Treated as immutable once generated.
struct Scene {
    std::vector<Point2d> subnet_positions;
    std::vector<std::vector<Point2d>> user_positions;
    Point2d target = Point2d::Zero();
    double area_side = 0.0;

    int size() const { return static_cast<int>(subnet_positions.size()); }
};

/// Uniform APs and target over the square, users uniform by area over an annulus
/// around their AP. Seeds its own generator from cfg.seed.
Scene generate_scene(const DeployConfig& cfg);

/// Same sampling, drawing from a caller-owned trial generator.
Scene generate_scene(const DeployConfig& cfg, Rng& rng);

}  // namespace isac
