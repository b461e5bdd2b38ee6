// SPDX-License-Identifier: Apache-2.0
#include "isac/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace isac {

void DeployConfig::validate() const {
    std::vector<std::string> issues;
    if (n_subnets < 1) issues.push_back("deploy.n_subnets: must be >= 1");
    if (users_per_subnet < 0) issues.push_back("deploy.users_per_subnet: must be >= 0");
    if (!(area_side > 0.0)) issues.push_back("deploy.area_side: must be > 0");
    if (!(user_r_min > 0.0)) issues.push_back("deploy.user_r_min: must be > 0");
    if (!(user_r_max > user_r_min)) issues.push_back("deploy.user_r_max: must exceed user_r_min");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

Scene generate_scene(const DeployConfig& cfg) {
    Rng rng(cfg.seed);
    return generate_scene(cfg, rng);
}

Scene generate_scene(const DeployConfig& cfg, Rng& rng) {
    cfg.validate();

    std::uniform_real_distribution<double> coord(0.0, cfg.area_side);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Scene scene;
    scene.area_side = cfg.area_side;
    scene.subnet_positions.reserve(cfg.n_subnets);
    for (int n = 0; n < cfg.n_subnets; ++n) {
        const double x = coord(rng);
        const double y = coord(rng);
        scene.subnet_positions.emplace_back(x, y);
    }
    {
        const double x = coord(rng);
        const double y = coord(rng);
        scene.target = Point2d(x, y);
    }

    // r^2 uniform on [r_min^2, r_max^2] gives density proportional to r
    const double r2_lo = cfg.user_r_min * cfg.user_r_min;
    const double r2_hi = cfg.user_r_max * cfg.user_r_max;
    scene.user_positions.resize(cfg.n_subnets);
    for (int n = 0; n < cfg.n_subnets; ++n) {
        auto& users = scene.user_positions[n];
        users.reserve(cfg.users_per_subnet);
        for (int u = 0; u < cfg.users_per_subnet; ++u) {
            const double r = std::sqrt(r2_lo + unit(rng) * (r2_hi - r2_lo));
            const double theta = 2.0 * std::numbers::pi * unit(rng);
            const double rr = std::clamp(r, cfg.user_r_min, cfg.user_r_max);
            users.push_back(scene.subnet_positions[n] +
                            rr * Point2d(std::cos(theta), std::sin(theta)));
        }
    }
    return scene;
}

}  // namespace isac
