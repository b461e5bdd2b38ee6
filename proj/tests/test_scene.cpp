// SPDX-License-Identifier: Apache-2.0
#include "isac/scene.hpp"

#include <doctest.h>

using namespace isac;

namespace {

bool in_square(const Point2d& p, double side) {
    return p.x() >= 0.0 && p.y() >= 0.0 && p.x() <= side && p.y() <= side;
}

}  // namespace

TEST_CASE("distance") {
    CHECK(distance(Point2d(0, 0), Point2d(0, 0)) == 0.0);
    CHECK(distance(Point2d(0, 0), Point2d(3, 4)) == 5.0);
    CHECK(distance(Point2d(1, 1), Point2d(4, 5)) == 5.0);
    CHECK(distance(Point2d(4, 5), Point2d(1, 1)) == 5.0);
}

TEST_CASE("single subnetwork scene stays inside the square") {
    DeployConfig cfg;
    cfg.n_subnets = 1;
    cfg.seed = 7;
    const Scene s = generate_scene(cfg);
    REQUIRE(s.size() == 1);
    CHECK(in_square(s.subnet_positions[0], 200.0));
    CHECK(in_square(s.target, 200.0));
    CHECK(s.area_side == 200.0);
}

TEST_CASE("default deployment: 40 APs with 5 users each inside their annulus") {
    DeployConfig cfg;
    cfg.seed = 11;
    const Scene s = generate_scene(cfg);
    REQUIRE(s.subnet_positions.size() == 40);
    REQUIRE(s.user_positions.size() == 40);
    for (int n = 0; n < s.size(); ++n) {
        CHECK(in_square(s.subnet_positions[n], cfg.area_side));
        REQUIRE(s.user_positions[n].size() == 5);
        for (const auto& u : s.user_positions[n]) {
            const double r = distance(u, s.subnet_positions[n]);
            CHECK(r >= 2.0 - 1e-12);
            CHECK(r <= 6.0 + 1e-12);
        }
    }
}

TEST_CASE("scene generation is a pure function of the config") {
    DeployConfig cfg;
    cfg.seed = 99;
    const Scene a = generate_scene(cfg);
    const Scene b = generate_scene(cfg);
    CHECK(a.target == b.target);
    for (int n = 0; n < a.size(); ++n) {
        CHECK(a.subnet_positions[n] == b.subnet_positions[n]);
        for (std::size_t u = 0; u < a.user_positions[n].size(); ++u)
            CHECK(a.user_positions[n][u] == b.user_positions[n][u]);
    }
    cfg.seed = 100;
    const Scene c = generate_scene(cfg);
    CHECK(c.target != a.target);
}

TEST_CASE("AP positions are uniform over the square") {
    DeployConfig cfg;
    cfg.n_subnets = 100000;
    cfg.users_per_subnet = 0;
    cfg.seed = 3;
    const Scene s = generate_scene(cfg);
    double mx = 0.0, my = 0.0;
    for (const auto& p : s.subnet_positions) {
        mx += p.x();
        my += p.y();
    }
    mx /= s.size();
    my /= s.size();
    CHECK(std::abs(mx - 100.0) < 1.0);
    CHECK(std::abs(my - 100.0) < 1.0);
}

TEST_CASE("users are uniform by area over the annulus") {
    // Area-uniform radius on [2, 6]: E[r] = (2/3)(6^3 - 2^3)/(6^2 - 2^2) = 13/3.
    DeployConfig cfg;
    cfg.n_subnets = 2000;
    cfg.users_per_subnet = 50;
    cfg.seed = 5;
    const Scene s = generate_scene(cfg);
    double sum = 0.0;
    int n = 0;
    for (int i = 0; i < s.size(); ++i)
        for (const auto& u : s.user_positions[i]) {
            sum += distance(u, s.subnet_positions[i]);
            ++n;
        }
    CHECK(sum / n == doctest::Approx(13.0 / 3.0).epsilon(0.005));
}

TEST_CASE("invalid deployments are rejected before sampling") {
    DeployConfig cfg;
    cfg.area_side = 0.0;
    CHECK_THROWS_AS(generate_scene(cfg), ConfigError);
    cfg = DeployConfig{};
    cfg.user_r_min = 0.0;
    CHECK_THROWS_AS(generate_scene(cfg), ConfigError);
    cfg = DeployConfig{};
    cfg.user_r_max = cfg.user_r_min;
    CHECK_THROWS_AS(generate_scene(cfg), ConfigError);
    cfg = DeployConfig{};
    cfg.n_subnets = 0;
    CHECK_THROWS_AS(generate_scene(cfg), ConfigError);

    cfg = DeployConfig{};
    cfg.area_side = -1.0;
    cfg.user_r_min = -1.0;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.issues().size() >= 2);
    }
}
