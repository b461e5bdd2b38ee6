// SPDX-License-Identifier: Apache-2.0
#include "isac/wls.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace isac;

namespace {

PointSet<double> rows(const std::vector<Point2d>& pts) {
    PointSet<double> out(static_cast<Eigen::Index>(pts.size()), 2);
    for (std::size_t i = 0; i < pts.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    return out;
}

VectorX<double> vec(const std::vector<double>& v) {
    return Eigen::Map<const VectorX<double>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> exact_ranges(const Point2d& q, const std::vector<Point2d>& anchors) {
    std::vector<double> out;
    for (const auto& a : anchors) out.push_back((q - a).norm());
    return out;
}

struct Instance {
    std::vector<Point2d> anchors;
    std::vector<double> ranges;
    std::vector<double> crlbs;
    Point2d target;
};

// Random anchors over the area, target kept away from the edges, log-uniform CRLBs.
Instance random_instance(Rng& rng, int n, double noise) {
    std::uniform_real_distribution<double> u(0.0, 200.0), inner(20.0, 180.0), lc(-4.0, -1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    Instance in;
    in.target = Point2d(inner(rng), inner(rng));
    for (int i = 0; i < n; ++i) {
        in.anchors.emplace_back(u(rng), u(rng));
        const double c = std::pow(10.0, lc(rng));
        in.crlbs.push_back(c);
        in.ranges.push_back((in.target - in.anchors.back()).norm() + noise * std::sqrt(c) * g(rng));
    }
    return in;
}

}  // namespace

TEST_CASE("residuals and objective") {
    const std::vector<Point2d> a{{0, 0}, {10, 0}, {0, 10}};
    const auto e = residuals(Point2d(3, 4), rows(a), vec({6.0, 8.0, 7.0}));
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e[1] == doctest::Approx(8.0 - std::sqrt(65.0)).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(7.0 - std::sqrt(45.0)).epsilon(1e-14));
    const double f = wls_objective(Point2d(3, 4), rows(a), vec({6.0, 8.0, 7.0}), vec({0.5, 1.0, 2.0}));
    CHECK(f == doctest::Approx(e[0] * e[0] / 0.5 + e[1] * e[1] + e[2] * e[2] / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(residuals(Point2d(3, 4), rows(a), vec({6.0, 8.0})), std::invalid_argument);
}

TEST_CASE("Gauss-Newton step solves the linearised normal equations") {
    Rng rng(12);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<Point2d> a;
        std::vector<double> r, c;
        for (int i = 0; i < 5; ++i) {
            a.emplace_back(u(rng), u(rng));
            r.push_back(u(rng));
            c.push_back(0.01 + u(rng) / 100.0);
        }
        const Point2d q(u(rng), u(rng));
        const auto anchors = rows(a);
        const Point2d step = gauss_newton_step(q, anchors, vec(r), vec(c));

        // Jacobian of the residuals by central differences is -H.
        Eigen::Matrix<double, Eigen::Dynamic, 2> jac(5, 2);
        const double h = 1e-6;
        for (int k = 0; k < 2; ++k) {
            Point2d dq = Point2d::Zero();
            dq[k] = h;
            jac.col(k) = (residuals(Point2d(q + dq), anchors, vec(r)) - residuals(Point2d(q - dq), anchors, vec(r))) / (2 * h);
        }
        CHECK((jac + geometry_matrix(q, anchors)).norm() < 1e-7);

        const VectorX<double> w = vec(c).cwiseInverse();
        const VectorX<double> lin = residuals(q, anchors, vec(r)) + jac * step;
        const Point2d gradient = jac.transpose() * w.asDiagonal() * lin;
        CHECK(gradient.norm() < 1e-6 * (1.0 + (jac.transpose() * w.asDiagonal() * residuals(q, anchors, vec(r))).norm()));
    }
}

TEST_CASE("step is singular for collinear anchors through the iterate") {
    const std::vector<Point2d> a{{0, 0}, {10, 0}, {20, 0}};
    CHECK_THROWS_AS(gauss_newton_step(Point2d(30, 0), rows(a), vec({1, 2, 3}), vec({1, 1, 1})), SingularGeometry);
    CHECK_THROWS_AS(gauss_newton_step(Point2d(10, 0), rows(a), vec({1, 2, 3}), vec({1, 1, 1})),
                    DegenerateGeometry);
}

TEST_CASE("noiseless ranges converge to the true position") {
    const std::vector<Point2d> a{{10, 10}, {190, 30}, {80, 170}, {150, 150}};
    const Point2d target(120, 60);
    const auto r = exact_ranges(target, a);
    const std::vector<double> c{0.01, 0.02, 0.05, 0.1};
    const WlsConfig cfg;
    for (const Point2d init : {Point2d(100, 100), Point2d(90, 40), Point2d(150, 90), Point2d(60, 60)}) {
        const auto res = solve_wls(rows(a), vec(r), vec(c), cfg, init);
        CAPTURE(init.transpose());
        CHECK(res.converged);
        CHECK(res.iterations <= cfg.max_iters);
        CHECK((res.estimate - target).norm() < 1e-6);
    }
    const auto [best, f] = oracle::grid_minimum(a, r, c, 0.0, 200.0, 400);
    CHECK((best - target).norm() < 1e-6);
    CHECK(f < 1e-10);
}

TEST_CASE("starting at the solution converges in one iteration") {
    const std::vector<Point2d> a{{0, 0}, {100, 0}, {0, 100}};
    const Point2d target(40, 30);
    const auto res = solve_wls(rows(a), vec(exact_ranges(target, a)), vec({1, 1, 1}), WlsConfig{}, target);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.final_step_norm < 1e-12);
    CHECK((res.estimate - target).norm() < 1e-12);
}

TEST_CASE("an untrusted anchor barely moves the estimate") {
    const std::vector<Point2d> good{{10, 10}, {190, 20}, {100, 180}};
    const Point2d target(90, 80);
    auto r = exact_ranges(target, good);
    r[0] += 0.05;
    r[2] -= 0.03;
    const WlsConfig cfg;
    const auto three = solve_wls(rows(good), vec(r), vec({0.01, 0.01, 0.01}), cfg, Point2d(100, 100));

    std::vector<Point2d> all = good;
    all.emplace_back(170, 170);
    r.push_back((target - all.back()).norm() + 50.0);
    const auto four = solve_wls(rows(all), vec(r), vec({0.01, 0.01, 0.01, 1e6}), cfg, Point2d(100, 100));
    REQUIRE(three.converged);
    REQUIRE(four.converged);
    const double e3 = (three.estimate - target).norm();
    CHECK((four.estimate - target).norm() <= 3.0 * e3);
    CHECK((four.estimate - three.estimate).norm() < 1e-3);
}

TEST_CASE("common CRLB scale leaves the iterates unchanged") {
    Rng rng(5);
    const WlsConfig cfg;
    for (int t = 0; t < 40; ++t) {
        const Instance in = random_instance(rng, 3 + t % 4, 1.0);
        const auto base = solve_wls(rows(in.anchors), vec(in.ranges), vec(in.crlbs), cfg, Point2d(100, 100));
        for (double s : {0.25, 8.0, 1024.0}) {
            const auto scaled =
                solve_wls(rows(in.anchors), vec(in.ranges), VectorX<double>(s * vec(in.crlbs)), cfg, Point2d(100, 100));
            CHECK(scaled.estimate == base.estimate);
            CHECK(scaled.iterations == base.iterations);
        }
        const auto odd =
            solve_wls(rows(in.anchors), vec(in.ranges), VectorX<double>(3.7 * vec(in.crlbs)), cfg, Point2d(100, 100));
        CHECK((odd.estimate - base.estimate).norm() <= 1e-12 * (1.0 + base.estimate.norm()));
    }
}

TEST_CASE("translating anchors and start translates the estimate") {
    Rng rng(6);
    const WlsConfig cfg;
    const Point2d shift(-37.5, 212.25);
    for (int t = 0; t < 40; ++t) {
        const Instance in = random_instance(rng, 4, 1.0);
        std::vector<Point2d> moved;
        for (const auto& a : in.anchors) moved.push_back(a + shift);
        const Point2d init = in.target + Point2d(3, -2);
        const auto a = solve_wls(rows(in.anchors), vec(in.ranges), vec(in.crlbs), cfg, init);
        const auto b = solve_wls(rows(moved), vec(in.ranges), vec(in.crlbs), cfg, Point2d(init + shift));
        CHECK((b.estimate - a.estimate - shift).norm() < 1e-9);
    }
}

TEST_CASE("objective never increases from the starting point") {
    Rng rng(7);
    std::uniform_real_distribution<double> u(0.0, 200.0);
    const WlsConfig cfg;
    for (int t = 0; t < 200; ++t) {
        const Instance in = random_instance(rng, 3 + t % 5, 3.0);
        const Point2d init(u(rng), u(rng));
        const auto res = solve_wls(rows(in.anchors), vec(in.ranges), vec(in.crlbs), cfg, init);
        CHECK(wls_objective(res.estimate, rows(in.anchors), vec(in.ranges), vec(in.crlbs)) <=
              wls_objective(init, rows(in.anchors), vec(in.ranges), vec(in.crlbs)));
        CHECK(res.iterations >= 1);
        CHECK(res.iterations <= cfg.max_iters);
    }
}

TEST_CASE("multi-start matches the brute-force minimiser") {
    Rng rng(8);
    WlsConfig cfg;
    cfg.epsilon = 1e-9;
    int compared = 0;
    for (int t = 0; t < 100; ++t) {
        const Instance in = random_instance(rng, 3 + t % 4, 1.0);
        const auto [best, f] = oracle::grid_minimum(in.anchors, in.ranges, in.crlbs, 0.0, 200.0, 400);
        if ((best.array() < 1.0).any() || (best.array() > 199.0).any()) continue;  // edge minimum
        const auto anchors = rows(in.anchors);
        const auto starts = grid_seeds(anchors, vec(in.ranges), vec(in.crlbs), 200.0, 1.0, 8);
        const auto res = solve_wls_multistart(anchors, vec(in.ranges), vec(in.crlbs), cfg, starts, 200.0);
        CAPTURE(t);
        CHECK(wls_objective(res.estimate, anchors, vec(in.ranges), vec(in.crlbs)) <= f * (1 + 1e-9) + 1e-12);
        CHECK((res.estimate - best).norm() < 1e-6);
        ++compared;
    }
    CHECK(compared >= 90);
}

TEST_CASE("grid seeds are sorted cell-centre local minima") {
    const std::vector<Point2d> a{{10, 10}, {190, 30}, {80, 170}};
    const Point2d target(120.3, 60.8);
    const auto r = vec(exact_ranges(target, a));
    const auto c = vec({1.0, 1.0, 1.0});
    const auto seeds = grid_seeds(rows(a), r, c, 200.0, 1.0, 8);
    REQUIRE_FALSE(seeds.empty());
    CHECK(seeds.size() <= 8);
    CHECK((seeds[0] - target).norm() <= std::sqrt(0.5) + 1e-12);
    for (std::size_t i = 1; i < seeds.size(); ++i)
        CHECK(wls_objective(seeds[i - 1], rows(a), r, c) <= wls_objective(seeds[i], rows(a), r, c));
    for (const auto& s : seeds) {
        CHECK(std::abs(s.x() - std::floor(s.x()) - 0.5) < 1e-12);
        CHECK(std::abs(s.y() - std::floor(s.y()) - 0.5) < 1e-12);
    }
    CHECK(grid_seeds(rows(a), r, c, 200.0, 1.0, 1).size() == 1);

    const auto coarse = grid_seeds(rows(a), r, c, 10.0, 3.0, 100);
    for (const auto& s : coarse) {
        const double i = (s.x() - 1.25) / 2.5, j = (s.y() - 1.25) / 2.5;
        CHECK(std::abs(i - std::round(i)) < 1e-12);
        CHECK(std::abs(j - std::round(j)) < 1e-12);
    }

    CHECK_THROWS_AS(grid_seeds(rows(a), r, c, 0.0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(grid_seeds(rows(a), r, c, 200.0, 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(grid_seeds(rows(a), r, c, 200.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("multi-start prefers an estimate inside the area") {
    // Anchors on a line give mirror-image solutions on either side of it.
    const std::vector<Point2d> a{{0, 0}, {50, 0}, {100, 0}};
    const Point2d target(30, 40);
    const auto r = vec(exact_ranges(target, a));
    const auto c = vec({1.0, 1.0, 1.0});
    const WlsConfig cfg;
    const Point2d below(30, -35), above(30, 35);

    const auto outside = solve_wls_multistart(rows(a), r, c, cfg, {below}, 200.0);
    CHECK(outside.estimate.y() < 0.0);
    const auto chosen = solve_wls_multistart(rows(a), r, c, cfg, {below, above}, 200.0);
    CHECK((chosen.estimate - target).norm() < 1e-6);
    CHECK_THROWS_AS(solve_wls_multistart(rows(a), r, c, cfg, {}, 200.0), std::invalid_argument);
}

TEST_CASE("measurement overload uses the CRLB weights") {
    const std::vector<Point2d> a{{10, 10}, {190, 30}, {80, 170}, {150, 150}};
    const Point2d target(70, 90);
    const auto r = exact_ranges(target, a);
    std::vector<RangeMeasurement> ms;
    for (std::size_t i = 0; i < a.size(); ++i) ms.push_back({static_cast<int>(i), 1.0, r[i] + 0.1 * i, 0.01 * (i + 1), true});
    const auto via_measurements = solve_wls(ms, rows(a), WlsConfig{}, Point2d(100, 100));
    const auto direct = solve_wls(rows(a), vec({r[0], r[1] + 0.1, r[2] + 0.2, r[3] + 0.3}),
                                  vec({0.01, 0.02, 0.03, 0.04}), WlsConfig{}, Point2d(100, 100));
    CHECK(via_measurements.estimate == direct.estimate);
}

TEST_CASE("solver input validation") {
    const std::vector<Point2d> two{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(solve_wls(rows(two), vec({1, 1}), vec({1, 1}), WlsConfig{}, Point2d(5, 5)),
                    std::invalid_argument);
    const std::vector<Point2d> three{{0, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(solve_wls(rows(three), vec({1, 1}), vec({1, 1, 1}), WlsConfig{}, Point2d(5, 5)),
                    std::invalid_argument);

    WlsConfig cfg;
    cfg.epsilon = 0.0;
    cfg.grid_seeds = 0;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.issues().size() == 2);
        CHECK(e.issues()[0] == "wls.epsilon: must be > 0");
        CHECK(e.issues()[1] == "wls.grid_seeds: must be >= 1");
    }
    CHECK(to_string(InitMode::GridSearch) == "grid-search");
    CHECK(to_string(InitMode::WarmStart) == "warm-start");
}
