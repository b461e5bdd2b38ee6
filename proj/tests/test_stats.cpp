// SPDX-License-Identifier: Apache-2.0
#include "isac/stats.hpp"

#include "isac/random.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace isac;

TEST_CASE("90% confidence interval") {
    const std::vector<double> two{0.0, 2.0};
    const auto [lo, hi] = confidence_interval_90(two);
    // mean 1, s = sqrt(2), half width 1.645 * sqrt(2) / sqrt(2).
    CHECK(lo == doctest::Approx(-0.645).epsilon(1e-12));
    CHECK(hi == doctest::Approx(2.645).epsilon(1e-12));

    const std::vector<double> flat(10, 3.5);
    const auto [a, b] = confidence_interval_90(flat);
    CHECK(a == 3.5);
    CHECK(b == 3.5);

    CHECK_THROWS_AS(confidence_interval_90(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("interval width shrinks as 1/sqrt(n) for normal samples") {
    Rng rng(1);
    std::normal_distribution<double> g(5.0, 2.0);
    std::vector<double> v(100000);
    for (auto& x : v) x = g(rng);
    const auto [lo, hi] = confidence_interval_90(v);
    CHECK((hi - lo) / 2.0 == doctest::Approx(1.645 * 2.0 / std::sqrt(1e5)).epsilon(0.02));
    CHECK(std::abs((lo + hi) / 2.0 - 5.0) < 0.03);
}

TEST_CASE("empirical CDF") {
    const std::vector<int> s{3, 1, 2, 2, 5};
    const auto cdf = empirical_cdf(s);
    REQUIRE(cdf.size() == 4);
    CHECK(cdf[0] == std::pair<int, double>{1, 0.2});
    CHECK(cdf[1] == std::pair<int, double>{2, 0.6});
    CHECK(cdf[2] == std::pair<int, double>{3, 0.8});
    CHECK(cdf[3] == std::pair<int, double>{5, 1.0});

    const std::vector<int> same(7, 4);
    CHECK(empirical_cdf(same) == std::vector<std::pair<int, double>>{{4, 1.0}});
    CHECK_THROWS_AS(empirical_cdf(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("nine significant digits") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1234567891234) == "0.123456789");
    CHECK(format_number(123456789012.0) == "1.23456789e+11");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(quantize(0.1234567891234) == 0.123456789);
    CHECK(quantize(quantize(3.14159265358979)) == quantize(3.14159265358979));
    CHECK(std::isnan(quantize(std::nan(""))));
    CHECK(std::isinf(quantize(INFINITY)));

    Rng rng(2);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::pow(10.0, u(rng));
        CHECK(std::abs(quantize(v) - v) <= 5e-9 * v);
        CHECK(std::stod(format_number(v)) == quantize(v));
    }
}
