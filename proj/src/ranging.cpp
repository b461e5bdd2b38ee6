// SPDX-License-Identifier: Apache-2.0
#include "isac/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac {

double estimate_rss(const EchoBlock& block, double noise_power) {
    if (block.samples.size() == 0) throw std::invalid_argument("estimate_rss: empty echo block");
    return block.samples.cwiseAbs2().mean() - noise_power;
}

double rss_floor(const SensingParams& params) {
    return 1e-3 * params.noise_power /
           (static_cast<double>(params.n_antennas) * params.total_pilots());
}

RangeEstimate estimate_range(double rss, const SensingParams& params) {
    const double floor = rss_floor(params);
    const bool valid = rss > floor;
    const double power = valid ? rss : floor;
    return {std::pow(params.radar_constant() / power, 0.25), valid};
}

double crlb_range(double d, const SensingParams& params) {
    if (!(d > 0.0)) throw std::invalid_argument("crlb_range: range must be > 0");
    const double d2 = d * d;
    // d^2 sigma^2 / (4 a^2 R) with a^2 = radar_constant / d^4
    return d2 * d2 * d2 * params.noise_power /
           (4.0 * params.total_pilots() * params.radar_constant());
}

double ecrlb(const Point2d& q_hat, const Point2d& s_n, const SensingParams& params) {
    return crlb_range(std::max(distance(q_hat, s_n), kMinRange), params);
}

double measurement_weight(double d_hat, const SensingParams& params) {
    return crlb_range(d_hat, params);
}

RangeMeasurement measure_range(int subnet_id, const EchoBlock& block, const SensingParams& params) {
    RangeMeasurement m;
    m.subnet_id = subnet_id;
    m.rss = estimate_rss(block, params.noise_power);
    const auto est = estimate_range(m.rss, params);
    m.range = est.range;
    m.valid = est.valid;
    m.weight_crlb = measurement_weight(m.range, params);
    return m;
}

}  // namespace isac
