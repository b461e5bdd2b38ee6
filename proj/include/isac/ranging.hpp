// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/channel.hpp"
#include "isac/types.hpp"

namespace isac {

struct RangeMeasurement {
    int subnet_id = -1;
    double rss = 0.0;          // W, may be <= 0 before clamping
    double range = 0.0;        // m
    double weight_crlb = 0.0;  // m^2, CRLB evaluated at the measured range
    bool valid = false;        // false iff the RSS had to be clamped to the floor
};

struct RangeEstimate {
    double range = 0.0;
    bool valid = false;
};

/// Mean of |y|^2 over all (antenna, RE) samples minus the known noise power.
double estimate_rss(const EchoBlock& block, double noise_power);

/// Smallest RSS accepted by the range inversion: 1e-3 * noise / (M * R_tot).
double rss_floor(const SensingParams& params);

/// Fourth-root inversion of the radar equation. RSS at or below rss_floor maps to
/// the floor's range and is flagged invalid.
RangeEstimate estimate_range(double rss, const SensingParams& params);

/// Single-antenna ranging bound d^6 sigma^2 (4pi)^3 / (4 R_tot p Gt Gr rcs lambda^2).
/// R_tot = params.total_pilots(); antenna count deliberately does not enter.
double crlb_range(double d, const SensingParams& params);

/// Bound evaluated at the range implied by a location estimate. Coincident points
/// are clamped to kMinRange.
double ecrlb(const Point2d& q_hat, const Point2d& s_n, const SensingParams& params);

/// WLS weight denominator: the bound evaluated at the measured range.
double measurement_weight(double d_hat, const SensingParams& params);

/// RSS, range and weight for one echo block.
RangeMeasurement measure_range(int subnet_id, const EchoBlock& block, const SensingParams& params);

}  // namespace isac
