// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/random.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string_view>

namespace isac {

/// Physical constants of one mono-static radar link. Linear units throughout.
struct SensingParams {
    double tx_power = 0.19952623149688797;    // W (23 dBm)
    double g_t = 1.0;
    double g_r = 1.0;
    double rcs = 1.0;                          // m^2 (0 dBsm)
    double wavelength = 0.03;                  // m (10 GHz)
    double noise_power = 5.971607558302459e-17;  // W per RE: -174 dBm/Hz over 15 kHz
    int pilots_per_rb = 168;                   // 12 subcarriers x 14 symbols
    int rbs_per_subnet = 1;
    int n_antennas = 1;

    /// Pilot REs used by one subnetwork in one sensing iteration (per antenna).
    int total_pilots() const { return pilots_per_rb * rbs_per_subnet; }

    /// p * Gt * Gr * rcs * lambda^2 / (4 pi)^3, the d-independent part of the echo power.
    double radar_constant() const;

    void validate() const;
};

enum class Fading { Awgn, Rayleigh, Rician };

// How long one fading draw is held. PerAntenna: one coefficient per receive antenna
// over all pilot REs of a sensing period. PerElement: a fresh coefficient per (m, r).
enum class Coherence { PerAntenna, PerElement };

struct ChannelModel {
    Fading kind = Fading::Awgn;
    double rician_k = 7.0;
    Coherence coherence = Coherence::PerAntenna;
};

std::string_view to_string(Fading f);
std::optional<Fading> parse_fading(std::string_view name);
std::string_view to_string(Coherence c);
std::optional<Coherence> parse_coherence(std::string_view name);

/// Received pilot samples, rows = antennas, cols = resource elements.
struct EchoBlock {
    Eigen::MatrixXcd samples;
    double true_range = 0.0;
};

/// Radar-equation mean echo power at range d. Throws std::invalid_argument for d <= 0.
double mean_echo_power(const SensingParams& params, double d);

/// Unit-power small-scale coefficient. AWGN consumes no randomness.
std::complex<double> draw_fading(const ChannelModel& model, Rng& rng);

/// y[m, r] = sqrt(mean_echo_power) * alpha * u_r + z with u_r = 1 and circular
/// complex Gaussian z of power noise_power.
///
/// Draw order per antenna m: alpha (PerAntenna only), then for each r:
/// alpha (PerElement only), Re z, Im z.
EchoBlock simulate_echo(const SensingParams& params, const ChannelModel& model, double d,
                        Rng& rng);

}  // namespace isac
