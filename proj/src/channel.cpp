// SPDX-License-Identifier: Apache-2.0
#include "isac/channel.hpp"

#include "isac/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac {

namespace {

constexpr double kFourPiCubed = 64.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

}  // namespace

std::string_view to_string(Fading f) {
    switch (f) {
        case Fading::Awgn: return "awgn";
        case Fading::Rayleigh: return "rayleigh";
        case Fading::Rician: return "rician";
    }
    return "unknown";
}

std::optional<Fading> parse_fading(std::string_view name) {
    for (Fading f : {Fading::Awgn, Fading::Rayleigh, Fading::Rician})
        if (to_string(f) == name) return f;
    return std::nullopt;
}

std::string_view to_string(Coherence c) {
    return c == Coherence::PerAntenna ? "per-antenna" : "per-element";
}

std::optional<Coherence> parse_coherence(std::string_view name) {
    if (name == "per-antenna") return Coherence::PerAntenna;
    if (name == "per-element") return Coherence::PerElement;
    return std::nullopt;
}

double SensingParams::radar_constant() const {
    return tx_power * g_t * g_r * rcs * wavelength * wavelength / kFourPiCubed;
}

void SensingParams::validate() const {
    std::vector<std::string> issues;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) issues.push_back(std::string("sensing.") + name + ": must be > 0");
    };
    positive(tx_power, "tx_power");
    positive(g_t, "g_t");
    positive(g_r, "g_r");
    positive(rcs, "rcs");
    positive(wavelength, "wavelength");
    positive(noise_power, "noise_power");
    if (pilots_per_rb < 1) issues.push_back("sensing.pilots_per_rb: must be >= 1");
    if (rbs_per_subnet < 1) issues.push_back("sensing.rbs_per_subnet: must be >= 1");
    if (n_antennas < 1) issues.push_back("sensing.n_antennas: must be >= 1");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

double mean_echo_power(const SensingParams& params, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("mean_echo_power: range must be > 0");
    const double d2 = d * d;
    return params.radar_constant() / (d2 * d2);
}

std::complex<double> draw_fading(const ChannelModel& model, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    switch (model.kind) {
        case Fading::Awgn:
            return {1.0, 0.0};
        case Fading::Rayleigh: {
            const double re = gauss(rng);
            const double im = gauss(rng);
            return std::complex<double>(re, im) * std::sqrt(0.5);
        }
        case Fading::Rician: {
            const double k = model.rician_k;
            const double los = std::sqrt(k / (k + 1.0));
            const double scatter = std::sqrt(0.5 / (k + 1.0));
            std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
            const double phi = phase(rng);
            const double re = gauss(rng);
            const double im = gauss(rng);
            return los * std::polar(1.0, phi) + scatter * std::complex<double>(re, im);
        }
    }
    return {1.0, 0.0};
}

EchoBlock simulate_echo(const SensingParams& params, const ChannelModel& model, double d,
                        Rng& rng) {
    const double amplitude = std::sqrt(mean_echo_power(params, d));
    const double noise_scale = std::sqrt(0.5 * params.noise_power);
    const int n_ant = params.n_antennas;
    const int n_re = params.total_pilots();

    std::normal_distribution<double> gauss(0.0, 1.0);
    EchoBlock block;
    block.true_range = d;
    block.samples.resize(n_ant, n_re);
    for (int m = 0; m < n_ant; ++m) {
        std::complex<double> alpha{1.0, 0.0};
        if (model.coherence == Coherence::PerAntenna) alpha = draw_fading(model, rng);
        for (int r = 0; r < n_re; ++r) {
            if (model.coherence == Coherence::PerElement) alpha = draw_fading(model, rng);
            const double re = gauss(rng);
            const double im = gauss(rng);
            block.samples(m, r) = amplitude * alpha + noise_scale * std::complex<double>(re, im);
        }
    }
    return block;
}

}  // namespace isac
