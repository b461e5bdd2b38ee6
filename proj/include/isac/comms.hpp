// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/protocol.hpp"
#include "isac/scene.hpp"

#include <span>

namespace isac {

struct CommsParams {
    double per_user_bandwidth = 4e6;                  // Hz, B_T / U
    double user_noise_power = 1.592428682213989e-14;  // W, -174 dBm/Hz over B
    double total_bandwidth = 20e6;                    // Hz
    double wavelength = 0.03;                         // m, Friis LoS gain

    void validate() const;
};

struct CommsResult {
    double sum_rate_ideal = 0.0;      // bit/s
    double sum_rate_effective = 0.0;  // bit/s
    double throughput_loss_fraction = 0.0;
};

/// Free-space power gain (lambda / (4 pi d))^2, d clamped to kMinRange.
double link_gain(double d, double wavelength);

/// DL SINR of `user` served by AP `serving_ap`; every other AP interferes at full power.
double sinr(const Point2d& user, int serving_ap, const Scene& scene,
            std::span<const double> tx_powers, const CommsParams& comms);

/// Sum over all subnetworks and their users of B log2(1 + SINR).
double sum_rate(const Scene& scene, std::span<const double> tx_powers, const CommsParams& comms);

/// r0 * (1 - rho / (f_s * n_rb)). Throws std::invalid_argument if rho > f_s * n_rb.
double effective_rate(double r0, int rho, int f_s, int n_rb);

/// Sensing RBs over the frame grid: j_used * rho / (F * N_RB).
double average_throughput_loss(const FrameConfig& frame, int k, int j_used);

/// Ideal and loss-adjusted sum rate for one deployment.
CommsResult evaluate_comms(const Scene& scene, std::span<const double> tx_powers,
                           const CommsParams& comms, double loss_fraction);

}  // namespace isac
