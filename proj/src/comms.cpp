// SPDX-License-Identifier: Apache-2.0
#include "isac/comms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isac {

void CommsParams::validate() const {
    std::vector<std::string> issues;
    if (!(per_user_bandwidth > 0.0)) issues.push_back("comms.per_user_bandwidth: must be > 0");
    if (!(user_noise_power > 0.0)) issues.push_back("comms.user_noise_power: must be > 0");
    if (!(total_bandwidth > 0.0)) issues.push_back("comms.total_bandwidth: must be > 0");
    if (!(wavelength > 0.0)) issues.push_back("comms.wavelength: must be > 0");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

double link_gain(double d, double wavelength) {
    const double a = wavelength / (4.0 * std::numbers::pi * std::max(d, kMinRange));
    return a * a;
}

double sinr(const Point2d& user, int serving_ap, const Scene& scene,
            std::span<const double> tx_powers, const CommsParams& comms) {
    const int n_ap = scene.size();
    if (static_cast<int>(tx_powers.size()) != n_ap) throw std::invalid_argument("sinr: one power per AP");
    if (serving_ap < 0 || serving_ap >= n_ap) throw std::out_of_range("sinr: serving AP index");
    double signal = 0.0;
    double interference = 0.0;
    for (int j = 0; j < n_ap; ++j) {
        const double rx = tx_powers[j] *
                          link_gain(distance(user, scene.subnet_positions[j]), comms.wavelength);
        if (j == serving_ap)
            signal = rx;
        else
            interference += rx;
    }
    return signal / (comms.user_noise_power + interference);
}

double sum_rate(const Scene& scene, std::span<const double> tx_powers, const CommsParams& comms) {
    double total = 0.0;
    for (int n = 0; n < scene.size(); ++n)
        for (const auto& user : scene.user_positions[n])
            total += comms.per_user_bandwidth * std::log2(1.0 + sinr(user, n, scene, tx_powers, comms));
    return total;
}

double effective_rate(double r0, int rho, int f_s, int n_rb) {
    if (rho < 0 || f_s < 1 || n_rb < 1 || rho > f_s * n_rb)
        throw std::invalid_argument("effective_rate: need 0 <= rho <= f_s * n_rb");
    return r0 * (1.0 - static_cast<double>(rho) / (static_cast<double>(f_s) * n_rb));
}

double average_throughput_loss(const FrameConfig& frame, int k, int j_used) {
    frame.validate(k);
    if (j_used < 0 || j_used > max_iterations(frame))
        throw std::invalid_argument("average_throughput_loss: j_used exceeds the iteration budget");
    return static_cast<double>(j_used) * frame.sensing_rbs_per_iter /
           (static_cast<double>(frame.slots_per_frame) * frame.rbs_per_slot_grid);
}

CommsResult evaluate_comms(const Scene& scene, std::span<const double> tx_powers,
                           const CommsParams& comms, double loss_fraction) {
    CommsResult out;
    out.sum_rate_ideal = sum_rate(scene, tx_powers, comms);
    out.throughput_loss_fraction = loss_fraction;
    out.sum_rate_effective = out.sum_rate_ideal * (1.0 - loss_fraction);
    return out;
}

}  // namespace isac
