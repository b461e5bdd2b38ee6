// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace isac {

// One generator per trial. Draw order inside a trial:
//   1. generate_scene: AP positions (x, y per AP), target (x, y), users (radius, angle per user)
//   2. run_localization: initial/random subsets, then one echo per selected subnetwork in
//      ascending index order (fading and noise interleaved per antenna, see simulate_echo)
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Trial generator seeded with splitmix64(seed ^ splitmix64(trial_index)).
inline Rng trial_rng(std::uint64_t experiment_seed, std::uint64_t trial_index) {
    return Rng(splitmix64(experiment_seed ^ splitmix64(trial_index)));
}

}  // namespace isac
