// Copyright 2026 The qSGAN Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsgan {

/// Every stochastic routine takes one of these by reference. Seeding it fixes the result.
using Rng = std::mt19937_64;

/// Raised when a configuration is internally inconsistent (sizes, counts, divisibility).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised on unreadable or unwritable files and malformed file contents.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform double in [0, 1) built from the top 53 bits, so draws do not depend on the
/// standard library's distribution implementation.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n) {
    if (n <= 1) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

/// Fisher-Yates shuffle on top of uniform_below (std::shuffle's draws are implementation-defined).
template <typename T>
void shuffle_in_place(std::vector<T> &items, Rng &rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

/// splitmix64 finalizer. Used to derive independent seeds from structured keys.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Clamp bound applied to discriminator outputs before any logarithm.
inline constexpr double kProbabilityClamp = 1e-7;

inline double clamp_probability(double d) {
    if (d < kProbabilityClamp) {
        return kProbabilityClamp;
    }
    if (d > 1.0 - kProbabilityClamp) {
        return 1.0 - kProbabilityClamp;
    }
    return d;
}

}  // namespace qsgan
