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

// Statistical helpers for sampling tests.

#include <boost/math/distributions/chi_squared.hpp>
#include <cstddef>
#include <span>
#include <vector>

namespace qsgan::testing {

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square of observed counts against expected probabilities. Bins whose expected
/// count is below 5 are pooled into one bin (merged into the
/// smallest regular bin if the pool itself stays below 5).
inline ChiSquareResult chi_square(std::span<const std::size_t> counts, std::span<const double> probs,
                                  std::size_t total) {
    std::vector<double> observed;
    std::vector<double> expected;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = probs[i] * static_cast<double>(total);
        if (e < 5.0) {
            pooled_obs += static_cast<double>(counts[i]);
            pooled_exp += e;
        } else {
            observed.push_back(static_cast<double>(counts[i]));
            expected.push_back(e);
        }
    }
    if (pooled_exp >= 5.0 || expected.empty()) {
        observed.push_back(pooled_obs);
        expected.push_back(pooled_exp);
    } else if (pooled_exp > 0.0) {
        // Too small to stand alone: fold into the smallest regular bin.
        std::size_t smallest = 0;
        for (std::size_t i = 1; i < expected.size(); ++i) {
            if (expected[i] < expected[smallest]) {
                smallest = i;
            }
        }
        observed[smallest] += pooled_obs;
        expected[smallest] += pooled_exp;
    }
    ChiSquareResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = observed[i] - expected[i];
        r.statistic += d * d / expected[i];
    }
    r.dof = observed.size() > 1 ? observed.size() - 1 : 1;
    const boost::math::chi_squared dist(static_cast<double>(r.dof));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

}  // namespace qsgan::testing
