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
#include <span>
#include <vector>

namespace qsgan {

/// Adam with bias correction. One instance per parameter block; the moment vectors have the
/// same length as the block.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t t = 0;
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_size(std::size_t n, double lr);

    /// params -= lr * mhat / (sqrt(vhat) + epsilon). Throws std::invalid_argument when the
    /// gradient, the parameters and the moments disagree in length.
    void step(std::span<double> params, std::span<const double> grad);
};

}  // namespace qsgan
