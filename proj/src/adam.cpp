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

#include "qsgan/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace qsgan {

AdamState AdamState::for_size(std::size_t n, double lr) {
    AdamState state;
    state.m.assign(n, 0.0);
    state.v.assign(n, 0.0);
    state.lr = lr;
    return state;
}

void AdamState::step(std::span<double> params, std::span<const double> grad) {
    if (grad.size() != params.size() || m.size() != params.size() || v.size() != params.size()) {
        throw std::invalid_argument("Adam step: gradient/parameter/moment lengths differ");
    }
    ++t;
    const double correction1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double correction2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double mhat = m[i] / correction1;
        const double vhat = v[i] / correction2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + epsilon);
    }
}

}  // namespace qsgan
