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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsgan/adam.hpp"
#include "qsgan/dcnet.hpp"
#include "qsgan/dense.hpp"

namespace qsgan {

inline constexpr std::size_t kClassicalHidden = 40;
inline constexpr std::size_t kClassicalGeneratorParams = 3688;
inline constexpr double kClassicalLearningRate = 0.001;

/// Baseline generator: scalar z ~ N(0, 1) -> 40 -> 40 -> 40 (ReLU) -> 8 (sigmoid).
struct ClassicalGenerator {
    enum Layer : std::size_t { input = 0, hidden1 = 1, hidden2 = 2, output = 3 };

    DenseStack net;
    AdamState optimizer;

    /// Zero weights, fresh optimizer.
    explicit ClassicalGenerator(double lr = kClassicalLearningRate);

    static ClassicalGenerator random(Rng &rng, double lr = kClassicalLearningRate);

    std::size_t num_params() const {
        return net.num_params();
    }
};

/// Network output for one latent value; entries in (0, 1).
std::vector<double> generator_output(const DenseStack &net, double z);

/// m samples, each from a fresh z ~ N(0, 1).
std::vector<std::vector<double>> generate(const ClassicalGenerator &gen, Rng &rng, std::size_t m);

/// -(1/m) sum log D(G(z_i)) for fixed latents, D clamped.
double classical_generator_loss(const DenseStack &net, const DCParams &dc, std::span<const double> latents);

/// Gradient of classical_generator_loss with respect to net.values(), D/C frozen.
std::vector<double> classical_generator_gradient(const DenseStack &net, const DCParams &dc,
                                                 std::span<const double> latents);

/// Draws m latents, backpropagates the generator loss through D and G, and takes one Adam step.
/// Returns the loss evaluated before the step.
double train_step(ClassicalGenerator &gen, const DCParams &dc, std::size_t m, Rng &rng);

void write_classical_checkpoint(std::ostream &out, const ClassicalGenerator &gen);
void read_classical_checkpoint(std::istream &in, ClassicalGenerator &gen);

}  // namespace qsgan
