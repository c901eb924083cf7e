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

#include "qsgan/classical_gen.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qsgan {

namespace {

std::vector<LayerShape> classical_shapes() {
    return {
        {"input", 1, kClassicalHidden},
        {"hidden1", kClassicalHidden, kClassicalHidden},
        {"hidden2", kClassicalHidden, kClassicalHidden},
        {"output", kClassicalHidden, kImagePixels},
    };
}

struct Trace {
    std::array<std::array<double, kClassicalHidden>, 3> pre{};
    std::array<std::array<double, kClassicalHidden>, 3> act{};
    std::array<double, kImagePixels> out_pre{};
    std::array<double, kImagePixels> out{};
};

Trace trace_forward(const DenseStack &net, double z) {
    Trace t;
    const std::array<double, 1> input{z};
    std::span<const double> prev = input;
    for (std::size_t l = 0; l < 3; ++l) {
        net.affine(l, prev, t.pre[l]);
        for (std::size_t i = 0; i < kClassicalHidden; ++i) {
            t.act[l][i] = relu(t.pre[l][i]);
        }
        prev = t.act[l];
    }
    net.affine(ClassicalGenerator::output, prev, t.out_pre);
    for (std::size_t i = 0; i < kImagePixels; ++i) {
        t.out[i] = sigmoid(t.out_pre[i]);
    }
    return t;
}

}  // namespace

ClassicalGenerator::ClassicalGenerator(double lr) : net(classical_shapes()) {
    optimizer = AdamState::for_size(net.num_params(), lr);
}

ClassicalGenerator ClassicalGenerator::random(Rng &rng, double lr) {
    ClassicalGenerator gen(lr);
    gen.net.init_fan_in(rng);
    return gen;
}

std::vector<double> generator_output(const DenseStack &net, double z) {
    const Trace t = trace_forward(net, z);
    return {t.out.begin(), t.out.end()};
}

std::vector<std::vector<double>> generate(const ClassicalGenerator &gen, Rng &rng, std::size_t m) {
    if (m == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    std::normal_distribution<double> latent(0.0, 1.0);
    std::vector<std::vector<double>> samples;
    samples.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        samples.push_back(generator_output(gen.net, latent(rng)));
    }
    return samples;
}

double classical_generator_loss(const DenseStack &net, const DCParams &dc, std::span<const double> latents) {
    if (latents.empty()) {
        throw std::invalid_argument("need at least one latent sample");
    }
    double total = 0.0;
    for (double z : latents) {
        const auto x = generator_output(net, z);
        total -= std::log(clamp_probability(forward(dc, x).d_value));
    }
    return total / static_cast<double>(latents.size());
}

std::vector<double> classical_generator_gradient(const DenseStack &net, const DCParams &dc,
                                                 std::span<const double> latents) {
    if (latents.empty()) {
        throw std::invalid_argument("need at least one latent sample");
    }
    const double scale = 1.0 / static_cast<double>(latents.size());
    std::vector<double> grad(net.num_params(), 0.0);
    for (double z : latents) {
        const Trace t = trace_forward(net, z);
        const auto disc = discriminator_input_gradient(dc, t.out);
        const double d = disc.d_value;
        if (d < kProbabilityClamp || d > 1.0 - kProbabilityClamp) {
            continue;
        }
        // d/da [-log sigmoid(a)] = sigmoid(a) - 1, then through a(x) and the output sigmoid.
        const double d_logit = scale * (d - 1.0);
        std::array<double, kImagePixels> d_out_pre{};
        for (std::size_t i = 0; i < kImagePixels; ++i) {
            d_out_pre[i] = d_logit * disc.d_logit_dx[i] * t.out[i] * (1.0 - t.out[i]);
        }
        std::array<double, kClassicalHidden> upstream{};
        net.affine_backward(ClassicalGenerator::output, t.act[2], d_out_pre, grad, upstream);
        for (std::size_t l = 3; l-- > 0;) {
            for (std::size_t i = 0; i < kClassicalHidden; ++i) {
                if (t.pre[l][i] <= 0.0) {
                    upstream[i] = 0.0;
                }
            }
            if (l == 0) {
                const std::array<double, 1> input{z};
                net.affine_backward(l, input, upstream, grad, {});
            } else {
                std::array<double, kClassicalHidden> below{};
                net.affine_backward(l, t.act[l - 1], upstream, grad, below);
                upstream = below;
            }
        }
    }
    return grad;
}

double train_step(ClassicalGenerator &gen, const DCParams &dc, std::size_t m, Rng &rng) {
    if (m == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    std::normal_distribution<double> latent(0.0, 1.0);
    std::vector<double> latents(m);
    for (auto &z : latents) {
        z = latent(rng);
    }
    const double loss = classical_generator_loss(gen.net, dc, latents);
    const auto grad = classical_generator_gradient(gen.net, dc, latents);
    gen.optimizer.step(gen.net.values(), grad);
    return loss;
}

void write_classical_checkpoint(std::ostream &out, const ClassicalGenerator &gen) {
    write_checkpoint(out, "classical_generator", gen.net);
}

void read_classical_checkpoint(std::istream &in, ClassicalGenerator &gen) {
    read_checkpoint(in, "classical_generator", gen.net);
}

}  // namespace qsgan
