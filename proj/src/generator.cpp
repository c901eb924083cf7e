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

#include "qsgan/generator.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qsgan {

namespace {

void check_table(const GeneratorState &gen, std::span<const double> d_table) {
    if (d_table.size() != (std::size_t{1} << gen.spec.n_qubits)) {
        throw std::invalid_argument("discriminator table must have 2^n_qubits entries");
    }
}

double neg_log_d(double d) {
    return -std::log(clamp_probability(d));
}

}  // namespace

GeneratorState make_generator(AnsatzSpec spec, ParamVector theta, NoiseConfig noise, double lr) {
    spec.validate();
    noise.validate();
    if (theta.size() != spec.num_params()) {
        throw ConfigError("theta length does not match the circuit");
    }
    auto optimizer = AdamState::for_size(theta.size(), lr);
    return GeneratorState{std::move(spec), std::move(theta), std::move(optimizer), noise};
}

ParamVector random_angles(std::size_t n, Rng &rng) {
    ParamVector theta(n);
    for (auto &angle : theta) {
        angle = 2.0 * std::numbers::pi * uniform01(rng);
    }
    return theta;
}

std::vector<Outcome> generate_batch(const GeneratorState &gen, std::size_t m, Rng &rng, ShotCounter *counter) {
    if (m == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    const OutcomeSampler sampler(outcome_distribution(gen.spec, gen.theta), gen.spec.n_qubits,
                                 gen.noise.pure_weight(gen.spec.n_layers));
    std::vector<Outcome> batch(m);
    for (auto &x : batch) {
        x = sampler.draw(rng);
    }
    if (counter != nullptr) {
        counter->executions += m;
    }
    return batch;
}

double generator_loss(std::span<const double> d_values) {
    if (d_values.empty()) {
        throw std::invalid_argument("generator loss needs at least one sample");
    }
    double total = 0.0;
    for (double d : d_values) {
        total += neg_log_d(d);
    }
    return total / static_cast<double>(d_values.size());
}

ShiftedCircuits::ShiftedCircuits(const AnsatzSpec &spec, std::span<const double> theta) : spec_(spec), theta_(theta) {
    spec.validate();
    if (theta.size() != spec.num_params()) {
        throw ConfigError("theta length does not match the circuit");
    }
    StateVector state(spec.n_qubits);
    before_entanglers_.reserve(spec.n_layers);
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        const std::size_t offset = layer * spec.n_qubits;
        for (std::size_t k = 0; k < spec.n_qubits; ++k) {
            state.apply_rotation(spec.axes[offset + k], k, theta[offset + k]);
        }
        before_entanglers_.push_back(state);
        for (const auto &gate : spec.entanglers[layer]) {
            state.apply_cnot(gate.control, gate.target);
        }
    }
}

std::vector<double> ShiftedCircuits::distribution(std::size_t q, ShiftDirection direction) const {
    if (q < 1 || q > spec_.num_params()) {
        throw std::out_of_range("shift index outside the parameter range");
    }
    const std::size_t layer = (q - 1) / spec_.n_qubits;
    const std::size_t qubit = (q - 1) % spec_.n_qubits;
    StateVector state = before_entanglers_[layer];
    const double delta = direction == ShiftDirection::plus ? std::numbers::pi / 2 : -std::numbers::pi / 2;
    state.apply_rotation(spec_.axis(layer, qubit), qubit, delta);
    for (const auto &gate : spec_.entanglers[layer]) {
        state.apply_cnot(gate.control, gate.target);
    }
    for (std::size_t next = layer + 1; next < spec_.n_layers; ++next) {
        apply_layer(state, spec_, theta_, next);
    }
    if (std::abs(state.norm_squared() - 1.0) > 1e-9) {
        throw std::logic_error("shifted state lost normalization");
    }
    return state.probabilities();
}

std::vector<double> estimate_generator_gradient(const GeneratorState &gen, std::span<const double> d_table,
                                                std::size_t m, Rng &rng, ShotCounter *counter) {
    if (m == 0) {
        throw std::invalid_argument("shots per shifted circuit must be positive");
    }
    check_table(gen, d_table);
    const double weight = gen.noise.pure_weight(gen.spec.n_layers);
    const ShiftedCircuits shifted(gen.spec, gen.theta);
    const std::size_t n = gen.theta.size();
    std::vector<double> grad(n, 0.0);
    for (std::size_t q = 1; q <= n; ++q) {
        const OutcomeSampler plus(shifted.distribution(q, ShiftDirection::plus), gen.spec.n_qubits, weight);
        const OutcomeSampler minus(shifted.distribution(q, ShiftDirection::minus), gen.spec.n_qubits, weight);
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const Outcome x_plus = plus.draw(rng);
            const Outcome x_minus = minus.draw(rng);
            total += neg_log_d(d_table[x_plus]) - neg_log_d(d_table[x_minus]);
        }
        grad[q - 1] = total / (2.0 * static_cast<double>(m));
    }
    if (counter != nullptr) {
        counter->executions += 2 * n * m;
    }
    return grad;
}

std::vector<double> exact_generator_gradient(const GeneratorState &gen, std::span<const double> d_table) {
    check_table(gen, d_table);
    const std::size_t n = gen.theta.size();
    std::vector<double> grad(n, 0.0);
    for (std::size_t q = 1; q <= n; ++q) {
        const auto p_plus = noisy_distribution(gen.spec, shifted_params(gen.theta, q, ShiftDirection::plus), gen.noise);
        const auto p_minus =
            noisy_distribution(gen.spec, shifted_params(gen.theta, q, ShiftDirection::minus), gen.noise);
        double total = 0.0;
        for (std::size_t x = 0; x < d_table.size(); ++x) {
            total += neg_log_d(d_table[x]) * (p_plus[x] - p_minus[x]);
        }
        grad[q - 1] = 0.5 * total;
    }
    return grad;
}

void adam_update(GeneratorState &gen, std::span<const double> grad) {
    if (grad.size() != gen.theta.size()) {
        throw std::invalid_argument("gradient length does not match theta");
    }
    gen.optimizer.step(gen.theta, grad);
}

void write_theta_header(std::ostream &out, std::size_t n_params) {
    out << "iteration";
    for (std::size_t q = 1; q <= n_params; ++q) {
        out << ",theta_" << q;
    }
    out << '\n';
}

void write_theta_row(std::ostream &out, std::size_t iteration, std::span<const double> theta) {
    out << iteration;
    const auto old_precision = out.precision(17);
    for (double angle : theta) {
        out << ',' << angle;
    }
    out.precision(old_precision);
    out << '\n';
}

}  // namespace qsgan
