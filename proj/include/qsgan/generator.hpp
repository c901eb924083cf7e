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
#include <iosfwd>
#include <span>
#include <vector>

#include "qsgan/adam.hpp"
#include "qsgan/qcircuit.hpp"

namespace qsgan {

/// The quantum generator as a training participant.
struct GeneratorState {
    AnsatzSpec spec;
    ParamVector theta;
    AdamState optimizer;
    NoiseConfig noise;
};

/// Learning rate used for the circuit angles unless overridden.
inline constexpr double kGeneratorLearningRate = 0.001;

GeneratorState make_generator(AnsatzSpec spec, ParamVector theta, NoiseConfig noise = {},
                              double lr = kGeneratorLearningRate);

/// Angles drawn uniformly from [0, 2 pi).
ParamVector random_angles(std::size_t n, Rng &rng);

/// D(x) for every outcome x of the circuit, indexed by Outcome. The discriminator is frozen
/// while the generator gradient is estimated, so tabulating it once is exact.
using DiscriminatorTable = std::vector<double>;

/// Counts circuit executions (one per measured shot).
struct ShotCounter {
    std::uint64_t executions = 0;
};

/// m measurements of the (possibly noisy) generator circuit.
std::vector<Outcome> generate_batch(const GeneratorState &gen, std::size_t m, Rng &rng,
                                    ShotCounter *counter = nullptr);

/// -(1/m) sum log D(x_i) with D clamped away from 0 and 1. Throws on an empty list.
double generator_loss(std::span<const double> d_values);

/// Parameter-shift estimator: for each parameter, m shots of the +pi/2 circuit and m of the
/// -pi/2 circuit (noise applied to both), combined as
/// (1/2m) sum [-log D(x+) + log D(x-)]. Draws 2 n m fresh shots. Never touches gen.theta.
std::vector<double> estimate_generator_gradient(const GeneratorState &gen, std::span<const double> d_table,
                                                std::size_t m, Rng &rng, ShotCounter *counter = nullptr);

/// Exact parameter-shift gradient (1/2) sum_x (-log D(x)) [P+(x) - P-(x)] from the enumerated
/// (noise-mixed) shifted distributions. Exponential in n_qubits; intended as an oracle.
std::vector<double> exact_generator_gradient(const GeneratorState &gen, std::span<const double> d_table);

/// One Adam step on theta. Throws std::invalid_argument on a length mismatch.
void adam_update(GeneratorState &gen, std::span<const double> grad);

/// Born distributions of every shifted circuit U_{q+-}(theta)|0>, computed by reusing the state
/// just before each layer's entanglers: R_a(theta + pi/2) = R_a(pi/2) R_a(theta), and rotations
/// inside one layer commute, so a shift is one extra rotation on a cached state.
class ShiftedCircuits {
   public:
    ShiftedCircuits(const AnsatzSpec &spec, std::span<const double> theta);

    /// Noise-free distribution of U_{q+-}(theta)|0>, q 1-based.
    std::vector<double> distribution(std::size_t q, ShiftDirection direction) const;

   private:
    const AnsatzSpec &spec_;
    std::span<const double> theta_;
    /// State after layer l's rotations and before its CNOTs.
    std::vector<StateVector> before_entanglers_;
};

/// Diagnostic trajectory log: "iteration,theta_1,...,theta_n".
void write_theta_header(std::ostream &out, std::size_t n_params);
void write_theta_row(std::ostream &out, std::size_t iteration, std::span<const double> theta);

}  // namespace qsgan
