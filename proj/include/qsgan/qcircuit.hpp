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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qsgan/common.hpp"

namespace qsgan {

/// Rotation axis of a single-qubit gate exp(-i theta sigma_a / 2).
enum class Axis : std::uint8_t { X, Y, Z };

char axis_letter(Axis axis);
Axis axis_from_letter(char letter);

/// Computational-basis measurement outcome. Bit k holds qubit k, and qubit k is pixel k
/// counting from the left of the image.
using Outcome = std::uint32_t;

/// Renders an outcome as n characters of 0/1, qubit 0 first.
std::string outcome_to_string(Outcome outcome, std::size_t n_qubits);

struct Cnot {
    std::size_t control;
    std::size_t target;

    bool operator==(const Cnot &) const = default;
};

/// Circuit topology of the layered generator: per layer, one rotation per qubit (all applied
/// first) followed by that layer's CNOTs in listed order. Only the angles are trainable.
struct AnsatzSpec {
    std::size_t n_qubits = 0;
    std::size_t n_layers = 0;
    /// Row-major [layer][qubit].
    std::vector<Axis> axes;
    /// One CNOT list per layer.
    std::vector<std::vector<Cnot>> entanglers;
    /// Seed the axes were drawn from (0 if constructed by hand).
    std::uint64_t seed = 0;

    std::size_t num_params() const {
        return n_layers * n_qubits;
    }
    Axis axis(std::size_t layer, std::size_t qubit) const {
        return axes[layer * n_qubits + qubit];
    }

    /// Throws ConfigError when dimensions disagree or a CNOT pair is invalid.
    void validate() const;

    bool operator==(const AnsatzSpec &) const = default;
};

/// Angles theta, one per (layer, qubit), in radians. Index q-1 is parameter q.
using ParamVector = std::vector<double>;

/// Per-layer depolarizing strength.
struct NoiseConfig {
    double p = 0.0;

    /// Throws ConfigError unless 0 <= p <= 1.
    void validate() const;

    /// Weight (1-p)^L of the pure-state term after L noisy layers.
    double pure_weight(std::size_t n_layers) const;

    /// Total noise magnitude 1-(1-p)^L, the coefficient of the maximally mixed term.
    double total_noise(std::size_t n_layers) const {
        return 1.0 - pure_weight(n_layers);
    }
};

/// Dense 2^n amplitude vector.
class StateVector {
   public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);

    std::size_t n_qubits() const {
        return n_qubits_;
    }
    std::size_t size() const {
        return amplitudes_.size();
    }
    std::span<const std::complex<double>> amplitudes() const {
        return amplitudes_;
    }
    std::complex<double> amplitude(Outcome x) const {
        return amplitudes_[x];
    }

    void apply_rotation(Axis axis, std::size_t qubit, double angle);
    void apply_cnot(std::size_t control, std::size_t target);

    double norm_squared() const;
    std::vector<double> probabilities() const;

   private:
    std::size_t n_qubits_;
    std::vector<std::complex<double>> amplitudes_;
};

/// Draws axes uniformly from {X, Y, Z} for every (layer, qubit) and uses the adjacent CNOT
/// chain (0,1),(1,2),...,(n-2,n-1) in every layer.
AnsatzSpec build_ansatz(std::size_t n_qubits, std::size_t n_layers, Rng &rng);

/// Same as above with a private generator seeded by `seed`; the seed is recorded in the spec.
AnsatzSpec build_ansatz(std::size_t n_qubits, std::size_t n_layers, std::uint64_t seed);

/// Applies layer `layer` of the circuit (rotations, then CNOTs) to `state`.
void apply_layer(StateVector &state, const AnsatzSpec &spec, std::span<const double> theta, std::size_t layer);

/// U(theta)|0...0>. Throws ConfigError on a length mismatch.
StateVector prepare_state(const AnsatzSpec &spec, std::span<const double> theta);

/// P(x) = |<x|U(theta)|0>|^2 for every outcome x.
std::vector<double> outcome_distribution(const AnsatzSpec &spec, std::span<const double> theta);

/// (1-p)^L P(x) + (1-(1-p)^L) / 2^n: the measured distribution under per-layer depolarizing noise.
std::vector<double> noisy_distribution(
    const AnsatzSpec &spec, std::span<const double> theta, const NoiseConfig &noise);

/// Mixes a pure-state distribution with the uniform distribution using the noise weight.
std::vector<double> mix_with_uniform(std::span<const double> pure, double pure_weight);

/// Inverse-CDF sampler over a fixed outcome distribution, optionally mixed with the
/// maximally mixed state. With pure_weight == 1 no branch draw is consumed, so the noiseless
/// sampler and a p = 0 noisy sampler produce identical sequences from identical seeds.
class OutcomeSampler {
   public:
    OutcomeSampler(std::span<const double> probabilities, std::size_t n_qubits, double pure_weight = 1.0);

    Outcome draw(Rng &rng) const;

   private:
    std::size_t n_qubits_;
    double pure_weight_;
    std::vector<double> cdf_;
};

/// Uniformly random n-bit outcome.
Outcome uniform_outcome(std::size_t n_qubits, Rng &rng);

/// `count` i.i.d. Born-rule samples of U(theta)|0>.
std::vector<Outcome> sample(const AnsatzSpec &spec, std::span<const double> theta, std::size_t count, Rng &rng);

/// One sample of the noisy output: with probability (1-p)^L a Born-rule sample of the pure
/// state, otherwise a uniformly random string.
Outcome sample_noisy(const AnsatzSpec &spec, std::span<const double> theta, const NoiseConfig &noise, Rng &rng);

enum class ShiftDirection { plus, minus };

/// Copy of theta with parameter q (1-based) moved by +pi/2 or -pi/2. Throws std::out_of_range.
ParamVector shifted_params(std::span<const double> theta, std::size_t q, ShiftDirection direction);

/// Plain-text (JSON) form of an AnsatzSpec: qubits, layers, seed, axes rows and CNOT lists.
void write_ansatz(std::ostream &out, const AnsatzSpec &spec);
AnsatzSpec read_ansatz(std::istream &in);

}  // namespace qsgan
