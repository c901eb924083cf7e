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

#include "qsgan/qcircuit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qsgan {

namespace {

constexpr std::size_t kMaxQubits = 16;
constexpr double kNormTolerance = 1e-9;

void check_theta(const AnsatzSpec &spec, std::span<const double> theta) {
    if (theta.size() != spec.num_params()) {
        std::ostringstream msg;
        msg << "parameter vector has " << theta.size() << " entries, circuit expects " << spec.num_params();
        throw ConfigError(msg.str());
    }
}

void check_norm(const StateVector &state) {
    const double deviation = std::abs(state.norm_squared() - 1.0);
    if (!(deviation <= kNormTolerance)) {
        throw std::logic_error("state vector lost normalization");
    }
}

}  // namespace

char axis_letter(Axis axis) {
    switch (axis) {
        case Axis::X:
            return 'X';
        case Axis::Y:
            return 'Y';
        case Axis::Z:
            return 'Z';
    }
    return '?';
}

Axis axis_from_letter(char letter) {
    switch (letter) {
        case 'X':
        case 'x':
            return Axis::X;
        case 'Y':
        case 'y':
            return Axis::Y;
        case 'Z':
        case 'z':
            return Axis::Z;
        default:
            throw ConfigError(std::string("unknown rotation axis '") + letter + "'");
    }
}

std::string outcome_to_string(Outcome outcome, std::size_t n_qubits) {
    std::string s(n_qubits, '0');
    for (std::size_t k = 0; k < n_qubits; ++k) {
        if ((outcome >> k) & 1U) {
            s[k] = '1';
        }
    }
    return s;
}

void AnsatzSpec::validate() const {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, 16]");
    }
    if (n_layers == 0) {
        throw ConfigError("n_layers must be positive");
    }
    if (axes.size() != n_layers * n_qubits) {
        throw ConfigError("axes matrix does not match n_layers x n_qubits");
    }
    if (entanglers.size() != n_layers) {
        throw ConfigError("need one CNOT list per layer");
    }
    for (const auto &layer : entanglers) {
        for (const auto &gate : layer) {
            if (gate.control == gate.target || gate.control >= n_qubits || gate.target >= n_qubits) {
                throw ConfigError("invalid CNOT pair");
            }
        }
    }
}

void NoiseConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("noise p must lie in [0, 1]");
    }
}

double NoiseConfig::pure_weight(std::size_t n_layers) const {
    return std::pow(1.0 - p, static_cast<double>(n_layers));
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, 16]");
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amplitudes_[0] = 1.0;
}

void StateVector::apply_rotation(Axis axis, std::size_t qubit, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = amplitudes_.size();
    auto *a = amplitudes_.data();
    switch (axis) {
        case Axis::X:
            // [[c, -is], [-is, c]]
            for (std::size_t base = 0; base < dim; base += 2 * stride) {
                for (std::size_t i = base; i < base + stride; ++i) {
                    const auto a0 = a[i];
                    const auto a1 = a[i + stride];
                    a[i] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
                    a[i + stride] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
                }
            }
            break;
        case Axis::Y:
            // [[c, -s], [s, c]]
            for (std::size_t base = 0; base < dim; base += 2 * stride) {
                for (std::size_t i = base; i < base + stride; ++i) {
                    const auto a0 = a[i];
                    const auto a1 = a[i + stride];
                    a[i] = c * a0 - s * a1;
                    a[i + stride] = s * a0 + c * a1;
                }
            }
            break;
        case Axis::Z: {
            // diag(e^{-i angle/2}, e^{+i angle/2})
            const std::complex<double> lo{c, -s};
            const std::complex<double> hi{c, s};
            for (std::size_t base = 0; base < dim; base += 2 * stride) {
                for (std::size_t i = base; i < base + stride; ++i) {
                    a[i] *= lo;
                    a[i + stride] *= hi;
                }
            }
            break;
        }
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amplitudes_[i], amplitudes_[i | tmask]);
        }
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &amp : amplitudes_) {
        total += std::norm(amp);
    }
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), probs.begin(), [](const auto &amp) {
        return std::norm(amp);
    });
    return probs;
}

AnsatzSpec build_ansatz(std::size_t n_qubits, std::size_t n_layers, Rng &rng) {
    AnsatzSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_layers = n_layers;
    spec.axes.reserve(n_qubits * n_layers);
    for (std::size_t i = 0; i < n_qubits * n_layers; ++i) {
        spec.axes.push_back(static_cast<Axis>(uniform_below(rng, 3)));
    }
    std::vector<Cnot> chain;
    for (std::size_t k = 0; k + 1 < n_qubits; ++k) {
        chain.push_back({k, k + 1});
    }
    spec.entanglers.assign(n_layers, chain);
    spec.validate();
    return spec;
}

AnsatzSpec build_ansatz(std::size_t n_qubits, std::size_t n_layers, std::uint64_t seed) {
    Rng rng(seed);
    auto spec = build_ansatz(n_qubits, n_layers, rng);
    spec.seed = seed;
    return spec;
}

void apply_layer(StateVector &state, const AnsatzSpec &spec, std::span<const double> theta, std::size_t layer) {
    const std::size_t offset = layer * spec.n_qubits;
    for (std::size_t k = 0; k < spec.n_qubits; ++k) {
        state.apply_rotation(spec.axes[offset + k], k, theta[offset + k]);
    }
    for (const auto &gate : spec.entanglers[layer]) {
        state.apply_cnot(gate.control, gate.target);
    }
}

StateVector prepare_state(const AnsatzSpec &spec, std::span<const double> theta) {
    spec.validate();
    check_theta(spec, theta);
    StateVector state(spec.n_qubits);
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        apply_layer(state, spec, theta, layer);
        check_norm(state);
    }
    return state;
}

std::vector<double> outcome_distribution(const AnsatzSpec &spec, std::span<const double> theta) {
    return prepare_state(spec, theta).probabilities();
}

std::vector<double> mix_with_uniform(std::span<const double> pure, double pure_weight) {
    const double floor = (1.0 - pure_weight) / static_cast<double>(pure.size());
    std::vector<double> mixed(pure.size());
    for (std::size_t x = 0; x < pure.size(); ++x) {
        mixed[x] = pure_weight * pure[x] + floor;
    }
    return mixed;
}

std::vector<double> noisy_distribution(
    const AnsatzSpec &spec, std::span<const double> theta, const NoiseConfig &noise) {
    noise.validate();
    return mix_with_uniform(outcome_distribution(spec, theta), noise.pure_weight(spec.n_layers));
}

OutcomeSampler::OutcomeSampler(std::span<const double> probabilities, std::size_t n_qubits, double pure_weight)
    : n_qubits_(n_qubits), pure_weight_(pure_weight), cdf_(probabilities.size()) {
    if (probabilities.size() != (std::size_t{1} << n_qubits)) {
        throw ConfigError("distribution length must be 2^n_qubits");
    }
    double running = 0.0;
    for (std::size_t x = 0; x < probabilities.size(); ++x) {
        running += probabilities[x];
        cdf_[x] = running;
    }
}

Outcome OutcomeSampler::draw(Rng &rng) const {
    if (pure_weight_ < 1.0 && uniform01(rng) >= pure_weight_) {
        return uniform_outcome(n_qubits_, rng);
    }
    // Scaling by the total absorbs the last-ulp rounding of the running sum.
    const double u = uniform01(rng) * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto index = static_cast<std::size_t>(it - cdf_.begin());
    return static_cast<Outcome>(std::min(index, cdf_.size() - 1));
}

Outcome uniform_outcome(std::size_t n_qubits, Rng &rng) {
    return static_cast<Outcome>(rng() >> (64 - n_qubits));
}

std::vector<Outcome> sample(const AnsatzSpec &spec, std::span<const double> theta, std::size_t count, Rng &rng) {
    const OutcomeSampler sampler(outcome_distribution(spec, theta), spec.n_qubits);
    std::vector<Outcome> out(count);
    for (auto &x : out) {
        x = sampler.draw(rng);
    }
    return out;
}

Outcome sample_noisy(const AnsatzSpec &spec, std::span<const double> theta, const NoiseConfig &noise, Rng &rng) {
    noise.validate();
    const OutcomeSampler sampler(outcome_distribution(spec, theta), spec.n_qubits, noise.pure_weight(spec.n_layers));
    return sampler.draw(rng);
}

ParamVector shifted_params(std::span<const double> theta, std::size_t q, ShiftDirection direction) {
    if (q < 1 || q > theta.size()) {
        throw std::out_of_range("shift index " + std::to_string(q) + " outside 1.." + std::to_string(theta.size()));
    }
    ParamVector shifted(theta.begin(), theta.end());
    const double delta = std::numbers::pi / 2;
    shifted[q - 1] += direction == ShiftDirection::plus ? delta : -delta;
    return shifted;
}

void write_ansatz(std::ostream &out, const AnsatzSpec &spec) {
    nlohmann::json doc;
    doc["n_qubits"] = spec.n_qubits;
    doc["n_layers"] = spec.n_layers;
    doc["seed"] = spec.seed;
    auto &axes = doc["axes"] = nlohmann::json::array();
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        std::string row;
        for (std::size_t k = 0; k < spec.n_qubits; ++k) {
            row += axis_letter(spec.axis(layer, k));
        }
        axes.push_back(row);
    }
    auto &ent = doc["entanglers"] = nlohmann::json::array();
    for (const auto &layer : spec.entanglers) {
        auto pairs = nlohmann::json::array();
        for (const auto &gate : layer) {
            pairs.push_back({gate.control, gate.target});
        }
        ent.push_back(pairs);
    }
    out << doc.dump(2) << '\n';
}

AnsatzSpec read_ansatz(std::istream &in) {
    AnsatzSpec spec;
    try {
        const auto doc = nlohmann::json::parse(in);
        spec.n_qubits = doc.at("n_qubits").get<std::size_t>();
        spec.n_layers = doc.at("n_layers").get<std::size_t>();
        spec.seed = doc.value("seed", std::uint64_t{0});
        for (const auto &row : doc.at("axes")) {
            const auto letters = row.get<std::string>();
            if (letters.size() != spec.n_qubits) {
                throw ConfigError("axes row length does not match n_qubits");
            }
            for (char c : letters) {
                spec.axes.push_back(axis_from_letter(c));
            }
        }
        for (const auto &layer : doc.at("entanglers")) {
            std::vector<Cnot> gates;
            for (const auto &pair : layer) {
                gates.push_back({pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>()});
            }
            spec.entanglers.push_back(std::move(gates));
        }
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("malformed ansatz file: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace qsgan
