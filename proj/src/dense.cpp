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

#include "qsgan/dense.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace qsgan {

DenseStack::DenseStack(const std::vector<LayerShape> &shapes) {
    std::size_t offset = 0;
    for (const auto &shape : shapes) {
        if (shape.in == 0 || shape.out == 0) {
            throw ConfigError("dense layer '" + shape.name + "' has a zero dimension");
        }
        layers_.push_back({shape.name, shape.in, shape.out, offset});
        offset += layers_.back().param_count();
    }
    values_.assign(offset, 0.0);
}

std::span<const double> DenseStack::weights(std::size_t index) const {
    const auto &l = layers_[index];
    return std::span<const double>(values_).subspan(l.offset, l.weight_count());
}

std::span<const double> DenseStack::biases(std::size_t index) const {
    const auto &l = layers_[index];
    return std::span<const double>(values_).subspan(l.offset + l.weight_count(), l.out);
}

std::span<double> DenseStack::weights(std::size_t index) {
    const auto &l = layers_[index];
    return std::span<double>(values_).subspan(l.offset, l.weight_count());
}

std::span<double> DenseStack::biases(std::size_t index) {
    const auto &l = layers_[index];
    return std::span<double>(values_).subspan(l.offset + l.weight_count(), l.out);
}

void DenseStack::init_fan_in(Rng &rng) {
    for (const auto &l : layers_) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(l.in));
        for (std::size_t i = 0; i < l.param_count(); ++i) {
            values_[l.offset + i] = bound * (2.0 * uniform01(rng) - 1.0);
        }
    }
}

void DenseStack::affine(std::size_t index, std::span<const double> x, std::span<double> y) const {
    const auto &l = layers_[index];
    const auto w = weights(index);
    const auto b = biases(index);
    for (std::size_t o = 0; o < l.out; ++o) {
        double acc = b[o];
        const double *row = w.data() + o * l.in;
        for (std::size_t i = 0; i < l.in; ++i) {
            acc += row[i] * x[i];
        }
        y[o] = acc;
    }
}

void DenseStack::affine_backward(std::size_t index, std::span<const double> x, std::span<const double> dy,
                                 std::span<double> grad, std::span<double> dx) const {
    const auto &l = layers_[index];
    const auto w = weights(index);
    double *gw = grad.data() + l.offset;
    double *gb = gw + l.weight_count();
    for (std::size_t o = 0; o < l.out; ++o) {
        if (dy[o] == 0.0) {
            continue;
        }
        double *row = gw + o * l.in;
        for (std::size_t i = 0; i < l.in; ++i) {
            row[i] += dy[o] * x[i];
        }
        gb[o] += dy[o];
    }
    if (!dx.empty()) {
        for (std::size_t i = 0; i < l.in; ++i) {
            dx[i] = 0.0;
        }
        for (std::size_t o = 0; o < l.out; ++o) {
            const double *row = w.data() + o * l.in;
            for (std::size_t i = 0; i < l.in; ++i) {
                dx[i] += row[i] * dy[o];
            }
        }
    }
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void write_checkpoint(std::ostream &out, std::string_view kind, const DenseStack &stack) {
    nlohmann::json doc;
    doc["kind"] = kind;
    auto &params = doc["params"] = nlohmann::json::object();
    for (std::size_t index = 0; index < stack.layers().size(); ++index) {
        const auto &l = stack.layer(index);
        const auto w = stack.weights(index);
        auto rows = nlohmann::json::array();
        for (std::size_t o = 0; o < l.out; ++o) {
            rows.push_back(std::vector<double>(w.begin() + o * l.in, w.begin() + (o + 1) * l.in));
        }
        params[l.name + ".weight"] = rows;
        const auto b = stack.biases(index);
        params[l.name + ".bias"] = std::vector<double>(b.begin(), b.end());
    }
    out << doc.dump(1) << '\n';
}

void read_checkpoint(std::istream &in, std::string_view kind, DenseStack &target) {
    DenseStack stack = target;
    try {
        const auto doc = nlohmann::json::parse(in);
        if (doc.at("kind").get<std::string>() != kind) {
            throw IoError("checkpoint kind mismatch: expected " + std::string(kind));
        }
        const auto &params = doc.at("params");
        for (std::size_t index = 0; index < stack.layers().size(); ++index) {
            const auto &l = stack.layer(index);
            const auto &rows = params.at(l.name + ".weight");
            const auto bias = params.at(l.name + ".bias").get<std::vector<double>>();
            if (rows.size() != l.out || bias.size() != l.out) {
                throw IoError("checkpoint shape mismatch in layer " + l.name);
            }
            auto w = stack.weights(index);
            for (std::size_t o = 0; o < l.out; ++o) {
                const auto row = rows.at(o).get<std::vector<double>>();
                if (row.size() != l.in) {
                    throw IoError("checkpoint shape mismatch in layer " + l.name);
                }
                std::copy(row.begin(), row.end(), w.begin() + o * l.in);
            }
            std::copy(bias.begin(), bias.end(), stack.biases(index).begin());
        }
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("malformed checkpoint: ") + e.what());
    }
    target = std::move(stack);
}

}  // namespace qsgan
