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
#include <string>
#include <string_view>
#include <vector>

#include "qsgan/common.hpp"

namespace qsgan {

/// One fully connected layer inside a DenseStack. Weights are stored row-major
/// [out][in] at `offset`, followed by `out` biases.
struct DenseLayer {
    std::string name;
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t offset = 0;

    std::size_t weight_count() const {
        return in * out;
    }
    std::size_t param_count() const {
        return in * out + out;
    }

    bool operator==(const DenseLayer &) const = default;
};

struct LayerShape {
    std::string name;
    std::size_t in;
    std::size_t out;
};

/// A sequence of dense layers over one flat parameter buffer. The flat buffer is what the
/// optimizer and the finite-difference checks see; the layer table gives it structure.
/// Activations are the caller's business.
class DenseStack {
   public:
    explicit DenseStack(const std::vector<LayerShape> &shapes);

    const std::vector<DenseLayer> &layers() const {
        return layers_;
    }
    const DenseLayer &layer(std::size_t index) const {
        return layers_[index];
    }
    std::size_t num_params() const {
        return values_.size();
    }
    std::span<double> values() {
        return values_;
    }
    std::span<const double> values() const {
        return values_;
    }

    std::span<const double> weights(std::size_t index) const;
    std::span<const double> biases(std::size_t index) const;
    std::span<double> weights(std::size_t index);
    std::span<double> biases(std::size_t index);

    /// Weights and biases of each layer uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
    void init_fan_in(Rng &rng);

    /// y = W x + b.
    void affine(std::size_t index, std::span<const double> x, std::span<double> y) const;

    /// Accumulates dW += dy x^T and db += dy into `grad` (a buffer shaped like values()).
    /// Writes dx = W^T dy when dx is non-empty.
    void affine_backward(std::size_t index, std::span<const double> x, std::span<const double> dy,
                         std::span<double> grad, std::span<double> dx) const;

    bool operator==(const DenseStack &) const = default;

   private:
    std::vector<DenseLayer> layers_;
    std::vector<double> values_;
};

inline double relu(double x) {
    return x > 0.0 ? x : 0.0;
}

double sigmoid(double x);

/// JSON checkpoint keyed by "<layer>.weight" ([out][in] nested arrays) and "<layer>.bias".
void write_checkpoint(std::ostream &out, std::string_view kind, const DenseStack &stack);

/// Loads a checkpoint written by write_checkpoint into a stack of the same shape. Throws
/// IoError on malformed input, wrong kind or mismatched shapes.
void read_checkpoint(std::istream &in, std::string_view kind, DenseStack &stack);

}  // namespace qsgan
