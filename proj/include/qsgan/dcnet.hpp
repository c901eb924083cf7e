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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsgan/adam.hpp"
#include "qsgan/dense.hpp"

namespace qsgan {

inline constexpr std::size_t kImagePixels = 8;
inline constexpr std::size_t kTrunkHidden = 56;
inline constexpr std::size_t kNumClasses = 2;
/// Classifier outputs: one per real class plus the fake class.
inline constexpr std::size_t kClassifierOutputs = kNumClasses + 1;
/// 1-based index of the fake class.
inline constexpr int kFakeClass = static_cast<int>(kClassifierOutputs);

inline constexpr double kDCLearningRate = 0.005;

using ClassLogits = std::array<double, kClassifierOutputs>;

/// Double-headed discriminator/classifier: a shared ReLU trunk 8 -> 56 -> 8, then a
/// 3-way classifier head (softmax) and a 1-way discriminator head (sigmoid).
struct DCParams {
    enum Layer : std::size_t { trunk_hidden = 0, trunk_out = 1, classifier = 2, discriminator = 3 };

    DenseStack net;

    /// All-zero weights and biases.
    DCParams();

    /// Fan-in uniform initialization.
    static DCParams random(Rng &rng);

    std::size_t num_params() const {
        return net.num_params();
    }

    bool operator==(const DCParams &) const = default;
};

struct DCOutput {
    ClassLogits class_logits{};
    ClassLogits class_probs{};
    double d_logit = 0.0;
    double d_value = 0.5;
};

/// Throws std::invalid_argument unless x has kImagePixels entries.
DCOutput forward(const DCParams &params, std::span<const double> x);

/// h(y, z) = -z_y + log sum_j exp(z_j), y 1-based. Throws std::invalid_argument when y is out of range.
double cross_entropy(int y, std::span<const double> z);

std::array<double, kClassifierOutputs> softmax(std::span<const double, kClassifierOutputs> z);

/// -(1/m) sum [log(1 - D(fake_i)) + log D(real_i)], D clamped.
double discriminator_loss(std::span<const double> d_fake, std::span<const double> d_real);

/// (1/m) sum h(fake class, fake_i) + (1/l) sum h(y_i, labeled_i).
double classifier_loss(std::span<const ClassLogits> fake_logits, std::span<const ClassLogits> labeled_logits,
                       std::span<const int> labels);

inline double combined_loss(double discriminator, double classifier) {
    return 0.5 * (discriminator + classifier);
}

/// What an input plays in one D/C update.
enum class Role { fake, labeled, unlabeled };

struct DCExample {
    std::vector<double> x;
    Role role = Role::fake;
    /// Class index in {1, 2} for labeled inputs; 0 otherwise.
    int label = 0;
};

struct DCLosses {
    double discriminator = 0.0;
    double classifier = 0.0;
    double combined = 0.0;
};

/// Losses of one batch: the fakes against all real inputs for the discriminator term, the
/// fakes and labeled inputs for the classifier term. Throws std::invalid_argument when roles
/// and labels are inconsistent, when there are no labeled inputs, or when the fake and real
/// counts differ.
DCLosses dc_losses(const DCParams &params, std::span<const DCExample> batch);

/// Exact gradient of the combined loss with respect to params.values(). Unlabeled inputs
/// contribute only through the discriminator term.
std::vector<double> dc_gradient(const DCParams &params, std::span<const DCExample> batch);

/// D/C parameters together with their optimizer.
struct DCModel {
    DCParams params;
    AdamState optimizer;

    static DCModel create(DCParams params, double lr = kDCLearningRate);
};

void adam_step(DCModel &model, std::span<const double> grad);

/// Argmax over all three classifier outputs (1-based), ties to the lowest index.
int predict_class(const DCParams &params, std::span<const double> x);

/// Fraction of inputs whose predicted class equals the true label. Predicting the fake class
/// is always wrong. Throws std::invalid_argument on an empty set.
double evaluate_accuracy(const DCParams &params, std::span<const std::vector<double>> inputs,
                         std::span<const int> labels);

/// Discriminator output and the gradient of its pre-sigmoid logit with respect to the input.
struct DiscriminatorInputGradient {
    double d_logit = 0.0;
    double d_value = 0.5;
    std::array<double, kImagePixels> d_logit_dx{};
};

DiscriminatorInputGradient discriminator_input_gradient(const DCParams &params, std::span<const double> x);

void write_dc_checkpoint(std::ostream &out, const DCParams &params);
DCParams read_dc_checkpoint(std::istream &in);

}  // namespace qsgan
