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

#include "qsgan/dcnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsgan {

namespace {

std::vector<LayerShape> dc_shapes() {
    return {
        {"trunk_hidden", kImagePixels, kTrunkHidden},
        {"trunk_out", kTrunkHidden, kImagePixels},
        {"classifier", kImagePixels, kClassifierOutputs},
        {"discriminator", kImagePixels, 1},
    };
}

/// Activations kept for the backward pass.
struct Trace {
    std::array<double, kTrunkHidden> hidden_pre{};
    std::array<double, kTrunkHidden> hidden{};
    std::array<double, kImagePixels> features_pre{};
    std::array<double, kImagePixels> features{};
    ClassLogits logits{};
    double d_logit = 0.0;
};

void check_input(std::span<const double> x) {
    if (x.size() != kImagePixels) {
        throw std::invalid_argument("D/C input must have 8 entries, got " + std::to_string(x.size()));
    }
}

Trace trace_forward(const DCParams &params, std::span<const double> x) {
    check_input(x);
    Trace t;
    params.net.affine(DCParams::trunk_hidden, x, t.hidden_pre);
    std::transform(t.hidden_pre.begin(), t.hidden_pre.end(), t.hidden.begin(), relu);
    params.net.affine(DCParams::trunk_out, t.hidden, t.features_pre);
    std::transform(t.features_pre.begin(), t.features_pre.end(), t.features.begin(), relu);
    params.net.affine(DCParams::classifier, t.features, t.logits);
    params.net.affine(DCParams::discriminator, t.features, std::span<double>(&t.d_logit, 1));
    return t;
}

/// Backpropagates head gradients through the trunk, accumulating into grad. Returns dL/dx
/// when want_dx is set.
std::array<double, kImagePixels> trace_backward(const DCParams &params, const Trace &t, std::span<const double> x,
                                                const ClassLogits &d_logits, double d_dlogit,
                                                std::span<double> grad, bool want_dx) {
    std::array<double, kImagePixels> d_features{};
    std::array<double, kImagePixels> from_disc{};
    params.net.affine_backward(DCParams::classifier, t.features, d_logits, grad, d_features);
    params.net.affine_backward(DCParams::discriminator, t.features, std::span<const double>(&d_dlogit, 1), grad,
                               from_disc);
    for (std::size_t i = 0; i < kImagePixels; ++i) {
        d_features[i] = t.features_pre[i] > 0.0 ? d_features[i] + from_disc[i] : 0.0;
    }
    std::array<double, kTrunkHidden> d_hidden{};
    params.net.affine_backward(DCParams::trunk_out, t.hidden, d_features, grad, d_hidden);
    for (std::size_t i = 0; i < kTrunkHidden; ++i) {
        if (t.hidden_pre[i] <= 0.0) {
            d_hidden[i] = 0.0;
        }
    }
    std::array<double, kImagePixels> d_input{};
    params.net.affine_backward(DCParams::trunk_hidden, x, d_hidden, grad,
                               want_dx ? std::span<double>(d_input) : std::span<double>());
    return d_input;
}

struct BatchCounts {
    std::size_t fakes = 0;
    std::size_t reals = 0;
    std::size_t labeled = 0;
};

BatchCounts check_batch(std::span<const DCExample> batch) {
    BatchCounts counts;
    for (const auto &ex : batch) {
        check_input(ex.x);
        switch (ex.role) {
            case Role::fake:
                if (ex.label != 0) {
                    throw std::invalid_argument("fake inputs must not carry a label");
                }
                ++counts.fakes;
                break;
            case Role::labeled:
                if (ex.label < 1 || ex.label > static_cast<int>(kNumClasses)) {
                    throw std::invalid_argument("labeled input needs a class in {1, 2}");
                }
                ++counts.reals;
                ++counts.labeled;
                break;
            case Role::unlabeled:
                if (ex.label != 0) {
                    throw std::invalid_argument("unlabeled input carries a label");
                }
                ++counts.reals;
                break;
        }
    }
    if (counts.fakes == 0 || counts.fakes != counts.reals) {
        throw std::invalid_argument("batch needs equally many fake and real inputs");
    }
    if (counts.labeled == 0) {
        throw std::invalid_argument("batch has no labeled inputs");
    }
    return counts;
}

bool inside_clamp(double d) {
    return d >= kProbabilityClamp && d <= 1.0 - kProbabilityClamp;
}

}  // namespace

DCParams::DCParams() : net(dc_shapes()) {
}

DCParams DCParams::random(Rng &rng) {
    DCParams params;
    params.net.init_fan_in(rng);
    return params;
}

std::array<double, kClassifierOutputs> softmax(std::span<const double, kClassifierOutputs> z) {
    const double top = *std::max_element(z.begin(), z.end());
    std::array<double, kClassifierOutputs> p{};
    double total = 0.0;
    for (std::size_t j = 0; j < kClassifierOutputs; ++j) {
        p[j] = std::exp(z[j] - top);
        total += p[j];
    }
    for (auto &v : p) {
        v /= total;
    }
    return p;
}

DCOutput forward(const DCParams &params, std::span<const double> x) {
    const Trace t = trace_forward(params, x);
    DCOutput out;
    out.class_logits = t.logits;
    out.class_probs = softmax(t.logits);
    out.d_logit = t.d_logit;
    out.d_value = sigmoid(t.d_logit);
    return out;
}

double cross_entropy(int y, std::span<const double> z) {
    if (y < 1 || static_cast<std::size_t>(y) > z.size()) {
        throw std::invalid_argument("class index " + std::to_string(y) + " out of range");
    }
    const double top = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (double v : z) {
        total += std::exp(v - top);
    }
    return -(z[static_cast<std::size_t>(y - 1)] - top) + std::log(total);
}

double discriminator_loss(std::span<const double> d_fake, std::span<const double> d_real) {
    if (d_fake.empty() || d_fake.size() != d_real.size()) {
        throw std::invalid_argument("discriminator loss needs equal-length non-empty lists");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < d_fake.size(); ++i) {
        total += std::log(1.0 - clamp_probability(d_fake[i])) + std::log(clamp_probability(d_real[i]));
    }
    return -total / static_cast<double>(d_fake.size());
}

double classifier_loss(std::span<const ClassLogits> fake_logits, std::span<const ClassLogits> labeled_logits,
                       std::span<const int> labels) {
    if (labeled_logits.empty()) {
        throw std::invalid_argument("classifier loss needs at least one labeled input");
    }
    if (fake_logits.empty()) {
        throw std::invalid_argument("classifier loss needs at least one fake input");
    }
    if (labels.size() != labeled_logits.size()) {
        throw std::invalid_argument("one label per labeled input");
    }
    double fake_term = 0.0;
    for (const auto &z : fake_logits) {
        fake_term += cross_entropy(kFakeClass, z);
    }
    double labeled_term = 0.0;
    for (std::size_t i = 0; i < labeled_logits.size(); ++i) {
        if (labels[i] < 1 || labels[i] > static_cast<int>(kNumClasses)) {
            throw std::invalid_argument("labels must be real classes");
        }
        labeled_term += cross_entropy(labels[i], labeled_logits[i]);
    }
    return fake_term / static_cast<double>(fake_logits.size()) +
           labeled_term / static_cast<double>(labeled_logits.size());
}

DCLosses dc_losses(const DCParams &params, std::span<const DCExample> batch) {
    check_batch(batch);
    std::vector<double> d_fake;
    std::vector<double> d_real;
    std::vector<ClassLogits> fake_logits;
    std::vector<ClassLogits> labeled_logits;
    std::vector<int> labels;
    for (const auto &ex : batch) {
        const auto out = forward(params, ex.x);
        if (ex.role == Role::fake) {
            d_fake.push_back(out.d_value);
            fake_logits.push_back(out.class_logits);
        } else {
            d_real.push_back(out.d_value);
            if (ex.role == Role::labeled) {
                labeled_logits.push_back(out.class_logits);
                labels.push_back(ex.label);
            }
        }
    }
    DCLosses losses;
    losses.discriminator = discriminator_loss(d_fake, d_real);
    losses.classifier = classifier_loss(fake_logits, labeled_logits, labels);
    losses.combined = combined_loss(losses.discriminator, losses.classifier);
    return losses;
}

std::vector<double> dc_gradient(const DCParams &params, std::span<const DCExample> batch) {
    const BatchCounts counts = check_batch(batch);
    const double disc_scale = 0.5 / static_cast<double>(counts.fakes);
    const double fake_class_scale = 0.5 / static_cast<double>(counts.fakes);
    const double labeled_scale = 0.5 / static_cast<double>(counts.labeled);

    std::vector<double> grad(params.num_params(), 0.0);
    for (const auto &ex : batch) {
        const Trace t = trace_forward(params, ex.x);
        const double d = sigmoid(t.d_logit);
        ClassLogits d_logits{};
        double d_dlogit = 0.0;
        if (ex.role == Role::fake) {
            // d/da [-log(1 - sigmoid(a))] = sigmoid(a)
            d_dlogit = inside_clamp(d) ? disc_scale * d : 0.0;
            const auto p = softmax(t.logits);
            for (std::size_t j = 0; j < kClassifierOutputs; ++j) {
                d_logits[j] = fake_class_scale * (p[j] - (static_cast<int>(j) + 1 == kFakeClass ? 1.0 : 0.0));
            }
        } else {
            // d/da [-log sigmoid(a)] = sigmoid(a) - 1
            d_dlogit = inside_clamp(d) ? disc_scale * (d - 1.0) : 0.0;
            if (ex.role == Role::labeled) {
                const auto p = softmax(t.logits);
                for (std::size_t j = 0; j < kClassifierOutputs; ++j) {
                    d_logits[j] = labeled_scale * (p[j] - (static_cast<int>(j) + 1 == ex.label ? 1.0 : 0.0));
                }
            }
        }
        trace_backward(params, t, ex.x, d_logits, d_dlogit, grad, false);
    }
    return grad;
}

DCModel DCModel::create(DCParams params, double lr) {
    auto optimizer = AdamState::for_size(params.num_params(), lr);
    return DCModel{std::move(params), std::move(optimizer)};
}

void adam_step(DCModel &model, std::span<const double> grad) {
    if (grad.size() != model.params.num_params()) {
        throw std::invalid_argument("D/C gradient length mismatch");
    }
    model.optimizer.step(model.params.net.values(), grad);
    for (double v : model.params.net.values()) {
        if (!std::isfinite(v)) {
            throw std::runtime_error("D/C parameters became non-finite");
        }
    }
}

int predict_class(const DCParams &params, std::span<const double> x) {
    const Trace t = trace_forward(params, x);
    std::size_t best = 0;
    for (std::size_t j = 1; j < kClassifierOutputs; ++j) {
        if (t.logits[j] > t.logits[best]) {
            best = j;
        }
    }
    return static_cast<int>(best) + 1;
}

double evaluate_accuracy(const DCParams &params, std::span<const std::vector<double>> inputs,
                         std::span<const int> labels) {
    if (inputs.empty()) {
        throw std::invalid_argument("accuracy of an empty test set is undefined");
    }
    if (inputs.size() != labels.size()) {
        throw std::invalid_argument("one label per test input");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (predict_class(params, inputs[i]) == labels[i]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(inputs.size());
}

DiscriminatorInputGradient discriminator_input_gradient(const DCParams &params, std::span<const double> x) {
    const Trace t = trace_forward(params, x);
    // Scratch parameter gradient; only dx is wanted here.
    std::vector<double> scratch(params.num_params(), 0.0);
    const ClassLogits no_class_grad{};
    const auto dx = trace_backward(params, t, x, no_class_grad, 1.0, scratch, true);
    DiscriminatorInputGradient out;
    out.d_logit = t.d_logit;
    out.d_value = sigmoid(t.d_logit);
    std::copy(dx.begin(), dx.end(), out.d_logit_dx.begin());
    return out;
}

void write_dc_checkpoint(std::ostream &out, const DCParams &params) {
    write_checkpoint(out, "dcnet", params.net);
}

DCParams read_dc_checkpoint(std::istream &in) {
    DCParams params;
    read_checkpoint(in, "dcnet", params.net);
    return params;
}

}  // namespace qsgan
