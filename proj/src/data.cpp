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

#include "qsgan/data.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace qsgan {

int count_white_runs(Pixels pixels) {
    int runs = 0;
    bool previous = false;
    for (std::size_t k = 0; k < kPixels; ++k) {
        const bool white = (pixels >> k) & 1U;
        if (white && !previous) {
            ++runs;
        }
        previous = white;
    }
    return runs;
}

std::optional<int> label_rule(Pixels pixels) {
    switch (count_white_runs(pixels)) {
        case 1:
            return kConnectedClass;
        case 2:
            return kSeparatedClass;
        default:
            return std::nullopt;
    }
}

std::string pixels_to_string(Pixels pixels) {
    std::string s(kPixels, '0');
    for (std::size_t k = 0; k < kPixels; ++k) {
        if ((pixels >> k) & 1U) {
            s[k] = '1';
        }
    }
    return s;
}

Pixels pixels_from_string(const std::string &text) {
    if (text.size() != kPixels) {
        throw IoError("image must be 8 characters of 0/1: '" + text + "'");
    }
    Pixels pixels = 0;
    for (std::size_t k = 0; k < kPixels; ++k) {
        if (text[k] == '1') {
            pixels |= static_cast<Pixels>(1U << k);
        } else if (text[k] != '0') {
            throw IoError("image must be 8 characters of 0/1: '" + text + "'");
        }
    }
    return pixels;
}

std::vector<double> to_features(Pixels pixels) {
    std::vector<double> x(kPixels);
    for (std::size_t k = 0; k < kPixels; ++k) {
        x[k] = ((pixels >> k) & 1U) ? 1.0 : 0.0;
    }
    return x;
}

std::vector<Pixels> images_with_runs(int runs) {
    std::vector<Pixels> pool;
    for (unsigned v = 0; v < 256; ++v) {
        if (count_white_runs(static_cast<Pixels>(v)) == runs) {
            pool.push_back(static_cast<Pixels>(v));
        }
    }
    return pool;
}

std::vector<LabeledImage> build_dataset(Rng &rng) {
    std::vector<LabeledImage> dataset;
    dataset.reserve(2 * kImagesPerClass);
    for (int cls : {kConnectedClass, kSeparatedClass}) {
        auto pool = images_with_runs(cls);
        shuffle_in_place(pool, rng);
        for (std::size_t i = 0; i < kImagesPerClass; ++i) {
            dataset.push_back({pool[i], cls});
        }
    }
    return dataset;
}

std::vector<LabeledImage> build_dataset(std::uint64_t seed) {
    Rng rng(seed);
    return build_dataset(rng);
}

std::vector<Batch> make_batches(const std::vector<LabeledImage> &dataset, std::size_t n_batches, std::size_t m,
                                std::size_t labeled, Rng &rng) {
    if (n_batches == 0 || m == 0 || n_batches * m != dataset.size()) {
        throw ConfigError("dataset of " + std::to_string(dataset.size()) + " images cannot form " +
                          std::to_string(n_batches) + " batches of " + std::to_string(m));
    }
    if (labeled < 1 || labeled > m) {
        throw ConfigError("labeled count must be in [1, m]");
    }
    for (const auto &image : dataset) {
        if (!image.label) {
            throw std::invalid_argument("every dataset image needs a label before batching");
        }
    }
    auto shuffled = dataset;
    shuffle_in_place(shuffled, rng);
    std::vector<Batch> batches(n_batches);
    for (std::size_t b = 0; b < n_batches; ++b) {
        auto &batch = batches[b];
        batch.labeled_count = labeled;
        for (std::size_t i = 0; i < m; ++i) {
            auto image = shuffled[b * m + i];
            batch.true_labels.push_back(*image.label);
            if (i >= labeled) {
                image.label.reset();
            }
            batch.images.push_back(image);
        }
    }
    return batches;
}

FoldPlan default_fold_plan(std::size_t n_batches, std::size_t train_per_fold) {
    if (train_per_fold == 0 || n_batches % train_per_fold != 0) {
        throw ConfigError("batches do not split evenly into folds");
    }
    FoldPlan plan;
    for (std::size_t start = 0; start < n_batches; start += train_per_fold) {
        Fold fold;
        for (std::size_t b = 0; b < n_batches; ++b) {
            if (b >= start && b < start + train_per_fold) {
                fold.train.push_back(b);
            } else {
                fold.test.push_back(b);
            }
        }
        plan.push_back(std::move(fold));
    }
    return plan;
}

void write_dataset(std::ostream &out, std::span<const LabeledImage> images) {
    for (const auto &image : images) {
        out << pixels_to_string(image.pixels);
        if (image.label) {
            out << '\t' << *image.label;
        }
        out << '\n';
    }
}

std::vector<LabeledImage> read_dataset(std::istream &in) {
    std::vector<LabeledImage> images;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        LabeledImage image;
        image.pixels = pixels_from_string(line.substr(0, tab));
        if (tab != std::string::npos) {
            const auto field = line.substr(tab + 1);
            if (field == "1") {
                image.label = kConnectedClass;
            } else if (field == "2") {
                image.label = kSeparatedClass;
            } else {
                throw IoError("line " + std::to_string(line_no) + ": label must be 1 or 2");
            }
        }
        images.push_back(image);
    }
    return images;
}

void write_batches_csv(std::ostream &out, std::span<const Batch> batches) {
    out << "batch,position,pixels,label,labeled\n";
    for (std::size_t b = 0; b < batches.size(); ++b) {
        const auto &batch = batches[b];
        for (std::size_t i = 0; i < batch.images.size(); ++i) {
            out << b << ',' << i << ',' << pixels_to_string(batch.images[i].pixels) << ',' << batch.true_labels[i]
                << ',' << (batch.images[i].label ? 1 : 0) << '\n';
        }
    }
}

void write_folds_csv(std::ostream &out, const FoldPlan &plan) {
    out << "fold,role,batch\n";
    for (std::size_t f = 0; f < plan.size(); ++f) {
        for (auto b : plan[f].train) {
            out << f << ",train," << b << '\n';
        }
        for (auto b : plan[f].test) {
            out << f << ",test," << b << '\n';
        }
    }
}

}  // namespace qsgan
