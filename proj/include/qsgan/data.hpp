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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsgan/common.hpp"

namespace qsgan {

inline constexpr std::size_t kPixels = 8;

/// 1x8 binary image. Bit k is pixel k counting from the left (0 = black, 1 = white); this is
/// the same bit order as a generator measurement outcome.
using Pixels = std::uint8_t;

/// Class indices: 1 for connected images (a single white run), 2 for two separated runs.
inline constexpr int kConnectedClass = 1;
inline constexpr int kSeparatedClass = 2;

struct LabeledImage {
    Pixels pixels = 0;
    std::optional<int> label;

    bool operator==(const LabeledImage &) const = default;
};

/// Number of maximal runs of white pixels.
int count_white_runs(Pixels pixels);

/// 1 run -> class 1, 2 runs -> class 2, anything else -> nullopt.
std::optional<int> label_rule(Pixels pixels);

std::string pixels_to_string(Pixels pixels);
/// Parses 8 characters of 0/1. Throws IoError on anything else.
Pixels pixels_from_string(const std::string &text);

/// 0.0 / 1.0 per pixel, in pixel order.
std::vector<double> to_features(Pixels pixels);

/// All 8-bit images with exactly `runs` white runs, ascending.
std::vector<Pixels> images_with_runs(int runs);

inline constexpr std::size_t kImagesPerClass = 28;

/// 28 distinct images from each pool, drawn without replacement; class 1 images first.
std::vector<LabeledImage> build_dataset(Rng &rng);
std::vector<LabeledImage> build_dataset(std::uint64_t seed);

/// A group of images whose first `labeled_count` entries keep their labels. The original
/// labels of every image are retained in `true_labels` for evaluation.
struct Batch {
    std::vector<LabeledImage> images;
    std::vector<int> true_labels;
    std::size_t labeled_count = 0;
};

/// Shuffles the dataset, cuts it into n_batches groups of m and masks the labels of the last
/// m - labeled images of each group. Throws ConfigError when n_batches * m differs from the
/// dataset size or labeled is outside [1, m], and std::invalid_argument on unlabeled input.
std::vector<Batch> make_batches(const std::vector<LabeledImage> &dataset, std::size_t n_batches, std::size_t m,
                                std::size_t labeled, Rng &rng);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;

    bool operator==(const Fold &) const = default;
};

using FoldPlan = std::vector<Fold>;

/// Consecutive pairs {0,1}, {2,3}, ... for training, the rest for testing.
FoldPlan default_fold_plan(std::size_t n_batches = 8, std::size_t train_per_fold = 2);

/// One image per line: 8 characters of 0/1, then optionally a tab and the class index.
void write_dataset(std::ostream &out, std::span<const LabeledImage> images);
std::vector<LabeledImage> read_dataset(std::istream &in);

/// CSV "batch,position,pixels,label,labeled".
void write_batches_csv(std::ostream &out, std::span<const Batch> batches);
/// CSV "fold,role,batch".
void write_folds_csv(std::ostream &out, const FoldPlan &plan);

}  // namespace qsgan
