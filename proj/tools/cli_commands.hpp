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
#include <optional>
#include <string>
#include <vector>

#include "qsgan/trainer.hpp"

namespace qsgan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Settings gathered from an optional JSON config file and command-line flags. Unset fields
/// keep the defaults of the chosen generator.
struct Overrides {
    std::string generator;
    std::optional<std::size_t> labeled;
    std::optional<std::size_t> iters;
    std::optional<std::size_t> trials;
    std::optional<double> noise_p;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::optional<double> generator_lr;
    std::optional<double> dc_lr;
    std::string dataset_path;
};

/// Reads the JSON config file format: any of "generator", "labeled", "iterations", "trials",
/// "noise_p", "seed", "jobs", "generator_lr", "dc_lr", "dataset". Throws ConfigError on unknown
/// keys or wrong types and IoError when the file cannot be read.
Overrides read_config_file(const std::string &path);

/// Fields set in `top` win over `base`.
Overrides merge(const Overrides &base, const Overrides &top);

/// Starts from TrainConfig::defaults of the requested generator (quantum4 if none) and applies
/// every set field. A dataset path is loaded and labeled by the run-count rule.
TrainConfig resolve(const Overrides &settings);

/// JSON form of a resolved configuration, readable by read_config_file.
void write_config(std::ostream &out, const TrainConfig &config);

/// Creates `parent/stem`, or `parent/stem-2`, `parent/stem-3`, ... when taken. Never reuses an
/// existing directory. Throws IoError.
std::string fresh_directory(const std::string &parent, const std::string &stem);

/// Entry point shared by the executable and the tests. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qsgan::cli
