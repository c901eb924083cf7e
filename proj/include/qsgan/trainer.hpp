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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsgan/data.hpp"
#include "qsgan/dcnet.hpp"
#include "qsgan/generator.hpp"

namespace qsgan {

enum class GeneratorKind { quantum_1_layer, quantum_4_layer, uniform_noise, classical_nn };

/// "quantum1", "quantum4", "uniform", "classical".
std::string_view generator_kind_name(GeneratorKind kind);
/// Accepts the names above. Throws ConfigError otherwise.
GeneratorKind parse_generator_kind(std::string_view name);

inline constexpr std::uint64_t kDefaultMasterSeed = 20210315;

struct TrainConfig {
    GeneratorKind generator = GeneratorKind::quantum_4_layer;
    std::size_t labeled = 2;
    std::size_t n_iter = 100;
    std::size_t n_trials = 20;
    double noise_p = 0.0;
    std::uint64_t master_seed = kDefaultMasterSeed;
    double generator_lr = kGeneratorLearningRate;
    double dc_lr = kDCLearningRate;
    std::size_t batch_size = 7;
    std::size_t n_batches = 8;
    std::size_t train_batches_per_fold = 2;
    std::size_t n_qubits = 8;
    /// Worker threads for independent trials; 0 picks the hardware concurrency.
    std::size_t jobs = 0;
    /// Keep theta after every iteration (quantum generators only).
    bool record_theta = false;
    /// Explicit image list replacing the seeded draw.
    std::optional<std::vector<LabeledImage>> dataset;

    /// Defaults for a generator kind. The classical baseline trains its D/C at 0.001 and runs
    /// 500 iterations.
    static TrainConfig defaults(GeneratorKind kind);

    std::size_t n_layers() const;
    bool is_quantum() const {
        return generator == GeneratorKind::quantum_1_layer || generator == GeneratorKind::quantum_4_layer;
    }
    void validate() const;
};

/// Fixed data shared by every trial of an experiment.
struct ExperimentData {
    std::vector<LabeledImage> dataset;
    std::vector<Batch> batches;
    FoldPlan folds;
};

/// Dataset and batches are drawn once from the master seed (or taken from config.dataset).
ExperimentData prepare_data(const TrainConfig &config);

struct IterationRecord {
    double generator_loss = 0.0;
    double discriminator_loss = 0.0;
    double classifier_loss = 0.0;
    double combined_loss = 0.0;
    double accuracy = 0.0;
};

/// Work actually performed during a trial.
struct LoopCounters {
    std::uint64_t circuit_executions = 0;
    std::uint64_t fake_samples = 0;
    std::uint64_t generator_updates = 0;
    std::uint64_t dc_updates = 0;
    std::uint64_t batches_processed = 0;
    std::uint64_t accuracy_evaluations = 0;
};

struct TrialResult {
    std::size_t fold = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::vector<IterationRecord> iterations;
    LoopCounters counters;
    /// Trainable generator parameters at the start and end (empty for the uniform generator).
    std::vector<double> initial_generator_params;
    std::vector<double> final_generator_params;
    std::uint64_t generator_adam_steps = 0;
    std::uint64_t dc_adam_steps = 0;
    std::optional<AnsatzSpec> ansatz;
    std::vector<ParamVector> theta_trajectory;
    DCParams final_dc;

    double final_accuracy() const {
        return iterations.empty() ? 0.0 : iterations.back().accuracy;
    }
};

/// Seed of one trial. Depends only on (master, fold, trial), so trials may run in any order.
std::uint64_t trial_seed(std::uint64_t master, std::size_t fold, std::size_t trial);

/// D(x) for every 8-bit outcome x.
DiscriminatorTable discriminator_table(const DCParams &params, std::size_t n_qubits);

/// One full training run on one fold. Per iteration and per training batch: draw m fakes,
/// update the generator (parameter shift, backprop, or nothing for the uniform generator), then
/// update the D/C on the fakes and the real batch. Test accuracy is evaluated after the last
/// batch of every iteration.
TrialResult run_trial(const TrainConfig &config, const ExperimentData &data, std::size_t fold, std::uint64_t seed);

struct ExperimentResult {
    TrainConfig config;
    std::vector<TrialResult> trials;
    std::vector<double> mean_accuracy;
    std::vector<double> std_accuracy;

    double final_mean() const {
        return mean_accuracy.empty() ? 0.0 : mean_accuracy.back();
    }
    double final_std() const {
        return std_accuracy.empty() ? 0.0 : std_accuracy.back();
    }
    /// First iteration (1-based) whose mean accuracy is at least `level`.
    std::optional<std::size_t> first_iteration_reaching(double level) const;
};

/// Per-iteration mean and population standard deviation of test accuracy across trials.
void aggregate_accuracy(std::span<const TrialResult> trials, std::vector<double> &mean, std::vector<double> &stddev);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Every fold times n_trials, trials distributed over config.jobs workers. Results are ordered by
/// (fold, trial) and independent of the worker count.
ExperimentResult run_experiment(const TrainConfig &config, const ProgressFn &progress = {});

struct NoisePoint {
    double p = 0.0;
    double total_noise = 0.0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    ExperimentResult experiment;
};

/// One experiment per p with otherwise identical configuration and seeds.
std::vector<NoisePoint> noise_sweep(const TrainConfig &config, std::span<const double> p_values,
                                    const ProgressFn &progress = {});

/// "fold,trial,iteration,L_G,L_D,L_C,accuracy".
void write_trials_csv(std::ostream &out, const ExperimentResult &result);
/// "iteration,mean_acc,std_acc".
void write_summary_csv(std::ostream &out, const ExperimentResult &result);
/// "p,total_noise,mean_acc,std_acc".
void write_noise_csv(std::ostream &out, std::span<const NoisePoint> points);

}  // namespace qsgan
