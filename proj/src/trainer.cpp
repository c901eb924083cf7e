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

#include "qsgan/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "qsgan/classical_gen.hpp"

namespace qsgan {

namespace {

// Stream tags for seed derivation.
constexpr std::uint64_t kDatasetStream = 0x64617461;  // "data"
constexpr std::uint64_t kBatchStream = 0x62617463;    // "batc"
constexpr std::uint64_t kDCInitStream = 1;
constexpr std::uint64_t kGeneratorInitStream = 2;
constexpr std::uint64_t kSamplingStream = 3;

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(seed ^ mix_seed(stream));
}

std::vector<double> outcome_features(Outcome x) {
    return to_features(static_cast<Pixels>(x));
}

std::vector<double> collect_d(const DiscriminatorTable &table, std::span<const Outcome> outcomes) {
    std::vector<double> d;
    d.reserve(outcomes.size());
    for (auto x : outcomes) {
        d.push_back(table[x]);
    }
    return d;
}

/// Holds whichever generator the configuration asks for.
struct TrialGenerator {
    std::optional<GeneratorState> quantum;
    std::optional<ClassicalGenerator> classical;

    std::vector<double> params() const {
        if (quantum) {
            return quantum->theta;
        }
        if (classical) {
            auto values = classical->net.values();
            return {values.begin(), values.end()};
        }
        return {};
    }
    std::uint64_t adam_steps() const {
        if (quantum) {
            return quantum->optimizer.t;
        }
        if (classical) {
            return classical->optimizer.t;
        }
        return 0;
    }
};

}  // namespace

std::string_view generator_kind_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::quantum_1_layer:
            return "quantum1";
        case GeneratorKind::quantum_4_layer:
            return "quantum4";
        case GeneratorKind::uniform_noise:
            return "uniform";
        case GeneratorKind::classical_nn:
            return "classical";
    }
    return "?";
}

GeneratorKind parse_generator_kind(std::string_view name) {
    for (auto kind : {GeneratorKind::quantum_1_layer, GeneratorKind::quantum_4_layer, GeneratorKind::uniform_noise,
                      GeneratorKind::classical_nn}) {
        if (name == generator_kind_name(kind)) {
            return kind;
        }
    }
    throw ConfigError("unknown generator '" + std::string(name) + "' (quantum1, quantum4, uniform, classical)");
}

TrainConfig TrainConfig::defaults(GeneratorKind kind) {
    TrainConfig config;
    config.generator = kind;
    if (kind == GeneratorKind::classical_nn) {
        config.dc_lr = 0.001;
        config.generator_lr = kClassicalLearningRate;
        config.n_iter = 500;
    }
    return config;
}

std::size_t TrainConfig::n_layers() const {
    return generator == GeneratorKind::quantum_1_layer ? 1 : 4;
}

void TrainConfig::validate() const {
    if (labeled < 1 || labeled > batch_size) {
        throw ConfigError("labeled count must be in [1, batch size]");
    }
    if (n_iter == 0 || n_trials == 0) {
        throw ConfigError("iterations and trials must be positive");
    }
    NoiseConfig{noise_p}.validate();
    if (!(generator_lr > 0.0) || !(dc_lr > 0.0)) {
        throw ConfigError("learning rates must be positive");
    }
    if (n_qubits != kImagePixels) {
        throw ConfigError("generator width must equal the image width (8)");
    }
    if (n_batches == 0 || train_batches_per_fold == 0 || n_batches % train_batches_per_fold != 0 ||
        train_batches_per_fold >= n_batches) {
        throw ConfigError("batches must split evenly into folds with a non-empty test part");
    }
}

ExperimentData prepare_data(const TrainConfig &config) {
    config.validate();
    ExperimentData data;
    if (config.dataset) {
        data.dataset = *config.dataset;
    } else {
        Rng rng(stream_seed(config.master_seed, kDatasetStream));
        data.dataset = build_dataset(rng);
    }
    Rng rng(stream_seed(config.master_seed, kBatchStream));
    data.batches = make_batches(data.dataset, config.n_batches, config.batch_size, config.labeled, rng);
    data.folds = default_fold_plan(config.n_batches, config.train_batches_per_fold);
    return data;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t fold, std::size_t trial) {
    return mix_seed(mix_seed(mix_seed(master) ^ static_cast<std::uint64_t>(fold)) ^ static_cast<std::uint64_t>(trial));
}

DiscriminatorTable discriminator_table(const DCParams &params, std::size_t n_qubits) {
    DiscriminatorTable table(std::size_t{1} << n_qubits);
    for (std::size_t x = 0; x < table.size(); ++x) {
        table[x] = forward(params, outcome_features(static_cast<Outcome>(x))).d_value;
    }
    return table;
}

TrialResult run_trial(const TrainConfig &config, const ExperimentData &data, std::size_t fold, std::uint64_t seed) {
    config.validate();
    if (fold >= data.folds.size()) {
        throw ConfigError("fold index out of range");
    }
    const auto &plan = data.folds[fold];
    const std::size_t m = config.batch_size;

    std::vector<std::vector<double>> test_inputs;
    std::vector<int> test_labels;
    for (auto b : plan.test) {
        const auto &batch = data.batches.at(b);
        for (std::size_t i = 0; i < batch.images.size(); ++i) {
            test_inputs.push_back(to_features(batch.images[i].pixels));
            test_labels.push_back(batch.true_labels[i]);
        }
    }

    Rng dc_init(stream_seed(seed, kDCInitStream));
    Rng gen_init(stream_seed(seed, kGeneratorInitStream));
    Rng rng(stream_seed(seed, kSamplingStream));

    DCModel dc = DCModel::create(DCParams::random(dc_init), config.dc_lr);
    TrialGenerator gen;
    TrialResult result;
    result.seed = seed;
    if (config.is_quantum()) {
        auto spec = build_ansatz(config.n_qubits, config.n_layers(), gen_init());
        auto theta = random_angles(spec.num_params(), gen_init);
        gen.quantum = make_generator(std::move(spec), std::move(theta), NoiseConfig{config.noise_p},
                                     config.generator_lr);
        result.ansatz = gen.quantum->spec;
    } else if (config.generator == GeneratorKind::classical_nn) {
        gen.classical = ClassicalGenerator::random(gen_init, config.generator_lr);
    }
    result.initial_generator_params = gen.params();
    result.iterations.reserve(config.n_iter);

    ShotCounter shots;
    for (std::size_t iter = 0; iter < config.n_iter; ++iter) {
        IterationRecord record;
        for (auto b : plan.train) {
            const auto &batch = data.batches.at(b);
            std::vector<DCExample> examples;
            examples.reserve(2 * m);
            double lg = 0.0;

            if (gen.quantum) {
                const auto table = discriminator_table(dc.params, config.n_qubits);
                const auto fakes = generate_batch(*gen.quantum, m, rng, &shots);
                lg = generator_loss(collect_d(table, fakes));
                const auto grad = estimate_generator_gradient(*gen.quantum, table, m, rng, &shots);
                adam_update(*gen.quantum, grad);
                ++result.counters.generator_updates;
                for (auto x : fakes) {
                    examples.push_back({outcome_features(x), Role::fake, 0});
                }
            } else if (gen.classical) {
                auto fakes = generate(*gen.classical, rng, m);
                std::vector<double> d;
                for (const auto &x : fakes) {
                    d.push_back(forward(dc.params, x).d_value);
                }
                lg = generator_loss(d);
                train_step(*gen.classical, dc.params, m, rng);
                ++result.counters.generator_updates;
                for (auto &x : fakes) {
                    examples.push_back({std::move(x), Role::fake, 0});
                }
            } else {
                std::vector<double> d;
                for (std::size_t i = 0; i < m; ++i) {
                    auto x = outcome_features(uniform_outcome(config.n_qubits, rng));
                    d.push_back(forward(dc.params, x).d_value);
                    examples.push_back({std::move(x), Role::fake, 0});
                }
                lg = generator_loss(d);
            }
            result.counters.fake_samples += m;

            for (std::size_t i = 0; i < batch.images.size(); ++i) {
                const auto &image = batch.images[i];
                if (i < batch.labeled_count) {
                    examples.push_back({to_features(image.pixels), Role::labeled, batch.true_labels[i]});
                } else {
                    examples.push_back({to_features(image.pixels), Role::unlabeled, 0});
                }
            }

            const auto losses = dc_losses(dc.params, examples);
            adam_step(dc, dc_gradient(dc.params, examples));
            ++result.counters.dc_updates;
            ++result.counters.batches_processed;

            record.generator_loss += lg;
            record.discriminator_loss += losses.discriminator;
            record.classifier_loss += losses.classifier;
            record.combined_loss += losses.combined;
        }
        const double n_train = static_cast<double>(plan.train.size());
        record.generator_loss /= n_train;
        record.discriminator_loss /= n_train;
        record.classifier_loss /= n_train;
        record.combined_loss /= n_train;
        record.accuracy = evaluate_accuracy(dc.params, test_inputs, test_labels);
        ++result.counters.accuracy_evaluations;
        result.iterations.push_back(record);
        if (config.record_theta && gen.quantum) {
            result.theta_trajectory.push_back(gen.quantum->theta);
        }
    }

    result.counters.circuit_executions = shots.executions;
    result.final_generator_params = gen.params();
    result.generator_adam_steps = gen.adam_steps();
    result.dc_adam_steps = dc.optimizer.t;
    result.final_dc = dc.params;
    return result;
}

std::optional<std::size_t> ExperimentResult::first_iteration_reaching(double level) const {
    for (std::size_t i = 0; i < mean_accuracy.size(); ++i) {
        if (mean_accuracy[i] >= level) {
            return i + 1;
        }
    }
    return std::nullopt;
}

void aggregate_accuracy(std::span<const TrialResult> trials, std::vector<double> &mean, std::vector<double> &stddev) {
    mean.clear();
    stddev.clear();
    if (trials.empty()) {
        return;
    }
    const std::size_t n_iter = trials.front().iterations.size();
    for (const auto &trial : trials) {
        if (trial.iterations.size() != n_iter) {
            throw std::invalid_argument("trials have different iteration counts");
        }
    }
    const double count = static_cast<double>(trials.size());
    mean.assign(n_iter, 0.0);
    stddev.assign(n_iter, 0.0);
    for (std::size_t i = 0; i < n_iter; ++i) {
        double total = 0.0;
        for (const auto &trial : trials) {
            total += trial.iterations[i].accuracy;
        }
        const double mu = total / count;
        double squares = 0.0;
        for (const auto &trial : trials) {
            const double d = trial.iterations[i].accuracy - mu;
            squares += d * d;
        }
        mean[i] = mu;
        stddev[i] = std::sqrt(squares / count);
    }
}

ExperimentResult run_experiment(const TrainConfig &config, const ProgressFn &progress) {
    const ExperimentData data = prepare_data(config);
    const std::size_t n_folds = data.folds.size();
    const std::size_t total = n_folds * config.n_trials;

    ExperimentResult result;
    result.config = config;
    result.trials.resize(total);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t fold = task / config.n_trials;
            const std::size_t trial = task % config.n_trials;
            try {
                auto trial_result = run_trial(config, data, fold, trial_seed(config.master_seed, fold, trial));
                trial_result.fold = fold;
                trial_result.trial = trial;
                result.trials[task] = std::move(trial_result);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = total;
                return;
            }
            const std::size_t finished = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, total);
            }
        }
    };

    std::size_t jobs = config.jobs != 0 ? config.jobs : std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min(jobs, total);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    aggregate_accuracy(result.trials, result.mean_accuracy, result.std_accuracy);
    return result;
}

std::vector<NoisePoint> noise_sweep(const TrainConfig &config, std::span<const double> p_values,
                                    const ProgressFn &progress) {
    if (!config.is_quantum()) {
        throw ConfigError("noise sweep needs a quantum generator");
    }
    if (p_values.empty()) {
        throw ConfigError("noise sweep needs at least one p value");
    }
    for (double p : p_values) {
        NoiseConfig{p}.validate();
    }
    std::vector<NoisePoint> points;
    for (double p : p_values) {
        auto run_config = config;
        run_config.noise_p = p;
        NoisePoint point;
        point.p = p;
        point.total_noise = NoiseConfig{p}.total_noise(config.n_layers());
        point.experiment = run_experiment(run_config, progress);
        point.mean_accuracy = point.experiment.final_mean();
        point.std_accuracy = point.experiment.final_std();
        points.push_back(std::move(point));
    }
    return points;
}

void write_trials_csv(std::ostream &out, const ExperimentResult &result) {
    const auto old_precision = out.precision(10);
    out << "fold,trial,iteration,L_G,L_D,L_C,accuracy\n";
    for (const auto &trial : result.trials) {
        for (std::size_t i = 0; i < trial.iterations.size(); ++i) {
            const auto &r = trial.iterations[i];
            out << trial.fold << ',' << trial.trial << ',' << i + 1 << ',' << r.generator_loss << ','
                << r.discriminator_loss << ',' << r.classifier_loss << ',' << r.accuracy << '\n';
        }
    }
    out.precision(old_precision);
}

void write_summary_csv(std::ostream &out, const ExperimentResult &result) {
    const auto old_precision = out.precision(10);
    out << "iteration,mean_acc,std_acc\n";
    for (std::size_t i = 0; i < result.mean_accuracy.size(); ++i) {
        out << i + 1 << ',' << result.mean_accuracy[i] << ',' << result.std_accuracy[i] << '\n';
    }
    out.precision(old_precision);
}

void write_noise_csv(std::ostream &out, std::span<const NoisePoint> points) {
    const auto old_precision = out.precision(10);
    out << "p,total_noise,mean_acc,std_acc\n";
    for (const auto &point : points) {
        out << point.p << ',' << point.total_noise << ',' << point.mean_accuracy << ',' << point.std_accuracy << '\n';
    }
    out.precision(old_precision);
}

}  // namespace qsgan
