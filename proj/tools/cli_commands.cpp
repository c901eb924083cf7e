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

#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace qsgan::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kDefaultReportLevel = 0.67;

std::ofstream open_output(const fs::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

std::ifstream open_input(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return in;
}

template <typename T>
void take(const json &doc, const char *key, std::optional<T> &field) {
    if (!doc.contains(key)) {
        return;
    }
    const auto &value = doc.at(key);
    if constexpr (std::is_floating_point_v<T>) {
        if (!value.is_number()) {
            throw ConfigError(std::string("config: '") + key + "' must be a number");
        }
    } else {
        if (!value.is_number_unsigned()) {
            throw ConfigError(std::string("config: '") + key + "' must be a non-negative integer");
        }
    }
    field = value.get<T>();
}

void take(const json &doc, const char *key, std::string &field) {
    if (!doc.contains(key)) {
        return;
    }
    if (!doc.at(key).is_string()) {
        throw ConfigError(std::string("config: '") + key + "' must be a string");
    }
    field = doc.at(key).get<std::string>();
}

std::string format_accuracy(double mean, double sd) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << 100.0 * mean << "% +- " << 100.0 * sd << "pp";
    return s.str();
}

std::string run_stem(const std::string &command, const TrainConfig &config) {
    std::ostringstream s;
    s << command << '-' << generator_kind_name(config.generator) << "-l" << config.labeled << "-seed"
      << config.master_seed;
    return s.str();
}

ProgressFn progress_printer(std::ostream &err, std::size_t per_fold) {
    return [&err, per_fold](std::size_t done, std::size_t total) {
        if (done % per_fold == 0 || done == total) {
            err << "  " << done << '/' << total << " trials\n";
        }
    };
}

void write_experiment(const fs::path &dir, const ExperimentResult &result, const std::string &prefix = "") {
    auto trials = open_output(dir / (prefix + "trials.csv"));
    write_trials_csv(trials, result);
    auto summary = open_output(dir / (prefix + "summary.csv"));
    write_summary_csv(summary, result);
}

void describe(std::ostream &out, const std::string &name, const ExperimentResult &result, double level) {
    out << name << ": final accuracy " << format_accuracy(result.final_mean(), result.final_std()) << " over "
        << result.trials.size() << " trials";
    if (const auto first = result.first_iteration_reaching(level)) {
        out << ", first reaches " << 100.0 * level << "% at iteration " << *first;
    } else {
        out << ", never reaches " << 100.0 * level << "%";
    }
    out << '\n';
}

/// Columns of a CSV file with a header, as doubles.
std::vector<std::vector<double>> read_numeric_csv(const fs::path &path, std::vector<std::string> &header) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path.string() + ": empty file");
    }
    header.clear();
    std::stringstream head(line);
    for (std::string cell; std::getline(head, cell, ',');) {
        header.push_back(cell);
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream cells(line);
        for (std::string cell; std::getline(cells, cell, ',');) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception &) {
                throw IoError(path.string() + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != header.size()) {
            throw IoError(path.string() + ": ragged row");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void report_summary(std::ostream &out, const fs::path &path, double level) {
    std::vector<std::string> header;
    const auto rows = read_numeric_csv(path, header);
    if (header != std::vector<std::string>{"iteration", "mean_acc", "std_acc"}) {
        throw IoError(path.string() + ": not a summary file");
    }
    if (rows.empty()) {
        throw IoError(path.string() + ": no iterations");
    }
    ExperimentResult view;
    double best = 0.0;
    std::size_t best_iter = 0;
    for (const auto &row : rows) {
        view.mean_accuracy.push_back(row[1]);
        view.std_accuracy.push_back(row[2]);
        if (row[1] > best) {
            best = row[1];
            best_iter = static_cast<std::size_t>(row[0]);
        }
    }
    out << path.filename().string() << ": " << rows.size() << " iterations, final "
        << format_accuracy(view.final_mean(), view.final_std()) << ", best " << std::fixed << std::setprecision(1)
        << 100.0 * best << "% at iteration " << best_iter << std::defaultfloat;
    if (const auto first = view.first_iteration_reaching(level)) {
        out << ", first >= " << 100.0 * level << "% at iteration " << *first;
    }
    out << '\n';
}

void report_noise(std::ostream &out, const fs::path &path) {
    std::vector<std::string> header;
    const auto rows = read_numeric_csv(path, header);
    if (header != std::vector<std::string>{"p", "total_noise", "mean_acc", "std_acc"}) {
        throw IoError(path.string() + ": not a noise sweep file");
    }
    out << "p\ttotal noise\tfinal accuracy\n";
    for (const auto &row : rows) {
        out << row[0] << '\t' << std::setprecision(4) << row[1] << '\t' << format_accuracy(row[2], row[3]) << '\n';
    }
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "runs";
    Overrides flags;
};

void add_train_flags(CLI::App &cmd, CommonFlags &common, bool with_generator, bool with_noise) {
    cmd.add_option("--config", common.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    cmd.add_option("--out", common.out_dir, "parent directory for run output")->capture_default_str();
    cmd.add_option("--seed", common.flags.seed, "master seed");
    cmd.add_option("--jobs", common.flags.jobs, "worker threads (0 = all cores)");
    cmd.add_option("--labeled", common.flags.labeled, "labeled images per batch");
    cmd.add_option("--iters", common.flags.iters, "training iterations")->check(CLI::PositiveNumber);
    cmd.add_option("--trials", common.flags.trials, "trials per fold")->check(CLI::PositiveNumber);
    cmd.add_option("--dataset", common.flags.dataset_path, "image list replacing the seeded dataset")
        ->check(CLI::ExistingFile);
    if (with_generator) {
        cmd.add_option("--generator", common.flags.generator, "quantum1, quantum4, uniform or classical");
    }
    if (with_noise) {
        cmd.add_option("--noise-p", common.flags.noise_p, "per-layer depolarizing probability")
            ->check(CLI::Range(0.0, 1.0));
    }
}

Overrides gather(const CommonFlags &common) {
    Overrides file;
    if (!common.config_path.empty()) {
        file = read_config_file(common.config_path);
    }
    return merge(file, common.flags);
}

int cmd_dataset(std::uint64_t seed, const std::string &out_dir, std::ostream &out) {
    const auto ones = images_with_runs(1);
    const auto twos = images_with_runs(2);
    out << "one-run pool: " << ones.size() << " images\n";
    out << "two-run pool: " << twos.size() << " images\n";

    TrainConfig config;
    config.master_seed = seed;
    const auto data = prepare_data(config);
    const fs::path dir = fresh_directory(out_dir, "dataset-seed" + std::to_string(seed));
    {
        auto file = open_output(dir / "dataset.txt");
        file << "# " << data.dataset.size() << " images, seed " << seed << '\n';
        write_dataset(file, data.dataset);
    }
    {
        auto file = open_output(dir / "batches.csv");
        write_batches_csv(file, data.batches);
    }
    {
        auto file = open_output(dir / "folds.csv");
        write_folds_csv(file, data.folds);
    }
    std::size_t per_class[3] = {};
    for (const auto &image : data.dataset) {
        ++per_class[*image.label];
    }
    out << "dataset: " << per_class[kConnectedClass] << " connected + " << per_class[kSeparatedClass]
        << " separated images\n";
    out << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_train(const CommonFlags &common, std::ostream &out, std::ostream &err) {
    const auto config = resolve(gather(common));
    const fs::path dir = fresh_directory(common.out_dir, run_stem("train", config));
    {
        auto file = open_output(dir / "config.json");
        write_config(file, config);
    }
    err << "training " << generator_kind_name(config.generator) << ", l = " << config.labeled << ", "
        << config.n_iter << " iterations, 4 folds x " << config.n_trials << " trials\n";
    const auto result = run_experiment(config, progress_printer(err, config.n_trials));
    write_experiment(dir, result);
    fs::create_directory(dir / "classifiers");
    for (const auto &trial : result.trials) {
        if (trial.trial == 0) {
            auto file = open_output(dir / "classifiers" / ("fold" + std::to_string(trial.fold) + ".json"));
            write_dc_checkpoint(file, trial.final_dc);
        }
    }
    describe(out, std::string(generator_kind_name(config.generator)), result, kDefaultReportLevel);
    out << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_noise(const CommonFlags &common, const std::vector<double> &p_values, std::ostream &out, std::ostream &err) {
    if (p_values.empty()) {
        throw ConfigError("noise needs at least one p value (--p)");
    }
    auto config = resolve(gather(common));
    if (!config.is_quantum()) {
        throw ConfigError("noise needs a quantum generator");
    }
    const fs::path dir = fresh_directory(common.out_dir, run_stem("noise", config));
    {
        auto file = open_output(dir / "config.json");
        write_config(file, config);
    }
    err << "noise sweep over " << p_values.size() << " values\n";
    const auto points = noise_sweep(config, p_values, progress_printer(err, config.n_trials));
    {
        auto file = open_output(dir / "noise.csv");
        write_noise_csv(file, points);
    }
    for (const auto &point : points) {
        std::ostringstream prefix;
        prefix << "p" << point.p << '_';
        write_experiment(dir, point.experiment, prefix.str());
        out << "p = " << point.p << " (total noise " << std::setprecision(4) << point.total_noise
            << "): " << format_accuracy(point.mean_accuracy, point.std_accuracy) << '\n';
    }
    out << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_compare(const CommonFlags &common, double level, std::ostream &out, std::ostream &err) {
    auto settings = gather(common);
    settings.generator = "quantum4";
    const auto quantum = resolve(settings);
    settings.generator = "classical";
    const auto classical = resolve(settings);

    const fs::path dir = fresh_directory(common.out_dir, run_stem("compare", quantum));
    {
        auto file = open_output(dir / "quantum4_config.json");
        write_config(file, quantum);
        auto file2 = open_output(dir / "classical_config.json");
        write_config(file2, classical);
    }
    err << "quantum4, " << quantum.n_iter << " iterations\n";
    const auto q = run_experiment(quantum, progress_printer(err, quantum.n_trials));
    write_experiment(dir, q, "quantum4_");
    err << "classical, " << classical.n_iter << " iterations\n";
    const auto c = run_experiment(classical, progress_printer(err, classical.n_trials));
    write_experiment(dir, c, "classical_");

    {
        auto file = open_output(dir / "comparison.csv");
        file << "generator,iterations,final_mean,final_std,first_iteration_reaching\n";
        for (const auto *result : {&q, &c}) {
            const auto first = result->first_iteration_reaching(level);
            file << generator_kind_name(result->config.generator) << ',' << result->config.n_iter << ','
                 << result->final_mean() << ',' << result->final_std() << ',' << (first ? std::to_string(*first) : "")
                 << '\n';
        }
    }
    describe(out, "quantum4", q, level);
    describe(out, "classical", c, level);
    out << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_report(const std::string &run_dir, double level, std::ostream &out) {
    const fs::path dir(run_dir);
    if (!fs::is_directory(dir)) {
        throw IoError(run_dir + " is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        files.push_back(entry.path());
    }
    std::ranges::sort(files);
    bool any = false;
    for (const auto &path : files) {
        const auto name = path.filename().string();
        if (name == "noise.csv") {
            report_noise(out, path);
            any = true;
        } else if (name.ends_with("summary.csv")) {
            report_summary(out, path, level);
            any = true;
        }
    }
    if (!any) {
        throw IoError(run_dir + " has no summary.csv or noise.csv");
    }
    return kExitOk;
}

}  // namespace

Overrides read_config_file(const std::string &path) {
    auto in = open_input(path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw IoError(path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(path + ": expected a JSON object");
    }
    static const std::vector<std::string> known{"generator", "labeled", "iterations", "trials",
                                                "noise_p",   "seed",    "jobs",       "generator_lr",
                                                "dc_lr",     "dataset"};
    for (const auto &[key, value] : doc.items()) {
        if (std::ranges::find(known, key) == known.end()) {
            throw ConfigError(path + ": unknown key '" + key + "'");
        }
    }
    Overrides settings;
    take(doc, "generator", settings.generator);
    take(doc, "labeled", settings.labeled);
    take(doc, "iterations", settings.iters);
    take(doc, "trials", settings.trials);
    take(doc, "noise_p", settings.noise_p);
    take(doc, "seed", settings.seed);
    take(doc, "jobs", settings.jobs);
    take(doc, "generator_lr", settings.generator_lr);
    take(doc, "dc_lr", settings.dc_lr);
    take(doc, "dataset", settings.dataset_path);
    if (!settings.dataset_path.empty() && fs::path(settings.dataset_path).is_relative()) {
        settings.dataset_path = (fs::path(path).parent_path() / settings.dataset_path).string();
    }
    return settings;
}

Overrides merge(const Overrides &base, const Overrides &top) {
    Overrides merged = base;
    if (!top.generator.empty()) {
        merged.generator = top.generator;
    }
    if (!top.dataset_path.empty()) {
        merged.dataset_path = top.dataset_path;
    }
    auto pick = [](auto &into, const auto &from) {
        if (from) {
            into = from;
        }
    };
    pick(merged.labeled, top.labeled);
    pick(merged.iters, top.iters);
    pick(merged.trials, top.trials);
    pick(merged.noise_p, top.noise_p);
    pick(merged.seed, top.seed);
    pick(merged.jobs, top.jobs);
    pick(merged.generator_lr, top.generator_lr);
    pick(merged.dc_lr, top.dc_lr);
    return merged;
}

TrainConfig resolve(const Overrides &settings) {
    const auto kind = settings.generator.empty() ? GeneratorKind::quantum_4_layer
                                                 : parse_generator_kind(settings.generator);
    auto config = TrainConfig::defaults(kind);
    config.labeled = settings.labeled.value_or(config.labeled);
    config.n_iter = settings.iters.value_or(config.n_iter);
    config.n_trials = settings.trials.value_or(config.n_trials);
    config.noise_p = settings.noise_p.value_or(config.noise_p);
    config.master_seed = settings.seed.value_or(config.master_seed);
    config.jobs = settings.jobs.value_or(config.jobs);
    config.generator_lr = settings.generator_lr.value_or(config.generator_lr);
    config.dc_lr = settings.dc_lr.value_or(config.dc_lr);
    if (!settings.dataset_path.empty()) {
        auto in = open_input(settings.dataset_path);
        auto images = read_dataset(in);
        for (auto &image : images) {
            if (!image.label) {
                image.label = label_rule(image.pixels);
                if (!image.label) {
                    throw ConfigError(settings.dataset_path + ": image " + pixels_to_string(image.pixels) +
                                      " has no label and is neither connected nor separated");
                }
            }
        }
        config.dataset = std::move(images);
    }
    config.validate();
    return config;
}

void write_config(std::ostream &out, const TrainConfig &config) {
    json doc{
        {"generator", generator_kind_name(config.generator)},
        {"labeled", config.labeled},
        {"iterations", config.n_iter},
        {"trials", config.n_trials},
        {"noise_p", config.noise_p},
        {"seed", config.master_seed},
        {"generator_lr", config.generator_lr},
        {"dc_lr", config.dc_lr},
    };
    out << doc.dump(2) << '\n';
}

std::string fresh_directory(const std::string &parent, const std::string &stem) {
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec || !fs::is_directory(parent)) {
        throw IoError("cannot create output directory " + parent);
    }
    for (int attempt = 1; attempt < 10000; ++attempt) {
        const fs::path dir = fs::path(parent) / (attempt == 1 ? stem : stem + "-" + std::to_string(attempt));
        if (fs::create_directory(dir, ec)) {
            return dir.string();
        }
        if (ec) {
            throw IoError("cannot create " + dir.string() + ": " + ec.message());
        }
    }
    throw IoError("too many runs named " + stem + " in " + parent);
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app("Semi-supervised GAN with a quantum circuit generator, simulated");
    app.require_subcommand(1);

    std::uint64_t dataset_seed = kDefaultMasterSeed;
    std::string dataset_out = "runs";
    auto *dataset = app.add_subcommand("dataset", "draw the 56-image dataset and its batches");
    dataset->add_option("--seed", dataset_seed, "master seed")->capture_default_str();
    dataset->add_option("--out", dataset_out, "parent directory for run output")->capture_default_str();

    CommonFlags train_flags;
    auto *train = app.add_subcommand("train", "run every fold and trial for one generator");
    add_train_flags(*train, train_flags, true, true);

    CommonFlags noise_flags;
    std::vector<double> p_values;
    auto *noise = app.add_subcommand("noise", "sweep the depolarizing probability");
    add_train_flags(*noise, noise_flags, true, false);
    noise->add_option("--noise-p,--p", p_values, "probabilities, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0))
        ->required();

    CommonFlags compare_flags;
    double compare_level = kDefaultReportLevel;
    auto *compare = app.add_subcommand("compare-classical", "quantum4 against the classical generator");
    add_train_flags(*compare, compare_flags, false, false);
    compare->add_option("--level", compare_level, "accuracy level for the first-reach iteration")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    std::string report_dir;
    double report_level = kDefaultReportLevel;
    auto *report = app.add_subcommand("report", "summarize a run directory");
    report->add_option("dir", report_dir, "run directory")->required();
    report->add_option("--level", report_level, "accuracy level for the first-reach iteration")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*dataset) {
            return cmd_dataset(dataset_seed, dataset_out, out);
        }
        if (*train) {
            return cmd_train(train_flags, out, err);
        }
        if (*noise) {
            return cmd_noise(noise_flags, p_values, out, err);
        }
        if (*compare) {
            return cmd_compare(compare_flags, compare_level, out, err);
        }
        return cmd_report(report_dir, report_level, out);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace qsgan::cli
