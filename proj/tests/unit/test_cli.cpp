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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli_commands.hpp"
#include "doctest.h"

using namespace qsgan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("qsgan_cli_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qsgan");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const fs::path &path) {
    const auto text = slurp(path);
    return static_cast<std::size_t>(std::ranges::count(text, '\n'));
}

std::vector<fs::path> entries(const fs::path &dir) {
    std::vector<fs::path> found;
    for (const auto &e : fs::directory_iterator(dir)) {
        found.push_back(e.path());
    }
    std::ranges::sort(found);
    return found;
}

}  // namespace

TEST_CASE("cli: usage errors") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"bogus"}).code == cli::kExitUsage);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
    CHECK(invoke({"train", "--generator", "quantum7"}).code == cli::kExitUsage);
    CHECK(invoke({"train", "--labeled", "9"}).code == cli::kExitUsage);
    CHECK(invoke({"noise"}).code == cli::kExitUsage);
    CHECK(invoke({"noise", "--p", "1.5"}).code == cli::kExitUsage);
    CHECK(invoke({"noise", "--p", "-0.1"}).code == cli::kExitUsage);
    CHECK(invoke({"train", "--config", "/nonexistent/config.json"}).code == cli::kExitUsage);
}

TEST_CASE("cli: dataset") {
    TempDir tmp;
    const auto first = invoke({"dataset", "--out", tmp.path.string()});
    REQUIRE(first.code == cli::kExitOk);
    CHECK(first.out.find("36") != std::string::npos);
    CHECK(first.out.find("126") != std::string::npos);
    const auto second = invoke({"dataset", "--out", tmp.path.string()});
    REQUIRE(second.code == cli::kExitOk);

    const auto dirs = entries(tmp.path);
    REQUIRE(dirs.size() == 2);
    CHECK(slurp(dirs[0] / "dataset.txt") == slurp(dirs[1] / "dataset.txt"));
    CHECK(slurp(dirs[0] / "batches.csv") == slurp(dirs[1] / "batches.csv"));
    CHECK(lines(dirs[0] / "dataset.txt") == 1 + 56);

    std::ifstream in(dirs[0] / "dataset.txt");
    const auto images = read_dataset(in);
    CHECK(std::ranges::count(images, std::optional<int>{1}, &LabeledImage::label) == 28);
    CHECK(std::ranges::count(images, std::optional<int>{2}, &LabeledImage::label) == 28);

    const auto other = invoke({"dataset", "--seed", "5", "--out", tmp.path.string()});
    REQUIRE(other.code == cli::kExitOk);
    CHECK(fs::exists(tmp.path / "dataset-seed5" / "dataset.txt"));

    const auto bad = invoke({"dataset", "--out", "/proc/no/such/place"});
    CHECK(bad.code == cli::kExitRuntime);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli: train writes fresh directories and report reads them") {
    TempDir tmp;
    const std::vector<std::string> args{"train", "--generator", "uniform", "--labeled", "5", "--iters",
                                        "3",     "--trials",    "2",       "--jobs",    "1", "--out",
                                        tmp.path.string()};
    REQUIRE(invoke(args).code == cli::kExitOk);
    REQUIRE(invoke(args).code == cli::kExitOk);
    const auto dir = tmp.path / "train-uniform-l5-seed20210315";
    const auto again = tmp.path / "train-uniform-l5-seed20210315-2";
    REQUIRE(fs::exists(dir / "summary.csv"));
    CHECK(lines(dir / "summary.csv") == 1 + 3);
    CHECK(lines(dir / "trials.csv") == 1 + 4 * 2 * 3);
    CHECK(fs::exists(dir / "classifiers" / "fold3.json"));
    CHECK(slurp(dir / "trials.csv") == slurp(again / "trials.csv"));

    const auto config = cli::read_config_file((dir / "config.json").string());
    CHECK(config.generator == "uniform");
    CHECK(config.labeled == 5u);
    CHECK(config.iters == 3u);

    const auto report = invoke({"report", dir.string()});
    CHECK(report.code == cli::kExitOk);
    CHECK(report.out.find("3 iterations") != std::string::npos);
    CHECK(invoke({"report", (tmp.path / "missing").string()}).code == cli::kExitRuntime);
}

TEST_CASE("cli: config file with flag overrides") {
    TempDir tmp;
    const auto path = tmp.path / "run.json";
    {
        std::ofstream out(path);
        out << R"({"generator": "quantum1", "labeled": 3, "iterations": 2, "trials": 1, "seed": 77, "jobs": 1})";
    }
    REQUIRE(invoke({"train", "--config", path.string(), "--labeled", "4", "--out", tmp.path.string()}).code ==
            cli::kExitOk);
    const auto dir = tmp.path / "train-quantum1-l4-seed77";
    REQUIRE(fs::exists(dir / "config.json"));
    const auto resolved = cli::resolve(cli::read_config_file((dir / "config.json").string()));
    CHECK(resolved.generator == GeneratorKind::quantum_1_layer);
    CHECK(resolved.labeled == 4);
    CHECK(resolved.n_iter == 2);
    CHECK(resolved.master_seed == 77);

    {
        std::ofstream out(path);
        out << R"({"generator": "quantum1", "learning_rate": 0.1})";
    }
    CHECK(invoke({"train", "--config", path.string(), "--out", tmp.path.string()}).code == cli::kExitUsage);
    {
        std::ofstream out(path);
        out << R"({"labeled": "two"})";
    }
    CHECK(invoke({"train", "--config", path.string(), "--out", tmp.path.string()}).code == cli::kExitUsage);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK(invoke({"train", "--config", path.string(), "--out", tmp.path.string()}).code == cli::kExitRuntime);
}

TEST_CASE("cli: resolve keeps per-generator defaults") {
    cli::Overrides settings;
    settings.generator = "classical";
    const auto classical = cli::resolve(settings);
    CHECK(classical.n_iter == 500);
    CHECK(classical.dc_lr == 0.001);
    settings.iters = 7;
    CHECK(cli::resolve(settings).n_iter == 7);
    const auto headline = cli::resolve({});
    CHECK(headline.generator == GeneratorKind::quantum_4_layer);
    CHECK(headline.labeled == 2);
    CHECK(headline.n_trials == 20);
}

TEST_CASE("cli: noise sweep") {
    TempDir tmp;
    const auto result = invoke({"noise", "--p", "0,0.05,0.1,0.2", "--iters", "1", "--trials", "1", "--jobs", "1",
                                "--generator", "quantum1", "--out", tmp.path.string()});
    REQUIRE(result.code == cli::kExitOk);
    const auto dir = tmp.path / "noise-quantum1-l2-seed20210315";
    REQUIRE(fs::exists(dir / "noise.csv"));
    CHECK(lines(dir / "noise.csv") == 1 + 4);
    CHECK(slurp(dir / "noise.csv").find("0.05,0.05,") != std::string::npos);
    CHECK(invoke({"report", dir.string()}).code == cli::kExitOk);

    CHECK(invoke({"noise", "--p", "0.1", "--generator", "uniform", "--out", tmp.path.string()}).code ==
          cli::kExitUsage);
}

TEST_CASE("cli: compare-classical") {
    TempDir tmp;
    const auto result =
        invoke({"compare-classical", "--iters", "2", "--trials", "1", "--jobs", "1", "--out", tmp.path.string()});
    REQUIRE(result.code == cli::kExitOk);
    const auto dir = tmp.path / "compare-quantum4-l2-seed20210315";
    REQUIRE(fs::exists(dir / "comparison.csv"));
    CHECK(lines(dir / "comparison.csv") == 3);
    CHECK(fs::exists(dir / "quantum4_summary.csv"));
    CHECK(fs::exists(dir / "classical_summary.csv"));
    CHECK(result.out.find("classical") != std::string::npos);
}

TEST_CASE("fresh_directory never reuses a name") {
    TempDir tmp;
    const auto a = cli::fresh_directory(tmp.path.string(), "run");
    const auto b = cli::fresh_directory(tmp.path.string(), "run");
    const auto c = cli::fresh_directory((tmp.path / "nested").string(), "run");
    CHECK(a != b);
    CHECK(fs::path(a).filename() == "run");
    CHECK(fs::path(b).filename() == "run-2");
    CHECK(fs::is_directory(c));
}
