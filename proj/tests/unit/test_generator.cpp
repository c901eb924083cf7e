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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsgan/generator.hpp"
#include "reference_sim.hpp"

using namespace qsgan;

namespace {

GeneratorState ry_generator(double theta, NoiseConfig noise = {}) {
    AnsatzSpec spec;
    spec.n_qubits = 1;
    spec.n_layers = 1;
    spec.axes = {Axis::Y};
    spec.entanglers = {{}};
    return make_generator(spec, {theta}, noise);
}

// Expected generator loss sum_x (-log D(x)) P_theta(x), evaluated with the dense-matrix oracle.
double expected_loss(const GeneratorState &gen, const ParamVector &theta, const std::vector<double> &d_table) {
    const auto pure = testing::reference_distribution(gen.spec, theta);
    const double w = gen.noise.pure_weight(gen.spec.n_layers);
    double total = 0.0;
    for (std::size_t x = 0; x < pure.size(); ++x) {
        const double p = w * pure[x] + (1.0 - w) / static_cast<double>(pure.size());
        total += -std::log(d_table[x]) * p;
    }
    return total;
}

}  // namespace

TEST_CASE("generate_batch") {
    auto gen = make_generator(build_ansatz(8, 4, std::uint64_t{3}), ParamVector(32, 0.0));
    Rng rng(1);
    ShotCounter counter;
    const auto batch = generate_batch(gen, 7, rng, &counter);
    CHECK(batch == std::vector<Outcome>(7, 0));
    CHECK(counter.executions == 7);
    CHECK_THROWS_AS(generate_batch(gen, 0, rng), std::invalid_argument);

    SUBCASE("full noise gives unbiased bits") {
        gen.noise.p = 1.0;
        Rng r(2);
        const auto shots = generate_batch(gen, 100000, r);
        for (std::size_t bit = 0; bit < 8; ++bit) {
            double ones = 0;
            for (auto x : shots) {
                ones += (x >> bit) & 1U;
            }
            CHECK(std::abs(ones / 1e5 - 0.5) < 0.01);
        }
    }
    SUBCASE("reproducible") {
        gen.theta = random_angles(32, rng);
        Rng a(5);
        Rng b(5);
        CHECK(generate_batch(gen, 50, a) == generate_batch(gen, 50, b));
    }
}

TEST_CASE("generator_loss") {
    CHECK(generator_loss(std::vector<double>(4, std::exp(-1.0))) == doctest::Approx(1.0));
    CHECK(generator_loss(std::vector<double>{1.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(generator_loss(std::vector<double>{0.5, 0.25}) == doctest::Approx(1.0397207708399179));
    CHECK(std::isfinite(generator_loss(std::vector<double>{0.0})));
    CHECK_THROWS_AS(generator_loss(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ShiftedCircuits agrees with preparing shifted parameters directly") {
    Rng rng(21);
    for (int trial = 0; trial < 4; ++trial) {
        const auto spec = build_ansatz(4, 3, rng);
        const auto theta = random_angles(spec.num_params(), rng);
        const ShiftedCircuits shifted(spec, theta);
        for (std::size_t q = 1; q <= spec.num_params(); ++q) {
            for (auto dir : {ShiftDirection::plus, ShiftDirection::minus}) {
                const auto fast = shifted.distribution(q, dir);
                const auto direct = outcome_distribution(spec, shifted_params(theta, q, dir));
                for (std::size_t x = 0; x < fast.size(); ++x) {
                    CHECK(fast[x] == doctest::Approx(direct[x]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("exact gradient: closed forms") {
    SUBCASE("constant D") {
        Rng rng(3);
        auto gen = make_generator(build_ansatz(3, 2, rng), random_angles(6, rng));
        const auto grad = exact_generator_gradient(gen, std::vector<double>(8, 0.37));
        for (double g : grad) {
            CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("full noise") {
        Rng rng(4);
        auto gen = make_generator(build_ansatz(3, 2, rng), random_angles(6, rng), NoiseConfig{1.0});
        std::vector<double> table(8);
        for (auto &d : table) {
            d = 0.05 + 0.9 * uniform01(rng);
        }
        for (double g : exact_generator_gradient(gen, table)) {
            CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("Ry at theta = 0") {
        const auto gen = ry_generator(0.0);
        const auto grad = exact_generator_gradient(gen, std::vector{std::exp(-1.0), std::exp(-2.0)});
        CHECK(grad[0] == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("Ry at theta = 0.7") {
        // L(theta) = -log a cos^2(theta/2) - log b sin^2(theta/2), so
        // dL/dtheta = (1/2) sin(theta) (log a - log b).
        const auto gen = ry_generator(0.7);
        const auto grad = exact_generator_gradient(gen, std::vector{0.3, 0.8});
        CHECK(grad[0] == doctest::Approx(-0.31593377647514337).epsilon(1e-12));
    }
}

TEST_CASE("exact gradient equals central differences of the expected loss") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 1 + trial % 3;
        auto gen = make_generator(build_ansatz(n, 2, rng), random_angles(2 * n, rng),
                                  NoiseConfig{trial % 2 == 0 ? 0.0 : 0.1});
        std::vector<double> table(std::size_t{1} << n);
        for (auto &d : table) {
            d = 0.02 + 0.96 * uniform01(rng);
        }
        const auto grad = exact_generator_gradient(gen, table);
        const double h = 1e-5;
        for (std::size_t q = 0; q < gen.theta.size(); ++q) {
            auto up = gen.theta;
            auto down = gen.theta;
            up[q] += h;
            down[q] -= h;
            const double fd = (expected_loss(gen, up, table) - expected_loss(gen, down, table)) / (2 * h);
            CHECK(std::abs(fd - grad[q]) < 1e-6);
        }
    }
}

TEST_CASE("estimator: constant D gives exactly zero") {
    Rng rng(6);
    auto gen = make_generator(build_ansatz(8, 4, rng), random_angles(32, rng));
    ShotCounter counter;
    const auto grad = estimate_generator_gradient(gen, std::vector<double>(256, 0.6), 7, rng, &counter);
    for (double g : grad) {
        CHECK(g == 0.0);
    }
    CHECK(counter.executions == 2 * 32 * 7);
    CHECK_THROWS_AS(estimate_generator_gradient(gen, std::vector<double>(256, 0.6), 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(estimate_generator_gradient(gen, std::vector<double>(8, 0.6), 7, rng), std::invalid_argument);
}

TEST_CASE("estimator never modifies theta") {
    Rng rng(7);
    auto gen = make_generator(build_ansatz(4, 2, rng), random_angles(8, rng));
    const auto before = gen.theta;
    std::vector<double> table(16);
    for (auto &d : table) {
        d = uniform01(rng);
    }
    estimate_generator_gradient(gen, table, 7, rng);
    CHECK(gen.theta == before);
}

TEST_CASE("estimator is unbiased for a single Ry qubit") {
    const auto gen = ry_generator(0.7);
    const std::vector<double> table{0.3, 0.8};
    const double exact = exact_generator_gradient(gen, table)[0];
    Rng rng(99);
    const int reps = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double g = estimate_generator_gradient(gen, table, 7, rng)[0];
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sum_sq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - exact) < 3.0 * se);
}

TEST_CASE("adam_update") {
    auto gen = make_generator(build_ansatz(2, 1, std::uint64_t{1}), {0.5, -0.25});
    SUBCASE("zero gradient keeps theta") {
        adam_update(gen, std::vector{0.0, 0.0});
        CHECK(gen.theta == ParamVector{0.5, -0.25});
        CHECK(gen.optimizer.t == 1);
    }
    SUBCASE("first step moves by lr against the gradient sign") {
        adam_update(gen, std::vector{3.0, -0.02});
        CHECK(gen.theta[0] == doctest::Approx(0.5 - 0.001).epsilon(1e-9));
        CHECK(gen.theta[1] == doctest::Approx(-0.25 + 0.001).epsilon(1e-6));
        CHECK(gen.optimizer.t == 1);
        adam_update(gen, std::vector{1.0, 1.0});
        CHECK(gen.optimizer.t == 2);
    }
    SUBCASE("deterministic") {
        auto twin = gen;
        adam_update(gen, std::vector{0.3, 0.1});
        adam_update(twin, std::vector{0.3, 0.1});
        CHECK(gen.theta == twin.theta);
        CHECK(gen.optimizer.m == twin.optimizer.m);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(adam_update(gen, std::vector{0.1}), std::invalid_argument);
    }
}
