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
#include <sstream>

#include "doctest.h"
#include "finite_diff.hpp"
#include "qsgan/classical_gen.hpp"

using namespace qsgan;

namespace {

std::vector<double> latents(Rng &rng, std::size_t m) {
    std::normal_distribution<double> normal;
    std::vector<double> z(m);
    for (auto &v : z) {
        v = normal(rng);
    }
    return z;
}

}  // namespace

TEST_CASE("classical generator dimensions") {
    ClassicalGenerator gen;
    CHECK(gen.num_params() == kClassicalGeneratorParams);
    CHECK(gen.num_params() == (1 * 40 + 40) + 2 * (40 * 40 + 40) + (40 * 8 + 8));
    CHECK(gen.optimizer.m.size() == gen.num_params());
    CHECK(gen.optimizer.lr == kClassicalLearningRate);
}

TEST_CASE("zero network outputs one half everywhere") {
    ClassicalGenerator gen;
    for (double z : {-3.0, 0.0, 1.7}) {
        CHECK(generator_output(gen.net, z) == std::vector<double>(8, 0.5));
    }
}

TEST_CASE("outputs lie in (0, 1) and depend on the seed only") {
    Rng rng(8);
    const auto gen = ClassicalGenerator::random(rng);
    Rng a(31);
    Rng b(31);
    const auto xa = generate(gen, a, 50);
    CHECK(xa == generate(gen, b, 50));
    CHECK(xa.size() == 50);
    for (const auto &x : xa) {
        REQUIRE(x.size() == 8);
        for (double v : x) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
    }
    Rng c(32);
    CHECK(xa != generate(gen, c, 50));
}

TEST_CASE("generator gradient equals central differences through D") {
    Rng rng(77);
    for (int config = 0; config < 10; ++config) {
        auto gen = ClassicalGenerator::random(rng);
        const auto dc = DCParams::random(rng);
        const auto z = latents(rng, 1 + config % 7);
        const auto grad = classical_generator_gradient(gen.net, dc, z);
        const auto fd = testing::central_differences(gen.net.values(), [&] {
            return classical_generator_loss(gen.net, dc, z);
        });
        REQUIRE(grad.size() == fd.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < grad.size(); ++i) {
            worst = std::max(worst, std::abs(grad[i] - fd[i]));
        }
        CHECK(worst < 1e-4);
        CHECK(testing::max_relative_error(grad, fd, 1e-3) < 1e-3);
    }
}

TEST_CASE("D that ignores its input gives a zero generator gradient") {
    Rng rng(5);
    auto gen = ClassicalGenerator::random(rng);
    auto dc = DCParams::random(rng);
    std::ranges::fill(dc.net.weights(DCParams::trunk_hidden), 0.0);
    const auto grad = classical_generator_gradient(gen.net, dc, latents(rng, 7));
    for (double g : grad) {
        CHECK(g == 0.0);
    }

    SUBCASE("and a train step leaves the parameters in place") {
        const auto before = gen.net;
        train_step(gen, dc, 7, rng);
        CHECK(gen.net == before);
        CHECK(gen.optimizer.t == 1);
    }
}

TEST_CASE("train_step lowers the loss on a fixed D for small steps") {
    Rng rng(12);
    auto gen = ClassicalGenerator::random(rng);
    const auto dc = DCParams::random(rng);
    Rng eval(400);
    const auto z = latents(eval, 200);
    const double before = classical_generator_loss(gen.net, dc, z);
    for (int i = 0; i < 50; ++i) {
        train_step(gen, dc, 7, rng);
    }
    CHECK(gen.optimizer.t == 50);
    CHECK(classical_generator_loss(gen.net, dc, z) < before);
}

TEST_CASE("classical checkpoint round trip") {
    Rng rng(3);
    const auto gen = ClassicalGenerator::random(rng);
    std::stringstream buffer;
    write_classical_checkpoint(buffer, gen);
    ClassicalGenerator loaded;
    read_classical_checkpoint(buffer, loaded);
    CHECK(loaded.net == gen.net);

    std::stringstream dc_buffer;
    write_dc_checkpoint(dc_buffer, DCParams{});
    CHECK_THROWS_AS(read_classical_checkpoint(dc_buffer, loaded), IoError);
    CHECK(loaded.net == gen.net);
}
