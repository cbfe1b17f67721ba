// Copyright 2026 The provent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "provent/error.hpp"
#include "provent/quant.hpp"
#include "provent/wire.hpp"

using namespace provent;
using namespace provent::quant;

namespace {
constexpr std::uint64_t kUnit = 100000;  // steps per GeV
constexpr double kMeV = 1e-3;            // in GeV
}  // namespace

TEST_CASE("energy table mapping") {
    // energy -> int64 representation
    CHECK(quantize(0.01 * kMeV, kUnit) == 1);
    CHECK(quantize(0.1 * kMeV, kUnit) == 10);
    CHECK(quantize(1 * kMeV, kUnit) == 100);
    CHECK(quantize(1.0, kUnit) == 100000);
    CHECK(quantize(1000.0, kUnit) == 100000000);
    CHECK(quantize(20000.0, kUnit) == 2000000000);
    CHECK(quantize(0.0, kUnit) == 0);

    CHECK(dequantize(100000, kUnit) == 1.0);
    CHECK(dequantize(0, 7) == 0.0);
    CHECK(dequantize(1, kUnit) == doctest::Approx(0.01 * kMeV).epsilon(1e-15));
}

TEST_CASE("wire cost per table row") {
    // rows that agree with the published byte counts
    CHECK(wire_cost(0.01 * kMeV, kUnit) == 1);
    CHECK(wire_cost(0.1 * kMeV, kUnit) == 1);
    CHECK(wire_cost(1 * kMeV, kUnit) == 2);
    // base-128 arithmetic: zigzag(1e5)=2e5 (18 bits), 2e8 (28 bits), 4e9 (32 bits)
    CHECK(wire_cost(1.0, kUnit) == 3);
    CHECK(wire_cost(1000.0, kUnit) == 4);
    CHECK(wire_cost(20000.0, kUnit) == 5);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(quantize(std::nan(""), kUnit), Error);
    try {
        quantize(std::numeric_limits<double>::infinity(), kUnit);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFinite);
    }
    try {
        quantize(1e14, kUnit);  // 1e19 > 2^63
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Overflow);
    }
    CHECK_THROWS_AS(quantize(-1e14, kUnit), Error);
    CHECK_THROWS_AS(wire_cost(1e14, kUnit), Error);
    CHECK(quantize(9.2e13, kUnit) == 9200000000000000000LL);
    CHECK_THROWS_AS(validate({0, 1}), Error);
    CHECK_THROWS_AS(validate({1, 0}), Error);
    CHECK_NOTHROW(validate({1, 1}));
}

TEST_CASE("ties round away from zero") {
    for (std::uint64_t u : {std::uint64_t{1}, std::uint64_t{10}, std::uint64_t{1000}, kUnit}) {
        CAPTURE(u);
        CHECK(quantize(0.5 / static_cast<double>(u), u) == 1);
        CHECK(quantize(-0.5 / static_cast<double>(u), u) == -1);
    }
    CHECK(quantize(2.5, 1) == 3);
    CHECK(quantize(-2.5, 1) == -3);
}

TEST_CASE("reconstruction bound, symmetry, idempotence on grid") {
    std::mt19937_64 rng(2013);
    std::uniform_real_distribution<double> exponent(-8, 7);
    for (std::uint64_t u : {std::uint64_t{1}, std::uint64_t{1000}, kUnit, std::uint64_t{12345}}) {
        const double half_step = 0.5 / static_cast<double>(u);
        for (int i = 0; i < 20000; ++i) {
            double v = std::pow(10.0, exponent(rng));
            if (rng() & 1) v = -v;
            const auto q = quantize(v, u);
            const double back = dequantize(q, u);
            // one ulp of slack for the division in dequantize
            REQUIRE(std::fabs(back - v) <= half_step + 4 * std::numeric_limits<double>::epsilon() * std::fabs(v));
            REQUIRE(quantize(-v, u) == -q);
            REQUIRE(quantize(dequantize(q, u), u) == q);
        }
    }
}

TEST_CASE("cost is monotone in magnitude") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> exponent(-6, 4.3);
    for (int i = 0; i < 20000; ++i) {
        double a = std::pow(10.0, exponent(rng));
        double b = std::pow(10.0, exponent(rng));
        if (a > b) std::swap(a, b);
        if (rng() & 1) a = -a;
        if (rng() & 1) b = -b;
        REQUIRE(wire_cost(a, kUnit) <= wire_cost(b, kUnit));
    }
}
