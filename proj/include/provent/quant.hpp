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

#pragma once

#include <cstddef>
#include <cstdint>

namespace provent {

/// Integer steps per physical unit for one file. Momenta, energies and
/// masses use GeV, positions and times (c*t) use millimetres.
struct QuantizationScheme {
    std::uint64_t momentum_unit = 100000;  // 0.01 MeV per step
    std::uint64_t length_unit = 1000;      // 1 micrometre per step

    friend bool operator==(const QuantizationScheme&, const QuantizationScheme&) = default;
};

namespace quant {

inline constexpr std::uint64_t kDefaultMomentumUnit = 100000;
inline constexpr std::uint64_t kDefaultLengthUnit = 1000;

/// round(value * unit), ties away from zero. Throws NonFinite for NaN/inf and
/// Overflow when the result does not fit a signed 64-bit integer.
std::int64_t quantize(double value, std::uint64_t unit);

double dequantize(std::int64_t q, std::uint64_t unit) noexcept;

/// Bytes the value occupies inside a packed zigzag column.
std::size_t wire_cost(double value, std::uint64_t unit);

/// Throws InvariantViolation unless both units are at least 1.
void validate(const QuantizationScheme& scheme);

}  // namespace quant
}  // namespace provent
