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

#include "provent/quant.hpp"

#include <cmath>
#include <sstream>

#include "provent/error.hpp"
#include "provent/wire.hpp"

namespace provent::quant {

namespace {
// 2^63 is exactly representable; anything at or above it does not fit.
constexpr double kInt64Limit = 9223372036854775808.0;
}  // namespace

std::int64_t quantize(double value, std::uint64_t unit) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFinite, "cannot quantize non-finite value");
    }
    if (unit == 0) {
        throw Error(ErrorCode::InvariantViolation, "quantization unit must be >= 1");
    }
    const double rounded = std::round(value * static_cast<double>(unit));
    if (!(std::fabs(rounded) < kInt64Limit)) {
        std::ostringstream msg;
        msg << value << " x " << unit << " exceeds the signed 64-bit range";
        throw Error(ErrorCode::Overflow, msg.str());
    }
    return static_cast<std::int64_t>(rounded);
}

double dequantize(std::int64_t q, std::uint64_t unit) noexcept {
    return static_cast<double>(q) / static_cast<double>(unit);
}

std::size_t wire_cost(double value, std::uint64_t unit) {
    return wire::uvarint_size(wire::zigzag_encode(quantize(value, unit)));
}

void validate(const QuantizationScheme& scheme) {
    if (scheme.momentum_unit < 1 || scheme.length_unit < 1) {
        throw Error(ErrorCode::InvariantViolation, "quantization units must be >= 1");
    }
}

}  // namespace provent::quant
