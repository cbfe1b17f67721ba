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

#include <cstdint>

#include "provent/wire.hpp"

namespace provent {

/// CRC-32 as used by ZIP (reflected polynomial 0xEDB88320).
std::uint32_t crc32(ByteView data, std::uint32_t crc = 0) noexcept;

}  // namespace provent
