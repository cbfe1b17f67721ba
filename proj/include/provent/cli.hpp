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

// Command implementations behind the `provent` binary. Each returns the
// process exit code: 0 success, 1 verification failure, 2 usage or input
// error. Reports go to `out`, diagnostics to `err`.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "provent/container.hpp"
#include "provent/generator.hpp"
#include "provent/schema.hpp"

namespace provent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point used by main(); argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_info(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_schema(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_extract(const std::string& src, const std::string& dst, std::uint64_t n,
                std::ostream& out, std::ostream& err);
int cmd_convert(const std::string& hepmc_path, const std::string& out_path,
                const std::string& description, const QuantizationScheme& scheme,
                std::ostream& out, std::ostream& err);
int cmd_generate(const SpectrumConfig& config, const QuantizationScheme& scheme,
                 const std::string& description, const std::string& out_path,
                 std::ostream& out, std::ostream& err);
int cmd_sizes(const SpectrumConfig& config, const QuantizationScheme& scheme,
              std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);

enum class CatFormat { Text, Json };
int cmd_cat(const std::string& path, std::uint64_t ordinal, CatFormat format,
            std::ostream& out, std::ostream& err);

// --- size benchmark -----------------------------------------------------------

/// Bytes for one event stream in four encodings.
struct SizeReport {
    std::uint64_t events = 0;
    std::uint64_t particles = 0;
    std::uint64_t ascii = 0;
    std::uint64_t ascii_gzip = 0;
    std::uint64_t fixed_width = 0;
    std::uint64_t varint_container = 0;

    /// count / fixed_width rounded to 3 decimals.
    static double ratio(std::uint64_t count, std::uint64_t fixed_width);
};

/// Fixed-width baseline record sizes (no varints anywhere).
inline constexpr std::size_t kFixedWidthEventHeader = 8 + 8 + 8 + 4;  // number, process, weight, count
inline constexpr std::size_t kFixedWidthParticle = 4 * 8 + 6 * 4;    // px py pz m; pdg status 2 mothers 2 daughters

void write_fixed_width_event(std::ostream& out, const EventRecord& event,
                             const QuantizationScheme& scheme);

SizeReport measure_sizes(const SpectrumConfig& config, const QuantizationScheme& scheme);

std::ostream& operator<<(std::ostream& out, const SizeReport& report);

// --- rendering ----------------------------------------------------------------

/// Event `ordinal` decoded through the file's embedded schema only.
schema::DecodedMessage decode_event_via_schema(const Reader& reader, std::uint64_t ordinal);

nlohmann::json to_json(const schema::DecodedMessage& message);
void write_text(std::ostream& out, const schema::DecodedMessage& message,
                const schema::SchemaTable& table);

/// Shortest round-trip decimal, always with a fractional part ("0.0", "1.5").
std::string format_real(double value);

}  // namespace provent::cli
