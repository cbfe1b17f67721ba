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

// In-memory event and file records and their message encodings. Field
// numbers below are frozen for format version 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "provent/quant.hpp"
#include "provent/wire.hpp"

namespace provent {

inline constexpr std::uint32_t kFormatVersion = 1;

/// In-memory marker for an absent mother/daughter link. On the wire links
/// are stored 1-based and 0 means "none".
inline constexpr std::uint64_t kNoLink = std::numeric_limits<std::uint64_t>::max();

/// Columnar particle attributes of one event. Momenta and mass are in
/// momentum_unit steps, vertex coordinates in length_unit steps. barcode and
/// x/y/z/t are optional: either empty or one entry per particle.
struct ParticleBlock {
    std::vector<std::int64_t> pdg_id;
    std::vector<std::uint64_t> status;
    std::vector<std::int64_t> px, py, pz;
    std::vector<std::int64_t> mass;
    std::vector<std::uint64_t> mother1, mother2, daughter1, daughter2;
    std::vector<std::int64_t> barcode;
    std::vector<std::int64_t> x, y, z, t;

    /// The particle count (the longest column).
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    /// Throws InvariantViolation on ragged columns or out-of-range links.
    void validate() const;

    void reserve(std::size_t n);

    friend bool operator==(const ParticleBlock&, const ParticleBlock&) = default;
};

struct EventRecord {
    std::uint64_t event_number = 0;
    std::int64_t process_id = 0;
    double weight = 1.0;
    ParticleBlock particles;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct FileDescriptor {
    std::uint32_t format_version = kFormatVersion;
    std::string description;
    QuantizationScheme scheme;
    std::uint64_t requested_events = 0;
    std::string schema_text;

    friend bool operator==(const FileDescriptor&, const FileDescriptor&) = default;
};

struct FileStatistics {
    std::uint64_t actual_events = 0;
    std::uint64_t total_particles = 0;

    friend bool operator==(const FileStatistics&, const FileStatistics&) = default;
};

/// Per-event summary columns used for selection without touching payloads.
struct EventIndex {
    std::vector<std::uint64_t> particle_count;
    std::vector<std::uint64_t> max_pt;  // momentum_unit steps

    std::size_t size() const noexcept { return particle_count.size(); }

    friend bool operator==(const EventIndex&, const EventIndex&) = default;
};

/// Largest transverse momentum of the block, rounded to the quantization grid.
std::uint64_t max_transverse_momentum(const ParticleBlock& particles);

namespace field {
// EventRecord
inline constexpr std::uint32_t kEventNumber = 1;
inline constexpr std::uint32_t kProcessId = 2;
inline constexpr std::uint32_t kWeight = 3;
inline constexpr std::uint32_t kParticles = 4;
// ParticleBlock
inline constexpr std::uint32_t kPdgId = 1;
inline constexpr std::uint32_t kStatus = 2;
inline constexpr std::uint32_t kPx = 3;
inline constexpr std::uint32_t kPy = 4;
inline constexpr std::uint32_t kPz = 5;
inline constexpr std::uint32_t kMass = 6;
inline constexpr std::uint32_t kMother1 = 7;
inline constexpr std::uint32_t kMother2 = 8;
inline constexpr std::uint32_t kDaughter1 = 9;
inline constexpr std::uint32_t kDaughter2 = 10;
inline constexpr std::uint32_t kBarcode = 11;
inline constexpr std::uint32_t kX = 12;
inline constexpr std::uint32_t kY = 13;
inline constexpr std::uint32_t kZ = 14;
inline constexpr std::uint32_t kT = 15;
// FileDescriptor
inline constexpr std::uint32_t kFormatVersionField = 1;
inline constexpr std::uint32_t kDescription = 2;
inline constexpr std::uint32_t kScheme = 3;
inline constexpr std::uint32_t kRequestedEvents = 4;
inline constexpr std::uint32_t kSchemaText = 5;
// EventIndex
inline constexpr std::uint32_t kParticleCount = 1;
inline constexpr std::uint32_t kMaxPt = 2;
// FileStatistics
inline constexpr std::uint32_t kActualEvents = 1;
inline constexpr std::uint32_t kTotalParticles = 2;
}  // namespace field

Bytes encode_event(const EventRecord& event);
void encode_event(const EventRecord& event, Bytes& out);
EventRecord decode_event(ByteView bytes);

Bytes encode_particles(const ParticleBlock& particles);
ParticleBlock decode_particles(ByteView bytes);

Bytes encode_descriptor(const FileDescriptor& descriptor);
FileDescriptor decode_descriptor(ByteView bytes);

Bytes encode_statistics(const FileStatistics& stats);
FileStatistics decode_statistics(ByteView bytes);

Bytes encode_index(const EventIndex& index);
EventIndex decode_index(ByteView bytes);

}  // namespace provent
