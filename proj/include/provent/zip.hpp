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

// Minimal ZIP archive layer: STORED entries only, no ZIP64, no comments
// written. Enough structure for any stock unzip tool to read the result and
// for the reader to locate every entry from the central directory alone.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "provent/byte_source.hpp"
#include "provent/wire.hpp"

namespace provent::zip {

inline constexpr std::uint32_t kLocalHeaderSignature = 0x04034B50;
inline constexpr std::uint32_t kCentralHeaderSignature = 0x02014B50;
inline constexpr std::uint32_t kEndOfDirectorySignature = 0x06054B50;

inline constexpr std::size_t kLocalHeaderSize = 30;
inline constexpr std::size_t kCentralHeaderSize = 46;
inline constexpr std::size_t kEndOfDirectorySize = 22;

inline constexpr std::size_t kMaxEntries = 0xFFFF;
inline constexpr std::uint64_t kMaxOffset = 0xFFFFFFFEULL;

struct EntryRecord {
    std::string name;
    std::uint64_t offset = 0;  // of the local file header
    std::uint32_t length = 0;  // payload bytes (stored == uncompressed)
    std::uint32_t crc32 = 0;

    /// Where the payload starts, assuming the local header repeats the name
    /// and carries no extra field (true for every archive written here).
    std::uint64_t payload_offset() const noexcept {
        return offset + kLocalHeaderSize + name.size();
    }
};

class ArchiveWriter {
public:
    explicit ArchiveWriter(std::ostream& sink) : sink_(&sink) {}

    /// Writes one local header + payload. Throws LimitExceeded past the
    /// 65535-entry or 4 GiB limits and Io when the sink fails.
    void add(std::string_view name, ByteView payload);

    /// Central directory and end record; no further adds are allowed.
    void finish();

    bool finished() const noexcept { return finished_; }
    std::uint64_t bytes_written() const noexcept { return offset_; }
    const std::vector<EntryRecord>& entries() const noexcept { return entries_; }

private:
    void put(const Bytes& bytes);

    std::ostream* sink_;
    std::uint64_t offset_ = 0;
    std::vector<EntryRecord> entries_;
    bool finished_ = false;
};

struct Directory {
    std::vector<EntryRecord> entries;
    std::uint64_t directory_offset = 0;
    std::uint64_t directory_size = 0;
};

/// Locates and parses the end record and central directory with two reads
/// from the tail (three if the archive carries a comment). Throws NotAnArchive.
Directory read_directory(const ByteSource& source);

/// Reads one entry's payload (a single ranged read for archives written by
/// ArchiveWriter) and verifies its CRC. Throws ChecksumMismatch.
Bytes read_entry(const ByteSource& source, const EntryRecord& entry);

}  // namespace provent::zip
