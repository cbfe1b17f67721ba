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

// The event file: a ZIP archive of STORED entries
//
//   header                 encoded FileDescriptor (with embedded schema text)
//   0, 1, ..., N-1         one encoded EventRecord per entry
//   index                  EventIndex (per-event particle count and max pT)
//   statistics             FileStatistics
//   promc_description.txt  the description string
//   promc_nevents.txt      decimal event count and a newline
//
// The reader only needs the central directory to locate any event, so a
// single event costs one ranged read once the file is open.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "provent/byte_source.hpp"
#include "provent/model.hpp"
#include "provent/zip.hpp"

namespace provent {

namespace entry {
inline constexpr std::string_view kHeader = "header";
inline constexpr std::string_view kIndex = "index";
inline constexpr std::string_view kStatistics = "statistics";
inline constexpr std::string_view kDescription = "promc_description.txt";
inline constexpr std::string_view kEventCount = "promc_nevents.txt";
}  // namespace entry

/// Entries other than events that every complete file carries.
inline constexpr std::size_t kMetadataEntries = 5;
inline constexpr std::uint64_t kMaxEvents = zip::kMaxEntries - kMetadataEntries;

struct WriteSummary {
    std::uint64_t events = 0;
    std::uint64_t particles = 0;
    std::uint64_t bytes = 0;
};

/// Appends events to a new file. Single-threaded; the order of append()
/// calls defines the ordinals. An unclosed writer closes itself on
/// destruction (errors are swallowed there, call close() to see them).
class Writer {
public:
    /// Writes the header entry immediately. An empty schema_text is replaced
    /// by the canonical schema.
    Writer(std::ostream& sink, FileDescriptor descriptor);
    Writer(const std::filesystem::path& path, FileDescriptor descriptor);
    ~Writer();

    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    /// event.event_number must equal the next ordinal.
    void append(const EventRecord& event);

    WriteSummary close();

    bool is_open() const noexcept { return !closed_; }
    std::uint64_t event_count() const noexcept { return stats_.actual_events; }
    const FileDescriptor& descriptor() const noexcept { return descriptor_; }

private:
    void start();

    std::unique_ptr<std::ofstream> owned_;
    zip::ArchiveWriter archive_;
    FileDescriptor descriptor_;
    EventIndex index_;
    FileStatistics stats_;
    Bytes scratch_;
    bool closed_ = false;
};

class Reader {
public:
    /// Reads the end record, central directory and header entry; no event
    /// payloads. Throws NotAnArchive, MissingHeader, UnsupportedVersion.
    explicit Reader(std::shared_ptr<const ByteSource> source);

    static Reader open(const std::filesystem::path& path);

    const FileDescriptor& descriptor() const noexcept { return descriptor_; }
    const QuantizationScheme& scheme() const noexcept { return descriptor_.scheme; }
    std::uint64_t event_count() const noexcept { return events_.size(); }
    const std::vector<zip::EntryRecord>& entries() const noexcept { return directory_.entries; }
    const zip::Directory& directory() const noexcept { return directory_; }
    const ByteSource& source() const noexcept { return *source_; }

    const zip::EntryRecord* find_entry(std::string_view name) const;
    const zip::EntryRecord& event_entry(std::uint64_t ordinal) const;

    /// CRC-checked payload of a named entry; OutOfRange when it is absent.
    Bytes read_entry(std::string_view name) const;
    Bytes read_event_bytes(std::uint64_t ordinal) const;
    EventRecord read_event(std::uint64_t ordinal) const;

    /// Loaded on first use and cached. Throws MissingIndex.
    const EventIndex& index() const;
    FileStatistics statistics() const;

    using IndexPredicate = std::function<bool(std::uint64_t particle_count, std::uint64_t max_pt)>;

    /// Ordinals whose index row satisfies the predicate; reads no events.
    std::vector<std::uint64_t> select_events(const IndexPredicate& predicate) const;

private:
    std::shared_ptr<const ByteSource> source_;
    zip::Directory directory_;
    std::unordered_map<std::string, std::size_t> by_name_;
    std::vector<std::size_t> events_;  // ordinal -> directory position
    FileDescriptor descriptor_;
    mutable std::unique_ptr<std::mutex> index_mutex_ = std::make_unique<std::mutex>();
    mutable std::optional<EventIndex> index_;
};

/// Parses a canonical decimal ordinal ("0", "17"; no sign or leading zero).
std::optional<std::uint64_t> parse_ordinal(std::string_view name);

}  // namespace provent
