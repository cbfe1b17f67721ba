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

#include "provent/container.hpp"

#include <charconv>
#include <string>

#include "provent/error.hpp"
#include "provent/schema.hpp"

namespace provent {

std::optional<std::uint64_t> parse_ordinal(std::string_view name) {
    if (name.empty() || (name.size() > 1 && name[0] == '0')) {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
    if (ec != std::errc() || ptr != name.data() + name.size()) {
        return std::nullopt;
    }
    return value;
}

Writer::Writer(std::ostream& sink, FileDescriptor descriptor)
    : archive_(sink), descriptor_(std::move(descriptor)) {
    start();
}

Writer::Writer(const std::filesystem::path& path, FileDescriptor descriptor)
    : owned_(std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc)),
      archive_(*owned_),
      descriptor_(std::move(descriptor)) {
    if (!*owned_) {
        throw Error(ErrorCode::Io, "cannot create " + path.string());
    }
    start();
}

void Writer::start() {
    quant::validate(descriptor_.scheme);
    if (descriptor_.schema_text.empty()) {
        descriptor_.schema_text = schema::canonical_schema();
    }
    archive_.add(entry::kHeader, encode_descriptor(descriptor_));
}

Writer::~Writer() {
    if (!closed_) {
        try {
            close();
        } catch (...) {
        }
    }
}

void Writer::append(const EventRecord& event) {
    if (closed_) {
        throw Error(ErrorCode::UsageError, "append after close");
    }
    const std::uint64_t ordinal = stats_.actual_events;
    if (event.event_number != ordinal) {
        throw Error(ErrorCode::InvariantViolation,
                    "event_number " + std::to_string(event.event_number) +
                        " does not match ordinal " + std::to_string(ordinal));
    }
    if (ordinal >= kMaxEvents) {
        throw Error(ErrorCode::LimitExceeded, "at most " + std::to_string(kMaxEvents) +
                                                  " events fit in a format version 1 file");
    }
    scratch_.clear();
    encode_event(event, scratch_);
    archive_.add(std::to_string(ordinal), scratch_);

    const std::size_t n = event.particles.size();
    index_.particle_count.push_back(n);
    index_.max_pt.push_back(max_transverse_momentum(event.particles));
    ++stats_.actual_events;
    stats_.total_particles += n;
}

WriteSummary Writer::close() {
    if (closed_) {
        throw Error(ErrorCode::UsageError, "writer already closed");
    }
    closed_ = true;
    archive_.add(entry::kIndex, encode_index(index_));
    archive_.add(entry::kStatistics, encode_statistics(stats_));
    archive_.add(entry::kDescription, as_bytes(descriptor_.description));
    archive_.add(entry::kEventCount, as_bytes(std::to_string(stats_.actual_events) + "\n"));
    archive_.finish();
    if (owned_) {
        owned_->close();
        if (!*owned_) {
            throw Error(ErrorCode::Io, "closing output file failed");
        }
    }
    return {stats_.actual_events, stats_.total_particles, archive_.bytes_written()};
}

Reader::Reader(std::shared_ptr<const ByteSource> source)
    : source_(std::move(source)), directory_(zip::read_directory(*source_)) {
    std::vector<std::optional<std::size_t>> slots;
    for (std::size_t i = 0; i < directory_.entries.size(); ++i) {
        const auto& name = directory_.entries[i].name;
        if (!by_name_.emplace(name, i).second) {
            throw Error(ErrorCode::NotAnArchive, "duplicate entry '" + name + "'");
        }
        if (const auto ordinal = parse_ordinal(name)) {
            if (*ordinal >= directory_.entries.size()) {
                throw Error(ErrorCode::NotAnArchive, "event entry '" + name + "' out of sequence");
            }
            if (slots.size() <= *ordinal) {
                slots.resize(*ordinal + 1);
            }
            slots[*ordinal] = i;
        }
    }
    events_.reserve(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (!slots[k]) {
            throw Error(ErrorCode::NotAnArchive, "event entry '" + std::to_string(k) + "' missing");
        }
        events_.push_back(*slots[k]);
    }
    const auto* header = find_entry(entry::kHeader);
    if (header == nullptr) {
        throw Error(ErrorCode::MissingHeader, "archive has no 'header' entry");
    }
    descriptor_ = decode_descriptor(zip::read_entry(*source_, *header));
}

Reader Reader::open(const std::filesystem::path& path) {
    return Reader(std::make_shared<FileSource>(path));
}

const zip::EntryRecord* Reader::find_entry(std::string_view name) const {
    const auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : &directory_.entries[it->second];
}

const zip::EntryRecord& Reader::event_entry(std::uint64_t ordinal) const {
    if (ordinal >= events_.size()) {
        throw Error(ErrorCode::OutOfRange, "event " + std::to_string(ordinal) + " of " +
                                               std::to_string(events_.size()));
    }
    return directory_.entries[events_[ordinal]];
}

Bytes Reader::read_entry(std::string_view name) const {
    const auto* e = find_entry(name);
    if (e == nullptr) {
        throw Error(ErrorCode::OutOfRange, "no entry '" + std::string(name) + "'");
    }
    return zip::read_entry(*source_, *e);
}

Bytes Reader::read_event_bytes(std::uint64_t ordinal) const {
    return zip::read_entry(*source_, event_entry(ordinal));
}

EventRecord Reader::read_event(std::uint64_t ordinal) const {
    return decode_event(read_event_bytes(ordinal));
}

const EventIndex& Reader::index() const {
    std::lock_guard lock(*index_mutex_);
    if (!index_) {
        const auto* e = find_entry(entry::kIndex);
        if (e == nullptr) {
            throw Error(ErrorCode::MissingIndex, "archive has no 'index' entry");
        }
        index_ = decode_index(zip::read_entry(*source_, *e));
    }
    return *index_;
}

FileStatistics Reader::statistics() const {
    return decode_statistics(read_entry(entry::kStatistics));
}

std::vector<std::uint64_t> Reader::select_events(const IndexPredicate& predicate) const {
    const EventIndex& idx = index();
    if (idx.size() != event_count()) {
        throw Error(ErrorCode::InvariantViolation,
                    "index has " + std::to_string(idx.size()) + " rows for " +
                        std::to_string(event_count()) + " events");
    }
    std::vector<std::uint64_t> selected;
    for (std::uint64_t k = 0; k < idx.size(); ++k) {
        if (predicate(idx.particle_count[k], idx.max_pt[k])) {
            selected.push_back(k);
        }
    }
    return selected;
}

}  // namespace provent
