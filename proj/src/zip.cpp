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

#include "provent/zip.hpp"

#include <algorithm>
#include <string>

#include "provent/crc32.hpp"
#include "provent/error.hpp"

namespace provent::zip {

namespace {

constexpr std::uint16_t kVersionNeeded = 10;
constexpr std::uint16_t kVersionMadeBy = 10;
// 1980-01-01 00:00, the DOS epoch; fixed so output is reproducible.
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;

void put16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

std::uint16_t get16(ByteView b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get32(ByteView b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

[[noreturn]] void not_an_archive(const std::string& why) {
    throw Error(ErrorCode::NotAnArchive, why);
}

struct EndRecord {
    std::uint64_t position = 0;
    std::uint16_t entries = 0;
    std::uint32_t directory_size = 0;
    std::uint32_t directory_offset = 0;
};

EndRecord parse_end(ByteView b, std::size_t at, std::uint64_t position) {
    if (get16(b, at + 4) != 0 || get16(b, at + 6) != 0) {
        not_an_archive("multi-disk archives are not supported");
    }
    EndRecord end;
    end.position = position;
    end.entries = get16(b, at + 10);
    if (get16(b, at + 8) != end.entries) {
        not_an_archive("inconsistent entry counts in end record");
    }
    end.directory_size = get32(b, at + 12);
    end.directory_offset = get32(b, at + 16);
    return end;
}

EndRecord find_end(const ByteSource& source) {
    const std::uint64_t total = source.length();
    if (total < kEndOfDirectorySize) {
        not_an_archive("source too short for an end-of-directory record");
    }
    // Common case: no archive comment, the end record is the last 22 bytes.
    {
        const Bytes tail = source.read_at(total - kEndOfDirectorySize, kEndOfDirectorySize);
        if (get32(tail, 0) == kEndOfDirectorySignature && get16(tail, 20) == 0) {
            return parse_end(tail, 0, total - kEndOfDirectorySize);
        }
    }
    const std::size_t span = static_cast<std::size_t>(
        std::min<std::uint64_t>(total, kEndOfDirectorySize + 0xFFFF));
    const Bytes tail = source.read_at(total - span, span);
    for (std::size_t i = span - kEndOfDirectorySize + 1; i-- > 0;) {
        if (get32(tail, i) == kEndOfDirectorySignature &&
            i + kEndOfDirectorySize + get16(tail, i + 20) == span) {
            return parse_end(tail, i, total - span + i);
        }
    }
    not_an_archive("no end-of-central-directory record");
}

}  // namespace

void ArchiveWriter::put(const Bytes& bytes) {
    sink_->write(reinterpret_cast<const char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size()));
    if (!*sink_) {
        throw Error(ErrorCode::Io, "write to archive sink failed");
    }
    offset_ += bytes.size();
}

void ArchiveWriter::add(std::string_view name, ByteView payload) {
    if (finished_) {
        throw Error(ErrorCode::UsageError, "archive already finished");
    }
    if (entries_.size() >= kMaxEntries) {
        throw Error(ErrorCode::LimitExceeded, "more than 65535 entries");
    }
    if (name.empty() || name.size() > 0xFFFF) {
        throw Error(ErrorCode::UsageError, "invalid entry name length");
    }
    const std::uint64_t end = offset_ + kLocalHeaderSize + name.size() + payload.size();
    if (payload.size() > kMaxOffset || end > kMaxOffset) {
        throw Error(ErrorCode::LimitExceeded, "archive would exceed 4 GiB");
    }

    EntryRecord entry;
    entry.name = std::string(name);
    entry.offset = offset_;
    entry.length = static_cast<std::uint32_t>(payload.size());
    entry.crc32 = crc32(payload);

    Bytes header;
    header.reserve(kLocalHeaderSize + name.size() + payload.size());
    put32(header, kLocalHeaderSignature);
    put16(header, kVersionNeeded);
    put16(header, 0);  // flags
    put16(header, 0);  // method: stored
    put16(header, kDosTime);
    put16(header, kDosDate);
    put32(header, entry.crc32);
    put32(header, entry.length);
    put32(header, entry.length);
    put16(header, static_cast<std::uint16_t>(name.size()));
    put16(header, 0);  // extra length
    header.insert(header.end(), name.begin(), name.end());
    header.insert(header.end(), payload.begin(), payload.end());
    put(header);
    entries_.push_back(std::move(entry));
}

void ArchiveWriter::finish() {
    if (finished_) {
        throw Error(ErrorCode::UsageError, "archive already finished");
    }
    const std::uint64_t directory_offset = offset_;
    Bytes dir;
    for (const auto& e : entries_) {
        put32(dir, kCentralHeaderSignature);
        put16(dir, kVersionMadeBy);
        put16(dir, kVersionNeeded);
        put16(dir, 0);  // flags
        put16(dir, 0);  // method
        put16(dir, kDosTime);
        put16(dir, kDosDate);
        put32(dir, e.crc32);
        put32(dir, e.length);
        put32(dir, e.length);
        put16(dir, static_cast<std::uint16_t>(e.name.size()));
        put16(dir, 0);  // extra
        put16(dir, 0);  // comment
        put16(dir, 0);  // disk
        put16(dir, 0);  // internal attributes
        put32(dir, 0);  // external attributes
        put32(dir, static_cast<std::uint32_t>(e.offset));
        dir.insert(dir.end(), e.name.begin(), e.name.end());
    }
    if (directory_offset + dir.size() > kMaxOffset) {
        throw Error(ErrorCode::LimitExceeded, "archive would exceed 4 GiB");
    }
    const auto directory_size = static_cast<std::uint32_t>(dir.size());
    put32(dir, kEndOfDirectorySignature);
    put16(dir, 0);
    put16(dir, 0);
    put16(dir, static_cast<std::uint16_t>(entries_.size()));
    put16(dir, static_cast<std::uint16_t>(entries_.size()));
    put32(dir, directory_size);
    put32(dir, static_cast<std::uint32_t>(directory_offset));
    put16(dir, 0);  // comment length
    put(dir);
    sink_->flush();
    if (!*sink_) {
        throw Error(ErrorCode::Io, "flush of archive sink failed");
    }
    finished_ = true;
}

Directory read_directory(const ByteSource& source) {
    const EndRecord end = find_end(source);
    if (static_cast<std::uint64_t>(end.directory_offset) + end.directory_size > end.position) {
        not_an_archive("central directory overlaps end record");
    }
    const Bytes dir = source.read_at(end.directory_offset, end.directory_size);

    Directory out;
    out.directory_offset = end.directory_offset;
    out.directory_size = end.directory_size;
    out.entries.reserve(end.entries);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < end.entries; ++i) {
        if (pos + kCentralHeaderSize > dir.size() || get32(dir, pos) != kCentralHeaderSignature) {
            not_an_archive("bad central directory header " + std::to_string(i));
        }
        const std::uint16_t flags = get16(dir, pos + 8);
        const std::uint16_t method = get16(dir, pos + 10);
        const std::uint32_t crc = get32(dir, pos + 16);
        const std::uint32_t compressed = get32(dir, pos + 20);
        const std::uint32_t size = get32(dir, pos + 24);
        const std::uint16_t name_len = get16(dir, pos + 28);
        const std::uint16_t extra_len = get16(dir, pos + 30);
        const std::uint16_t comment_len = get16(dir, pos + 32);
        const std::uint32_t local = get32(dir, pos + 42);
        const std::size_t next = pos + kCentralHeaderSize + name_len + extra_len + comment_len;
        if (next > dir.size()) {
            not_an_archive("central directory header " + std::to_string(i) + " overruns");
        }
        if (method != 0 || compressed != size || (flags & 0x1) != 0) {
            not_an_archive("entry " + std::to_string(i) + " is compressed or encrypted");
        }
        EntryRecord e;
        e.name.assign(dir.begin() + static_cast<std::ptrdiff_t>(pos + kCentralHeaderSize),
                      dir.begin() + static_cast<std::ptrdiff_t>(pos + kCentralHeaderSize + name_len));
        e.offset = local;
        e.length = size;
        e.crc32 = crc;
        if (e.payload_offset() + e.length > out.directory_offset) {
            not_an_archive("entry '" + e.name + "' overlaps the central directory");
        }
        out.entries.push_back(std::move(e));
        pos = next;
    }
    return out;
}

Bytes read_entry(const ByteSource& source, const EntryRecord& entry) {
    const std::size_t head = kLocalHeaderSize + entry.name.size();
    Bytes region = source.read_at(entry.offset, head + entry.length);
    if (get32(region, 0) != kLocalHeaderSignature) {
        not_an_archive("bad local header for entry '" + entry.name + "'");
    }
    const std::uint16_t name_len = get16(region, 26);
    const std::uint16_t extra_len = get16(region, 28);
    Bytes payload;
    if (name_len == entry.name.size() && extra_len == 0) {
        payload.assign(region.begin() + static_cast<std::ptrdiff_t>(head), region.end());
    } else {
        payload = source.read_at(entry.offset + kLocalHeaderSize + name_len + extra_len,
                                 entry.length);
    }
    if (crc32(payload) != entry.crc32) {
        throw Error(ErrorCode::ChecksumMismatch, "crc mismatch entry '" + entry.name + "'");
    }
    return payload;
}

}  // namespace provent::zip
