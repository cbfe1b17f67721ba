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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>

#include "provent/wire.hpp"

namespace provent {

/// Random-access read interface the container reader is written against.
/// Implementations must allow concurrent read_at calls.
class ByteSource {
public:
    virtual ~ByteSource() = default;

    virtual std::uint64_t length() const = 0;

    /// Exactly `len` bytes starting at `offset`; throws Io when the range
    /// runs past the end of the source.
    virtual Bytes read_at(std::uint64_t offset, std::size_t len) const = 0;
};

/// Positioned reads on a local file (pread, so concurrent readers are fine).
class FileSource final : public ByteSource {
public:
    explicit FileSource(const std::filesystem::path& path);
    ~FileSource() override;

    FileSource(const FileSource&) = delete;
    FileSource& operator=(const FileSource&) = delete;

    std::uint64_t length() const override { return length_; }
    Bytes read_at(std::uint64_t offset, std::size_t len) const override;

private:
    int fd_ = -1;
    std::uint64_t length_ = 0;
};

class MemorySource final : public ByteSource {
public:
    explicit MemorySource(Bytes data) : data_(std::move(data)) {}

    std::uint64_t length() const override { return data_.size(); }
    Bytes read_at(std::uint64_t offset, std::size_t len) const override;

    const Bytes& data() const noexcept { return data_; }

private:
    Bytes data_;
};

/// Forwards to another source and counts what was read.
class CountingSource final : public ByteSource {
public:
    explicit CountingSource(std::shared_ptr<const ByteSource> inner) : inner_(std::move(inner)) {}

    std::uint64_t length() const override { return inner_->length(); }
    Bytes read_at(std::uint64_t offset, std::size_t len) const override;

    std::uint64_t bytes_read() const noexcept { return bytes_.load(); }
    std::uint64_t read_calls() const noexcept { return calls_.load(); }
    void reset() noexcept {
        bytes_ = 0;
        calls_ = 0;
    }

private:
    std::shared_ptr<const ByteSource> inner_;
    mutable std::atomic<std::uint64_t> bytes_{0};
    mutable std::atomic<std::uint64_t> calls_{0};
};

/// Opens `location` as a local file, or as an HTTP range source when it starts
/// with http:// and the library was built with HTTP support.
std::shared_ptr<const ByteSource> open_source(const std::string& location);

}  // namespace provent
