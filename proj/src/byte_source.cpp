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

#include "provent/byte_source.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "provent/error.hpp"

#ifdef PROVENT_WITH_HTTP
#include "provent/http_source.hpp"
#endif

namespace provent {

namespace {

void check_range(std::uint64_t offset, std::size_t len, std::uint64_t total) {
    if (offset > total || len > total - offset) {
        throw Error(ErrorCode::Io, "read of " + std::to_string(len) + " bytes at offset " +
                                       std::to_string(offset) + " runs past end (" +
                                       std::to_string(total) + " bytes)");
    }
}

}  // namespace

FileSource::FileSource(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd_ < 0) {
        throw Error(ErrorCode::Io, "cannot open " + path.string() + ": " + std::strerror(errno));
    }
    struct stat st {};
    if (::fstat(fd_, &st) != 0 || !S_ISREG(st.st_mode)) {
        ::close(fd_);
        throw Error(ErrorCode::Io, path.string() + " is not a regular file");
    }
    length_ = static_cast<std::uint64_t>(st.st_size);
}

FileSource::~FileSource() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

Bytes FileSource::read_at(std::uint64_t offset, std::size_t len) const {
    check_range(offset, len, length_);
    Bytes out(len);
    std::size_t done = 0;
    while (done < len) {
        const ssize_t n = ::pread(fd_, out.data() + done, len - done,
                                  static_cast<off_t>(offset + done));
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw Error(ErrorCode::Io, std::string("pread: ") + std::strerror(errno));
        }
        if (n == 0) {
            throw Error(ErrorCode::Io, "unexpected end of file");
        }
        done += static_cast<std::size_t>(n);
    }
    return out;
}

Bytes MemorySource::read_at(std::uint64_t offset, std::size_t len) const {
    check_range(offset, len, data_.size());
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(offset);
    return Bytes(first, first + static_cast<std::ptrdiff_t>(len));
}

Bytes CountingSource::read_at(std::uint64_t offset, std::size_t len) const {
    Bytes out = inner_->read_at(offset, len);
    bytes_ += out.size();
    ++calls_;
    return out;
}

std::shared_ptr<const ByteSource> open_source(const std::string& location) {
    if (location.rfind("http://", 0) == 0) {
#ifdef PROVENT_WITH_HTTP
        return std::make_shared<HttpRangeSource>(location);
#else
        throw Error(ErrorCode::UsageError, "built without HTTP support: " + location);
#endif
    }
    return std::make_shared<FileSource>(location);
}

}  // namespace provent
