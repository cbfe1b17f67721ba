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

#include <memory>
#include <mutex>
#include <string>

#include "provent/byte_source.hpp"

namespace httplib {
class Client;
}

namespace provent {

/// Reads a remote file with HTTP range requests (`Range: bytes=a-b`), so a
/// reader can open a file and pull single events without downloading it.
/// The server must answer 206 Partial Content. Plain http:// only.
class HttpRangeSource final : public ByteSource {
public:
    explicit HttpRangeSource(const std::string& url);
    ~HttpRangeSource() override;

    std::uint64_t length() const override { return length_; }
    Bytes read_at(std::uint64_t offset, std::size_t len) const override;

private:
    std::unique_ptr<httplib::Client> client_;
    std::string path_;
    std::uint64_t length_ = 0;
    mutable std::mutex mutex_;  // httplib::Client is not safe for concurrent use
};

}  // namespace provent
