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

#include "provent/http_source.hpp"

#include <httplib.h>

#include "provent/error.hpp"

namespace provent {

namespace {

std::pair<std::string, std::string> split_url(const std::string& url) {
    constexpr std::string_view scheme = "http://";
    if (url.rfind(scheme, 0) != 0) {
        throw Error(ErrorCode::UsageError, "not an http:// url: " + url);
    }
    const auto slash = url.find('/', scheme.size());
    if (slash == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

HttpRangeSource::HttpRangeSource(const std::string& url) {
    auto [host, path] = split_url(url);
    path_ = std::move(path);
    client_ = std::make_unique<httplib::Client>(host);
    client_->set_keep_alive(true);

    const auto res = client_->Head(path_);
    if (!res) {
        throw Error(ErrorCode::Io, "HEAD " + url + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::Io, "HEAD " + url + ": status " + std::to_string(res->status));
    }
    if (!res->has_header("Content-Length")) {
        throw Error(ErrorCode::Io, "HEAD " + url + ": no Content-Length");
    }
    length_ = std::stoull(res->get_header_value("Content-Length"));
}

HttpRangeSource::~HttpRangeSource() = default;

Bytes HttpRangeSource::read_at(std::uint64_t offset, std::size_t len) const {
    if (offset > length_ || len > length_ - offset) {
        throw Error(ErrorCode::Io, "range past end of remote file");
    }
    if (len == 0) {
        return {};
    }
    const std::string range =
        "bytes=" + std::to_string(offset) + "-" + std::to_string(offset + len - 1);
    std::lock_guard lock(mutex_);
    const auto res = client_->Get(path_, {{"Range", range}});
    if (!res) {
        throw Error(ErrorCode::Io, "GET " + path_ + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 206) {
        throw Error(ErrorCode::Io, "GET " + path_ + " " + range + ": status " +
                                       std::to_string(res->status) + ", expected 206");
    }
    if (res->body.size() != len) {
        throw Error(ErrorCode::Io, "GET " + path_ + " " + range + ": got " +
                                       std::to_string(res->body.size()) + " bytes");
    }
    return Bytes(res->body.begin(), res->body.end());
}

}  // namespace provent
