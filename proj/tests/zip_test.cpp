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

#include <doctest.h>

#include <zlib.h>

#include <random>
#include <sstream>

#include "provent/crc32.hpp"
#include "provent/error.hpp"
#include "provent/zip.hpp"

using namespace provent;

namespace {

Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

Bytes build(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ostringstream sink;
    zip::ArchiveWriter w(sink);
    for (const auto& [name, payload] : entries) w.add(name, as_bytes(payload));
    w.finish();
    return to_bytes(sink.str());
}

std::uint32_t le32(const Bytes& b, std::size_t at) {
    return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

}  // namespace

TEST_CASE("crc32 check value and zlib agreement") {
    CHECK(crc32(as_bytes("123456789")) == 0xCBF43926U);
    CHECK(crc32(ByteView{}) == 0);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Bytes data(rng() % 5000);
        for (auto& b : data) b = static_cast<std::uint8_t>(rng());
        const auto expected = ::crc32(0L, data.data(), static_cast<uInt>(data.size()));
        REQUIRE(crc32(data) == expected);
        // incremental form
        const std::size_t cut = data.empty() ? 0 : rng() % data.size();
        REQUIRE(crc32(ByteView(data).subspan(cut), crc32(ByteView(data).first(cut))) == expected);
    }
}

TEST_CASE("archive structure") {
    const Bytes archive = build({{"a", "hello"}, {"bb", ""}, {"ccc", "xyz"}});
    CHECK(le32(archive, 0) == zip::kLocalHeaderSignature);
    CHECK(archive[4] == 10);  // version needed
    CHECK(archive[8] == 0);   // method stored
    CHECK(le32(archive, archive.size() - 22) == zip::kEndOfDirectorySignature);

    MemorySource src(archive);
    const auto dir = zip::read_directory(src);
    REQUIRE(dir.entries.size() == 3);
    CHECK(dir.entries[0].name == "a");
    CHECK(dir.entries[0].length == 5);
    CHECK(dir.entries[0].offset == 0);
    CHECK(dir.entries[1].offset == 30 + 1 + 5);
    CHECK(le32(archive, dir.directory_offset) == zip::kCentralHeaderSignature);
    CHECK(zip::read_entry(src, dir.entries[0]) == to_bytes("hello"));
    CHECK(zip::read_entry(src, dir.entries[1]).empty());
    CHECK(zip::read_entry(src, dir.entries[2]) == to_bytes("xyz"));
}

TEST_CASE("empty archive") {
    const Bytes archive = build({});
    CHECK(archive.size() == 22);
    MemorySource src(archive);
    CHECK(zip::read_directory(src).entries.empty());
}

TEST_CASE("archive comment is tolerated") {
    Bytes archive = build({{"x", "payload"}});
    const std::string comment = "written elsewhere";
    archive[archive.size() - 2] = static_cast<std::uint8_t>(comment.size());
    archive.insert(archive.end(), comment.begin(), comment.end());
    MemorySource src(archive);
    const auto dir = zip::read_directory(src);
    REQUIRE(dir.entries.size() == 1);
    CHECK(zip::read_entry(src, dir.entries[0]) == to_bytes("payload"));
}

TEST_CASE("not an archive") {
    std::mt19937_64 rng(1);
    for (std::size_t len : {0u, 5u, 22u, 1000u, 70000u}) {
        Bytes junk(len);
        for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
        MemorySource src(junk);
        try {
            zip::read_directory(src);
            FAIL("accepted junk");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotAnArchive);
        }
    }
}

TEST_CASE("checksum mismatch on payload corruption") {
    Bytes archive = build({{"e", "some payload bytes"}});
    archive[30 + 1 + 3] ^= 0x10;
    MemorySource src(archive);
    const auto dir = zip::read_directory(src);
    try {
        zip::read_entry(src, dir.entries[0]);
        FAIL("no checksum error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ChecksumMismatch);
        CHECK(std::string(e.what()).find("crc mismatch entry 'e'") != std::string::npos);
    }
}

TEST_CASE("writer misuse") {
    std::ostringstream sink;
    zip::ArchiveWriter w(sink);
    w.finish();
    CHECK_THROWS_AS(w.add("x", ByteView{}), Error);
    CHECK_THROWS_AS(w.finish(), Error);

    std::ostringstream sink2;
    zip::ArchiveWriter w2(sink2);
    CHECK_THROWS_AS(w2.add("", ByteView{}), Error);
}

TEST_CASE("entry limit") {
    std::ostringstream sink;
    zip::ArchiveWriter w(sink);
    for (std::size_t i = 0; i < zip::kMaxEntries; ++i) w.add("e" + std::to_string(i), ByteView{});
    try {
        w.add("one-too-many", ByteView{});
        FAIL("no limit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LimitExceeded);
    }
    w.finish();
    const std::string s = sink.str();
    MemorySource src(Bytes(s.begin(), s.end()));
    CHECK(zip::read_directory(src).entries.size() == zip::kMaxEntries);
}
