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

// Varint / zigzag primitives and the tagged field framing used by every
// persisted record. The encoding is the Protocol Buffers wire format subset
// with four wire types; all repeated numerics are packed.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace provent {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) noexcept {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

namespace wire {

/// The longest canonical encoding of a 64-bit value.
inline constexpr std::size_t kMaxVarintLength = 10;

inline constexpr std::uint32_t kMaxFieldNumber = (1U << 29) - 1;

enum class WireType : std::uint8_t {
    Varint = 0,
    Fixed64 = 1,
    LengthDelimited = 2,
    Fixed32 = 5,
};

struct FieldTag {
    std::uint32_t field_number = 0;
    WireType wire_type = WireType::Varint;

    friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

constexpr std::size_t uvarint_size(std::uint64_t value) noexcept {
    std::size_t n = 1;
    while (value >= 0x80) {
        value >>= 7;
        ++n;
    }
    return n;
}

constexpr std::uint64_t zigzag_encode(std::int64_t value) noexcept {
    return (static_cast<std::uint64_t>(value) << 1) ^ static_cast<std::uint64_t>(value >> 63);
}

constexpr std::int64_t zigzag_decode(std::uint64_t value) noexcept {
    return static_cast<std::int64_t>((value >> 1) ^ (~(value & 1) + 1));
}

void encode_uvarint(std::uint64_t value, Bytes& out);
Bytes encode_uvarint(std::uint64_t value);

struct DecodedVarint {
    std::uint64_t value = 0;
    std::size_t consumed = 0;
};

/// Decodes the canonical varint starting at `offset`. Throws Truncated when
/// the input ends mid-value and Overlong for non-canonical or >64-bit input.
DecodedVarint decode_uvarint(ByteView bytes, std::size_t offset = 0);

/// A value ready to be framed: varint integer, IEEE-754 double, or raw bytes.
using FieldPayload = std::variant<std::uint64_t, double, ByteView>;

/// Appends tag + payload. The payload alternative must agree with the wire
/// type (uint64 -> Varint, double -> Fixed64, ByteView -> LengthDelimited).
void write_field(Bytes& buffer, FieldTag tag, const FieldPayload& payload);

/// One LENGTH_DELIMITED field of concatenated varints; nothing when empty.
void write_packed_varints(Bytes& buffer, std::uint32_t field_number,
                          std::span<const std::uint64_t> values);
void write_packed_zigzag(Bytes& buffer, std::uint32_t field_number,
                         std::span<const std::int64_t> values);

std::vector<std::uint64_t> read_packed_varints(ByteView payload);
std::vector<std::int64_t> read_packed_zigzag(ByteView payload);

/// A decoded field. For Varint the payload is the varint's own bytes, for
/// LengthDelimited it is the content without the length prefix.
struct Field {
    FieldTag tag;
    ByteView payload;

    std::uint64_t as_varint() const;
    double as_fixed64() const;
};

/// Sequential field iterator over one message body. Unknown field numbers
/// are yielded like any other; skipping is the caller's choice.
class FieldReader {
public:
    explicit FieldReader(ByteView message) noexcept : data_(message) {}

    std::optional<Field> next();

    std::size_t position() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ == data_.size(); }

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

std::vector<Field> read_message_fields(ByteView message);

/// Throws WireTypeMismatch unless the field carries the expected wire type.
void expect_wire_type(const Field& field, WireType expected);

}  // namespace wire
}  // namespace provent
