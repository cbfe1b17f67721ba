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

#include "provent/wire.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "provent/error.hpp"

namespace provent::wire {

namespace {

void put_fixed64(Bytes& out, std::uint64_t bits) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
}

std::uint64_t get_fixed_le(ByteView bytes) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    return v;
}

bool known_wire_type(std::uint64_t wt) {
    return wt == 0 || wt == 1 || wt == 2 || wt == 5;
}

void put_tag(Bytes& out, FieldTag tag) {
    if (tag.field_number == 0 || tag.field_number > kMaxFieldNumber) {
        throw Error(ErrorCode::InvalidTag, "field number " + std::to_string(tag.field_number));
    }
    encode_uvarint((static_cast<std::uint64_t>(tag.field_number) << 3) |
                       static_cast<std::uint64_t>(tag.wire_type),
                   out);
}

}  // namespace

void encode_uvarint(std::uint64_t value, Bytes& out) {
    while (value >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(value | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(value));
}

Bytes encode_uvarint(std::uint64_t value) {
    Bytes out;
    out.reserve(uvarint_size(value));
    encode_uvarint(value, out);
    return out;
}

DecodedVarint decode_uvarint(ByteView bytes, std::size_t offset) {
    if (offset >= bytes.size()) {
        throw Error(ErrorCode::Truncated, "varint at offset " + std::to_string(offset));
    }
    std::uint64_t value = 0;
    std::size_t i = 0;
    for (;;) {
        if (i == kMaxVarintLength) {
            throw Error(ErrorCode::Overlong, "varint longer than 10 bytes");
        }
        if (offset + i >= bytes.size()) {
            throw Error(ErrorCode::Truncated, "varint at offset " + std::to_string(offset));
        }
        const std::uint8_t b = bytes[offset + i];
        if (i == kMaxVarintLength - 1 && (b & 0x7F) > 1) {
            throw Error(ErrorCode::Overlong, "varint exceeds 64 bits");
        }
        value |= static_cast<std::uint64_t>(b & 0x7F) << (7 * i);
        ++i;
        if ((b & 0x80) == 0) {
            if (b == 0 && i > 1) {
                throw Error(ErrorCode::Overlong, "non-canonical varint");
            }
            return {value, i};
        }
    }
}

void write_field(Bytes& buffer, FieldTag tag, const FieldPayload& payload) {
    switch (tag.wire_type) {
        case WireType::Varint:
            if (const auto* v = std::get_if<std::uint64_t>(&payload)) {
                put_tag(buffer, tag);
                encode_uvarint(*v, buffer);
                return;
            }
            break;
        case WireType::Fixed64:
            if (const auto* d = std::get_if<double>(&payload)) {
                put_tag(buffer, tag);
                put_fixed64(buffer, std::bit_cast<std::uint64_t>(*d));
                return;
            }
            break;
        case WireType::LengthDelimited:
            if (const auto* b = std::get_if<ByteView>(&payload)) {
                put_tag(buffer, tag);
                encode_uvarint(b->size(), buffer);
                buffer.insert(buffer.end(), b->begin(), b->end());
                return;
            }
            break;
        case WireType::Fixed32:
            break;
    }
    throw Error(ErrorCode::UsageError, "payload does not match wire type of field " +
                                           std::to_string(tag.field_number));
}

void write_packed_varints(Bytes& buffer, std::uint32_t field_number,
                          std::span<const std::uint64_t> values) {
    if (values.empty()) {
        return;
    }
    std::size_t length = 0;
    for (auto v : values) {
        length += uvarint_size(v);
    }
    put_tag(buffer, {field_number, WireType::LengthDelimited});
    encode_uvarint(length, buffer);
    buffer.reserve(buffer.size() + length);
    for (auto v : values) {
        encode_uvarint(v, buffer);
    }
}

void write_packed_zigzag(Bytes& buffer, std::uint32_t field_number,
                         std::span<const std::int64_t> values) {
    if (values.empty()) {
        return;
    }
    std::size_t length = 0;
    for (auto v : values) {
        length += uvarint_size(zigzag_encode(v));
    }
    put_tag(buffer, {field_number, WireType::LengthDelimited});
    encode_uvarint(length, buffer);
    buffer.reserve(buffer.size() + length);
    for (auto v : values) {
        encode_uvarint(zigzag_encode(v), buffer);
    }
}

std::vector<std::uint64_t> read_packed_varints(ByteView payload) {
    std::vector<std::uint64_t> out;
    out.reserve(payload.size());
    std::size_t pos = 0;
    while (pos < payload.size()) {
        const auto d = decode_uvarint(payload, pos);
        out.push_back(d.value);
        pos += d.consumed;
    }
    return out;
}

std::vector<std::int64_t> read_packed_zigzag(ByteView payload) {
    std::vector<std::int64_t> out;
    out.reserve(payload.size());
    std::size_t pos = 0;
    while (pos < payload.size()) {
        const auto d = decode_uvarint(payload, pos);
        out.push_back(zigzag_decode(d.value));
        pos += d.consumed;
    }
    return out;
}

std::uint64_t Field::as_varint() const {
    if (tag.wire_type != WireType::Varint) {
        throw Error(ErrorCode::WireTypeMismatch,
                    "field " + std::to_string(tag.field_number) + " is not a varint");
    }
    return decode_uvarint(payload).value;
}

double Field::as_fixed64() const {
    if (tag.wire_type != WireType::Fixed64) {
        throw Error(ErrorCode::WireTypeMismatch,
                    "field " + std::to_string(tag.field_number) + " is not fixed64");
    }
    return std::bit_cast<double>(get_fixed_le(payload));
}

std::optional<Field> FieldReader::next() {
    if (pos_ >= data_.size()) {
        return std::nullopt;
    }
    const auto key = decode_uvarint(data_, pos_);
    const std::uint64_t wt = key.value & 0x7;
    const std::uint64_t number = key.value >> 3;
    if (!known_wire_type(wt)) {
        throw Error(ErrorCode::UnknownWireType,
                    "wire type " + std::to_string(wt) + " at offset " + std::to_string(pos_));
    }
    if (number == 0 || number > kMaxFieldNumber) {
        throw Error(ErrorCode::InvalidTag, "field number " + std::to_string(number));
    }
    std::size_t pos = pos_ + key.consumed;
    Field field;
    field.tag = {static_cast<std::uint32_t>(number), static_cast<WireType>(wt)};

    std::size_t begin = pos;
    std::size_t length = 0;
    switch (field.tag.wire_type) {
        case WireType::Varint:
            length = decode_uvarint(data_, pos).consumed;
            break;
        case WireType::Fixed64:
            length = 8;
            break;
        case WireType::Fixed32:
            length = 4;
            break;
        case WireType::LengthDelimited: {
            const auto len = decode_uvarint(data_, pos);
            begin = pos + len.consumed;
            if (len.value > data_.size() - begin) {
                throw Error(ErrorCode::Truncated,
                            "length-delimited field " + std::to_string(number) + " overruns message");
            }
            length = static_cast<std::size_t>(len.value);
            break;
        }
    }
    if (length > data_.size() - begin) {
        throw Error(ErrorCode::Truncated, "field " + std::to_string(number) + " overruns message");
    }
    field.payload = data_.subspan(begin, length);
    pos_ = begin + length;
    return field;
}

std::vector<Field> read_message_fields(ByteView message) {
    std::vector<Field> fields;
    FieldReader reader(message);
    while (auto f = reader.next()) {
        fields.push_back(*f);
    }
    return fields;
}

void expect_wire_type(const Field& field, WireType expected) {
    if (field.tag.wire_type != expected) {
        throw Error(ErrorCode::WireTypeMismatch,
                    "field " + std::to_string(field.tag.field_number) + " has wire type " +
                        std::to_string(static_cast<int>(field.tag.wire_type)) + ", expected " +
                        std::to_string(static_cast<int>(expected)));
    }
}

}  // namespace provent::wire
