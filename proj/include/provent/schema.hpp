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

// Self-description. Every file embeds a small layout text naming each
// message, its field numbers, how each field is encoded and which columns
// are subject to the file's quantization units:
//
//   message EventRecord
//     1 varint event_number
//     3 fixed64 weight default:1
//     4 message particles type:ParticleBlock
//   end
//
// generic_decode() walks any message using only that table, which is what
// lets a reader make sense of a file it knows nothing else about.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "provent/quant.hpp"
#include "provent/wire.hpp"

namespace provent::schema {

enum class FieldKind { Varint, Zigzag, Fixed64, Bytes, Message, PackedVarint, PackedZigzag };
enum class Unit { None, Momentum, Length };

std::string_view to_string(FieldKind kind) noexcept;
std::string_view to_string(Unit unit) noexcept;

struct FieldSpec {
    std::uint32_t number = 0;
    FieldKind kind = FieldKind::Varint;
    std::string name;
    Unit unit = Unit::None;
    std::string type_name;              // message fields only
    std::optional<std::string> default_literal;  // scalar fields, when not 0

    bool is_packed() const noexcept {
        return kind == FieldKind::PackedVarint || kind == FieldKind::PackedZigzag;
    }
    /// The value an absent scalar field takes.
    double default_value() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct MessageSpec {
    std::string name;
    std::vector<FieldSpec> fields;  // ascending field number

    const FieldSpec* find(std::uint32_t number) const noexcept;

    friend bool operator==(const MessageSpec&, const MessageSpec&) = default;
};

struct SchemaTable {
    std::vector<MessageSpec> messages;

    const MessageSpec* find(std::string_view name) const noexcept;

    friend bool operator==(const SchemaTable&, const SchemaTable&) = default;
};

/// The frozen format version 1 layout text; byte-identical on every call.
const std::string& canonical_schema();

/// The parsed form of canonical_schema().
const SchemaTable& builtin_table();

/// Throws SyntaxError (naming the line), DuplicateField, or UnknownMessage
/// when a message field references a type the text does not define.
SchemaTable parse_schema(std::string_view text);

/// Canonical text for a table; print_schema(parse_schema(t)) == t for
/// canonical input.
std::string print_schema(const SchemaTable& table);

// --- schema-driven decoding -------------------------------------------------

struct DecodedField;

struct DecodedMessage {
    std::string type_name;
    std::vector<DecodedField> fields;

    const DecodedField* find(std::string_view name) const noexcept;
};

using DecodedValue = std::variant<std::uint64_t,               // varint
                                  std::int64_t,                // zigzag
                                  double,                      // fixed64 or dequantized scalar
                                  Bytes,                       // bytes, or unknown field raw payload
                                  std::vector<std::uint64_t>,  // packed-varint
                                  std::vector<std::int64_t>,   // packed-zigzag
                                  std::vector<double>,         // packed column with a unit
                                  DecodedMessage>;

struct DecodedField {
    std::string name;  // "unknown_<n>" for numbers the schema does not list
    std::uint32_t number = 0;
    DecodedValue value;
};

/// Decodes `bytes` as message `message_name` using only `table`. Columns with
/// a unit annotation come back dequantized (GeV or mm). Fields appear in
/// encounter order; repeated packed fields are concatenated.
DecodedMessage generic_decode(ByteView bytes, const SchemaTable& table,
                              std::string_view message_name, const QuantizationScheme& scheme);

/// A copy with every field the schema declares: absent scalars take their
/// default, absent columns become empty arrays, absent messages are filled
/// recursively. Fields are ordered by field number; unknown fields dropped.
DecodedMessage with_defaults(const DecodedMessage& message, const SchemaTable& table);

}  // namespace provent::schema
