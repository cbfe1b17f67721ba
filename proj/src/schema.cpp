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

#include "provent/schema.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <type_traits>

#include "provent/error.hpp"

namespace provent::schema {

namespace {

const std::string kCanonical =
    "message FileDescriptor\n"
    "  1 varint format_version\n"
    "  2 bytes description\n"
    "  3 packed-varint scheme\n"
    "  4 varint requested_events\n"
    "  5 bytes schema_text\n"
    "end\n"
    "message EventRecord\n"
    "  1 varint event_number\n"
    "  2 zigzag process_id\n"
    "  3 fixed64 weight default:1\n"
    "  4 message particles type:ParticleBlock\n"
    "end\n"
    "message ParticleBlock\n"
    "  1 packed-zigzag pdg_id\n"
    "  2 packed-varint status\n"
    "  3 packed-zigzag px unit:momentum\n"
    "  4 packed-zigzag py unit:momentum\n"
    "  5 packed-zigzag pz unit:momentum\n"
    "  6 packed-zigzag mass unit:momentum\n"
    "  7 packed-varint mother1\n"
    "  8 packed-varint mother2\n"
    "  9 packed-varint daughter1\n"
    "  10 packed-varint daughter2\n"
    "  11 packed-zigzag barcode\n"
    "  12 packed-zigzag x unit:length\n"
    "  13 packed-zigzag y unit:length\n"
    "  14 packed-zigzag z unit:length\n"
    "  15 packed-zigzag t unit:length\n"
    "end\n"
    "message EventIndex\n"
    "  1 packed-varint particle_count\n"
    "  2 packed-varint max_pt unit:momentum\n"
    "end\n"
    "message FileStatistics\n"
    "  1 varint actual_events\n"
    "  2 varint total_particles\n"
    "end\n";

constexpr std::pair<std::string_view, FieldKind> kKinds[] = {
    {"varint", FieldKind::Varint},
    {"zigzag", FieldKind::Zigzag},
    {"fixed64", FieldKind::Fixed64},
    {"bytes", FieldKind::Bytes},
    {"message", FieldKind::Message},
    {"packed-varint", FieldKind::PackedVarint},
    {"packed-zigzag", FieldKind::PackedZigzag},
};

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') {
            ++pos;
        }
        const std::size_t begin = pos;
        while (pos < line.size() && line[pos] != ' ') {
            ++pos;
        }
        if (pos > begin) {
            tokens.push_back(line.substr(begin, pos - begin));
        }
    }
    return tokens;
}

bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool valid_number_literal(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    std::string copy(s);
    char* end = nullptr;
    std::strtod(copy.c_str(), &end);
    return end == copy.c_str() + copy.size();
}

bool is_scalar(FieldKind kind) {
    return kind == FieldKind::Varint || kind == FieldKind::Zigzag || kind == FieldKind::Fixed64;
}

std::uint64_t unit_steps(Unit unit, const QuantizationScheme& scheme) {
    switch (unit) {
        case Unit::Momentum: return scheme.momentum_unit;
        case Unit::Length: return scheme.length_unit;
        case Unit::None: break;
    }
    return 1;
}

template <typename T>
std::vector<double> dequantize_column(const std::vector<T>& column, std::uint64_t steps) {
    std::vector<double> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        out[i] = static_cast<double>(column[i]) / static_cast<double>(steps);
    }
    return out;
}

template <typename T>
void append_to(DecodedValue& target, std::vector<T>&& more) {
    auto& existing = std::get<std::vector<T>>(target);
    existing.insert(existing.end(), more.begin(), more.end());
}

}  // namespace

std::string_view to_string(FieldKind kind) noexcept {
    for (const auto& [token, k] : kKinds) {
        if (k == kind) {
            return token;
        }
    }
    return "?";
}

std::string_view to_string(Unit unit) noexcept {
    switch (unit) {
        case Unit::None: return "none";
        case Unit::Momentum: return "momentum";
        case Unit::Length: return "length";
    }
    return "?";
}

double FieldSpec::default_value() const {
    return default_literal ? std::strtod(default_literal->c_str(), nullptr) : 0.0;
}

const FieldSpec* MessageSpec::find(std::uint32_t number) const noexcept {
    for (const auto& f : fields) {
        if (f.number == number) {
            return &f;
        }
    }
    return nullptr;
}

const MessageSpec* SchemaTable::find(std::string_view name) const noexcept {
    for (const auto& m : messages) {
        if (m.name == name) {
            return &m;
        }
    }
    return nullptr;
}

const DecodedField* DecodedMessage::find(std::string_view name) const noexcept {
    for (const auto& f : fields) {
        if (f.name == name) {
            return &f;
        }
    }
    return nullptr;
}

const std::string& canonical_schema() {
    return kCanonical;
}

const SchemaTable& builtin_table() {
    static const SchemaTable table = parse_schema(kCanonical);
    return table;
}

SchemaTable parse_schema(std::string_view text) {
    SchemaTable table;
    MessageSpec* current = nullptr;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        const auto tokens = split_tokens(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "message") {
            if (current != nullptr) {
                syntax_error(line_no, "'message' inside message " + current->name);
            }
            if (tokens.size() != 2 || !valid_identifier(tokens[1])) {
                syntax_error(line_no, "expected 'message <Name>'");
            }
            if (table.find(tokens[1]) != nullptr) {
                syntax_error(line_no, "message " + std::string(tokens[1]) + " defined twice");
            }
            table.messages.push_back({std::string(tokens[1]), {}});
            current = &table.messages.back();
            continue;
        }
        if (tokens[0] == "end") {
            if (current == nullptr || tokens.size() != 1) {
                syntax_error(line_no, "unexpected 'end'");
            }
            current = nullptr;
            continue;
        }
        if (current == nullptr) {
            syntax_error(line_no, "field outside of a message: '" + std::string(line) + "'");
        }
        if (tokens.size() < 3) {
            syntax_error(line_no, "expected '<number> <kind> <name> [options]'");
        }

        FieldSpec spec;
        std::uint64_t number = 0;
        const auto [ptr, ec] =
            std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), number);
        if (ec != std::errc() || ptr != tokens[0].data() + tokens[0].size() || number == 0 ||
            number > wire::kMaxFieldNumber || (tokens[0].size() > 1 && tokens[0][0] == '0')) {
            syntax_error(line_no, "bad field number '" + std::string(tokens[0]) + "'");
        }
        spec.number = static_cast<std::uint32_t>(number);

        const auto kind = std::find_if(std::begin(kKinds), std::end(kKinds),
                                       [&](const auto& k) { return k.first == tokens[1]; });
        if (kind == std::end(kKinds)) {
            syntax_error(line_no, "unknown kind '" + std::string(tokens[1]) + "'");
        }
        spec.kind = kind->second;

        if (!valid_identifier(tokens[2])) {
            syntax_error(line_no, "bad field name '" + std::string(tokens[2]) + "'");
        }
        spec.name = std::string(tokens[2]);

        bool have_unit = false;
        for (std::size_t i = 3; i < tokens.size(); ++i) {
            const auto option = tokens[i];
            if (option.starts_with("unit:") && !have_unit) {
                const auto value = option.substr(5);
                if (value == "momentum") {
                    spec.unit = Unit::Momentum;
                } else if (value == "length") {
                    spec.unit = Unit::Length;
                } else if (value == "none") {
                    spec.unit = Unit::None;
                } else {
                    syntax_error(line_no, "unknown unit '" + std::string(value) + "'");
                }
                have_unit = true;
            } else if (option.starts_with("type:") && spec.type_name.empty() &&
                       spec.kind == FieldKind::Message && valid_identifier(option.substr(5))) {
                spec.type_name = std::string(option.substr(5));
            } else if (option.starts_with("default:") && !spec.default_literal &&
                       is_scalar(spec.kind) && valid_number_literal(option.substr(8))) {
                spec.default_literal = std::string(option.substr(8));
            } else {
                syntax_error(line_no, "unexpected option '" + std::string(option) + "'");
            }
        }
        if (spec.kind == FieldKind::Message && spec.type_name.empty()) {
            syntax_error(line_no, "message field '" + spec.name + "' needs type:<Name>");
        }
        if (spec.unit != Unit::None &&
            (spec.kind == FieldKind::Bytes || spec.kind == FieldKind::Message)) {
            syntax_error(line_no, "unit on non-numeric field '" + spec.name + "'");
        }
        if (current->find(spec.number) != nullptr) {
            throw Error(ErrorCode::DuplicateField, "line " + std::to_string(line_no) + ": field " +
                                                       std::to_string(spec.number) +
                                                       " repeated in message " + current->name);
        }
        current->fields.push_back(std::move(spec));
    }
    if (current != nullptr) {
        syntax_error(line_no, "message " + current->name + " not closed with 'end'");
    }
    for (auto& m : table.messages) {
        std::stable_sort(m.fields.begin(), m.fields.end(),
                         [](const FieldSpec& a, const FieldSpec& b) { return a.number < b.number; });
        for (const auto& f : m.fields) {
            if (f.kind == FieldKind::Message && table.find(f.type_name) == nullptr) {
                throw Error(ErrorCode::UnknownMessage,
                            m.name + "." + f.name + " references undefined message " + f.type_name);
            }
        }
    }
    return table;
}

std::string print_schema(const SchemaTable& table) {
    std::ostringstream out;
    for (const auto& m : table.messages) {
        out << "message " << m.name << '\n';
        for (const auto& f : m.fields) {
            out << "  " << f.number << ' ' << to_string(f.kind) << ' ' << f.name;
            if (f.unit != Unit::None) {
                out << " unit:" << to_string(f.unit);
            }
            if (!f.type_name.empty()) {
                out << " type:" << f.type_name;
            }
            if (f.default_literal) {
                out << " default:" << *f.default_literal;
            }
            out << '\n';
        }
        out << "end\n";
    }
    return out.str();
}

namespace {

DecodedMessage decode_message(ByteView bytes, const SchemaTable& table, const MessageSpec& spec,
                              const QuantizationScheme& scheme, int depth) {
    if (depth > 64) {
        throw Error(ErrorCode::InvariantViolation, "message nesting deeper than 64");
    }
    DecodedMessage out;
    out.type_name = spec.name;
    wire::FieldReader reader(bytes);
    while (auto f = reader.next()) {
        const FieldSpec* fs = spec.find(f->tag.field_number);
        if (fs == nullptr) {
            out.fields.push_back({"unknown_" + std::to_string(f->tag.field_number),
                                  f->tag.field_number, Bytes(f->payload.begin(), f->payload.end())});
            continue;
        }
        const std::uint64_t steps = unit_steps(fs->unit, scheme);
        DecodedValue value;
        switch (fs->kind) {
            case FieldKind::Varint: {
                const auto v = f->as_varint();
                value = fs->unit == Unit::None ? DecodedValue(v)
                                               : DecodedValue(static_cast<double>(v) /
                                                              static_cast<double>(steps));
                break;
            }
            case FieldKind::Zigzag: {
                const auto v = wire::zigzag_decode(f->as_varint());
                value = fs->unit == Unit::None ? DecodedValue(v)
                                               : DecodedValue(quant::dequantize(v, steps));
                break;
            }
            case FieldKind::Fixed64: value = f->as_fixed64(); break;
            case FieldKind::Bytes:
                wire::expect_wire_type(*f, wire::WireType::LengthDelimited);
                value = Bytes(f->payload.begin(), f->payload.end());
                break;
            case FieldKind::Message:
                wire::expect_wire_type(*f, wire::WireType::LengthDelimited);
                value = decode_message(f->payload, table, *table.find(fs->type_name), scheme,
                                       depth + 1);
                break;
            case FieldKind::PackedVarint: {
                wire::expect_wire_type(*f, wire::WireType::LengthDelimited);
                auto column = wire::read_packed_varints(f->payload);
                value = fs->unit == Unit::None ? DecodedValue(std::move(column))
                                               : DecodedValue(dequantize_column(column, steps));
                break;
            }
            case FieldKind::PackedZigzag: {
                wire::expect_wire_type(*f, wire::WireType::LengthDelimited);
                auto column = wire::read_packed_zigzag(f->payload);
                value = fs->unit == Unit::None ? DecodedValue(std::move(column))
                                               : DecodedValue(dequantize_column(column, steps));
                break;
            }
        }

        auto existing = std::find_if(out.fields.begin(), out.fields.end(), [&](const DecodedField& d) {
            return d.number == fs->number;
        });
        if (existing == out.fields.end()) {
            out.fields.push_back({fs->name, fs->number, std::move(value)});
        } else if (fs->is_packed()) {
            std::visit(
                [&](auto&& more) {
                    using T = std::decay_t<decltype(more)>;
                    if constexpr (std::is_same_v<T, std::vector<std::uint64_t>> ||
                                  std::is_same_v<T, std::vector<std::int64_t>> ||
                                  std::is_same_v<T, std::vector<double>>) {
                        append_to(existing->value, std::move(more));
                    }
                },
                std::move(value));
        } else {
            existing->value = std::move(value);  // last occurrence wins
        }
    }
    return out;
}

DecodedValue default_for(const FieldSpec& f, const SchemaTable& table) {
    switch (f.kind) {
        case FieldKind::Varint:
            if (f.unit != Unit::None) return f.default_value();
            return static_cast<std::uint64_t>(f.default_value());
        case FieldKind::Zigzag:
            if (f.unit != Unit::None) return f.default_value();
            return static_cast<std::int64_t>(f.default_value());
        case FieldKind::Fixed64: return f.default_value();
        case FieldKind::Bytes: return Bytes{};
        case FieldKind::Message: {
            DecodedMessage empty;
            empty.type_name = f.type_name;
            return with_defaults(empty, table);
        }
        case FieldKind::PackedVarint:
            if (f.unit != Unit::None) return std::vector<double>{};
            return std::vector<std::uint64_t>{};
        case FieldKind::PackedZigzag:
            if (f.unit != Unit::None) return std::vector<double>{};
            return std::vector<std::int64_t>{};
    }
    return std::uint64_t{0};
}

}  // namespace

DecodedMessage generic_decode(ByteView bytes, const SchemaTable& table,
                              std::string_view message_name, const QuantizationScheme& scheme) {
    const MessageSpec* spec = table.find(message_name);
    if (spec == nullptr) {
        throw Error(ErrorCode::UnknownMessage, "schema has no message " + std::string(message_name));
    }
    return decode_message(bytes, table, *spec, scheme, 0);
}

DecodedMessage with_defaults(const DecodedMessage& message, const SchemaTable& table) {
    const MessageSpec* spec = table.find(message.type_name);
    if (spec == nullptr) {
        throw Error(ErrorCode::UnknownMessage, "schema has no message " + message.type_name);
    }
    DecodedMessage out;
    out.type_name = message.type_name;
    for (const auto& f : spec->fields) {
        const DecodedField* present = nullptr;
        for (const auto& d : message.fields) {
            if (d.number == f.number) {
                present = &d;
            }
        }
        if (present == nullptr) {
            out.fields.push_back({f.name, f.number, default_for(f, table)});
        } else if (f.kind == FieldKind::Message) {
            out.fields.push_back(
                {f.name, f.number, with_defaults(std::get<DecodedMessage>(present->value), table)});
        } else {
            out.fields.push_back(*present);
        }
    }
    return out;
}

}  // namespace provent::schema
