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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <variant>

#include "provent/cli.hpp"
#include "provent/error.hpp"

namespace provent::cli {

using schema::DecodedField;
using schema::DecodedMessage;

std::string format_real(double value) {
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string s(buf, ptr);
    if (s.find_first_of(".e") == std::string::npos) {
        s += ".0";
    }
    return s;
}

schema::DecodedMessage decode_event_via_schema(const Reader& reader, std::uint64_t ordinal) {
    const auto table = schema::parse_schema(reader.descriptor().schema_text);
    return schema::generic_decode(reader.read_event_bytes(ordinal), table, "EventRecord",
                                  reader.scheme());
}

nlohmann::json to_json(const DecodedMessage& message) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& f : message.fields) {
        obj[f.name] = std::visit(
            [](const auto& v) -> nlohmann::json {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Bytes>) {
                    return std::string(v.begin(), v.end());
                } else if constexpr (std::is_same_v<T, DecodedMessage>) {
                    return to_json(v);
                } else {
                    return v;
                }
            },
            f.value);
    }
    return obj;
}

namespace {

std::size_t column_length(const schema::DecodedValue& v) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::vector<std::uint64_t>> ||
                          std::is_same_v<T, std::vector<std::int64_t>> ||
                          std::is_same_v<T, std::vector<double>>) {
                return x.size();
            } else {
                return static_cast<std::size_t>(-1);
            }
        },
        v);
}

std::string cell(const schema::DecodedValue& v, std::size_t row) {
    return std::visit(
        [row](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::vector<double>>) {
                return format_real(x[row]);
            } else if constexpr (std::is_same_v<T, std::vector<std::uint64_t>> ||
                                 std::is_same_v<T, std::vector<std::int64_t>>) {
                return std::to_string(x[row]);
            } else {
                return "?";
            }
        },
        v);
}

std::string unit_suffix(const schema::FieldSpec* spec) {
    if (spec == nullptr) return "";
    switch (spec->unit) {
        case schema::Unit::Momentum: return "[GeV]";
        case schema::Unit::Length: return "[mm]";
        case schema::Unit::None: break;
    }
    return "";
}

void write_message(std::ostream& out, const DecodedMessage& message,
                   const schema::SchemaTable& table, const std::string& indent) {
    const schema::MessageSpec* spec = table.find(message.type_name);
    std::vector<const DecodedField*> columns;
    std::vector<std::string> empty_columns;
    for (const auto& f : message.fields) {
        const auto len = column_length(f.value);
        if (len == 0) {
            empty_columns.push_back(f.name);
            continue;
        }
        if (len != static_cast<std::size_t>(-1)) {
            columns.push_back(&f);
            continue;
        }
        out << indent << f.name << ":";
        if (!std::holds_alternative<DecodedMessage>(f.value)) out << ' ';
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, DecodedMessage>) {
                    out << "\n";
                    write_message(out, v, table, indent + "  ");
                } else if constexpr (std::is_same_v<T, Bytes>) {
                    out << '"' << std::string(v.begin(), v.end()) << "\"\n";
                } else if constexpr (std::is_same_v<T, double>) {
                    out << format_real(v) << "\n";
                } else if constexpr (std::is_same_v<T, std::uint64_t> ||
                                     std::is_same_v<T, std::int64_t>) {
                    out << v << "\n";
                }
            },
            f.value);
    }
    if (!columns.empty()) {
        std::size_t rows = 0;
        for (const auto* c : columns) rows = std::max(rows, column_length(c->value));
        out << indent << "rows: " << rows << "\n";
        std::vector<std::vector<std::string>> grid;
        std::vector<std::string> header{"#"};
        for (const auto* c : columns) {
            header.push_back(c->name + unit_suffix(spec ? spec->find(c->number) : nullptr));
        }
        grid.push_back(header);
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<std::string> line{std::to_string(r)};
            for (const auto* c : columns) {
                line.push_back(r < column_length(c->value) ? cell(c->value, r) : "");
            }
            grid.push_back(std::move(line));
        }
        std::vector<std::size_t> width(header.size(), 0);
        for (const auto& line : grid) {
            for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
        }
        for (const auto& line : grid) {
            out << indent;
            for (std::size_t i = 0; i < line.size(); ++i) {
                out << std::string(width[i] - line[i].size(), ' ') << line[i]
                    << (i + 1 < line.size() ? "  " : "\n");
            }
        }
    }
    if (!empty_columns.empty()) {
        out << indent << "empty:";
        for (const auto& name : empty_columns) out << ' ' << name;
        out << "\n";
    }
}

}  // namespace

void write_text(std::ostream& out, const DecodedMessage& message, const schema::SchemaTable& table) {
    write_message(out, message, table, "");
}

}  // namespace provent::cli
