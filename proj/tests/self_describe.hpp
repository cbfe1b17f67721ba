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

#include <sstream>
#include <string>
#include <variant>

#include "provent/model.hpp"
#include "provent/quant.hpp"
#include "provent/schema.hpp"

namespace provent::testing {

namespace detail {

inline std::uint64_t wire_link(std::uint64_t link) { return link == kNoLink ? 0 : link + 1; }

template <typename T>
bool field_is(const schema::DecodedMessage& m, std::string_view name, const T& expected, std::string& why) {
    const auto* f = m.find(name);
    if (!f) {
        why = "missing " + std::string(name);
        return false;
    }
    const auto* v = std::get_if<T>(&f->value);
    if (!v) {
        why = "wrong value type for " + std::string(name);
        return false;
    }
    if (!(*v == expected)) {
        why = "value differs for " + std::string(name);
        return false;
    }
    return true;
}

inline std::vector<double> dequantized(const std::vector<std::int64_t>& column, std::uint64_t unit) {
    std::vector<double> out;
    for (auto q : column) out.push_back(quant::dequantize(q, unit));
    return out;
}

}  // namespace detail

/// Compares a with_defaults() tree of an EventRecord against the typed decode.
/// Links compare in wire form (1-based, 0 = none). Returns an empty string on
/// agreement, else the first difference.
inline std::string compare_generic_typed(const schema::DecodedMessage& generic, const EventRecord& typed,
                                         const QuantizationScheme& scheme) {
    using detail::field_is;
    std::string why;
    if (!field_is(generic, "event_number", typed.event_number, why)) return why;
    if (!field_is(generic, "process_id", typed.process_id, why)) return why;
    if (!field_is(generic, "weight", typed.weight, why)) return why;
    const auto* pf = generic.find("particles");
    if (!pf || !std::holds_alternative<schema::DecodedMessage>(pf->value)) return "missing particles";
    const auto& g = std::get<schema::DecodedMessage>(pf->value);
    const auto& p = typed.particles;
    const auto mu = scheme.momentum_unit;
    const auto lu = scheme.length_unit;
    auto links = [](const std::vector<std::uint64_t>& c) {
        std::vector<std::uint64_t> out;
        for (auto v : c) out.push_back(detail::wire_link(v));
        return out;
    };
    if (!field_is(g, "pdg_id", p.pdg_id, why)) return why;
    if (!field_is(g, "status", p.status, why)) return why;
    if (!field_is(g, "px", detail::dequantized(p.px, mu), why)) return why;
    if (!field_is(g, "py", detail::dequantized(p.py, mu), why)) return why;
    if (!field_is(g, "pz", detail::dequantized(p.pz, mu), why)) return why;
    if (!field_is(g, "mass", detail::dequantized(p.mass, mu), why)) return why;
    if (!field_is(g, "mother1", links(p.mother1), why)) return why;
    if (!field_is(g, "mother2", links(p.mother2), why)) return why;
    if (!field_is(g, "daughter1", links(p.daughter1), why)) return why;
    if (!field_is(g, "daughter2", links(p.daughter2), why)) return why;
    if (!field_is(g, "barcode", p.barcode, why)) return why;
    if (!field_is(g, "x", detail::dequantized(p.x, lu), why)) return why;
    if (!field_is(g, "y", detail::dequantized(p.y, lu), why)) return why;
    if (!field_is(g, "z", detail::dequantized(p.z, lu), why)) return why;
    if (!field_is(g, "t", detail::dequantized(p.t, lu), why)) return why;
    if (g.fields.size() != 15) return "unexpected particle field count";
    if (generic.fields.size() != 4) return "unexpected event field count";
    return {};
}

}  // namespace provent::testing
