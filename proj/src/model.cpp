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

#include "provent/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "provent/error.hpp"

namespace provent {

using wire::FieldReader;
using wire::WireType;

namespace {

template <typename Fn>
void for_each_column(const ParticleBlock& p, Fn&& fn) {
    fn("pdg_id", p.pdg_id.size(), false);
    fn("status", p.status.size(), false);
    fn("px", p.px.size(), false);
    fn("py", p.py.size(), false);
    fn("pz", p.pz.size(), false);
    fn("mass", p.mass.size(), false);
    fn("mother1", p.mother1.size(), false);
    fn("mother2", p.mother2.size(), false);
    fn("daughter1", p.daughter1.size(), false);
    fn("daughter2", p.daughter2.size(), false);
    fn("barcode", p.barcode.size(), true);
    fn("x", p.x.size(), true);
    fn("y", p.y.size(), true);
    fn("z", p.z.size(), true);
    fn("t", p.t.size(), true);
}

void check_links(const std::vector<std::uint64_t>& links, std::size_t n, const char* name) {
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (links[i] != kNoLink && links[i] >= n) {
            throw Error(ErrorCode::InvariantViolation,
                        std::string(name) + "[" + std::to_string(i) + "] = " +
                            std::to_string(links[i]) + " is not a particle index");
        }
    }
}

// Links go on the wire 1-based with 0 for "none".
void write_links(Bytes& out, std::uint32_t number, const std::vector<std::uint64_t>& links) {
    std::vector<std::uint64_t> shifted(links.size());
    std::transform(links.begin(), links.end(), shifted.begin(),
                   [](std::uint64_t v) { return v == kNoLink ? 0 : v + 1; });
    wire::write_packed_varints(out, number, shifted);
}

std::vector<std::uint64_t> read_links(ByteView payload) {
    auto links = wire::read_packed_varints(payload);
    for (auto& v : links) {
        v = v == 0 ? kNoLink : v - 1;
    }
    return links;
}

template <typename T>
void append_column(std::vector<T>& dst, std::vector<T>&& src) {
    if (dst.empty()) {
        dst = std::move(src);
    } else {
        dst.insert(dst.end(), src.begin(), src.end());
    }
}

}  // namespace

std::size_t ParticleBlock::size() const noexcept {
    std::size_t n = 0;
    for_each_column(*this, [&](const char*, std::size_t len, bool) { n = std::max(n, len); });
    return n;
}

void ParticleBlock::validate() const {
    const std::size_t n = size();
    for_each_column(*this, [&](const char* name, std::size_t len, bool optional) {
        if (len != n && !(optional && len == 0)) {
            throw Error(ErrorCode::InvariantViolation,
                        std::string("column ") + name + " has " + std::to_string(len) +
                            " entries, expected " + std::to_string(n));
        }
    });
    check_links(mother1, n, "mother1");
    check_links(mother2, n, "mother2");
    check_links(daughter1, n, "daughter1");
    check_links(daughter2, n, "daughter2");
}

void ParticleBlock::reserve(std::size_t n) {
    pdg_id.reserve(n);
    status.reserve(n);
    px.reserve(n);
    py.reserve(n);
    pz.reserve(n);
    mass.reserve(n);
    mother1.reserve(n);
    mother2.reserve(n);
    daughter1.reserve(n);
    daughter2.reserve(n);
}

std::uint64_t max_transverse_momentum(const ParticleBlock& particles) {
    double best = 0.0;
    const std::size_t n = std::min(particles.px.size(), particles.py.size());
    for (std::size_t i = 0; i < n; ++i) {
        best = std::max(best, std::hypot(static_cast<double>(particles.px[i]),
                                         static_cast<double>(particles.py[i])));
    }
    return static_cast<std::uint64_t>(std::llround(best));
}

Bytes encode_particles(const ParticleBlock& p) {
    p.validate();
    Bytes out;
    out.reserve(p.size() * 24);
    wire::write_packed_zigzag(out, field::kPdgId, p.pdg_id);
    wire::write_packed_varints(out, field::kStatus, p.status);
    wire::write_packed_zigzag(out, field::kPx, p.px);
    wire::write_packed_zigzag(out, field::kPy, p.py);
    wire::write_packed_zigzag(out, field::kPz, p.pz);
    wire::write_packed_zigzag(out, field::kMass, p.mass);
    write_links(out, field::kMother1, p.mother1);
    write_links(out, field::kMother2, p.mother2);
    write_links(out, field::kDaughter1, p.daughter1);
    write_links(out, field::kDaughter2, p.daughter2);
    wire::write_packed_zigzag(out, field::kBarcode, p.barcode);
    wire::write_packed_zigzag(out, field::kX, p.x);
    wire::write_packed_zigzag(out, field::kY, p.y);
    wire::write_packed_zigzag(out, field::kZ, p.z);
    wire::write_packed_zigzag(out, field::kT, p.t);
    return out;
}

ParticleBlock decode_particles(ByteView bytes) {
    ParticleBlock p;
    FieldReader reader(bytes);
    while (auto f = reader.next()) {
        const auto number = f->tag.field_number;
        if (number < field::kPdgId || number > field::kT) {
            continue;
        }
        // Repeated numerics are only accepted in packed form.
        wire::expect_wire_type(*f, WireType::LengthDelimited);
        switch (number) {
            case field::kPdgId: append_column(p.pdg_id, wire::read_packed_zigzag(f->payload)); break;
            case field::kStatus: append_column(p.status, wire::read_packed_varints(f->payload)); break;
            case field::kPx: append_column(p.px, wire::read_packed_zigzag(f->payload)); break;
            case field::kPy: append_column(p.py, wire::read_packed_zigzag(f->payload)); break;
            case field::kPz: append_column(p.pz, wire::read_packed_zigzag(f->payload)); break;
            case field::kMass: append_column(p.mass, wire::read_packed_zigzag(f->payload)); break;
            case field::kMother1: append_column(p.mother1, read_links(f->payload)); break;
            case field::kMother2: append_column(p.mother2, read_links(f->payload)); break;
            case field::kDaughter1: append_column(p.daughter1, read_links(f->payload)); break;
            case field::kDaughter2: append_column(p.daughter2, read_links(f->payload)); break;
            case field::kBarcode: append_column(p.barcode, wire::read_packed_zigzag(f->payload)); break;
            case field::kX: append_column(p.x, wire::read_packed_zigzag(f->payload)); break;
            case field::kY: append_column(p.y, wire::read_packed_zigzag(f->payload)); break;
            case field::kZ: append_column(p.z, wire::read_packed_zigzag(f->payload)); break;
            case field::kT: append_column(p.t, wire::read_packed_zigzag(f->payload)); break;
        }
    }
    p.validate();
    return p;
}

void encode_event(const EventRecord& e, Bytes& out) {
    const Bytes particles = encode_particles(e.particles);
    if (e.event_number != 0) {
        wire::write_field(out, {field::kEventNumber, WireType::Varint}, e.event_number);
    }
    if (e.process_id != 0) {
        wire::write_field(out, {field::kProcessId, WireType::Varint},
                          wire::zigzag_encode(e.process_id));
    }
    if (e.weight != 1.0) {
        wire::write_field(out, {field::kWeight, WireType::Fixed64}, e.weight);
    }
    wire::write_field(out, {field::kParticles, WireType::LengthDelimited}, ByteView(particles));
}

Bytes encode_event(const EventRecord& e) {
    Bytes out;
    encode_event(e, out);
    return out;
}

EventRecord decode_event(ByteView bytes) {
    EventRecord e;
    FieldReader reader(bytes);
    while (auto f = reader.next()) {
        switch (f->tag.field_number) {
            case field::kEventNumber: e.event_number = f->as_varint(); break;
            case field::kProcessId: e.process_id = wire::zigzag_decode(f->as_varint()); break;
            case field::kWeight: e.weight = f->as_fixed64(); break;
            case field::kParticles: {
                wire::expect_wire_type(*f, WireType::LengthDelimited);
                e.particles = decode_particles(f->payload);
                break;
            }
            default: break;
        }
    }
    return e;
}

Bytes encode_descriptor(const FileDescriptor& d) {
    if (d.format_version != kFormatVersion) {
        throw Error(ErrorCode::UnsupportedVersion,
                    "format version " + std::to_string(d.format_version));
    }
    quant::validate(d.scheme);
    Bytes out;
    wire::write_field(out, {field::kFormatVersionField, WireType::Varint},
                      std::uint64_t{d.format_version});
    if (!d.description.empty()) {
        wire::write_field(out, {field::kDescription, WireType::LengthDelimited},
                          as_bytes(d.description));
    }
    const std::uint64_t units[] = {d.scheme.momentum_unit, d.scheme.length_unit};
    wire::write_packed_varints(out, field::kScheme, units);
    if (d.requested_events != 0) {
        wire::write_field(out, {field::kRequestedEvents, WireType::Varint}, d.requested_events);
    }
    if (!d.schema_text.empty()) {
        wire::write_field(out, {field::kSchemaText, WireType::LengthDelimited},
                          as_bytes(d.schema_text));
    }
    return out;
}

FileDescriptor decode_descriptor(ByteView bytes) {
    FileDescriptor d;
    d.format_version = 0;
    bool have_scheme = false;
    FieldReader reader(bytes);
    while (auto f = reader.next()) {
        switch (f->tag.field_number) {
            case field::kFormatVersionField:
                d.format_version = static_cast<std::uint32_t>(f->as_varint());
                break;
            case field::kDescription:
                wire::expect_wire_type(*f, WireType::LengthDelimited);
                d.description.assign(f->payload.begin(), f->payload.end());
                break;
            case field::kScheme: {
                wire::expect_wire_type(*f, WireType::LengthDelimited);
                const auto units = wire::read_packed_varints(f->payload);
                if (units.size() != 2) {
                    throw Error(ErrorCode::InvariantViolation,
                                "scheme carries " + std::to_string(units.size()) +
                                    " units, expected 2");
                }
                d.scheme = {units[0], units[1]};
                have_scheme = true;
                break;
            }
            case field::kRequestedEvents: d.requested_events = f->as_varint(); break;
            case field::kSchemaText:
                wire::expect_wire_type(*f, WireType::LengthDelimited);
                d.schema_text.assign(f->payload.begin(), f->payload.end());
                break;
            default: break;
        }
    }
    if (d.format_version != kFormatVersion) {
        throw Error(ErrorCode::UnsupportedVersion,
                    "format version " + std::to_string(d.format_version));
    }
    if (!have_scheme) {
        throw Error(ErrorCode::InvariantViolation, "descriptor has no quantization scheme");
    }
    quant::validate(d.scheme);
    return d;
}

Bytes encode_statistics(const FileStatistics& s) {
    Bytes out;
    if (s.actual_events != 0) {
        wire::write_field(out, {field::kActualEvents, WireType::Varint}, s.actual_events);
    }
    if (s.total_particles != 0) {
        wire::write_field(out, {field::kTotalParticles, WireType::Varint}, s.total_particles);
    }
    return out;
}

FileStatistics decode_statistics(ByteView bytes) {
    FileStatistics s;
    FieldReader reader(bytes);
    while (auto f = reader.next()) {
        switch (f->tag.field_number) {
            case field::kActualEvents: s.actual_events = f->as_varint(); break;
            case field::kTotalParticles: s.total_particles = f->as_varint(); break;
            default: break;
        }
    }
    return s;
}

Bytes encode_index(const EventIndex& index) {
    if (index.particle_count.size() != index.max_pt.size()) {
        throw Error(ErrorCode::InvariantViolation, "index columns differ in length");
    }
    Bytes out;
    wire::write_packed_varints(out, field::kParticleCount, index.particle_count);
    wire::write_packed_varints(out, field::kMaxPt, index.max_pt);
    return out;
}

EventIndex decode_index(ByteView bytes) {
    EventIndex index;
    FieldReader reader(bytes);
    while (auto f = reader.next()) {
        switch (f->tag.field_number) {
            case field::kParticleCount:
                wire::expect_wire_type(*f, WireType::LengthDelimited);
                append_column(index.particle_count, wire::read_packed_varints(f->payload));
                break;
            case field::kMaxPt:
                wire::expect_wire_type(*f, WireType::LengthDelimited);
                append_column(index.max_pt, wire::read_packed_varints(f->payload));
                break;
            default: break;
        }
    }
    if (index.particle_count.size() != index.max_pt.size()) {
        throw Error(ErrorCode::InvariantViolation, "index columns differ in length");
    }
    return index;
}

}  // namespace provent
