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

// HepMC2 IO_GenEvent ASCII subset. Only E, U, V and P lines carry data;
// banners and every other line type are skipped. Positional layouts:
//
//   E evt mpi scale aQCD aQED proc_id proc_vtx n_vtx beam1 beam2 n_rng [rng..] n_w [w..]
//   U momentum_unit length_unit               (must be GEV MM)
//   V barcode id x y z ct n_orphan_in n_out n_w [w..]
//   P barcode pdg px py pz E m status theta phi end_vtx n_flow [flow..]
//
// The first n_orphan_in P lines after a V line are incoming particles with
// no production vertex; the remaining n_out are produced at that vertex.

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "provent/model.hpp"

namespace provent::hepmc {

inline constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

struct AsciiParticle {
    std::int64_t barcode = 0;
    std::int64_t pdg_id = 0;
    double px = 0, py = 0, pz = 0, energy = 0, mass = 0;
    std::int64_t status = 0;
    std::int64_t end_vertex = 0;  // barcode, 0 = stable
    std::size_t production_vertex = kNoVertex;  // index into AsciiEvent::vertices
    std::size_t line = 0;
};

struct AsciiVertex {
    std::int64_t barcode = 0;
    double x = 0, y = 0, z = 0, t = 0;
    std::size_t line = 0;
};

struct AsciiEvent {
    std::int64_t event_number = 0;
    std::int64_t process_id = 0;
    std::vector<double> weights;
    std::size_t declared_vertices = 0;
    std::vector<AsciiVertex> vertices;
    std::vector<AsciiParticle> particles;
    std::size_t line = 0;
};

/// Pull parser over a text stream. Throws MalformedLine (with the line
/// number and offending token), DanglingReference, UnsupportedUnits.
class AsciiReader {
public:
    explicit AsciiReader(std::istream& in) : in_(&in) {}

    std::optional<AsciiEvent> next();

    std::size_t line_number() const noexcept { return line_no_; }

private:
    void finish_event(AsciiEvent& event) const;

    std::istream* in_;
    std::size_t line_no_ = 0;
    std::optional<std::string> pending_;  // an E line read ahead
    std::size_t pending_line_ = 0;
};

std::vector<AsciiEvent> parse_ascii(std::istream& in);

struct ConversionReport {
    std::uint64_t events = 0;
    std::uint64_t particles = 0;
    std::uint64_t truncated_mothers = 0;    // vertices with more than two incoming particles
    std::uint64_t truncated_daughters = 0;  // vertices with more than two outgoing particles

    void add(const ConversionReport& other);
};

std::ostream& operator<<(std::ostream& out, const ConversionReport& report);

/// Particles ordered by barcode, momenta and production-vertex positions
/// quantized, lineage reduced to the two lowest-barcode mothers/daughters.
/// Orphan particles get a zero position.
EventRecord to_event_record(const AsciiEvent& event, const QuantizationScheme& scheme,
                            ConversionReport* report = nullptr);

/// Flat ASCII rendering (one vertex at the origin holding every particle),
/// used as the text baseline. Lineage is not written.
void write_ascii_begin(std::ostream& out);
void write_ascii_event(std::ostream& out, const EventRecord& event, const QuantizationScheme& scheme);
void write_ascii_end(std::ostream& out);

}  // namespace provent::hepmc
