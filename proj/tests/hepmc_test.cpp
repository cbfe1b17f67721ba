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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "provent/error.hpp"
#include "provent/generator.hpp"
#include "provent/hepmc.hpp"
#include "provent/quant.hpp"
#include "test_support.hpp"

using namespace provent;
using namespace provent::hepmc;
using namespace provent::testing;

namespace {

std::vector<AsciiEvent> parse_file(const std::string& name) {
    std::ifstream in(fixture(name));
    REQUIRE(in);
    return parse_ascii(in);
}

std::vector<AsciiEvent> parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_ascii(in);
}

template <typename F>
Error error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an error");
    return Error(ErrorCode::Io, "unreachable");
}

using Links = std::vector<std::uint64_t>;

}  // namespace

TEST_CASE("empty input") {
    CHECK(parse_text("").empty());
    CHECK(parse_text("HepMC::Version 2.06.09\nHepMC::IO_GenEvent-START_EVENT_LISTING\n"
                     "HepMC::IO_GenEvent-END_EVENT_LISTING\n")
              .empty());
}

TEST_CASE("single event fixture") {
    const auto events = parse_file("single_event.hepmc");
    REQUIRE(events.size() == 1);
    const auto& a = events[0];
    CHECK(a.event_number == 1);
    CHECK(a.process_id == 20);
    CHECK(a.weights == std::vector<double>{1.0});
    REQUIRE(a.vertices.size() == 1);
    CHECK(a.vertices[0].barcode == -1);
    CHECK(a.vertices[0].z == 3.5);
    REQUIRE(a.particles.size() == 2);
    CHECK(a.particles[0].pdg_id == 211);
    CHECK(a.particles[0].px == 1.25);
    CHECK(a.particles[1].pdg_id == -211);
    CHECK(a.particles[1].production_vertex == 0);

    ConversionReport report;
    const QuantizationScheme scheme;
    const auto e = to_event_record(a, scheme, &report);
    CHECK(e.event_number == 1);
    CHECK(e.process_id == 20);
    CHECK(e.weight == 1.0);
    const auto& p = e.particles;
    CHECK(p.pdg_id == std::vector<std::int64_t>{211, -211});
    CHECK(p.status == std::vector<std::uint64_t>{1, 1});
    // hand-computed at 100000 steps per GeV and 1000 per mm
    CHECK(p.px == std::vector<std::int64_t>{125000, -125000});
    CHECK(p.py == std::vector<std::int64_t>{-50000, 50000});
    CHECK(p.pz == std::vector<std::int64_t>{1000000, -700000});
    CHECK(p.mass == std::vector<std::int64_t>{13957, 13957});
    CHECK(p.barcode == std::vector<std::int64_t>{1, 2});
    CHECK(p.x == std::vector<std::int64_t>{100, 100});
    CHECK(p.y == std::vector<std::int64_t>{-200, -200});
    CHECK(p.z == std::vector<std::int64_t>{3500, 3500});
    CHECK(p.t == std::vector<std::int64_t>{0, 0});
    // stable particles without a mother
    CHECK(p.mother1 == Links{kNoLink, kNoLink});
    CHECK(p.daughter1 == Links{kNoLink, kNoLink});
    CHECK(p.daughter2 == Links{kNoLink, kNoLink});
    CHECK_NOTHROW(p.validate());
    CHECK(report.events == 1);
    CHECK(report.particles == 2);
    CHECK(report.truncated_mothers == 0);
    CHECK(report.truncated_daughters == 0);
}

TEST_CASE("three mother fixture") {
    const auto events = parse_file("three_mothers.hepmc");
    REQUIRE(events.size() == 2);
    ConversionReport report;
    const QuantizationScheme scheme;
    const auto e = to_event_record(events[0], scheme, &report);
    const auto e2 = to_event_record(events[1], scheme, &report);
    CHECK(report.events == 2);
    CHECK(report.particles == 12);
    CHECK(report.truncated_mothers == 1);
    CHECK(report.truncated_daughters == 1);

    CHECK(e.event_number == 7);
    CHECK(e.process_id == 11);
    CHECK(e.weight == 2.5);
    const auto& p = e.particles;
    // listed 3 1 2 4 5 6 8 7, stored by barcode
    CHECK(p.barcode == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(p.pdg_id == std::vector<std::int64_t>{21, -1, 2, 22, 23, 11, 22, -11});
    CHECK(p.mother1 == Links{kNoLink, kNoLink, kNoLink, 0, 0, 4, 4, 4});
    CHECK(p.mother2 == Links{kNoLink, kNoLink, kNoLink, 1, 1, kNoLink, kNoLink, kNoLink});
    CHECK(p.daughter1 == Links{3, 3, 3, kNoLink, 5, kNoLink, kNoLink, kNoLink});
    CHECK(p.daughter2 == Links{4, 4, 4, kNoLink, 6, kNoLink, kNoLink, kNoLink});
    CHECK(p.status == std::vector<std::uint64_t>{3, 3, 3, 1, 2, 1, 1, 1});
    CHECK(p.x == std::vector<std::int64_t>{0, 0, 0, 0, 0, 12, 12, 12});
    CHECK(p.y == std::vector<std::int64_t>{0, 0, 0, 0, 0, -4, -4, -4});
    CHECK(p.z == std::vector<std::int64_t>{0, 0, 0, 0, 0, 1500, 1500, 1500});
    CHECK(p.t == std::vector<std::int64_t>{0, 0, 0, 0, 0, 50, 50, 50});
    CHECK(p.mass[4] == 9118760);
    CHECK_NOTHROW(p.validate());

    const auto& q = e2.particles;
    CHECK(q.mother1 == Links{kNoLink, kNoLink, 0, 0});
    CHECK(q.mother2 == Links{kNoLink, kNoLink, 1, 1});
    CHECK(q.daughter1 == Links{2, 2, kNoLink, kNoLink});
    CHECK(q.daughter2 == Links{3, 3, kNoLink, kNoLink});

    std::ostringstream text;
    text << report;
    CHECK(text.str().find("vertices with >2 mothers (truncated to 2): 1") != std::string::npos);
}

TEST_CASE("momenta within the reconstruction bound") {
    for (const char* name : {"single_event.hepmc", "three_mothers.hepmc"}) {
        for (std::uint64_t unit : {100000ULL, 1000ULL, 7ULL}) {
            QuantizationScheme scheme;
            scheme.momentum_unit = unit;
            for (const auto& a : parse_file(name)) {
                const auto e = to_event_record(a, scheme);
                auto sorted = a.particles;
                std::stable_sort(sorted.begin(), sorted.end(),
                                 [](const auto& l, const auto& r) { return l.barcode < r.barcode; });
                for (std::size_t i = 0; i < sorted.size(); ++i) {
                    const double bound = 0.5 / static_cast<double>(unit) + 1e-12;
                    CHECK(std::abs(quant::dequantize(e.particles.px[i], unit) - sorted[i].px) <= bound);
                    CHECK(std::abs(quant::dequantize(e.particles.py[i], unit) - sorted[i].py) <= bound);
                    CHECK(std::abs(quant::dequantize(e.particles.pz[i], unit) - sorted[i].pz) <= bound);
                    CHECK(std::abs(quant::dequantize(e.particles.mass[i], unit) - sorted[i].mass) <= bound);
                    CHECK(e.particles.pdg_id[i] == sorted[i].pdg_id);
                }
            }
        }
    }
}

TEST_CASE("malformed line") {
    const auto e = error_of([] { parse_file("malformed.hepmc"); });
    CHECK(e.code() == ErrorCode::MalformedLine);
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    CHECK(std::string(e.what()).find("abc") != std::string::npos);

    const std::string head = "E 1 -1 -1.0 -1.0 -1.0 20 -1 1 0 0 0 1 1.0\n";
    for (const std::string& bad : {
             head + "V -1 0 0 0 0 0 0 1 0\nP 1 211 1 2 3\n",                 // short P line
             head + "V -1 0 0 0 0 0 0 2 0\nP 1 211 1 2 3 4 5 1 0 0 0 0\n",   // missing particle
             head + "P 1 211 1 2 3 4 5 1 0 0 0 0\n",                         // no vertex
             std::string("V -1 0 0 0 0 0 0 0 0\n"),                          // before E
             head + "V -1 0 0 0 0 0 0 0 0\nV -1 0 0 0 0 0 0 0 0\n",          // vertex count
             head + "V -1 0 0 0 0 0 0 2 0\nP 1 211 1 2 3 4 5 1 0 0 0 0\nP 1 211 1 2 3 4 5 1 0 0 0 0\n",
             std::string("E x -1 -1.0 -1.0 -1.0 20 -1 0 0 0 0 0\n"),
         }) {
        CAPTURE(bad);
        CHECK(error_of([&] { parse_text(bad); }).code() == ErrorCode::MalformedLine);
    }
}

TEST_CASE("dangling vertex reference") {
    const auto e = error_of([] { parse_file("dangling.hepmc"); });
    CHECK(e.code() == ErrorCode::DanglingReference);
    CHECK(std::string(e.what()).find("-9") != std::string::npos);
}

TEST_CASE("units other than GEV MM are rejected") {
    CHECK(error_of([] { parse_file("mev_units.hepmc"); }).code() == ErrorCode::UnsupportedUnits);
}

TEST_CASE("reader is incremental") {
    std::ifstream in(fixture("three_mothers.hepmc"));
    AsciiReader reader(in);
    auto first = reader.next();
    REQUIRE(first);
    CHECK(first->event_number == 7);
    auto second = reader.next();
    REQUIRE(second);
    CHECK(second->event_number == 8);
    CHECK_FALSE(reader.next());
    CHECK_FALSE(reader.next());
}

TEST_CASE("flat writer output parses back") {
    SpectrumConfig cfg;
    cfg.n_events = 20;
    cfg.pileup_mean = 30;
    cfg.seed = 12;
    const QuantizationScheme scheme;
    std::vector<EventRecord> events;
    EventGenerator gen(cfg, scheme);
    while (auto e = gen.next()) events.push_back(*e);

    std::ostringstream text;
    write_ascii_begin(text);
    for (const auto& e : events) write_ascii_event(text, e, scheme);
    write_ascii_end(text);

    const auto parsed = parse_text(text.str());
    REQUIRE(parsed.size() == events.size());
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto back = to_event_record(parsed[k], scheme);
        const auto& p = events[k].particles;
        const auto& q = back.particles;
        CHECK(back.event_number == events[k].event_number);
        CHECK(back.process_id == events[k].process_id);
        CHECK(q.pdg_id == p.pdg_id);
        CHECK(q.status == p.status);
        // %.16e keeps every quantized value exact
        CHECK(q.px == p.px);
        CHECK(q.py == p.py);
        CHECK(q.pz == p.pz);
        CHECK(q.mass == p.mass);
    }
}
