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

#include "provent/hepmc.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "provent/error.hpp"

namespace provent::hepmc {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        const std::size_t begin = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos > begin) out.push_back(line.substr(begin, pos - begin));
    }
    return out;
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line) + ": " + what);
}

class Fields {
public:
    Fields(std::vector<std::string_view> tokens, std::size_t line)
        : tokens_(std::move(tokens)), line_(line) {}

    std::size_t size() const { return tokens_.size(); }

    void require(std::size_t n, const char* record) const {
        if (tokens_.size() < n) {
            malformed(line_, std::string(record) + " line has " + std::to_string(tokens_.size()) +
                                 " fields, expected at least " + std::to_string(n));
        }
    }

    std::int64_t integer(std::size_t i, const char* what) const {
        const auto tok = at(i, what);
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            malformed(line_, std::string("bad ") + what + " '" + std::string(tok) + "'");
        }
        return v;
    }

    std::size_t count(std::size_t i, const char* what) const {
        const auto v = integer(i, what);
        if (v < 0) {
            malformed(line_, std::string("negative ") + what + " '" + std::string(at(i, what)) + "'");
        }
        return static_cast<std::size_t>(v);
    }

    double real(std::size_t i, const char* what) const {
        const auto tok = at(i, what);
        double v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
            malformed(line_, std::string("bad ") + what + " '" + std::string(tok) + "'");
        }
        return v;
    }

private:
    std::string_view at(std::size_t i, const char* what) const {
        if (i >= tokens_.size()) {
            malformed(line_, std::string("missing ") + what);
        }
        return tokens_[i];
    }

    std::vector<std::string_view> tokens_;
    std::size_t line_;
};

void check_units(const Fields& f, std::string_view line, std::size_t line_no) {
    f.require(3, "U");
    auto upper = [](std::string_view s) {
        std::string u(s);
        std::transform(u.begin(), u.end(), u.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        return u;
    };
    const auto tokens = tokenize(line);
    if (upper(tokens[1]) != "GEV" || upper(tokens[2]) != "MM") {
        throw Error(ErrorCode::UnsupportedUnits,
                    "line " + std::to_string(line_no) + ": units " + std::string(tokens[1]) + " " +
                        std::string(tokens[2]) + ", only GEV MM is supported");
    }
}

AsciiEvent parse_event_line(const std::string& line, std::size_t line_no) {
    const Fields f(tokenize(line), line_no);
    f.require(9, "E");
    AsciiEvent e;
    e.line = line_no;
    e.event_number = f.integer(1, "event number");
    e.process_id = f.integer(6, "signal process id");
    e.declared_vertices = f.count(8, "vertex count");
    // Beams, random states and weights are optional in older dialects.
    std::size_t pos = 11;
    if (f.size() > pos) {
        const std::size_t n_random = f.count(pos, "random state count");
        pos += 1 + n_random;
        if (f.size() > pos) {
            const std::size_t n_weights = f.count(pos, "weight count");
            for (std::size_t i = 0; i < n_weights; ++i) {
                e.weights.push_back(f.real(pos + 1 + i, "weight"));
            }
        }
    }
    return e;
}

}  // namespace

std::optional<AsciiEvent> AsciiReader::next() {
    std::optional<AsciiEvent> event;
    if (pending_) {
        event = parse_event_line(*pending_, pending_line_);
        pending_.reset();
    }

    struct Open {
        std::size_t vertex = 0;
        std::size_t orphans_left = 0;
        std::size_t outgoing_left = 0;
    };
    std::optional<Open> open;

    auto close_vertex = [&]() {
        if (open && (open->orphans_left > 0 || open->outgoing_left > 0)) {
            const auto& v = event->vertices[open->vertex];
            malformed(v.line, "vertex " + std::to_string(v.barcode) + " is missing " +
                                  std::to_string(open->orphans_left + open->outgoing_left) +
                                  " particle lines");
        }
        open.reset();
    };

    std::string line;
    while (std::getline(*in_, line)) {
        ++line_no_;
        if (line.size() < 1 || (line.size() > 1 && !std::isspace(static_cast<unsigned char>(line[1])))) {
            continue;  // banners such as "HepMC::Version" and blank lines
        }
        const char kind = line[0];
        if (kind == 'E') {
            if (event) {
                pending_ = line;
                pending_line_ = line_no_;
                close_vertex();
                finish_event(*event);
                return event;
            }
            event = parse_event_line(line, line_no_);
            continue;
        }
        if (kind != 'U' && kind != 'V' && kind != 'P') {
            continue;
        }
        const Fields f(tokenize(line), line_no_);
        if (kind == 'U') {
            check_units(f, line, line_no_);
            continue;
        }
        if (!event) {
            malformed(line_no_, std::string(1, kind) + " line before any E line");
        }
        if (kind == 'V') {
            close_vertex();
            f.require(10, "V");
            AsciiVertex v;
            v.line = line_no_;
            v.barcode = f.integer(1, "vertex barcode");
            v.x = f.real(3, "x");
            v.y = f.real(4, "y");
            v.z = f.real(5, "z");
            v.t = f.real(6, "ct");
            const std::size_t orphans = f.count(7, "orphan count");
            const std::size_t outgoing = f.count(8, "outgoing count");
            event->vertices.push_back(v);
            open = Open{event->vertices.size() - 1, orphans, outgoing};
            continue;
        }
        // P line
        f.require(12, "P");
        if (!open || (open->orphans_left == 0 && open->outgoing_left == 0)) {
            malformed(line_no_, "particle line not claimed by a preceding vertex");
        }
        AsciiParticle p;
        p.line = line_no_;
        p.barcode = f.integer(1, "particle barcode");
        p.pdg_id = f.integer(2, "pdg id");
        p.px = f.real(3, "px");
        p.py = f.real(4, "py");
        p.pz = f.real(5, "pz");
        p.energy = f.real(6, "energy");
        p.mass = f.real(7, "mass");
        p.status = f.integer(8, "status");
        p.end_vertex = f.integer(11, "end vertex barcode");
        if (open->orphans_left > 0) {
            --open->orphans_left;
        } else {
            --open->outgoing_left;
            p.production_vertex = open->vertex;
        }
        event->particles.push_back(p);
    }
    if (in_->bad()) {
        throw Error(ErrorCode::Io, "read failed near line " + std::to_string(line_no_));
    }
    if (event) {
        close_vertex();
        finish_event(*event);
    }
    return event;
}

void AsciiReader::finish_event(AsciiEvent& event) const {
    if (event.vertices.size() != event.declared_vertices) {
        malformed(event.line, "event declares " + std::to_string(event.declared_vertices) +
                                  " vertices, found " + std::to_string(event.vertices.size()));
    }
    std::unordered_map<std::int64_t, std::size_t> vertex_by_barcode;
    for (std::size_t i = 0; i < event.vertices.size(); ++i) {
        if (!vertex_by_barcode.emplace(event.vertices[i].barcode, i).second) {
            malformed(event.vertices[i].line,
                      "duplicate vertex barcode " + std::to_string(event.vertices[i].barcode));
        }
    }
    std::unordered_map<std::int64_t, std::size_t> particle_by_barcode;
    for (const auto& p : event.particles) {
        if (!particle_by_barcode.emplace(p.barcode, p.line).second) {
            malformed(p.line, "duplicate particle barcode " + std::to_string(p.barcode));
        }
        if (p.end_vertex != 0 && !vertex_by_barcode.contains(p.end_vertex)) {
            throw Error(ErrorCode::DanglingReference,
                        "line " + std::to_string(p.line) + ": particle " +
                            std::to_string(p.barcode) + " ends at unknown vertex " +
                            std::to_string(p.end_vertex));
        }
    }
}

std::vector<AsciiEvent> parse_ascii(std::istream& in) {
    std::vector<AsciiEvent> events;
    AsciiReader reader(in);
    while (auto e = reader.next()) {
        events.push_back(std::move(*e));
    }
    return events;
}

void ConversionReport::add(const ConversionReport& other) {
    events += other.events;
    particles += other.particles;
    truncated_mothers += other.truncated_mothers;
    truncated_daughters += other.truncated_daughters;
}

std::ostream& operator<<(std::ostream& out, const ConversionReport& r) {
    return out << "events: " << r.events << "\n"
               << "particles: " << r.particles << "\n"
               << "vertices with >2 mothers (truncated to 2): " << r.truncated_mothers << "\n"
               << "vertices with >2 daughters (truncated to 2): " << r.truncated_daughters << "\n"
               << "kept: barcode pdg_id status px py pz mass, production vertex x y z ct, "
                  "2 mothers, 2 daughters; dropped: energy, flow, polarization, weights beyond "
                  "the first\n";
}

EventRecord to_event_record(const AsciiEvent& a, const QuantizationScheme& scheme,
                            ConversionReport* report) {
    const std::size_t n = a.particles.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return a.particles[l].barcode < a.particles[r].barcode;
    });
    std::vector<std::size_t> position(n);  // source index -> output index
    for (std::size_t i = 0; i < n; ++i) {
        position[order[i]] = i;
    }

    std::unordered_map<std::int64_t, std::size_t> vertex_by_barcode;
    for (std::size_t v = 0; v < a.vertices.size(); ++v) {
        vertex_by_barcode.emplace(a.vertices[v].barcode, v);
    }
    // Both lists end up in barcode order because `order` is walked in order.
    std::vector<std::vector<std::size_t>> incoming(a.vertices.size());
    std::vector<std::vector<std::size_t>> outgoing(a.vertices.size());
    for (std::size_t i : order) {
        const auto& p = a.particles[i];
        if (p.end_vertex != 0) {
            const auto it = vertex_by_barcode.find(p.end_vertex);
            if (it == vertex_by_barcode.end()) {
                throw Error(ErrorCode::DanglingReference,
                            "particle " + std::to_string(p.barcode) + " ends at unknown vertex " +
                                std::to_string(p.end_vertex));
            }
            incoming[it->second].push_back(position[i]);
        }
        if (p.production_vertex != kNoVertex) {
            outgoing[p.production_vertex].push_back(position[i]);
        }
    }

    EventRecord e;
    e.event_number = a.event_number < 0 ? 0 : static_cast<std::uint64_t>(a.event_number);
    e.process_id = a.process_id;
    e.weight = a.weights.empty() ? 1.0 : a.weights.front();
    auto& out = e.particles;
    out.reserve(n);
    const auto mu = scheme.momentum_unit;
    const auto lu = scheme.length_unit;
    for (std::size_t i : order) {
        const auto& p = a.particles[i];
        out.pdg_id.push_back(p.pdg_id);
        out.status.push_back(static_cast<std::uint64_t>(p.status < 0 ? 0 : p.status));
        out.px.push_back(quant::quantize(p.px, mu));
        out.py.push_back(quant::quantize(p.py, mu));
        out.pz.push_back(quant::quantize(p.pz, mu));
        out.mass.push_back(quant::quantize(p.mass, mu));
        out.barcode.push_back(p.barcode);

        const std::vector<std::size_t> none;
        const auto& mothers = p.production_vertex == kNoVertex ? none : incoming[p.production_vertex];
        out.mother1.push_back(mothers.size() > 0 ? mothers[0] : kNoLink);
        out.mother2.push_back(mothers.size() > 1 ? mothers[1] : kNoLink);
        const auto& daughters =
            p.end_vertex == 0 ? none : outgoing[vertex_by_barcode.at(p.end_vertex)];
        out.daughter1.push_back(daughters.size() > 0 ? daughters[0] : kNoLink);
        out.daughter2.push_back(daughters.size() > 1 ? daughters[1] : kNoLink);

        if (p.production_vertex == kNoVertex) {
            out.x.push_back(0);
            out.y.push_back(0);
            out.z.push_back(0);
            out.t.push_back(0);
        } else {
            const auto& v = a.vertices[p.production_vertex];
            out.x.push_back(quant::quantize(v.x, lu));
            out.y.push_back(quant::quantize(v.y, lu));
            out.z.push_back(quant::quantize(v.z, lu));
            out.t.push_back(quant::quantize(v.t, lu));
        }
    }

    if (report != nullptr) {
        ConversionReport r;
        r.events = 1;
        r.particles = n;
        for (std::size_t v = 0; v < a.vertices.size(); ++v) {
            if (incoming[v].size() > 2 && !outgoing[v].empty()) ++r.truncated_mothers;
            if (outgoing[v].size() > 2 && !incoming[v].empty()) ++r.truncated_daughters;
        }
        report->add(r);
    }
    return e;
}

void write_ascii_begin(std::ostream& out) {
    out << "HepMC::Version 2.06.09\n"
        << "HepMC::IO_GenEvent-START_EVENT_LISTING\n";
}

void write_ascii_end(std::ostream& out) {
    out << "HepMC::IO_GenEvent-END_EVENT_LISTING\n";
}

void write_ascii_event(std::ostream& out, const EventRecord& e, const QuantizationScheme& scheme) {
    char buf[512];
    const auto& p = e.particles;
    const std::size_t n = p.size();
    std::snprintf(buf, sizeof buf,
                  "E %llu -1 -1.0000000000000000e+00 -1.0000000000000000e+00 "
                  "-1.0000000000000000e+00 %lld -1 1 0 0 0 1 %.16e\n",
                  static_cast<unsigned long long>(e.event_number),
                  static_cast<long long>(e.process_id), e.weight);
    out << buf << "U GEV MM\n";
    out << "V -1 0 0 0 0 0 0 " << n << " 0\n";
    const auto mu = scheme.momentum_unit;
    for (std::size_t i = 0; i < n; ++i) {
        const double px = quant::dequantize(p.px[i], mu);
        const double py = quant::dequantize(p.py[i], mu);
        const double pz = quant::dequantize(p.pz[i], mu);
        const double m = quant::dequantize(p.mass[i], mu);
        const double energy = std::sqrt(px * px + py * py + pz * pz + m * m);
        const long long barcode =
            p.barcode.empty() ? static_cast<long long>(i + 1) : static_cast<long long>(p.barcode[i]);
        std::snprintf(buf, sizeof buf, "P %lld %lld %.16e %.16e %.16e %.16e %.16e %llu 0 0 0 0\n",
                      barcode, static_cast<long long>(p.pdg_id[i]), px, py, pz, energy, m,
                      static_cast<unsigned long long>(p.status[i]));
        out << buf;
    }
}

}  // namespace provent::hepmc
