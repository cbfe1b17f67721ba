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

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "provent/cli.hpp"
#include "provent/error.hpp"
#include "provent/hepmc.hpp"

namespace provent::cli {

namespace {

constexpr std::size_t kMessageSizeGuidance = 1 << 20;

std::string step_text(std::uint64_t unit, double per_base, const char* small_unit) {
    std::ostringstream s;
    s << std::setprecision(6) << per_base / static_cast<double>(unit) << ' ' << small_unit;
    return s.str();
}

int fail_usage(std::ostream& err, const std::string& what) {
    err << "provent: " << what << "\n";
    return kExitUsage;
}

}  // namespace

int cmd_info(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        const Reader reader(open_source(path));
        const auto& d = reader.descriptor();
        const auto stats = reader.statistics();
        std::uint64_t payload = 0;
        for (const auto& e : reader.entries()) payload += e.length;
        const std::uint64_t size = reader.source().length();
        const std::uint64_t overhead = size - payload;

        out << "file: " << path << "\n"
            << "format version: " << d.format_version << "\n"
            << "description: " << d.description << "\n"
            << "momentum unit: " << d.scheme.momentum_unit << " per GeV ("
            << step_text(d.scheme.momentum_unit, 1000.0, "MeV") << " step)\n"
            << "length unit: " << d.scheme.length_unit << " per mm ("
            << step_text(d.scheme.length_unit, 1000.0, "um") << " step)\n"
            << "requested events: " << d.requested_events << "\n"
            << "events: " << reader.event_count() << "\n"
            << "total particles: " << stats.total_particles << "\n"
            << "file size: " << size << " bytes\n"
            << "entries: " << reader.entries().size() << "\n"
            << "payload bytes: " << payload << "\n"
            << "archive overhead: " << overhead << " bytes";
        if (reader.event_count() > 0) {
            out << " (" << std::fixed << std::setprecision(1)
                << static_cast<double>(overhead) / static_cast<double>(reader.entries().size())
                << " per entry)";
            out.unsetf(std::ios::floatfield);
        }
        out << "\n";
        if (stats.total_particles > 0) {
            std::uint64_t event_bytes = 0;
            for (std::uint64_t k = 0; k < reader.event_count(); ++k) {
                event_bytes += reader.event_entry(k).length;
            }
            out << "event payload: " << event_bytes << " bytes (" << std::fixed
                << std::setprecision(2)
                << static_cast<double>(event_bytes) / static_cast<double>(stats.total_particles)
                << " per particle)\n";
            out.unsetf(std::ios::floatfield);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(err, path + ": " + e.what());
    }
}

int cmd_schema(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        const Reader reader(open_source(path));
        if (reader.descriptor().schema_text.empty()) {
            return fail_usage(err, path + ": header carries no schema");
        }
        out << reader.descriptor().schema_text;
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(err, path + ": " + e.what());
    }
}

int cmd_extract(const std::string& src, const std::string& dst, std::uint64_t n,
                std::ostream& out, std::ostream& err) {
    try {
        const Reader reader(open_source(src));
        const std::uint64_t count = std::min(n, reader.event_count());
        Writer writer(std::filesystem::path(dst), reader.descriptor());
        for (std::uint64_t k = 0; k < count; ++k) {
            EventRecord e = reader.read_event(k);
            e.event_number = k;
            writer.append(e);
        }
        const auto summary = writer.close();
        out << "extracted " << summary.events << " of " << reader.event_count() << " events ("
            << summary.particles << " particles) to " << dst << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(err, e.what());
    }
}

int cmd_convert(const std::string& hepmc_path, const std::string& out_path,
                const std::string& description, const QuantizationScheme& scheme,
                std::ostream& out, std::ostream& err) {
    std::ifstream in(hepmc_path);
    if (!in) {
        return fail_usage(err, "cannot open " + hepmc_path);
    }
    hepmc::ConversionReport report;
    WriteSummary summary;
    try {
        FileDescriptor descriptor;
        descriptor.description = description;
        descriptor.scheme = scheme;
        Writer writer(std::filesystem::path(out_path), descriptor);
        hepmc::AsciiReader reader(in);
        while (auto a = reader.next()) {
            EventRecord e = hepmc::to_event_record(*a, scheme, &report);
            e.event_number = writer.event_count();
            writer.append(e);
        }
        summary = writer.close();
    } catch (const std::exception& e) {
        std::error_code ignored;
        std::filesystem::remove(out_path, ignored);
        return fail_usage(err, hepmc_path + ": " + e.what());
    }
    err << report;
    out << "wrote " << summary.events << " events (" << summary.particles << " particles, "
        << summary.bytes << " bytes) to " << out_path << "\n";
    return kExitOk;
}

int cmd_generate(const SpectrumConfig& config, const QuantizationScheme& scheme,
                 const std::string& description, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        FileDescriptor descriptor;
        descriptor.description = description;
        descriptor.scheme = scheme;
        descriptor.requested_events = config.n_events;
        EventGenerator gen(config, scheme);
        Writer writer(std::filesystem::path(out_path), descriptor);
        while (auto e = gen.next()) {
            writer.append(*e);
        }
        const auto summary = writer.close();
        out << "seed: " << config.seed << "\n"
            << "events: " << summary.events << "\n"
            << "particles: " << summary.particles << "\n"
            << "bytes: " << summary.bytes << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(err, e.what());
    }
}

int cmd_sizes(const SpectrumConfig& config, const QuantizationScheme& scheme,
              std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        out << measure_sizes(config, scheme);
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(err, e.what());
    }
}

int cmd_cat(const std::string& path, std::uint64_t ordinal, CatFormat format,
            std::ostream& out, std::ostream& err) {
    try {
        const Reader reader(open_source(path));
        if (ordinal >= reader.event_count()) {
            return fail_usage(err, "event " + std::to_string(ordinal) + " out of range (file has " +
                                       std::to_string(reader.event_count()) + " events)");
        }
        const auto table = schema::parse_schema(reader.descriptor().schema_text);
        const auto event = schema::with_defaults(
            schema::generic_decode(reader.read_event_bytes(ordinal), table, "EventRecord",
                                   reader.scheme()),
            table);
        if (format == CatFormat::Json) {
            out << to_json(event).dump() << "\n";
        } else {
            write_text(out, event, table);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return fail_usage(err, path + ": " + e.what());
    }
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    std::shared_ptr<const ByteSource> source;
    try {
        source = open_source(path);
    } catch (const std::exception& e) {
        return fail_usage(err, e.what());
    }

    std::size_t problems = 0;
    auto fail = [&](const std::string& what) {
        ++problems;
        out << "FAIL " << what << "\n";
    };
    auto pass = [&](const std::string& what) { out << "ok   " << what << "\n"; };

    std::optional<Reader> reader;
    try {
        reader.emplace(source);
        pass("archive signatures and central directory (" +
             std::to_string(reader->entries().size()) + " entries)");
        pass("header: format version " + std::to_string(reader->descriptor().format_version));
    } catch (const std::exception& e) {
        fail(std::string("archive: ") + e.what());
        out << "verify: " << problems << " problem(s)\n";
        return kExitFailed;
    }

    try {
        const auto table = schema::parse_schema(reader->descriptor().schema_text);
        for (const char* name : {"EventRecord", "ParticleBlock", "EventIndex"}) {
            if (table.find(name) == nullptr) {
                throw Error(ErrorCode::UnknownMessage, std::string("schema lacks ") + name);
            }
        }
        pass("schema parses (" + std::to_string(table.messages.size()) + " messages)");
    } catch (const std::exception& e) {
        fail(std::string("schema: ") + e.what());
    }

    EventIndex recomputed;
    FileStatistics recomputed_stats;
    std::size_t bad_events = 0;
    for (std::uint64_t k = 0; k < reader->event_count(); ++k) {
        const std::string label = "entry '" + std::to_string(k) + "'";
        try {
            const Bytes bytes = reader->read_event_bytes(k);
            if (bytes.size() > kMessageSizeGuidance) {
                err << "warning: " << label << " is " << bytes.size()
                    << " bytes, above the 1 MB per-message guidance\n";
            }
            const EventRecord e = decode_event(bytes);
            if (e.event_number != k) {
                throw Error(ErrorCode::InvariantViolation,
                            "event number " + std::to_string(e.event_number));
            }
            recomputed.particle_count.push_back(e.particles.size());
            recomputed.max_pt.push_back(max_transverse_momentum(e.particles));
            recomputed_stats.total_particles += e.particles.size();
        } catch (const std::exception& e) {
            ++bad_events;
            fail(label + ": " + e.what());
            recomputed.particle_count.push_back(0);
            recomputed.max_pt.push_back(0);
        }
        ++recomputed_stats.actual_events;
    }
    if (bad_events == 0) {
        pass(std::to_string(reader->event_count()) + " events: crc, decode, column lengths");
    }

    for (const auto& entry : reader->entries()) {
        if (parse_ordinal(entry.name)) continue;
        try {
            zip::read_entry(reader->source(), entry);
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    try {
        const EventIndex stored = decode_index(reader->read_entry(entry::kIndex));
        if (bad_events == 0 && stored != recomputed) {
            std::uint64_t at = 0;
            while (at < std::min(stored.size(), recomputed.size()) &&
                   stored.particle_count[at] == recomputed.particle_count[at] &&
                   stored.max_pt[at] == recomputed.max_pt[at]) {
                ++at;
            }
            fail("index mismatch at event " + std::to_string(at) + " (stored " +
                 std::to_string(stored.size()) + " rows, recomputed " +
                 std::to_string(recomputed.size()) + ")");
        } else if (bad_events == 0) {
            pass("index consistent");
        }
    } catch (const std::exception& e) {
        fail(std::string("index: ") + e.what());
    }

    try {
        const FileStatistics stored = decode_statistics(reader->read_entry(entry::kStatistics));
        if (bad_events == 0 && stored != recomputed_stats) {
            fail("statistics mismatch (stored " + std::to_string(stored.actual_events) + " events/" +
                 std::to_string(stored.total_particles) + " particles)");
        } else if (bad_events == 0) {
            pass("statistics consistent");
        }
    } catch (const std::exception& e) {
        fail(std::string("statistics: ") + e.what());
    }

    try {
        const Bytes n = reader->read_entry(entry::kEventCount);
        const std::string expected = std::to_string(reader->event_count()) + "\n";
        if (std::string(n.begin(), n.end()) != expected) {
            fail("promc_nevents.txt does not match event count");
        }
        const Bytes d = reader->read_entry(entry::kDescription);
        if (std::string(d.begin(), d.end()) != reader->descriptor().description) {
            fail("promc_description.txt does not match descriptor");
        }
    } catch (const std::exception& e) {
        fail(std::string("text mirrors: ") + e.what());
    }

    if (problems == 0) {
        out << "verify: OK\n";
        return kExitOk;
    }
    out << "verify: " << problems << " problem(s)\n";
    return kExitFailed;
}

}  // namespace provent::cli
