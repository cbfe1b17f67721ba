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

#include <zlib.h>

#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <streambuf>
#include <vector>

#include "provent/cli.hpp"
#include "provent/error.hpp"
#include "provent/hepmc.hpp"

namespace provent::cli {

namespace {

/// Discards everything written to it and keeps a byte count.
class CountingBuffer : public std::streambuf {
public:
    std::uint64_t count() const noexcept { return count_; }

protected:
    int_type overflow(int_type ch) override {
        if (!traits_type::eq_int_type(ch, traits_type::eof())) ++count_;
        return traits_type::not_eof(ch);
    }
    std::streamsize xsputn(const char*, std::streamsize n) override {
        count_ += static_cast<std::uint64_t>(n);
        return n;
    }

private:
    std::uint64_t count_ = 0;
};

/// gzip (RFC 1952) at the default level; the header carries no name and a
/// zero timestamp, so the output is a pure function of the input.
class GzipCounter {
public:
    GzipCounter() {
        if (deflateInit2(&stream_, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                         Z_DEFAULT_STRATEGY) != Z_OK) {
            throw Error(ErrorCode::Io, "deflateInit2 failed");
        }
    }
    ~GzipCounter() { deflateEnd(&stream_); }

    GzipCounter(const GzipCounter&) = delete;
    GzipCounter& operator=(const GzipCounter&) = delete;

    void feed(std::string_view data) { pump(data, Z_NO_FLUSH); }

    std::uint64_t finish() {
        pump({}, Z_FINISH);
        return compressed_;
    }

private:
    void pump(std::string_view data, int flush) {
        stream_.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
        stream_.avail_in = static_cast<uInt>(data.size());
        for (;;) {
            stream_.next_out = chunk_.data();
            stream_.avail_out = static_cast<uInt>(chunk_.size());
            const int rc = deflate(&stream_, flush);
            if (rc == Z_STREAM_ERROR) {
                throw Error(ErrorCode::Io, "deflate failed");
            }
            compressed_ += chunk_.size() - stream_.avail_out;
            if (flush == Z_FINISH ? rc == Z_STREAM_END : stream_.avail_out != 0) {
                break;
            }
        }
    }

    z_stream stream_{};
    std::vector<Bytef> chunk_ = std::vector<Bytef>(1 << 16);
    std::uint64_t compressed_ = 0;
};

template <typename T>
void put_le(std::ostream& out, T value) {
    auto bits = std::bit_cast<std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>>(value);
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<char>(bits >> (8 * i));
    }
    out.write(buf, sizeof buf);
}

std::int32_t link32(std::uint64_t link) {
    return link == kNoLink ? -1 : static_cast<std::int32_t>(link);
}

}  // namespace

double SizeReport::ratio(std::uint64_t count, std::uint64_t fixed_width) {
    if (fixed_width == 0) return 0.0;
    return std::round(1000.0 * static_cast<double>(count) / static_cast<double>(fixed_width)) / 1000.0;
}

void write_fixed_width_event(std::ostream& out, const EventRecord& e,
                             const QuantizationScheme& scheme) {
    const auto& p = e.particles;
    const std::size_t n = p.size();
    put_le(out, e.event_number);
    put_le(out, e.process_id);
    put_le(out, e.weight);
    put_le(out, static_cast<std::uint32_t>(n));
    const auto mu = scheme.momentum_unit;
    for (std::size_t i = 0; i < n; ++i) {
        put_le(out, quant::dequantize(p.px[i], mu));
        put_le(out, quant::dequantize(p.py[i], mu));
        put_le(out, quant::dequantize(p.pz[i], mu));
        put_le(out, quant::dequantize(p.mass[i], mu));
        put_le(out, static_cast<std::int32_t>(p.pdg_id[i]));
        put_le(out, static_cast<std::int32_t>(p.status[i]));
        put_le(out, link32(p.mother1[i]));
        put_le(out, link32(p.mother2[i]));
        put_le(out, link32(p.daughter1[i]));
        put_le(out, link32(p.daughter2[i]));
    }
}

SizeReport measure_sizes(const SpectrumConfig& config, const QuantizationScheme& scheme) {
    SizeReport report;

    CountingBuffer container_buf;
    std::ostream container_sink(&container_buf);
    CountingBuffer fixed_buf;
    std::ostream fixed_sink(&fixed_buf);
    GzipCounter gzip;
    std::ostringstream text;

    FileDescriptor descriptor;
    descriptor.description = "size benchmark";
    descriptor.scheme = scheme;
    descriptor.requested_events = config.n_events;
    Writer writer(container_sink, descriptor);

    auto flush_text = [&]() {
        const std::string chunk = text.str();
        report.ascii += chunk.size();
        gzip.feed(chunk);
        text.str({});
    };

    hepmc::write_ascii_begin(text);
    EventGenerator gen(config, scheme);
    while (auto e = gen.next()) {
        ++report.events;
        report.particles += e->particles.size();
        hepmc::write_ascii_event(text, *e, scheme);
        flush_text();
        write_fixed_width_event(fixed_sink, *e, scheme);
        writer.append(*e);
    }
    hepmc::write_ascii_end(text);
    flush_text();

    report.ascii_gzip = gzip.finish();
    report.fixed_width = fixed_buf.count();
    report.varint_container = writer.close().bytes;
    return report;
}

std::ostream& operator<<(std::ostream& out, const SizeReport& r) {
    auto row = [&](const char* name, std::uint64_t bytes) {
        out << std::left << std::setw(18) << name << std::right << std::setw(14) << bytes
            << "  " << std::fixed << std::setprecision(3) << SizeReport::ratio(bytes, r.fixed_width)
            << "\n";
    };
    out << "events: " << r.events << "\n"
        << "particles: " << r.particles << "\n"
        << std::left << std::setw(18) << "format" << std::right << std::setw(14) << "bytes"
        << "  ratio to fixed_width\n";
    row("ascii", r.ascii);
    row("ascii_gzip", r.ascii_gzip);
    row("fixed_width", r.fixed_width);
    row("varint_container", r.varint_container);
    out.unsetf(std::ios::floatfield);
    return out;
}

}  // namespace provent::cli
