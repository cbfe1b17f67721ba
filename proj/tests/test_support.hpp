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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "provent/container.hpp"
#include "provent/generator.hpp"
#include "provent/model.hpp"

namespace provent::testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(PROVENT_FIXTURE_DIR) / name;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("provent-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline Bytes read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& p, const Bytes& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline Bytes as_bytes_copy(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Arbitrary (not physical) event for property tests: random magnitudes over
/// the whole int64 range, random links, optional columns present or not.
inline EventRecord random_event(std::mt19937_64& rng, std::uint64_t number) {
    auto any_i64 = [&]() -> std::int64_t {
        const int bits = static_cast<int>(rng() % 64);
        const auto mag = static_cast<std::int64_t>(rng() >> (64 - bits - 1) >> 1);
        return (rng() & 1) ? -mag : mag;
    };
    EventRecord e;
    e.event_number = number;
    e.process_id = any_i64();
    e.weight = (rng() % 4 == 0) ? 1.0 : std::ldexp(static_cast<double>(rng() >> 11), -40);
    const std::size_t n = rng() % 12;
    const bool with_barcode = rng() & 1;
    const bool with_vertex = rng() & 1;
    auto link = [&]() { return (n == 0 || rng() % 3 == 0) ? kNoLink : rng() % n; };
    auto& p = e.particles;
    for (std::size_t i = 0; i < n; ++i) {
        p.pdg_id.push_back(any_i64());
        p.status.push_back(rng() >> (rng() % 64));
        p.px.push_back(any_i64());
        p.py.push_back(any_i64());
        p.pz.push_back(any_i64());
        p.mass.push_back(any_i64());
        p.mother1.push_back(link());
        p.mother2.push_back(link());
        p.daughter1.push_back(link());
        p.daughter2.push_back(link());
        if (with_barcode) p.barcode.push_back(any_i64());
        if (with_vertex) {
            p.x.push_back(any_i64());
            p.y.push_back(any_i64());
            p.z.push_back(any_i64());
            p.t.push_back(any_i64());
        }
    }
    return e;
}

/// Configuration behind tests/fixtures/two_events.promc.
inline SpectrumConfig golden_config() {
    SpectrumConfig cfg;
    cfg.n_events = 2;
    cfg.pileup_mean = 3;
    cfg.pt_soft = 0.5;
    cfg.n_signal = 1;
    cfg.pt_hard_min = 50;
    cfg.pt_hard_max = 200;
    cfg.seed = 7;
    return cfg;
}

inline constexpr const char* kGoldenDescription = "golden two-event sample";

inline Bytes write_generated(const SpectrumConfig& cfg, const std::string& description,
                             const QuantizationScheme& scheme = {}) {
    std::ostringstream sink;
    FileDescriptor d;
    d.description = description;
    d.scheme = scheme;
    d.requested_events = cfg.n_events;
    {
        Writer w(sink, d);
        EventGenerator gen(cfg, scheme);
        while (auto e = gen.next()) w.append(*e);
        w.close();
    }
    const std::string s = sink.str();
    return Bytes(s.begin(), s.end());
}

}  // namespace provent::testing
