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
#include <optional>

#include "provent/model.hpp"
#include "provent/random.hpp"

namespace provent {

/// Toy collision spectrum: a Poisson number of soft pions with an
/// exponential pT spectrum plus a fixed number of hard "signal" particles.
struct SpectrumConfig {
    std::uint64_t n_events = 100;
    double pileup_mean = 100.0;  // soft particles per event
    double pt_soft = 0.5;        // GeV, exponential slope
    std::uint64_t n_signal = 2;  // hard particles per signal event
    double pt_hard_min = 50.0;   // GeV
    double pt_hard_max = 200.0;  // GeV
    double signal_fraction = 1.0;  // probability an event carries the hard particles
    double eta_max = 2.5;
    std::uint64_t seed = 1;

    /// Throws UsageError naming the first bad parameter.
    void validate() const;
};

inline constexpr double kPionMass = 0.13957;   // GeV
inline constexpr double kSignalMass = 125.0;   // GeV
inline constexpr std::int64_t kSignalPdgId = 25;

/// Deterministic stream of quantized events; process_id is 1 for events that
/// carry signal particles and 0 otherwise.
class EventGenerator {
public:
    EventGenerator(const SpectrumConfig& config, const QuantizationScheme& scheme);

    std::optional<EventRecord> next();

private:
    void add_particle(EventRecord& e, std::int64_t pdg_id, double pt, double mass);
    std::uint64_t poisson(double mean);

    SpectrumConfig config_;
    QuantizationScheme scheme_;
    Xoshiro256 rng_;
    std::uint64_t produced_ = 0;
};

}  // namespace provent
