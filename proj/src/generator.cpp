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

#include "provent/generator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "provent/error.hpp"

namespace provent {

void SpectrumConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::UsageError, what); };
    if (!(std::isfinite(pileup_mean) && pileup_mean >= 0)) fail("pileup mean must be >= 0");
    if (!(std::isfinite(pt_soft) && pt_soft > 0)) fail("soft pT scale must be > 0");
    if (!(std::isfinite(pt_hard_min) && pt_hard_min > 0)) fail("hard pT minimum must be > 0");
    if (!(std::isfinite(pt_hard_max) && pt_hard_max >= pt_hard_min)) {
        fail("hard pT maximum must be >= minimum");
    }
    if (!(signal_fraction >= 0 && signal_fraction <= 1)) fail("signal fraction must be in [0, 1]");
    if (!(std::isfinite(eta_max) && eta_max >= 0)) fail("eta range must be >= 0");
}

EventGenerator::EventGenerator(const SpectrumConfig& config, const QuantizationScheme& scheme)
    : config_(config), scheme_(scheme), rng_(config.seed) {
    config_.validate();
    quant::validate(scheme_);
}

// Counts unit-rate exponential arrivals before `mean`; exact Poisson without
// the exp(-mean) underflow of the multiplicative form.
std::uint64_t EventGenerator::poisson(double mean) {
    std::uint64_t k = 0;
    double t = -std::log1p(-rng_.uniform());
    while (t <= mean) {
        ++k;
        t += -std::log1p(-rng_.uniform());
    }
    return k;
}

void EventGenerator::add_particle(EventRecord& e, std::int64_t pdg_id, double pt, double mass) {
    const double phi = 2.0 * std::numbers::pi * rng_.uniform();
    const double eta = config_.eta_max * (2.0 * rng_.uniform() - 1.0);
    auto& p = e.particles;
    p.pdg_id.push_back(pdg_id);
    p.status.push_back(1);
    p.px.push_back(quant::quantize(pt * std::cos(phi), scheme_.momentum_unit));
    p.py.push_back(quant::quantize(pt * std::sin(phi), scheme_.momentum_unit));
    p.pz.push_back(quant::quantize(pt * std::sinh(eta), scheme_.momentum_unit));
    p.mass.push_back(quant::quantize(mass, scheme_.momentum_unit));
    p.mother1.push_back(kNoLink);
    p.mother2.push_back(kNoLink);
    p.daughter1.push_back(kNoLink);
    p.daughter2.push_back(kNoLink);
}

std::optional<EventRecord> EventGenerator::next() {
    if (produced_ >= config_.n_events) {
        return std::nullopt;
    }
    EventRecord e;
    e.event_number = produced_++;

    const std::uint64_t n_soft = poisson(config_.pileup_mean);
    const bool signal = config_.n_signal > 0 && rng_.uniform() < config_.signal_fraction;
    const std::uint64_t n_hard = signal ? config_.n_signal : 0;
    e.process_id = signal ? 1 : 0;
    e.particles.reserve(n_soft + n_hard);

    for (std::uint64_t i = 0; i < n_hard; ++i) {
        const double pt =
            config_.pt_hard_min + (config_.pt_hard_max - config_.pt_hard_min) * rng_.uniform();
        add_particle(e, kSignalPdgId, pt, kSignalMass);
    }
    for (std::uint64_t i = 0; i < n_soft; ++i) {
        const std::int64_t pdg = (rng_() >> 63) != 0 ? 211 : -211;
        const double pt = -config_.pt_soft * std::log1p(-rng_.uniform());
        add_particle(e, pdg, pt, kPionMass);
    }
    return e;
}

}  // namespace provent
