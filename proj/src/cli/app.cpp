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

#include <CLI11.hpp>

#include <ostream>

#include "provent/cli.hpp"

namespace provent::cli {

namespace {

void add_scheme_flags(CLI::App* cmd, QuantizationScheme& scheme) {
    cmd->add_option("--momentum-unit", scheme.momentum_unit, "integer steps per GeV")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--length-unit", scheme.length_unit, "integer steps per mm")
        ->check(CLI::PositiveNumber);
}

void add_generator_flags(CLI::App* cmd, SpectrumConfig& cfg) {
    cmd->add_option("--events", cfg.n_events, "number of events");
    cmd->add_option("--pileup-mean", cfg.pileup_mean, "mean soft particles per event");
    cmd->add_option("--pt-soft", cfg.pt_soft, "soft pT slope [GeV]");
    cmd->add_option("--n-signal", cfg.n_signal, "hard particles per signal event");
    cmd->add_option("--pt-hard-min", cfg.pt_hard_min, "hard pT lower edge [GeV]");
    cmd->add_option("--pt-hard-max", cfg.pt_hard_max, "hard pT upper edge [GeV]");
    cmd->add_option("--signal-fraction", cfg.signal_fraction,
                    "probability that an event carries the hard particles");
    cmd->add_option("--seed", cfg.seed, "64-bit random seed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"provent: compact random-access event files"};
    app.require_subcommand(1);

    std::string path, dst, description;
    std::uint64_t count = 0;
    std::string format = "text";
    SpectrumConfig cfg;
    QuantizationScheme scheme;

    auto* info = app.add_subcommand("info", "describe a file");
    info->add_option("file", path)->required();

    auto* schema_cmd = app.add_subcommand("schema", "print the embedded layout schema");
    schema_cmd->add_option("file", path)->required();

    auto* extract = app.add_subcommand("extract", "copy the first N events to a new file");
    extract->add_option("src", path)->required();
    extract->add_option("dst", dst)->required();
    extract->add_option("n", count)->required();

    auto* convert = app.add_subcommand("convert", "convert a HepMC2 ASCII file");
    convert->add_option("input", path)->required();
    convert->add_option("output", dst)->required();
    convert->add_option("--description", description, "free-text description");
    add_scheme_flags(convert, scheme);

    auto* generate = app.add_subcommand("generate", "write a toy signal + pileup sample");
    add_generator_flags(generate, cfg);
    add_scheme_flags(generate, scheme);
    generate->add_option("--description", description, "free-text description");
    generate->add_option("output", dst)->required();

    auto* sizes = app.add_subcommand("sizes", "compare encodings of one generated sample");
    add_generator_flags(sizes, cfg);
    add_scheme_flags(sizes, scheme);

    auto* verify = app.add_subcommand("verify", "check checksums, layout and index");
    verify->add_option("file", path)->required();

    auto* cat = app.add_subcommand("cat", "print one event through the embedded schema");
    cat->add_option("file", path)->required();
    cat->add_option("k", count)->required();
    cat->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "provent: " << e.what() << "\n";
        return kExitUsage;
    }

    if (*info) return cmd_info(path, out, err);
    if (*schema_cmd) return cmd_schema(path, out, err);
    if (*extract) return cmd_extract(path, dst, count, out, err);
    if (*convert) return cmd_convert(path, dst, description, scheme, out, err);
    if (*generate) {
        if (description.empty()) description = "toy signal + pileup sample";
        return cmd_generate(cfg, scheme, description, dst, out, err);
    }
    if (*sizes) return cmd_sizes(cfg, scheme, out, err);
    if (*verify) return cmd_verify(path, out, err);
    if (*cat) {
        return cmd_cat(path, count, format == "json" ? CatFormat::Json : CatFormat::Text, out, err);
    }
    return kExitUsage;
}

}  // namespace provent::cli
