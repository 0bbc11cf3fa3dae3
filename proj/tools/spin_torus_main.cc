// Copyright 2026 The spin-torus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// spin-torus: scenario runner, verification battery and exporter.
//
// Exit codes: 0 ok, 1 check failure, 2 config error, 3 I/O error.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "spintorus/error.h"
#include "spintorus/scenario.h"
#include "spintorus/verify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

std::filesystem::path default_record_path(const std::filesystem::path &config) {
    std::filesystem::path out = config;
    out.replace_filename(config.stem().string() + ".record.json");
    return out;
}

int run_command(const std::string &config_path, const std::string &out_path, std::optional<double> gamma,
                std::optional<double> tol) {
    spintorus::ScenarioConfig config = spintorus::load_config(config_path);
    if (gamma) {
        if (!(*gamma > 0.0)) {
            throw spintorus::ConfigError("--gamma", "must be positive");
        }
        config.params.gamma = *gamma;
    }
    if (tol) {
        if (!(*tol > 0.0)) {
            throw spintorus::ConfigError("--tol", "must be positive");
        }
        config.degeneracy_tol = *tol;
    }
    const spintorus::RunRecord record = spintorus::run_scenario(config);
    const std::filesystem::path out =
        out_path.empty() ? default_record_path(config_path) : std::filesystem::path(out_path);
    spintorus::export_record(record, spintorus::ExportFormat::kJson, out);
    for (const auto &w : record.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int verify_command(std::uint64_t seed, const std::string &report_path, bool negative_control) {
    spintorus::VerifyOptions options;
    options.corrupt_propagator = negative_control;
    const spintorus::VerifyReport report = spintorus::verify_all(seed, options);
    for (const auto &c : report.checks) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << " residual=" << spintorus::format_double(c.residual)
                  << " tol=" << c.tolerance << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "verification FAILED") << " (seed " << seed
              << ", max residual " << spintorus::format_double(report.max_residual()) << ")\n";
    if (!report_path.empty()) {
        spintorus::write_text_file(report_path, report.to_json().dump(2) + "\n");
    }
    return report.all_passed() ? kExitOk : kExitCheckFailure;
}

int export_command(const std::string &record_path, const std::string &format, const std::string &out_path) {
    spintorus::OrderedJson doc;
    try {
        doc = spintorus::OrderedJson::parse(spintorus::read_text_file(record_path));
    } catch (const nlohmann::json::parse_error &e) {
        throw spintorus::ConfigError("record", std::string("malformed JSON: ") + e.what());
    }
    const auto record = spintorus::RunRecord::from_json(doc);
    spintorus::export_record(record, format == "csv" ? spintorus::ExportFormat::kCsv : spintorus::ExportFormat::kJson,
                             out_path);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-spin Heisenberg evolution: torus geometry and entanglement"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_out;
    std::optional<double> gamma;
    std::optional<double> tol;
    auto *run = app.add_subcommand("run", "Execute a scenario config and write its run record (JSON)");
    run->add_option("config", config_path, "Scenario config (JSON)")->required();
    run->add_option("--out", run_out, "Record path (default: <config stem>.record.json)");
    run->add_option("--gamma", gamma, "Metric scale factor override (default 1)");
    run->add_option("--tol", tol, "Degeneracy tolerance for classification (default 1e-10)");

    std::uint64_t seed = spintorus::kDefaultVerifySeed;
    std::string report_path;
    bool negative_control = false;
    auto *verify = app.add_subcommand("verify", "Run the full oracle and invariant battery");
    verify->add_option("--seed", seed, "Random seed for sampled checks");
    verify->add_option("--report", report_path, "Also write the report as JSON");
    verify->add_flag("--negative-control", negative_control, "Corrupt one propagator entry (must fail)");

    std::string record_path;
    std::string format;
    std::string export_out;
    auto *exp = app.add_subcommand("export", "Convert a run record to CSV or JSON");
    exp->add_option("record", record_path, "Run record (JSON)")->required();
    exp->add_option("--format", format, "csv or json")->required()->check(CLI::IsMember({"csv", "json"}));
    exp->add_option("--out", export_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*run) {
            return run_command(config_path, run_out, gamma, tol);
        }
        if (*verify) {
            return verify_command(seed, report_path, negative_control);
        }
        return export_command(record_path, format, export_out);
    } catch (const spintorus::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case spintorus::ErrorCode::kConfigInvalid:
                return kExitConfigError;
            case spintorus::ErrorCode::kIoError:
                return kExitIoError;
            default:
                return kExitCheckFailure;
        }
    }
}
