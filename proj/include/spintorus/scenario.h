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

#ifndef SPINTORUS_SCENARIO_H
#define SPINTORUS_SCENARIO_H

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spintorus/entanglement.h"
#include "spintorus/hamiltonian.h"
#include "spintorus/qstate.h"

namespace spintorus {

using OrderedJson = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kLibraryVersion = "0.1.0";

struct AmplitudeInitial {
    Amplitudes amplitudes{};
    bool operator==(const AmplitudeInitial &) const = default;
};

struct ProductInitial {
    ProductKind kind = ProductKind::kUpDown;
    double chi = 0.0;
    double gamma_az = 0.0;
    bool operator==(const ProductInitial &) const = default;
};

using InitialSpec = std::variant<AmplitudeInitial, ProductInitial>;

/// theta over [0, pi] and phi over [0, 2 pi], endpoints included.
struct AngleGrid {
    int theta_steps = 2;
    int phi_steps = 2;
    bool operator==(const AngleGrid &) const = default;
};

/// t over [t0, t1], endpoints included; (theta, phi) = (2Jt, 2 h_z t), with
/// h_z optionally overriding params.h_z.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 2;
    std::optional<double> h_z;
    bool operator==(const TimeGrid &) const = default;
};

using GridSpec = std::variant<AngleGrid, TimeGrid>;

enum class OutputKind { kMetric, kClassify, kConcurrenceProfile, kEvolvedStates };

std::string_view output_kind_name(OutputKind kind);

struct ScenarioConfig {
    InitialSpec initial;
    SystemParams params;
    std::optional<GridSpec> grid;
    std::vector<OutputKind> outputs;
    std::uint64_t seed = 0;
    double degeneracy_tol = 1e-10;

    PureState2Q initial_state() const;

    bool operator==(const ScenarioConfig &) const = default;
};

/// Strict parse: unknown fields, wrong types, unnormalized amplitudes
/// (tolerance 1e-9) and steps < 2 raise ConfigError with the field path.
ScenarioConfig parse_config(const OrderedJson &doc);
ScenarioConfig load_config(const std::filesystem::path &path);

/// Canonical JSON form; parse_config(config_to_json(c)) == c.
OrderedJson config_to_json(const ScenarioConfig &config);

struct RunRecord {
    OrderedJson config;
    /// Keyed by output kind, in the order the config lists them.
    OrderedJson results = OrderedJson::object();
    std::vector<std::string> warnings;
    std::uint64_t seed = 0;
    std::string timestamp;

    OrderedJson to_json() const;
    static RunRecord from_json(const OrderedJson &doc);
};

/// Runs the requested outputs in order. Degenerate shear lands in
/// `warnings` rather than failing the run.
RunRecord run_scenario(const ScenarioConfig &config);

enum class ExportFormat { kCsv, kJson };

/// JSON: the full record, two-space indented, trailing newline.
/// CSV: one row per grid point with columns
///   theta,phi,re_a,im_a,re_b,im_b,re_c,im_c,re_d,im_d,C
/// taken from evolved_states, else from concurrence_profile; '.' decimal,
/// ',' delimiter, LF endings, 17 significant digits. Metric and
/// classification go to a sibling "<stem>.header.csv" as section,key,value.
/// Throws Error(IoError) on write failure.
void export_record(const RunRecord &record, ExportFormat format, const std::filesystem::path &path);

/// The CSV header-block path that accompanies `csv_path`.
std::filesystem::path header_block_path(const std::filesystem::path &csv_path);

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double value);

void write_text_file(const std::filesystem::path &path, const std::string &text);
std::string read_text_file(const std::filesystem::path &path);

}  // namespace spintorus

#endif  // SPINTORUS_SCENARIO_H
