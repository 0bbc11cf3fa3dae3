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

#include "spintorus/scenario.h"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "spintorus/error.h"
#include "spintorus/manifold.h"

namespace spintorus {

namespace {

constexpr double kConfigNormTolerance = 1e-9;

// ---- strict reading helpers ------------------------------------------------

void reject_unknown(const OrderedJson &obj, const std::string &path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    for (const auto &[key, _] : obj.items()) {
        bool known = false;
        for (auto name : allowed) {
            known = known || key == name;
        }
        if (!known) {
            throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
        }
    }
}

std::string join(const std::string &path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const OrderedJson &require(const OrderedJson &obj, const std::string &path, std::string_view key) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) {
        throw ConfigError(join(path, key), "missing required field");
    }
    return *it;
}

double read_real(const OrderedJson &value, const std::string &path) {
    if (!value.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    double x = value.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(path, "must be finite");
    }
    return x;
}

int read_steps(const OrderedJson &value, const std::string &path) {
    if (!value.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    auto n = value.get<std::int64_t>();
    if (n < 2 || n > 1'000'000) {
        throw ConfigError(path, "steps must be in [2, 1000000]");
    }
    return static_cast<int>(n);
}

ProductKind read_kind(const OrderedJson &value, const std::string &path) {
    if (!value.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    const auto s = value.get<std::string>();
    for (auto kind : {ProductKind::kPlusMinus, ProductKind::kPlusPlus, ProductKind::kMinusMinus, ProductKind::kUpDown}) {
        if (s == product_kind_name(kind)) {
            return kind;
        }
    }
    throw ConfigError(path, "unknown product kind '" + s + "' (expected pm, pp, mm or updown)");
}

OutputKind read_output(const OrderedJson &value, const std::string &path) {
    if (!value.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    const auto s = value.get<std::string>();
    for (auto kind : {OutputKind::kMetric, OutputKind::kClassify, OutputKind::kConcurrenceProfile,
                      OutputKind::kEvolvedStates}) {
        if (s == output_kind_name(kind)) {
            return kind;
        }
    }
    throw ConfigError(path, "unknown output '" + s + "'");
}

InitialSpec read_initial(const OrderedJson &obj, const std::string &path) {
    reject_unknown(obj, path, {"amplitudes", "product_state"});
    if (obj.size() != 1) {
        throw ConfigError(path, "exactly one of amplitudes or product_state is required");
    }
    if (obj.contains("amplitudes")) {
        const std::string apath = join(path, "amplitudes");
        const auto &arr = obj.at("amplitudes");
        if (!arr.is_array() || arr.size() != 4) {
            throw ConfigError(apath, "expected 4 [re, im] pairs");
        }
        AmplitudeInitial out;
        double norm = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const std::string ipath = apath + "[" + std::to_string(i) + "]";
            const auto &pair = arr[i];
            if (!pair.is_array() || pair.size() != 2) {
                throw ConfigError(ipath, "expected [re, im]");
            }
            out.amplitudes[i] = {read_real(pair[0], ipath + "[0]"), read_real(pair[1], ipath + "[1]")};
            norm += std::norm(out.amplitudes[i]);
        }
        if (std::abs(norm - 1.0) > kConfigNormTolerance) {
            throw ConfigError(apath, "amplitudes are not normalized (squared norm " + format_double(norm) + ")");
        }
        return out;
    }
    const std::string ppath = join(path, "product_state");
    const auto &ps = obj.at("product_state");
    reject_unknown(ps, ppath, {"kind", "chi", "gamma_az"});
    ProductInitial out;
    out.kind = read_kind(require(ps, ppath, "kind"), join(ppath, "kind"));
    if (ps.contains("chi")) {
        out.chi = read_real(ps.at("chi"), join(ppath, "chi"));
    } else if (out.kind != ProductKind::kUpDown) {
        throw ConfigError(join(ppath, "chi"), "missing required field");
    }
    if (ps.contains("gamma_az")) {
        out.gamma_az = read_real(ps.at("gamma_az"), join(ppath, "gamma_az"));
    }
    return out;
}

SystemParams read_params(const OrderedJson &obj, const std::string &path) {
    reject_unknown(obj, path, {"J", "h_z", "gamma"});
    SystemParams p;
    p.J = read_real(require(obj, path, "J"), join(path, "J"));
    p.h_z = read_real(require(obj, path, "h_z"), join(path, "h_z"));
    if (obj.contains("gamma")) {
        p.gamma = read_real(obj.at("gamma"), join(path, "gamma"));
        if (!(p.gamma > 0.0)) {
            throw ConfigError(join(path, "gamma"), "must be positive");
        }
    }
    return p;
}

GridSpec read_grid(const OrderedJson &obj, const std::string &path) {
    reject_unknown(obj, path, {"theta_steps", "phi_steps", "time", "h_z"});
    if (obj.contains("time")) {
        if (obj.contains("theta_steps") || obj.contains("phi_steps")) {
            throw ConfigError(path, "time grid and angle grid are mutually exclusive");
        }
        const std::string tpath = join(path, "time");
        const auto &t = obj.at("time");
        reject_unknown(t, tpath, {"t0", "t1", "steps"});
        TimeGrid g;
        g.t0 = read_real(require(t, tpath, "t0"), join(tpath, "t0"));
        g.t1 = read_real(require(t, tpath, "t1"), join(tpath, "t1"));
        g.steps = read_steps(require(t, tpath, "steps"), join(tpath, "steps"));
        if (obj.contains("h_z")) {
            g.h_z = read_real(obj.at("h_z"), join(path, "h_z"));
        }
        return g;
    }
    if (obj.contains("h_z")) {
        throw ConfigError(join(path, "h_z"), "h_z override only applies to time grids");
    }
    AngleGrid g;
    g.theta_steps = read_steps(require(obj, path, "theta_steps"), join(path, "theta_steps"));
    g.phi_steps = read_steps(require(obj, path, "phi_steps"), join(path, "phi_steps"));
    return g;
}

// ---- results ---------------------------------------------------------------

OrderedJson amps_json(const PureState2Q &s) {
    OrderedJson arr = OrderedJson::array();
    for (const auto &x : s.amplitudes()) {
        arr.push_back({x.real(), x.imag()});
    }
    return arr;
}

OrderedJson optional_json(const std::optional<double> &x) {
    return x ? OrderedJson(*x) : OrderedJson(nullptr);
}

OrderedJson invariants_json(const FamilyInvariants &inv) {
    return {{"A", inv.A}, {"B", inv.B}, {"D", inv.D}};
}

struct GridPoint {
    std::optional<double> t;
    TorusPoint pt;
};

std::vector<GridPoint> profile_points(const ScenarioConfig &config) {
    std::vector<GridPoint> out;
    if (const auto *time = std::get_if<TimeGrid>(&*config.grid)) {
        const double h_z = time->h_z.value_or(config.params.h_z);
        for (int i = 0; i < time->steps; ++i) {
            const double t = time->t0 + (time->t1 - time->t0) * i / (time->steps - 1);
            out.push_back({t, {2.0 * config.params.J * t, 2.0 * h_z * t}});
        }
        return out;
    }
    const auto &angles = std::get<AngleGrid>(*config.grid);
    for (int i = 0; i < angles.theta_steps; ++i) {
        out.push_back({std::nullopt, {std::numbers::pi * i / (angles.theta_steps - 1), 0.0}});
    }
    return out;
}

std::vector<GridPoint> state_points(const ScenarioConfig &config) {
    if (std::holds_alternative<TimeGrid>(*config.grid)) {
        return profile_points(config);
    }
    const auto &angles = std::get<AngleGrid>(*config.grid);
    std::vector<GridPoint> out;
    for (int i = 0; i < angles.theta_steps; ++i) {
        for (int j = 0; j < angles.phi_steps; ++j) {
            out.push_back({std::nullopt,
                           {std::numbers::pi * i / (angles.theta_steps - 1),
                            2.0 * std::numbers::pi * j / (angles.phi_steps - 1)}});
        }
    }
    return out;
}

OrderedJson point_json(const PureState2Q &initial, const GridPoint &gp) {
    const PureState2Q psi = evolve_family(initial, gp.pt);
    OrderedJson row = OrderedJson::object();
    if (gp.t) {
        row["t"] = *gp.t;
    }
    row["theta"] = gp.pt.theta;
    row["phi"] = gp.pt.phi;
    row["psi"] = amps_json(psi);
    row["C"] = concurrence(psi);
    return row;
}

OrderedJson metric_json(const PureState2Q &initial, const ScenarioConfig &config, std::vector<std::string> &warnings) {
    const double gamma = config.params.gamma;
    const MetricTensor2 m = metric_analytic(initial, gamma);
    OrderedJson out = {
        {"invariants", invariants_json(family_invariants(initial))},
        {"g_tt", m.g_tt},
        {"g_tp", m.g_tp},
        {"g_pp", m.g_pp},
        {"determinant", m.determinant()},
        {"k", optional_json(m.k)},
        {"g_tt_diag", optional_json(m.g_tt_diag)},
        {"g_pp_diag", m.g_pp_diag},
        {"degenerate_shear", m.degenerate_shear},
    };
    if (m.degenerate_shear) {
        warnings.push_back("DegenerateShear: A - D^2 vanishes while B D does not; raw components reported");
        out["diagonalization_residual"] = nullptr;
    } else {
        out["diagonalization_residual"] = diagonalize_check(initial, gamma);
    }
    return out;
}

OrderedJson classify_json(const PureState2Q &initial, const ScenarioConfig &config) {
    const ManifoldReport r = classify(initial, config.params.gamma, config.degeneracy_tol);
    std::string axis = r.circle_axis == CircleAxis::kTheta ? "theta" : r.circle_axis == CircleAxis::kPhi ? "phi" : "";
    return {
        {"kind", std::string(manifold_kind_name(r.kind))},
        {"dimension", r.dimension},
        {"invariants", invariants_json(r.invariants)},
        {"circle_radius", optional_json(r.circle_radius)},
        {"circle_axis", axis.empty() ? OrderedJson(nullptr) : OrderedJson(axis)},
        {"radius_derived", r.radius_derived},
        {"radius_candidates", {{"phi", r.phi_radius}, {"theta", r.theta_radius}}},
        {"flatness_residual", r.flatness_residual},
    };
}

OrderedJson profile_json(const PureState2Q &initial, const ScenarioConfig &config) {
    OrderedJson samples = OrderedJson::array();
    for (const auto &gp : profile_points(config)) {
        samples.push_back(point_json(initial, gp));
    }
    const ThetaMaximum top = maximize_concurrence(initial).front();
    OrderedJson out = {{"samples", std::move(samples)}, {"theta_max", top.theta}, {"C_max", top.concurrence}};
    if (config.params.J != 0.0) {
        out["t_max"] = max_entanglement_time(initial, config.params).t;
    } else {
        out["t_max"] = nullptr;
    }
    return out;
}

OrderedJson states_json(const PureState2Q &initial, const ScenarioConfig &config) {
    OrderedJson points = OrderedJson::array();
    for (const auto &gp : state_points(config)) {
        points.push_back(point_json(initial, gp));
    }
    return {{"points", std::move(points)}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

// ---- CSV -------------------------------------------------------------------

void append_csv_row(std::string &out, const OrderedJson &row) {
    out += format_double(row.at("theta").get<double>());
    out += ',';
    out += format_double(row.at("phi").get<double>());
    for (const auto &pair : row.at("psi")) {
        out += ',';
        out += format_double(pair[0].get<double>());
        out += ',';
        out += format_double(pair[1].get<double>());
    }
    out += ',';
    out += format_double(row.at("C").get<double>());
    out += '\n';
}

std::string csv_scalar(const OrderedJson &v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

void append_header_block(std::string &out, const std::string &section, const OrderedJson &obj) {
    for (const auto &[key, value] : obj.items()) {
        if (value.is_object()) {
            append_header_block(out, section + "." + key, value);
        } else {
            out += section + ',' + key + ',' + csv_scalar(value) + '\n';
        }
    }
}

}  // namespace

std::string_view output_kind_name(OutputKind kind) {
    switch (kind) {
        case OutputKind::kMetric:
            return "metric";
        case OutputKind::kClassify:
            return "classify";
        case OutputKind::kConcurrenceProfile:
            return "concurrence_profile";
        case OutputKind::kEvolvedStates:
            return "evolved_states";
    }
    return "unknown";
}

PureState2Q ScenarioConfig::initial_state() const {
    if (const auto *amp = std::get_if<AmplitudeInitial>(&initial)) {
        return PureState2Q::normalize(amp->amplitudes);
    }
    const auto &ps = std::get<ProductInitial>(initial);
    return named_product_state(ps.kind, ps.chi, ps.gamma_az);
}

ScenarioConfig parse_config(const OrderedJson &doc) {
    reject_unknown(doc, "", {"schema_version", "initial", "params", "grid", "outputs", "seed", "degeneracy_tol"});
    if (doc.contains("schema_version")) {
        const auto &v = doc.at("schema_version");
        if (!v.is_string() || v.get<std::string>() != kSchemaVersion) {
            throw ConfigError("schema_version", "unsupported schema version (expected \"1\")");
        }
    }
    ScenarioConfig config;
    config.initial = read_initial(require(doc, "", "initial"), "initial");
    config.params = read_params(require(doc, "", "params"), "params");
    if (doc.contains("grid")) {
        config.grid = read_grid(doc.at("grid"), "grid");
    }

    const auto &outputs = require(doc, "", "outputs");
    if (!outputs.is_array() || outputs.empty()) {
        throw ConfigError("outputs", "expected a non-empty array");
    }
    std::set<OutputKind> seen;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const std::string opath = "outputs[" + std::to_string(i) + "]";
        const OutputKind kind = read_output(outputs[i], opath);
        if (!seen.insert(kind).second) {
            throw ConfigError(opath, "duplicate output");
        }
        if ((kind == OutputKind::kConcurrenceProfile || kind == OutputKind::kEvolvedStates) && !config.grid) {
            throw ConfigError("grid", "required by output '" + std::string(output_kind_name(kind)) + "'");
        }
        config.outputs.push_back(kind);
    }

    if (doc.contains("seed")) {
        const auto &s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            throw ConfigError("seed", "expected a non-negative integer");
        }
        config.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("degeneracy_tol")) {
        config.degeneracy_tol = read_real(doc.at("degeneracy_tol"), "degeneracy_tol");
        if (!(config.degeneracy_tol > 0.0)) {
            throw ConfigError("degeneracy_tol", "must be positive");
        }
    }
    return config;
}

ScenarioConfig load_config(const std::filesystem::path &path) {
    const std::string text = read_text_file(path);
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

OrderedJson config_to_json(const ScenarioConfig &config) {
    OrderedJson doc = OrderedJson::object();
    doc["schema_version"] = std::string(kSchemaVersion);
    if (const auto *amp = std::get_if<AmplitudeInitial>(&config.initial)) {
        OrderedJson arr = OrderedJson::array();
        for (const auto &x : amp->amplitudes) {
            arr.push_back({x.real(), x.imag()});
        }
        doc["initial"] = {{"amplitudes", arr}};
    } else {
        const auto &ps = std::get<ProductInitial>(config.initial);
        doc["initial"] = {{"product_state",
                           {{"kind", std::string(product_kind_name(ps.kind))},
                            {"chi", ps.chi},
                            {"gamma_az", ps.gamma_az}}}};
    }
    doc["params"] = {{"J", config.params.J}, {"h_z", config.params.h_z}, {"gamma", config.params.gamma}};
    if (config.grid) {
        if (const auto *angles = std::get_if<AngleGrid>(&*config.grid)) {
            doc["grid"] = {{"theta_steps", angles->theta_steps}, {"phi_steps", angles->phi_steps}};
        } else {
            const auto &time = std::get<TimeGrid>(*config.grid);
            OrderedJson g = {{"time", {{"t0", time.t0}, {"t1", time.t1}, {"steps", time.steps}}}};
            if (time.h_z) {
                g["h_z"] = *time.h_z;
            }
            doc["grid"] = std::move(g);
        }
    }
    OrderedJson outputs = OrderedJson::array();
    for (auto kind : config.outputs) {
        outputs.push_back(std::string(output_kind_name(kind)));
    }
    doc["outputs"] = std::move(outputs);
    doc["seed"] = config.seed;
    doc["degeneracy_tol"] = config.degeneracy_tol;
    return doc;
}

OrderedJson RunRecord::to_json() const {
    OrderedJson doc = OrderedJson::object();
    doc["schema_version"] = std::string(kSchemaVersion);
    doc["config"] = config;
    doc["results"] = results;
    doc["warnings"] = warnings;
    doc["provenance"] = {
        {"library_version", std::string(kLibraryVersion)},
        {"seed", seed},
        {"timestamp", timestamp},
    };
    return doc;
}

RunRecord RunRecord::from_json(const OrderedJson &doc) {
    try {
        reject_unknown(doc, "", {"schema_version", "config", "results", "warnings", "provenance"});
        if (doc.at("schema_version") != kSchemaVersion) {
            throw ConfigError("schema_version", "unsupported record schema version");
        }
        RunRecord r;
        r.config = doc.at("config");
        r.results = doc.at("results");
        r.warnings = doc.at("warnings").get<std::vector<std::string>>();
        r.seed = doc.at("provenance").at("seed").get<std::uint64_t>();
        r.timestamp = doc.at("provenance").at("timestamp").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("", std::string("malformed run record: ") + e.what());
    }
}

RunRecord run_scenario(const ScenarioConfig &config) {
    try {
        config.params.validate();
    } catch (const Error &e) {
        throw ConfigError("params", e.what());
    }
    RunRecord record;
    record.config = config_to_json(config);
    record.seed = config.seed;
    record.timestamp = utc_timestamp();

    const PureState2Q initial = config.initial_state();
    for (auto kind : config.outputs) {
        const std::string key(output_kind_name(kind));
        switch (kind) {
            case OutputKind::kMetric:
                record.results[key] = metric_json(initial, config, record.warnings);
                break;
            case OutputKind::kClassify:
                record.results[key] = classify_json(initial, config);
                break;
            case OutputKind::kConcurrenceProfile:
                record.results[key] = profile_json(initial, config);
                break;
            case OutputKind::kEvolvedStates:
                record.results[key] = states_json(initial, config);
                break;
        }
    }
    return record;
}

std::filesystem::path header_block_path(const std::filesystem::path &csv_path) {
    std::filesystem::path out = csv_path;
    out.replace_filename(csv_path.stem().string() + ".header.csv");
    return out;
}

void export_record(const RunRecord &record, ExportFormat format, const std::filesystem::path &path) {
    if (format == ExportFormat::kJson) {
        write_text_file(path, record.to_json().dump(2) + "\n");
        return;
    }

    std::string csv = "theta,phi,re_a,im_a,re_b,im_b,re_c,im_c,re_d,im_d,C\n";
    const OrderedJson &results = record.results;
    if (results.contains("evolved_states")) {
        for (const auto &row : results.at("evolved_states").at("points")) {
            append_csv_row(csv, row);
        }
    } else if (results.contains("concurrence_profile")) {
        for (const auto &row : results.at("concurrence_profile").at("samples")) {
            append_csv_row(csv, row);
        }
    }
    write_text_file(path, csv);

    std::string header;
    for (std::string_view key : {"metric", "classify"}) {
        if (results.contains(std::string(key))) {
            append_header_block(header, std::string(key), results.at(std::string(key)));
        }
    }
    if (!header.empty()) {
        write_text_file(header_block_path(path), "section,key,value\n" + header);
    }
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw Error(ErrorCode::kConsistency, "float formatting failed");
    }
    return std::string(buf.data(), end);
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error(ErrorCode::kIoError, "write to '" + path.string() + "' failed");
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace spintorus
