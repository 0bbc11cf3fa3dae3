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

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "spintorus/error.h"
#include "test_util.h"

using namespace spintorus;
using namespace spintorus::testing;

namespace {

OrderedJson updown_config() {
    return OrderedJson::parse(R"({
        "initial": {"product_state": {"kind": "updown"}},
        "params": {"J": 1.0, "h_z": 0.5},
        "grid": {"theta_steps": 9, "phi_steps": 3},
        "outputs": ["classify", "metric", "concurrence_profile", "evolved_states"]
    })");
}

std::string field_path_of(const OrderedJson &doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError &e) {
        return e.field_path();
    }
    return "<accepted>";
}

class TempDir {
   public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("spintorus_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::filesystem::remove_all(path_);
    }
    const std::filesystem::path &path() const {
        return path_;
    }

   private:
    std::filesystem::path path_;
};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path &p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(read_text_file(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(scenario, parse_valid_configs) {
    const ScenarioConfig c = parse_config(updown_config());
    EXPECT_EQ(std::get<ProductInitial>(c.initial).kind, ProductKind::kUpDown);
    EXPECT_EQ(c.params.gamma, 1.0);
    EXPECT_EQ(c.outputs.size(), 4u);

    const auto amps = parse_config(OrderedJson::parse(R"({
        "initial": {"amplitudes": [[0.6, 0], [0, 0.8], [0, 0], [0, 0]]},
        "params": {"J": -1, "h_z": 0, "gamma": 2},
        "grid": {"time": {"t0": 0, "t1": 1.5, "steps": 4}, "h_z": 0.25},
        "outputs": ["evolved_states"],
        "seed": 7
    })"));
    EXPECT_EQ(std::get<TimeGrid>(*amps.grid).h_z, 0.25);
    EXPECT_EQ(amps.seed, 7u);
    EXPECT_EQ(amps.initial_state().b(), Amp(0.0, 0.8));
}

TEST(scenario, parse_rejections_carry_field_paths) {
    auto doc = updown_config();
    doc["extra"] = 1;
    EXPECT_EQ(field_path_of(doc), "extra");

    doc = updown_config();
    doc["params"]["units"] = "degrees";
    EXPECT_EQ(field_path_of(doc), "params.units");

    doc = updown_config();
    doc["initial"] = OrderedJson::parse(R"({"amplitudes": [[1, 0], [0, 0], [0.1, 0], [0, 0]]})");
    EXPECT_EQ(field_path_of(doc), "initial.amplitudes");

    doc = updown_config();
    doc["initial"] = OrderedJson::parse(R"({"amplitudes": [[1, 0], [0, 0], [0, "x"], [0, 0]]})");
    EXPECT_EQ(field_path_of(doc), "initial.amplitudes[2][1]");

    doc = updown_config();
    doc["grid"]["theta_steps"] = 1;
    EXPECT_EQ(field_path_of(doc), "grid.theta_steps");

    doc = updown_config();
    doc["outputs"].push_back("curvature");
    EXPECT_EQ(field_path_of(doc), "outputs[4]");

    doc = updown_config();
    doc["initial"]["product_state"]["kind"] = "pm";
    EXPECT_EQ(field_path_of(doc), "initial.product_state.chi");

    doc = updown_config();
    doc.erase("grid");
    EXPECT_EQ(field_path_of(doc), "grid");

    doc = updown_config();
    doc["params"]["gamma"] = 0.0;
    EXPECT_EQ(field_path_of(doc), "params.gamma");

    doc = updown_config();
    doc.erase("params");
    EXPECT_EQ(field_path_of(doc), "params");
}

TEST(scenario, config_echo_round_trip) {
    const ScenarioConfig c = parse_config(updown_config());
    EXPECT_EQ(parse_config(config_to_json(c)), c);

    const ScenarioConfig t = parse_config(OrderedJson::parse(R"({
        "initial": {"amplitudes": [[0.5, 0.5], [0.5, 0.0], [0.0, 0.5], [0.0, 0.0]]},
        "params": {"J": 0.3, "h_z": 1.1, "gamma": 1.4142135623730951},
        "grid": {"time": {"t0": -1, "t1": 2, "steps": 5}},
        "outputs": ["metric"]
    })"));
    EXPECT_EQ(parse_config(config_to_json(t)), t);
}

TEST(scenario, run_updown_classify) {
    const RunRecord r = run_scenario(parse_config(updown_config()));
    const auto &cls = r.results.at("classify");
    EXPECT_EQ(cls.at("kind"), "Circle");
    EXPECT_EQ(cls.at("circle_axis"), "theta");
    EXPECT_EQ(cls.at("radius_derived"), true);
    EXPECT_NEAR(cls.at("circle_radius").get<double>(), 1.0, 1e-14);
    EXPECT_NEAR(cls.at("radius_candidates").at("theta").get<double>(), 1.0, 1e-14);
    EXPECT_NEAR(cls.at("radius_candidates").at("phi").get<double>(), 0.0, 1e-14);
    // Declared output order is preserved.
    auto it = r.results.begin();
    EXPECT_EQ(it.key(), "classify");
    EXPECT_EQ((++it).key(), "metric");
}

TEST(scenario, run_pm_metric) {
    auto doc = OrderedJson::parse(R"({
        "initial": {"product_state": {"kind": "pm", "chi": 1.0471975511965976, "gamma_az": 0.2}},
        "params": {"J": 1, "h_z": 0.3},
        "outputs": ["metric"]
    })");
    const RunRecord r = run_scenario(parse_config(doc));
    const auto &m = r.results.at("metric");
    EXPECT_NEAR(m.at("g_tt").get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(m.at("g_pp").get<double>(), 0.375, 1e-12);
    EXPECT_LT(m.at("diagonalization_residual").get<double>(), 1e-8);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(scenario, run_pm_profile) {
    auto doc = OrderedJson::parse(R"({
        "initial": {"product_state": {"kind": "pm", "chi": 0.9}},
        "params": {"J": 1, "h_z": 0.3},
        "grid": {"theta_steps": 9, "phi_steps": 2},
        "outputs": ["concurrence_profile"]
    })");
    const RunRecord r = run_scenario(parse_config(doc));
    const auto &samples = r.results.at("concurrence_profile").at("samples");
    ASSERT_EQ(samples.size(), 9u);
    for (const auto &s : samples) {
        EXPECT_NEAR(s.at("C").get<double>(), std::abs(std::sin(2 * s.at("theta").get<double>())), 1e-12);
    }
    EXPECT_NEAR(r.results.at("concurrence_profile").at("t_max").get<double>(), kPi / 8, 1e-10);
}

TEST(scenario, run_time_grid_uses_field_override) {
    auto doc = OrderedJson::parse(R"({
        "initial": {"product_state": {"kind": "pp", "chi": 0.7}},
        "params": {"J": 0.5, "h_z": 0.0},
        "grid": {"time": {"t0": 0, "t1": 2, "steps": 3}, "h_z": 0.25},
        "outputs": ["evolved_states"]
    })");
    const RunRecord r = run_scenario(parse_config(doc));
    const auto &pts = r.results.at("evolved_states").at("points");
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[2].at("t").get<double>(), 2.0);
    EXPECT_EQ(pts[2].at("theta").get<double>(), 2.0);
    EXPECT_EQ(pts[2].at("phi").get<double>(), 1.0);
    for (const auto &p : pts) {
        EXPECT_NEAR(p.at("C").get<double>(), 0.0, 1e-12);
    }
}

TEST(scenario, degenerate_shear_is_a_warning) {
    auto doc = OrderedJson::parse(R"({
        "initial": {"amplitudes": [[1e-7, 0], [0.8, 0], [0.6, 0], [0, 0]]},
        "params": {"J": 1, "h_z": 0.3},
        "outputs": ["metric"]
    })");
    const RunRecord r = run_scenario(parse_config(doc));
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("DegenerateShear"), std::string::npos);
    EXPECT_TRUE(r.results.at("metric").at("k").is_null());
}

TEST(scenario, results_are_deterministic) {
    const ScenarioConfig c = parse_config(updown_config());
    EXPECT_EQ(run_scenario(c).results.dump(), run_scenario(c).results.dump());
}

TEST(scenario, json_export_round_trip_is_byte_identical) {
    TempDir dir;
    const RunRecord r = run_scenario(parse_config(updown_config()));
    export_record(r, ExportFormat::kJson, dir.path() / "a.json");
    const std::string first = read_text_file(dir.path() / "a.json");
    const RunRecord back = RunRecord::from_json(OrderedJson::parse(first));
    export_record(back, ExportFormat::kJson, dir.path() / "b.json");
    EXPECT_EQ(read_text_file(dir.path() / "b.json"), first);
    EXPECT_EQ(parse_config(back.config), parse_config(updown_config()));
}

TEST(scenario, csv_export_layout) {
    TempDir dir;
    const RunRecord r = run_scenario(parse_config(updown_config()));
    export_record(r, ExportFormat::kCsv, dir.path() / "run.csv");
    const auto rows = read_csv(dir.path() / "run.csv");
    ASSERT_EQ(rows.size(), 1u + 9u * 3u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "phi", "re_a", "im_a", "re_b", "im_b", "re_c", "im_c",
                                                 "re_d", "im_d", "C"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].size(), 11u);
    }
    const std::string text = read_text_file(dir.path() / "run.csv");
    EXPECT_EQ(text.find('\r'), std::string::npos);

    const auto header = read_csv(dir.path() / "run.header.csv");
    ASSERT_GT(header.size(), 1u);
    EXPECT_EQ(header[0], (std::vector<std::string>{"section", "key", "value"}));
    bool saw_kind = false;
    for (const auto &row : header) {
        if (row.size() == 3 && row[0] == "classify" && row[1] == "kind") {
            EXPECT_EQ(row[2], "Circle");
            saw_kind = true;
        }
    }
    EXPECT_TRUE(saw_kind);
}

TEST(scenario, csv_profile_peak_for_updown) {
    TempDir dir;
    auto doc = updown_config();
    doc["outputs"] = {"concurrence_profile"};
    export_record(run_scenario(parse_config(doc)), ExportFormat::kCsv, dir.path() / "p.csv");
    const auto rows = read_csv(dir.path() / "p.csv");
    ASSERT_EQ(rows.size(), 10u);
    double best = -1.0;
    double best_theta = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double c = std::stod(rows[i][10]);
        if (c > best) {
            best = c;
            best_theta = std::stod(rows[i][0]);
        }
    }
    EXPECT_NEAR(best, 1.0, 1e-15);
    EXPECT_NEAR(best_theta, kPi / 4, 1e-15);
    EXPECT_FALSE(std::filesystem::exists(dir.path() / "p.header.csv"));
}

TEST(scenario, csv_empty_grid_is_header_only) {
    TempDir dir;
    auto doc = updown_config();
    doc["outputs"] = {"metric"};
    export_record(run_scenario(parse_config(doc)), ExportFormat::kCsv, dir.path() / "e.csv");
    EXPECT_EQ(read_text_file(dir.path() / "e.csv"), "theta,phi,re_a,im_a,re_b,im_b,re_c,im_c,re_d,im_d,C\n");
}

TEST(scenario, csv_floats_round_trip) {
    for (double x : {kPi, 1.0 / 3.0, -2.5e-300, 0.1, 1e21}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(scenario, export_io_error) {
    const RunRecord r = run_scenario(parse_config(updown_config()));
    try {
        export_record(r, ExportFormat::kJson, "/nonexistent-dir/x/y.json");
        FAIL() << "expected IoError";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kIoError);
    }
}

TEST(scenario, schema_document_matches_parser) {
    const auto schema = OrderedJson::parse(read_text_file(SPIN_TORUS_SOURCE_DIR "/schemas/scenario.json"));
    EXPECT_EQ(schema.at("properties").at("schema_version").at("const"), kSchemaVersion);
    EXPECT_EQ(schema.at("additionalProperties"), false);
    const auto &props = schema.at("properties");
    for (const char *key : {"initial", "params", "grid", "outputs", "seed", "degeneracy_tol"}) {
        EXPECT_TRUE(props.contains(key)) << key;
    }
}
