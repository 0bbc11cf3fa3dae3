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

#include "spintorus/verify.h"

#include "gtest/gtest.h"

using namespace spintorus;

TEST(verify, default_seed_passes) {
    const VerifyReport r = verify_all();
    for (const auto &c : r.checks) {
        EXPECT_TRUE(c.passed) << c.name << " residual " << c.residual;
    }
    EXPECT_TRUE(r.all_passed());
    EXPECT_LT(r.max_residual(), 1e-6);
}

TEST(verify, seed_robustness) {
    for (std::uint64_t seed : {1u, 2u, 3u, 99u, 123456u}) {
        EXPECT_TRUE(verify_all(seed).all_passed()) << "seed " << seed;
    }
}

TEST(verify, negative_control_fails_unitarity) {
    VerifyOptions options;
    options.corrupt_propagator = true;
    const VerifyReport r = verify_all(kDefaultVerifySeed, options);
    EXPECT_FALSE(r.all_passed());
    bool unitarity_failed = false;
    for (const auto &c : r.checks) {
        if (c.name == "propagator_unitarity") {
            unitarity_failed = !c.passed;
        }
    }
    EXPECT_TRUE(unitarity_failed);
}

TEST(verify, report_json) {
    const auto doc = verify_all(5).to_json();
    EXPECT_EQ(doc.at("seed"), 5);
    EXPECT_EQ(doc.at("passed"), true);
    EXPECT_GT(doc.at("checks").size(), 20u);
}
