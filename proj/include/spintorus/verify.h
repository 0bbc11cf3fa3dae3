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

#ifndef SPINTORUS_VERIFY_H
#define SPINTORUS_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

#include "spintorus/scenario.h"

namespace spintorus {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    double max_residual() const;
    OrderedJson to_json() const;
};

struct VerifyOptions {
    /// Negative control: flips the sign of one propagator entry before the
    /// propagator checks run.
    bool corrupt_propagator = false;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20160315;

/// Runs every oracle and invariant battery across the library. Failures
/// are report content, never exceptions.
VerifyReport verify_all(std::uint64_t seed = kDefaultVerifySeed, const VerifyOptions &options = {});

}  // namespace spintorus

#endif  // SPINTORUS_VERIFY_H
