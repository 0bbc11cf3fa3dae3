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

#include "spintorus/hamiltonian.h"

#include <cmath>

#include "spintorus/error.h"

namespace spintorus {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Amp kI{0.0, 1.0};

Operator4 outer(const PureState2Q &v) {
    Operator4 out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(r, c) = v[r] * std::conj(v[c]);
        }
    }
    return out;
}

}  // namespace

void SystemParams::validate() const {
    if (!std::isfinite(J) || !std::isfinite(h_z) || !std::isfinite(gamma)) {
        throw Error(ErrorCode::kInvalidArgument, "system parameters must be finite");
    }
    if (!(gamma > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
    }
}

std::array<Amp, 4> pauli_x() {
    return {0.0, 1.0, 1.0, 0.0};
}

std::array<Amp, 4> pauli_y() {
    return {0.0, -kI, kI, 0.0};
}

std::array<Amp, 4> pauli_z() {
    return {1.0, 0.0, 0.0, -1.0};
}

std::array<Amp, 4> identity2() {
    return {1.0, 0.0, 0.0, 1.0};
}

Operator4 build_h_int(const SystemParams &p) {
    Operator4 dot = kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) + kron(pauli_z(), pauli_z());
    return (dot + Operator4::identity()) * Amp{p.J};
}

Operator4 build_h_mf(const SystemParams &p) {
    return (kron(pauli_z(), identity2()) + kron(identity2(), pauli_z())) * Amp{p.h_z};
}

Operator4 build_hamiltonian(const SystemParams &p) {
    return build_h_int(p) + build_h_mf(p);
}

EigenSystem eigensystem(const SystemParams &p) {
    const double J = p.J;
    const double h = p.h_z;
    return EigenSystem{{{
        {2.0 * (J + h), PureState2Q::basis(kUpUp)},
        {2.0 * (J - h), PureState2Q::basis(kDownDown)},
        {2.0 * J, PureState2Q::from_normalized(0.0, kInvSqrt2, kInvSqrt2, 0.0)},
        {-2.0 * J, PureState2Q::from_normalized(0.0, kInvSqrt2, -kInvSqrt2, 0.0)},
    }}};
}

double sinc(double x) {
    if (std::abs(x) < 1e-6) {
        // Next term x^4/120 is below 1e-26.
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

Operator4 interaction_propagator(const SystemParams &p, double t) {
    const double angle = 2.0 * p.J * t;
    // sin(2Jt)/(2J) = t sinc(2Jt)
    const double weight = t * sinc(angle);
    return Operator4::identity() * Amp{std::cos(angle)} - build_h_int(p) * (kI * weight);
}

Operator4 field_propagator(const SystemParams &p, double t) {
    const double angle = 2.0 * p.h_z * t;
    return Operator4::diagonal({std::polar(1.0, -angle), 1.0, 1.0, std::polar(1.0, angle)});
}

Operator4 propagator_analytic(const SystemParams &p, double t) {
    return interaction_propagator(p, t) * field_propagator(p, t);
}

Operator4 propagator_spectral(const SystemParams &p, double t) {
    Operator4 out;
    for (const auto &pair : eigensystem(p).pairs) {
        out = out + outer(pair.vector) * std::polar(1.0, -pair.value * t);
    }
    return out;
}

}  // namespace spintorus
