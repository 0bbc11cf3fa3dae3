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

#ifndef SPINTORUS_HAMILTONIAN_H
#define SPINTORUS_HAMILTONIAN_H

#include <array>

#include "spintorus/qstate.h"

namespace spintorus {

/// Coupling J and field h_z in frequency units (hbar = 1); gamma scales the
/// Fubini-Study metric. J may be zero or negative.
struct SystemParams {
    double J = 1.0;
    double h_z = 0.0;
    double gamma = 1.0;

    /// Throws InvalidArgument unless all fields are finite and gamma > 0.
    void validate() const;

    bool operator==(const SystemParams &) const = default;
};

struct EigenPair {
    double value;
    PureState2Q vector;
};

/// Common eigenbasis of H_int and H_mf in fixed order:
/// |uu>, |dd>, (|ud>+|du>)/sqrt2, (|ud>-|du>)/sqrt2.
struct EigenSystem {
    std::array<EigenPair, 4> pairs;
};

/// Pauli matrices, row-major 2x2.
std::array<Amp, 4> pauli_x();
std::array<Amp, 4> pauli_y();
std::array<Amp, 4> pauli_z();
std::array<Amp, 4> identity2();

/// J (sigma^1 . sigma^2 + 1).
Operator4 build_h_int(const SystemParams &p);

/// h_z (sigma_z^1 + sigma_z^2) = diag(2h_z, 0, 0, -2h_z).
Operator4 build_h_mf(const SystemParams &p);

Operator4 build_hamiltonian(const SystemParams &p);

EigenSystem eigensystem(const SystemParams &p);

/// sin(x)/x with a series branch for |x| < 1e-6.
double sinc(double x);

/// exp(-i H_int t) = cos(2Jt) - i (sin(2Jt)/(2J)) H_int, using H_int^2 = (2J)^2.
/// The J = 0 limit is taken through t * sinc(2Jt).
Operator4 interaction_propagator(const SystemParams &p, double t);

/// exp(-i H_mf t) = diag(e^{-2i h_z t}, 1, 1, e^{2i h_z t}).
Operator4 field_propagator(const SystemParams &p, double t);

/// Closed-form U(t) = exp(-i H_int t) exp(-i H_mf t).
Operator4 propagator_analytic(const SystemParams &p, double t);

/// Independent route: sum_k e^{-i lambda_k t} |v_k><v_k| over the eigensystem.
Operator4 propagator_spectral(const SystemParams &p, double t);

}  // namespace spintorus

#endif  // SPINTORUS_HAMILTONIAN_H
