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

#ifndef SPINTORUS_ENTANGLEMENT_H
#define SPINTORUS_ENTANGLEMENT_H

#include <array>
#include <string_view>
#include <vector>

#include "spintorus/hamiltonian.h"
#include "spintorus/qstate.h"

namespace spintorus {

using Spinor = std::array<Amp, 2>;

/// Spin-up along n = (sin chi cos g, sin chi sin g, cos chi):
/// cos(chi/2)|u> + sin(chi/2) e^{i g}|d>.
Spinor spin_plus(double chi, double gamma_az);
/// The orthogonal partner -sin(chi/2)|u> + cos(chi/2) e^{i g}|d>.
Spinor spin_minus(double chi, double gamma_az);

PureState2Q product_state(const Spinor &first, const Spinor &second);

enum class ProductKind { kPlusMinus, kPlusPlus, kMinusMinus, kUpDown };

std::string_view product_kind_name(ProductKind kind);

/// |+->, |++>, |--> for the given Bloch angles; |ud> ignores the angles.
PureState2Q named_product_state(ProductKind kind, double chi, double gamma_az);

/// 2|ad - bc|, clamped to [0, 1]. Values above 1 by more than 1e-9 throw Consistency.
double concurrence(const PureState2Q &state);

/// Wootters concurrence of rho = |psi><psi| through the Hermitian form
/// sqrt(rho) rho~ sqrt(rho), with rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
/// Eigenvalues below 1e-14 are treated as zero, so concurrences under
/// roughly 1e-7 read as 0.
double concurrence_wootters_oracle(const PureState2Q &state);

/// Closed form along the orbit:
/// 2|a d e^{-2i theta} - (b c cos 2theta - (i/2)(b^2 + c^2) sin 2theta)|.
double concurrence_evolved(const PureState2Q &initial, double theta);

/// |b - c|^2 |sin 2theta| for product initial states; throws NotDisentangled otherwise.
double concurrence_disentangled(const PureState2Q &initial, double theta);

struct EntanglementCircle {
    double concurrence;
    double radius;
};

/// The phi-circle at fixed theta has constant concurrence and radius gamma sqrt(A - D^2).
EntanglementCircle constant_entanglement_circle(const PureState2Q &initial, double theta, double gamma);

struct ConcurrenceSample {
    double theta;
    double concurrence;
};

struct ConcurrenceProfile {
    PureState2Q initial;
    std::vector<ConcurrenceSample> samples;
    double theta_max = 0.0;
    double C_max = 0.0;
};

inline constexpr int kMaximizerGrid = 4096;
inline constexpr double kMaximizerThetaTol = 1e-10;

struct ThetaMaximum {
    double theta;
    double concurrence;
};

/// Every global maximizer of concurrence_evolved over theta in [0, pi),
/// ascending. Dense grid, golden-section refinement, then Newton polish on
/// d|f|^2/dtheta (golden section alone stalls near 1e-8 because C is flat
/// at its peak). A theta-independent profile yields the single point 0.
std::vector<ThetaMaximum> maximize_concurrence(const PureState2Q &initial);

/// `steps` samples over theta in [0, pi] inclusive, plus the maximizer.
ConcurrenceProfile concurrence_profile(const PureState2Q &initial, int steps);

struct MaxEntanglement {
    double t;
    double theta;
    double C_max;
};

/// Smallest t >= 0 with theta = 2Jt reaching the concurrence maximum.
/// Throws ZeroCoupling when J = 0.
MaxEntanglement max_entanglement_time(const PureState2Q &initial, const SystemParams &p);

}  // namespace spintorus

#endif  // SPINTORUS_ENTANGLEMENT_H
