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

#ifndef SPINTORUS_MANIFOLD_H
#define SPINTORUS_MANIFOLD_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "spintorus/hamiltonian.h"
#include "spintorus/qstate.h"

namespace spintorus {

/// Coordinates (theta, phi) = (2Jt, 2 h_z t) on the evolution manifold.
struct TorusPoint {
    double theta = 0.0;
    double phi = 0.0;

    bool operator==(const TorusPoint &) const = default;
};

/// Maps theta into [0, pi) and phi into [0, 2 pi). The theta -> theta + pi
/// identification holds only up to a global sign, which is dropped here.
TorusPoint canonicalize(TorusPoint pt);

/// Invariants of the orbit, functions of the initial amplitudes only:
/// A = |a|^2 + |d|^2, B = |b - c|^2, D = |a|^2 - |d|^2.
struct FamilyInvariants {
    double A = 0.0;
    double B = 0.0;
    double D = 0.0;

    double a_minus_d2() const {
        return A - D * D;
    }
};

FamilyInvariants family_invariants(const PureState2Q &initial);

/// Metric components in (theta, phi), the shear k of phi' = phi + k theta,
/// and the components in the diagonal coordinates (theta', phi').
struct MetricTensor2 {
    double g_tt = 0.0;
    double g_tp = 0.0;
    double g_pp = 0.0;
    /// Undefined when A - D^2 <= 1e-12.
    std::optional<double> k;
    /// Undefined only together with degenerate_shear.
    std::optional<double> g_tt_diag;
    double g_pp_diag = 0.0;
    /// A - D^2 <= 1e-12 while B D != 0: no shear removes the cross term.
    bool degenerate_shear = false;

    double determinant() const {
        return g_tt * g_pp - g_tp * g_tp;
    }
};

inline constexpr double kShearThreshold = 1e-12;

/// The evolved state U(t)|initial> written in (theta, phi):
///   a e^{-i(phi+theta)} |uu> + (b cos(theta) - i c sin(theta)) |ud>
///   + (-i b sin(theta) + c cos(theta)) |du> + d e^{i(phi-theta)} |dd>.
PureState2Q evolve_family(const PureState2Q &initial, TorusPoint pt);

/// Same family in the sheared coordinates theta' = theta, phi' = phi + k theta.
PureState2Q evolve_family_primed(const PureState2Q &initial, TorusPoint primed, double k);

/// (2Jt, 2 h_z t), canonicalized.
TorusPoint params_to_point(const SystemParams &p, double t);

/// Closed-form Fubini-Study metric of the orbit of `initial`:
///   g_tt = gamma^2 B(2-B), g_tp = gamma^2 B D, g_pp = gamma^2 (A - D^2),
///   g_tt' = gamma^2 B(2A - 2D^2 - AB)/(A - D^2), g_pp' = gamma^2 (A - D^2).
/// Degenerate shear is reported through the tensor's flag, not thrown.
MetricTensor2 metric_analytic(const PureState2Q &initial, double gamma);

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kMinFdStep = 1e-6;
inline constexpr double kMaxFdStep = 1e-2;

using StateFamily = std::function<PureState2Q(TorusPoint)>;

/// Finite-difference metric of an arbitrary two-parameter family at `pt`.
///
/// Each diagonal quotient is d^2(pt - h e, pt + h e) / (2h)^2, with one
/// Richardson step over (h, h/2). For a one-parameter unitary flow the
/// quotient is even in h, so the extrapolated error is O(h^4). The cross
/// term comes from the polarization identity along e_theta + e_phi.
///
/// Throws StepTooSmall for h < 1e-6 and InvalidArgument for h > 1e-2.
MetricTensor2 metric_numeric_of(const StateFamily &family, TorusPoint pt, double gamma, double h = kDefaultFdStep);

/// metric_numeric_of applied to evolve_family(initial, .). The shear and
/// diagonal fields are derived from the numeric components.
MetricTensor2 metric_numeric(const PureState2Q &initial, TorusPoint pt, double gamma, double h = kDefaultFdStep);

/// |g_theta'phi'| of the numerically estimated metric of the sheared family,
/// using k = B D / (A - D^2). k = 0 when A - D^2 vanishes with B D = 0.
/// Throws DegenerateShear when A - D^2 <= 1e-12 and B D != 0.
double diagonalize_check(const PureState2Q &initial, double gamma, TorusPoint at = {0.4, 1.3});

enum class ManifoldKind { kFlatTorus, kCircle, kPoint };

std::string_view manifold_kind_name(ManifoldKind kind);

enum class CircleAxis { kNone, kTheta, kPhi };

struct ManifoldReport {
    int dimension = 0;
    ManifoldKind kind = ManifoldKind::kPoint;
    FamilyInvariants invariants;
    MetricTensor2 metric;
    std::optional<double> circle_radius;
    CircleAxis circle_axis = CircleAxis::kNone;
    /// Set for theta-circles: gamma sqrt(B(2-B)) is extrapolated from the
    /// phi-circle construction rather than an established radius.
    bool radius_derived = false;
    /// Both candidates, whatever the kind: gamma sqrt(A - D^2) and gamma sqrt(B(2-B)).
    double phi_radius = 0.0;
    double theta_radius = 0.0;
    double flatness_residual = 0.0;
};

inline constexpr double kDegeneracyTolerance = 1e-10;
inline constexpr std::uint64_t kFlatnessSeed = 0x5EED2016ULL;
inline constexpr int kFlatnessSamples = 5;

/// Orbit classification from the diagonal metric components:
/// both above `tol` -> FlatTorus, one -> Circle, none -> Point.
/// flatness_residual is the max deviation of numeric metric components over
/// kFlatnessSamples points drawn from kFlatnessSeed from their mean.
ManifoldReport classify(const PureState2Q &initial, double gamma, double tol = kDegeneracyTolerance);

}  // namespace spintorus

#endif  // SPINTORUS_MANIFOLD_H
