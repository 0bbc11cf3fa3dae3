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

#include "spintorus/manifold.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "spintorus/error.h"

namespace spintorus {

namespace {

constexpr Amp kI{0.0, 1.0};

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) {
        r += period;
    }
    // fmod of a value just below a multiple of the period can round up to it.
    return r >= period ? 0.0 : r;
}

// Fills the shear and diagonal fields from raw (g_tt, g_tp, g_pp).
void fill_diagonal_form(MetricTensor2 &m, double g_pp_scaled, double cross_scaled) {
    m.g_pp_diag = m.g_pp;
    if (g_pp_scaled > kShearThreshold) {
        m.k = m.g_tp / m.g_pp;
        m.g_tt_diag = std::max(0.0, m.determinant() / m.g_pp);
    } else if (cross_scaled == 0.0) {
        m.g_tt_diag = m.g_tt;
    } else {
        m.degenerate_shear = true;
    }
}

double fd_quotient(const StateFamily &family, TorusPoint pt, double dt, double dp, double h, double gamma) {
    PureState2Q minus = family({pt.theta - h * dt, pt.phi - h * dp});
    PureState2Q plus = family({pt.theta + h * dt, pt.phi + h * dp});
    return fs_distance_sq(minus, plus, gamma) / (4.0 * h * h);
}

double richardson(const StateFamily &family, TorusPoint pt, double dt, double dp, double h, double gamma) {
    double coarse = fd_quotient(family, pt, dt, dp, h, gamma);
    double fine = fd_quotient(family, pt, dt, dp, 0.5 * h, gamma);
    return (4.0 * fine - coarse) / 3.0;
}

double unit_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TorusPoint canonicalize(TorusPoint pt) {
    return {wrap(pt.theta, std::numbers::pi), wrap(pt.phi, 2.0 * std::numbers::pi)};
}

FamilyInvariants family_invariants(const PureState2Q &initial) {
    const double pa = std::norm(initial.a());
    const double pd = std::norm(initial.d());
    return {pa + pd, std::norm(initial.b() - initial.c()), pa - pd};
}

PureState2Q evolve_family(const PureState2Q &initial, TorusPoint pt) {
    const double ct = std::cos(pt.theta);
    const double st = std::sin(pt.theta);
    return assume_normalized({
        initial.a() * std::polar(1.0, -(pt.phi + pt.theta)),
        initial.b() * ct - kI * initial.c() * st,
        -kI * initial.b() * st + initial.c() * ct,
        initial.d() * std::polar(1.0, pt.phi - pt.theta),
    });
}

PureState2Q evolve_family_primed(const PureState2Q &initial, TorusPoint primed, double k) {
    return evolve_family(initial, {primed.theta, primed.phi - k * primed.theta});
}

TorusPoint params_to_point(const SystemParams &p, double t) {
    return canonicalize({2.0 * p.J * t, 2.0 * p.h_z * t});
}

MetricTensor2 metric_analytic(const PureState2Q &initial, double gamma) {
    if (!(gamma > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
    }
    const FamilyInvariants inv = family_invariants(initial);
    const double g2 = gamma * gamma;
    const double spread = std::max(0.0, inv.a_minus_d2());

    MetricTensor2 m;
    m.g_tt = g2 * inv.B * (2.0 - inv.B);
    m.g_tp = g2 * inv.B * inv.D;
    m.g_pp = g2 * spread;
    m.g_pp_diag = m.g_pp;
    if (spread > kShearThreshold) {
        m.k = inv.B * inv.D / spread;
        const double num = std::max(0.0, inv.B * (2.0 * spread - inv.A * inv.B));
        m.g_tt_diag = g2 * num / spread;
    } else if (inv.B * inv.D == 0.0) {
        m.g_tt_diag = m.g_tt;
    } else {
        m.degenerate_shear = true;
    }
    return m;
}

MetricTensor2 metric_numeric_of(const StateFamily &family, TorusPoint pt, double gamma, double h) {
    if (!std::isfinite(h) || h < kMinFdStep) {
        throw Error(ErrorCode::kStepTooSmall, "finite-difference step below 1e-6 is under the noise floor");
    }
    if (h > kMaxFdStep) {
        throw Error(ErrorCode::kInvalidArgument, "finite-difference step above 1e-2");
    }
    if (!(gamma > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
    }
    MetricTensor2 m;
    m.g_tt = richardson(family, pt, 1.0, 0.0, h, gamma);
    m.g_pp = richardson(family, pt, 0.0, 1.0, h, gamma);
    const double both = richardson(family, pt, 1.0, 1.0, h, gamma);
    m.g_tp = 0.5 * (both - m.g_tt - m.g_pp);

    const double g2 = gamma * gamma;
    const double cross = std::abs(m.g_tp / g2) > 1e-10 ? m.g_tp : 0.0;
    fill_diagonal_form(m, m.g_pp / g2, cross);
    return m;
}

MetricTensor2 metric_numeric(const PureState2Q &initial, TorusPoint pt, double gamma, double h) {
    return metric_numeric_of([&initial](TorusPoint q) { return evolve_family(initial, q); }, pt, gamma, h);
}

double diagonalize_check(const PureState2Q &initial, double gamma, TorusPoint at) {
    const MetricTensor2 analytic = metric_analytic(initial, gamma);
    if (analytic.degenerate_shear) {
        throw Error(ErrorCode::kDegenerateShear, "A - D^2 vanishes while B D does not; shear k is undefined");
    }
    const double k = analytic.k.value_or(0.0);
    const MetricTensor2 primed = metric_numeric_of(
        [&initial, k](TorusPoint q) { return evolve_family_primed(initial, q, k); }, at, gamma);
    return std::abs(primed.g_tp);
}

std::string_view manifold_kind_name(ManifoldKind kind) {
    switch (kind) {
        case ManifoldKind::kFlatTorus:
            return "FlatTorus";
        case ManifoldKind::kCircle:
            return "Circle";
        case ManifoldKind::kPoint:
            return "Point";
    }
    return "Unknown";
}

ManifoldReport classify(const PureState2Q &initial, double gamma, double tol) {
    ManifoldReport report;
    report.invariants = family_invariants(initial);
    report.metric = metric_analytic(initial, gamma);

    const MetricTensor2 &m = report.metric;
    const double B = report.invariants.B;
    report.phi_radius = gamma * std::sqrt(std::max(0.0, report.invariants.a_minus_d2()));
    report.theta_radius = gamma * std::sqrt(std::max(0.0, B * (2.0 - B)));
    const double tt = m.g_tt_diag.value_or(m.g_tt);
    const bool tt_alive = tt > tol;
    const bool pp_alive = m.g_pp_diag > tol;

    if (tt_alive && pp_alive) {
        report.dimension = 2;
        report.kind = ManifoldKind::kFlatTorus;
    } else if (pp_alive) {
        report.dimension = 1;
        report.kind = ManifoldKind::kCircle;
        report.circle_axis = CircleAxis::kPhi;
        report.circle_radius = report.phi_radius;
    } else if (tt_alive) {
        report.dimension = 1;
        report.kind = ManifoldKind::kCircle;
        report.circle_axis = CircleAxis::kTheta;
        report.circle_radius = report.theta_radius;
        report.radius_derived = true;
    }

    std::mt19937_64 rng(kFlatnessSeed);
    std::array<std::array<double, 3>, kFlatnessSamples> samples{};
    std::array<double, 3> mean{};
    for (auto &s : samples) {
        const double theta = std::numbers::pi * unit_uniform(rng);
        const double phi = 2.0 * std::numbers::pi * unit_uniform(rng);
        const MetricTensor2 num = metric_numeric(initial, {theta, phi}, gamma);
        s = {num.g_tt, num.g_tp, num.g_pp};
        for (int i = 0; i < 3; ++i) {
            mean[i] += s[i] / kFlatnessSamples;
        }
    }
    for (const auto &s : samples) {
        for (int i = 0; i < 3; ++i) {
            report.flatness_residual = std::max(report.flatness_residual, std::abs(s[i] - mean[i]));
        }
    }
    return report;
}

}  // namespace spintorus
