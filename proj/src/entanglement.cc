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

#include "spintorus/entanglement.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "spintorus/error.h"
#include "spintorus/manifold.h"

namespace spintorus {

namespace {

constexpr Amp kI{0.0, 1.0};
constexpr double kClampSlack = 1e-9;
constexpr double kEigenFloor = 1e-14;

double clamp_concurrence(double c) {
    if (!std::isfinite(c) || c > 1.0 + kClampSlack) {
        throw Error(ErrorCode::kConsistency, "concurrence " + std::to_string(c) + " outside [0, 1]");
    }
    return std::clamp(c, 0.0, 1.0);
}

// f(theta) with C = 2|f|, and its first two theta derivatives.
struct OrbitAmplitude {
    Amp ad, bc, sym;

    explicit OrbitAmplitude(const PureState2Q &s)
        : ad(s.a() * s.d()), bc(s.b() * s.c()), sym(s.b() * s.b() + s.c() * s.c()) {
    }

    Amp value(double theta) const {
        const double u = 2.0 * theta;
        return ad * std::polar(1.0, -u) - (bc * std::cos(u) - 0.5 * kI * sym * std::sin(u));
    }
    Amp first(double theta) const {
        const double u = 2.0 * theta;
        return -2.0 * kI * ad * std::polar(1.0, -u) + 2.0 * bc * std::sin(u) + kI * sym * std::cos(u);
    }
    Amp second(double theta) const {
        const double u = 2.0 * theta;
        return -4.0 * ad * std::polar(1.0, -u) + 4.0 * bc * std::cos(u) - 2.0 * kI * sym * std::sin(u);
    }
};

double golden_section_max(const std::function<double(double)> &f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

// Newton on g = |f|^2, g' = 2 Re(f* f'), g'' = 2(|f'|^2 + Re(f* f'')).
double newton_polish(const OrbitAmplitude &orbit, double theta, double max_step) {
    for (int iter = 0; iter < 8; ++iter) {
        const Amp f = orbit.value(theta);
        const Amp f1 = orbit.first(theta);
        const double g1 = 2.0 * std::real(std::conj(f) * f1);
        const double g2 = 2.0 * (std::norm(f1) + std::real(std::conj(f) * orbit.second(theta)));
        if (!(g2 < 0.0)) {
            break;
        }
        const double step = -g1 / g2;
        if (std::abs(step) > max_step) {
            break;
        }
        theta += step;
        if (std::abs(step) < 1e-15) {
            break;
        }
    }
    return theta;
}

double wrap_theta(double theta) {
    double r = std::fmod(theta, std::numbers::pi);
    if (r < 0.0) {
        r += std::numbers::pi;
    }
    return r >= std::numbers::pi ? 0.0 : r;
}

}  // namespace

Spinor spin_plus(double chi, double gamma_az) {
    return {std::cos(chi / 2.0), std::sin(chi / 2.0) * std::polar(1.0, gamma_az)};
}

Spinor spin_minus(double chi, double gamma_az) {
    return {-std::sin(chi / 2.0), std::cos(chi / 2.0) * std::polar(1.0, gamma_az)};
}

PureState2Q product_state(const Spinor &first, const Spinor &second) {
    return PureState2Q::normalize(first[0] * second[0], first[0] * second[1], first[1] * second[0],
                                  first[1] * second[1]);
}

std::string_view product_kind_name(ProductKind kind) {
    switch (kind) {
        case ProductKind::kPlusMinus:
            return "pm";
        case ProductKind::kPlusPlus:
            return "pp";
        case ProductKind::kMinusMinus:
            return "mm";
        case ProductKind::kUpDown:
            return "updown";
    }
    return "unknown";
}

PureState2Q named_product_state(ProductKind kind, double chi, double gamma_az) {
    switch (kind) {
        case ProductKind::kPlusMinus:
            return product_state(spin_plus(chi, gamma_az), spin_minus(chi, gamma_az));
        case ProductKind::kPlusPlus:
            return product_state(spin_plus(chi, gamma_az), spin_plus(chi, gamma_az));
        case ProductKind::kMinusMinus:
            return product_state(spin_minus(chi, gamma_az), spin_minus(chi, gamma_az));
        case ProductKind::kUpDown:
            return PureState2Q::basis(kUpDown);
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown product kind");
}

double concurrence(const PureState2Q &state) {
    return clamp_concurrence(2.0 * std::abs(state.a() * state.d() - state.b() * state.c()));
}

double concurrence_wootters_oracle(const PureState2Q &state) {
    using Mat = Eigen::Matrix4cd;
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) {
        psi(i) = state[static_cast<std::size_t>(i)];
    }
    const Mat rho = psi * psi.adjoint();

    Eigen::Matrix2cd sy;
    sy << 0.0, -kI, kI, 0.0;
    Mat flip;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            flip(r, c) = sy(r / 2, c / 2) * sy(r % 2, c % 2);
        }
    }
    const Mat rho_tilde = flip * rho.conjugate() * flip;

    Eigen::SelfAdjointEigenSolver<Mat> rho_eig(rho);
    Eigen::Vector4d root = rho_eig.eigenvalues();
    for (int i = 0; i < 4; ++i) {
        root(i) = root(i) > kEigenFloor ? std::sqrt(root(i)) : 0.0;
    }
    const Mat sqrt_rho = rho_eig.eigenvectors() * root.cast<Amp>().asDiagonal() * rho_eig.eigenvectors().adjoint();

    Mat m = sqrt_rho * rho_tilde * sqrt_rho;
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> m_eig(m, Eigen::EigenvaluesOnly);
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        const double mu = m_eig.eigenvalues()(i);
        lambda[static_cast<std::size_t>(i)] = mu > kEigenFloor ? std::sqrt(mu) : 0.0;
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return clamp_concurrence(std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]));
}

double concurrence_evolved(const PureState2Q &initial, double theta) {
    return clamp_concurrence(2.0 * std::abs(OrbitAmplitude(initial).value(theta)));
}

double concurrence_disentangled(const PureState2Q &initial, double theta) {
    if (concurrence(initial) >= 1e-10) {
        throw Error(ErrorCode::kNotDisentangled, "initial state is entangled");
    }
    return clamp_concurrence(std::norm(initial.b() - initial.c()) * std::abs(std::sin(2.0 * theta)));
}

EntanglementCircle constant_entanglement_circle(const PureState2Q &initial, double theta, double gamma) {
    if (!(gamma > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
    }
    const double spread = family_invariants(initial).a_minus_d2();
    if (spread < -kNormTolerance) {
        throw Error(ErrorCode::kConsistency, "A - D^2 is negative");
    }
    return {concurrence_evolved(initial, theta), gamma * std::sqrt(std::max(0.0, spread))};
}

std::vector<ThetaMaximum> maximize_concurrence(const PureState2Q &initial) {
    const OrbitAmplitude orbit(initial);
    const double spacing = std::numbers::pi / kMaximizerGrid;
    std::vector<double> grid(kMaximizerGrid);
    for (int i = 0; i < kMaximizerGrid; ++i) {
        grid[static_cast<std::size_t>(i)] = concurrence_evolved(initial, i * spacing);
    }
    const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
    if (*hi_it - *lo_it < 1e-12) {
        return {{0.0, grid.front()}};
    }

    const auto c_of = [&orbit](double theta) { return 2.0 * std::abs(orbit.value(theta)); };
    std::vector<ThetaMaximum> peaks;
    for (int i = 0; i < kMaximizerGrid; ++i) {
        const double here = grid[static_cast<std::size_t>(i)];
        const double prev = grid[static_cast<std::size_t>((i + kMaximizerGrid - 1) % kMaximizerGrid)];
        const double next = grid[static_cast<std::size_t>((i + 1) % kMaximizerGrid)];
        if (here < prev || here < next || here < *hi_it - 1e-6) {
            continue;
        }
        double theta = golden_section_max(c_of, (i - 1) * spacing, (i + 1) * spacing, kMaximizerThetaTol);
        theta = wrap_theta(newton_polish(orbit, theta, spacing));
        peaks.push_back({theta, concurrence_evolved(initial, theta)});
    }

    double best = 0.0;
    for (const auto &pk : peaks) {
        best = std::max(best, pk.concurrence);
    }
    std::vector<ThetaMaximum> out;
    for (const auto &pk : peaks) {
        if (pk.concurrence < best - 1e-12) {
            continue;
        }
        // A plateau can flag neighbouring grid points that refine to one peak.
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const ThetaMaximum &q) {
            const double gap = std::abs(q.theta - pk.theta);
            return std::min(gap, std::numbers::pi - gap) < 1e-8;
        });
        if (!duplicate) {
            out.push_back(pk);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.theta < y.theta; });
    return out;
}

ConcurrenceProfile concurrence_profile(const PureState2Q &initial, int steps) {
    if (steps < 2) {
        throw Error(ErrorCode::kInvalidArgument, "profile needs at least 2 steps");
    }
    ConcurrenceProfile profile{initial, {}, 0.0, 0.0};
    profile.samples.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double theta = std::numbers::pi * i / (steps - 1);
        profile.samples.push_back({theta, concurrence_evolved(initial, theta)});
    }
    const ThetaMaximum top = maximize_concurrence(initial).front();
    profile.theta_max = top.theta;
    profile.C_max = top.concurrence;
    return profile;
}

MaxEntanglement max_entanglement_time(const PureState2Q &initial, const SystemParams &p) {
    if (p.J == 0.0) {
        throw Error(ErrorCode::kZeroCoupling, "J = 0 freezes theta at 0");
    }
    MaxEntanglement best{0.0, 0.0, 0.0};
    bool found = false;
    for (const auto &pk : maximize_concurrence(initial)) {
        double t = 0.0;
        if (pk.theta > 0.0) {
            t = p.J > 0.0 ? pk.theta / (2.0 * p.J) : (pk.theta - std::numbers::pi) / (2.0 * p.J);
        }
        if (!found || t < best.t) {
            best = {t, pk.theta, pk.concurrence};
            found = true;
        }
    }
    return best;
}

}  // namespace spintorus
