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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "spintorus/entanglement.h"
#include "spintorus/error.h"
#include "spintorus/hamiltonian.h"
#include "spintorus/manifold.h"

namespace spintorus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Amp kI{0.0, 1.0};

class Battery {
   public:
    explicit Battery(std::uint64_t seed) : rng_(seed) {
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    PureState2Q random_state() {
        std::normal_distribution<double> n(0.0, 1.0);
        Amplitudes amps;
        for (auto &x : amps) {
            x = {n(rng_), n(rng_)};
        }
        return PureState2Q::normalize(amps);
    }

    TorusPoint random_point() {
        return {uniform(0.0, kPi), uniform(0.0, 2.0 * kPi)};
    }

    SystemParams random_params() {
        return {uniform(-2.0, 2.0), uniform(-2.0, 2.0), 1.0};
    }

    /// Runs `body`, which returns its worst residual; exceptions count as failure.
    void check(VerifyReport &report, std::string name, double tolerance, const std::function<double()> &body) {
        double residual;
        try {
            residual = body();
        } catch (const std::exception &) {
            residual = std::numeric_limits<double>::infinity();
        }
        const bool ok = std::isfinite(residual) && residual <= tolerance;
        report.checks.push_back({std::move(name), ok, residual, tolerance});
    }

   private:
    std::mt19937_64 rng_;
};

// Draws cover the J = 0 and |2Jt| < 1e-6 branches before random ones.
std::vector<std::pair<SystemParams, double>> propagator_draws(Battery &bat) {
    std::vector<std::pair<SystemParams, double>> draws = {
        {{0.0, 0.7, 1.0}, 1.3},
        {{0.0, -0.4, 1.0}, -2.1},
        {{1e-8, 0.5, 1.0}, 0.9},
        {{0.6, 0.2, 1.0}, 3e-7},
    };
    while (draws.size() < 100) {
        draws.push_back({bat.random_params(), bat.uniform(-3.0, 3.0)});
    }
    return draws;
}

double eigen_residual(const SystemParams &p) {
    const Operator4 h = build_hamiltonian(p);
    double worst = 0.0;
    for (const auto &pair : eigensystem(p).pairs) {
        Amplitudes hv = h * pair.vector.amplitudes();
        Amplitudes lv = pair.vector.amplitudes();
        for (auto &x : lv) {
            x *= pair.value;
        }
        worst = std::max(worst, max_abs_diff(hv, lv));
    }
    return worst;
}

}  // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

double VerifyReport::max_residual() const {
    double worst = 0.0;
    for (const auto &c : checks) {
        worst = std::max(worst, c.residual);
    }
    return worst;
}

OrderedJson VerifyReport::to_json() const {
    OrderedJson arr = OrderedJson::array();
    for (const auto &c : checks) {
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"residual", std::isfinite(c.residual) ? OrderedJson(c.residual) : OrderedJson(nullptr)},
                       {"tolerance", c.tolerance}});
    }
    return {{"seed", seed}, {"passed", all_passed()}, {"checks", std::move(arr)}};
}

VerifyReport verify_all(std::uint64_t seed, const VerifyOptions &options) {
    VerifyReport report;
    report.seed = seed;
    Battery bat(seed);

    const auto propagator = [&options](const SystemParams &p, double t) {
        Operator4 u = propagator_analytic(p, t);
        if (options.corrupt_propagator) {
            u(1, 2) = -u(1, 2);
        }
        return u;
    };

    // ---- hamiltonian ------------------------------------------------------
    bat.check(report, "eigensystem_values", 1e-12, [] {
        const SystemParams p{1.0, 0.5, 1.0};
        const auto es = eigensystem(p);
        const double expected[] = {3.0, 1.0, 2.0, -2.0};
        double worst = eigen_residual(p);
        for (std::size_t i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(es.pairs[i].value - expected[i]));
        }
        return worst;
    });
    bat.check(report, "eigensystem_random", 1e-12, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            worst = std::max(worst, eigen_residual(bat.random_params()));
        }
        return worst;
    });
    bat.check(report, "h_int_squared", 1e-12, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const SystemParams p = bat.random_params();
            const Operator4 h = build_h_int(p);
            worst = std::max(worst, max_abs_diff(h * h, Operator4::identity() * Amp{4.0 * p.J * p.J}));
        }
        return worst;
    });
    bat.check(report, "commutator_int_mf", 1e-12, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const SystemParams p = bat.random_params();
            worst = std::max(worst, max_abs_diff(commutator(build_h_int(p), build_h_mf(p)), Operator4{}));
        }
        return worst;
    });

    const auto draws = propagator_draws(bat);
    bat.check(report, "propagator_unitarity", 1e-12, [&] {
        double worst = 0.0;
        for (const auto &[p, t] : draws) {
            worst = std::max(worst, unitarity_residual(propagator(p, t)));
        }
        return worst;
    });
    bat.check(report, "propagator_spectral_oracle", 1e-10, [&] {
        double worst = 0.0;
        for (const auto &[p, t] : draws) {
            worst = std::max(worst, max_abs_diff(propagator(p, t), propagator_spectral(p, t)));
        }
        return worst;
    });
    bat.check(report, "propagator_factorization", 1e-10, [&] {
        double worst = 0.0;
        for (const auto &[p, t] : draws) {
            const Amp up = std::polar(1.0, -p.h_z * t);
            const std::array<Amp, 4> spin{up, 0.0, 0.0, std::conj(up)};
            const Operator4 product =
                interaction_propagator(p, t) * kron(spin, identity2()) * kron(identity2(), spin);
            worst = std::max(worst, max_abs_diff(propagator(p, t), product));
        }
        return worst;
    });
    bat.check(report, "propagator_group_law", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const SystemParams p = bat.random_params();
            const double t1 = bat.uniform(-2.0, 2.0);
            const double t2 = bat.uniform(-2.0, 2.0);
            worst = std::max(worst, max_abs_diff(propagator(p, t1) * propagator(p, t2), propagator(p, t1 + t2)));
        }
        return worst;
    });

    // ---- manifold ---------------------------------------------------------
    bat.check(report, "evolve_family_vs_propagator", 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const SystemParams p = bat.random_params();
            const double t = bat.uniform(-2.0, 2.0);
            const PureState2Q initial = bat.random_state();
            const PureState2Q direct = apply(propagator(p, t), initial);
            const PureState2Q family = evolve_family(initial, {2.0 * p.J * t, 2.0 * p.h_z * t});
            worst = std::max(worst, max_abs_diff(direct, family));
        }
        return worst;
    });
    bat.check(report, "periodicity_amplitude", 1e-12, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PureState2Q initial = bat.random_state();
            const TorusPoint pt = bat.random_point();
            const PureState2Q base = evolve_family(initial, pt);
            worst = std::max(worst, max_abs_diff(evolve_family(initial, {pt.theta + kPi, pt.phi}), -base));
            worst = std::max(worst, max_abs_diff(evolve_family(initial, {pt.theta, pt.phi + 2.0 * kPi}), base));
            if (!ray_equal(evolve_family(initial, {pt.theta + kPi, pt.phi}), base, 1e-10)) {
                worst = std::numeric_limits<double>::infinity();
            }
        }
        return worst;
    });
    bat.check(report, "periodicity_primed", 1e-10, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PureState2Q initial = bat.random_state();
            const double k = metric_analytic(initial, 1.0).k.value_or(0.0);
            const TorusPoint pt = bat.random_point();
            const PureState2Q base = evolve_family_primed(initial, pt, k);
            const PureState2Q shifted = evolve_family_primed(initial, {pt.theta + kPi, pt.phi + k * kPi}, k);
            worst = std::max(worst, max_abs_diff(shifted, -base));
        }
        return worst;
    });

    std::vector<PureState2Q> metric_states;
    for (int i = 0; i < 50; ++i) {
        metric_states.push_back(bat.random_state());
    }
    std::vector<std::array<TorusPoint, 3>> metric_points;
    for (int i = 0; i < 50; ++i) {
        metric_points.push_back({bat.random_point(), bat.random_point(), bat.random_point()});
    }
    const double gamma = 1.0;
    bat.check(report, "metric_fd_oracle", 1e-6, [&] {
        double worst = 0.0;
        for (std::size_t i = 0; i < metric_states.size(); ++i) {
            const MetricTensor2 exact = metric_analytic(metric_states[i], gamma);
            for (const auto &pt : metric_points[i]) {
                const MetricTensor2 num = metric_numeric(metric_states[i], pt, gamma);
                worst = std::max({worst, std::abs(num.g_tt - exact.g_tt), std::abs(num.g_tp - exact.g_tp),
                                  std::abs(num.g_pp - exact.g_pp)});
            }
        }
        return worst;
    });
    bat.check(report, "metric_flatness", 1e-6, [&] {
        double worst = 0.0;
        for (std::size_t i = 0; i < metric_states.size(); ++i) {
            std::array<MetricTensor2, 3> m;
            for (std::size_t j = 0; j < 3; ++j) {
                m[j] = metric_numeric(metric_states[i], metric_points[i][j], gamma);
            }
            for (std::size_t j = 1; j < 3; ++j) {
                worst = std::max({worst, std::abs(m[j].g_tt - m[0].g_tt), std::abs(m[j].g_tp - m[0].g_tp),
                                  std::abs(m[j].g_pp - m[0].g_pp)});
            }
        }
        return worst;
    });
    bat.check(report, "metric_diagonalization", 1e-8, [&] {
        double worst = 0.0;
        for (const auto &s : metric_states) {
            worst = std::max(worst, diagonalize_check(s, gamma));
        }
        return worst;
    });
    bat.check(report, "positivity_identities", 1e-10, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const PureState2Q s = bat.random_state();
            const FamilyInvariants inv = family_invariants(s);
            const double pa = std::norm(s.a());
            const double pd = std::norm(s.d());
            const double lhs1 = inv.B * (2.0 * inv.A - 2.0 * inv.D * inv.D - inv.A * inv.B);
            const double rhs1 =
                (pa + pd) * std::norm(s.b() * s.b() - s.c() * s.c()) + 8.0 * pa * pd * std::norm(s.b() - s.c());
            const double lhs2 = inv.A - inv.D * inv.D;
            const double rhs2 = pa * (1.0 - pa) + pd * (1.0 - pd) + 2.0 * pa * pd;
            worst = std::max({worst, std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2), -rhs1, -rhs2});
            const MetricTensor2 m = metric_analytic(s, 1.0);
            worst = std::max({worst, -m.g_tt, -m.g_pp, -m.determinant()});
        }
        return worst;
    });

    // ---- entanglement -----------------------------------------------------
    bat.check(report, "concurrence_oracles", 1e-10, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const PureState2Q s = bat.random_state();
            const double theta = bat.uniform(0.0, kPi);
            const double direct = concurrence(evolve_family(s, {theta, 0.0}));
            worst = std::max(worst, std::abs(concurrence(s) - concurrence_wootters_oracle(s)));
            worst = std::max(worst, std::abs(concurrence_evolved(s, theta) - direct));
            worst = std::max(worst, std::abs(concurrence_wootters_oracle(evolve_family(s, {theta, 0.0})) - direct));
        }
        return worst;
    });
    bat.check(report, "concurrence_phi_independence", 1e-12, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PureState2Q s = bat.random_state();
            const double theta = bat.uniform(0.0, kPi);
            const double base = concurrence_evolved(s, theta);
            for (int j = 0; j < 5; ++j) {
                const double phi = bat.uniform(0.0, 2.0 * kPi);
                worst = std::max(worst, std::abs(concurrence(evolve_family(s, {theta, phi})) - base));
            }
        }
        return worst;
    });
    bat.check(report, "concurrence_theta_period", 1e-12, [&bat] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PureState2Q s = bat.random_state();
            const double theta = bat.uniform(0.0, kPi);
            worst = std::max(worst, std::abs(concurrence_evolved(s, theta + kPi) - concurrence_evolved(s, theta)));
        }
        return worst;
    });

    // ---- named scenarios --------------------------------------------------
    bat.check(report, "scenario_pm_metric", 1e-10, [] {
        double worst = 0.0;
        for (double chi : {0.3, kPi / 3.0, kPi / 2.0}) {
            const MetricTensor2 m = metric_analytic(named_product_state(ProductKind::kPlusMinus, chi, 0.4), 1.0);
            const double s = std::sin(chi);
            worst = std::max({worst, std::abs(m.g_tt - 1.0), std::abs(m.g_tp), std::abs(m.g_pp - 0.5 * s * s)});
        }
        return worst;
    });
    bat.check(report, "scenario_pm_profile", 1e-12, [] {
        const PureState2Q s = named_product_state(ProductKind::kPlusMinus, 0.9, 1.1);
        double worst = 0.0;
        for (int i = 0; i < kMaximizerGrid; ++i) {
            const double theta = kPi * i / kMaximizerGrid;
            worst = std::max(worst, std::abs(concurrence_evolved(s, theta) - std::abs(std::sin(2.0 * theta))));
        }
        return worst;
    });
    bat.check(report, "scenario_pm_max_time", 1e-10, [] {
        const PureState2Q s = named_product_state(ProductKind::kPlusMinus, 0.7, 0.0);
        double worst = 0.0;
        for (double J : {0.5, 1.0, 2.0}) {
            const MaxEntanglement m = max_entanglement_time(s, {J, 0.3, 1.0});
            worst = std::max({worst, std::abs(m.t - kPi / (8.0 * J)), std::abs(m.C_max - 1.0)});
        }
        return worst;
    });
    bat.check(report, "scenario_updown", 1e-10, [] {
        const PureState2Q s = PureState2Q::basis(kUpDown);
        const ManifoldReport r = classify(s, 1.0);
        double worst = r.kind == ManifoldKind::kCircle ? 0.0 : std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(r.circle_radius.value_or(-1.0) - 1.0));
        worst = std::max(worst, std::abs(concurrence_evolved(s, kPi / 4.0) - 1.0));
        const PureState2Q target = PureState2Q::normalize(0.0, 1.0, -kI, 0.0);
        worst = std::max(worst, 1.0 - std::norm(inner(evolve_family(s, {kPi / 4.0, 0.0}), target)));
        return worst;
    });
    bat.check(report, "scenario_pp_mm", 1e-10, [] {
        double worst = 0.0;
        for (auto kind : {ProductKind::kPlusPlus, ProductKind::kMinusMinus}) {
            for (double chi : {0.4, 1.2, 2.5}) {
                const PureState2Q s = named_product_state(kind, chi, 0.8);
                const ManifoldReport r = classify(s, 1.0);
                if (r.kind != ManifoldKind::kCircle) {
                    return std::numeric_limits<double>::infinity();
                }
                worst = std::max(worst, std::abs(r.circle_radius.value_or(-1.0) - std::sin(chi) / std::sqrt(2.0)));
                for (int i = 0; i < 64; ++i) {
                    worst = std::max(worst, concurrence(evolve_family(s, {kPi * i / 64.0, 0.3 * i})));
                }
            }
        }
        return worst;
    });
    return report;
}

}  // namespace spintorus
