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

// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// usage: acceptance_test <path-to-spin-torus> <scratch-dir>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "spintorus/entanglement.h"
#include "spintorus/hamiltonian.h"
#include "spintorus/manifold.h"
#include "spintorus/qstate.h"
#include "spintorus/scenario.h"
#include "test_util.h"

using namespace spintorus;
using namespace spintorus::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    double residual;
    std::string note;
};

int g_failures = 0;

void criterion(int id, const std::string &title, double tolerance, const std::function<Outcome()> &body) {
    Outcome out{kInf, ""};
    try {
        out = body();
    } catch (const std::exception &e) {
        out = {kInf, std::string("exception: ") + e.what()};
    }
    const bool ok = std::isfinite(out.residual) && out.residual <= tolerance;
    if (!ok) {
        ++g_failures;
    }
    // tolerance 1 marks a composite criterion: residual is max(sub-residual / sub-tolerance).
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << title
              << (tolerance == 1.0 ? "  scaled=" : "  residual=") << out.residual << " tol=" << tolerance << (out.note.empty() ? "" : "  (" + out.note + ")") << std::endl;
}

int run_cli(const std::string &cmd) {
    const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double eigen_residual(const SystemParams &p) {
    const Operator4 h = build_hamiltonian(p);
    double worst = 0.0;
    for (const auto &pair : eigensystem(p).pairs) {
        Amplitudes lv = pair.vector.amplitudes();
        for (auto &x : lv) {
            x *= pair.value;
        }
        worst = std::max(worst, max_abs_diff(h * pair.vector.amplitudes(), lv));
    }
    return worst;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance_test <spin-torus> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path scratch = argv[2];
    std::filesystem::create_directories(scratch);
    std::mt19937_64 rng(2016);

    criterion(1, "eigenvalues {3,1,2,-2} and H v = lambda v at (J,h_z)=(1,0.5)", 1e-12, [] {
        const SystemParams p{1.0, 0.5, 1.0};
        const auto es = eigensystem(p);
        const double expected[] = {3.0, 1.0, 2.0, -2.0};
        double worst = eigen_residual(p);
        for (std::size_t i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(es.pairs[i].value - expected[i]));
        }
        return Outcome{worst, ""};
    });

    criterion(2, "propagator analytic vs spectral (1e-10) and unitarity (1e-12), 100 draws", 1.0, [&rng] {
        std::vector<std::pair<SystemParams, double>> draws = {
            {{0.0, 0.9, 1.0}, 0.8},   {{0.0, -1.3, 1.0}, -2.0}, {{2e-9, 0.4, 1.0}, 1.5},
            {{1.2, 0.3, 1.0}, 1e-7}, {{-0.7, 0.1, 1.0}, -3e-7},
        };
        while (draws.size() < 100) {
            draws.push_back({{uniform(rng, -2, 2), uniform(rng, -2, 2), 1.0}, uniform(rng, -3, 3)});
        }
        double match = 0.0, unitary = 0.0;
        for (const auto &[p, t] : draws) {
            const Operator4 u = propagator_analytic(p, t);
            match = std::max(match, max_abs_diff(u, propagator_spectral(p, t)));
            unitary = std::max({unitary, unitarity_residual(u), unitarity_residual(propagator_spectral(p, t))});
        }
        const double normalized = std::max(match / 1e-10, unitary / 1e-12);
        return Outcome{normalized, "max diff " + format_double(match) + ", unitarity " + format_double(unitary)};
    });

    std::vector<PureState2Q> states;
    for (int i = 0; i < 50; ++i) {
        states.push_back(random_state(rng));
    }

    criterion(3, "metric: analytic vs finite differences at 3 points x 50 states; flatness spread", 1e-6, [&] {
        double worst = 0.0, spread = 0.0;
        for (const auto &s : states) {
            const auto exact = metric_analytic(s, 1.0);
            std::vector<MetricTensor2> nums;
            for (int j = 0; j < 3; ++j) {
                nums.push_back(metric_numeric(s, {uniform(rng, 0, kPi), uniform(rng, 0, 2 * kPi)}, 1.0));
                const auto &n = nums.back();
                worst = std::max({worst, std::abs(n.g_tt - exact.g_tt), std::abs(n.g_tp - exact.g_tp),
                                  std::abs(n.g_pp - exact.g_pp)});
            }
            for (const auto &n : nums) {
                spread = std::max({spread, std::abs(n.g_tt - nums[0].g_tt), std::abs(n.g_tp - nums[0].g_tp),
                                   std::abs(n.g_pp - nums[0].g_pp)});
            }
        }
        return Outcome{std::max(worst, spread), "oracle " + format_double(worst) + ", spread " + format_double(spread)};
    });

    criterion(4, "diagonalization cross-term residual with k = BD/(A-D^2), 50 states", 1e-8, [&] {
        double worst = 0.0;
        for (const auto &s : states) {
            worst = std::max(worst, diagonalize_check(s, 1.0));
        }
        return Outcome{worst, ""};
    });

    criterion(5, "positivity identities hold algebraically", 1e-10, [&rng] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto s = random_state(rng);
            const auto inv = family_invariants(s);
            const double pa = std::norm(s.a()), pd = std::norm(s.d());
            const double lhs1 = inv.B * (2 * inv.A - 2 * inv.D * inv.D - inv.A * inv.B);
            const double rhs1 =
                (pa + pd) * std::norm(s.b() * s.b() - s.c() * s.c()) + 8 * pa * pd * std::norm(s.b() - s.c());
            const double lhs2 = inv.A - inv.D * inv.D;
            const double rhs2 = pa * (1 - pa) + pd * (1 - pd) + 2 * pa * pd;
            worst = std::max({worst, std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2), -rhs1, -rhs2});
        }
        return Outcome{worst, ""};
    });

    criterion(6, "|+-> metric (1e-10), profile |sin 2theta| (1e-12), t = pi/(8J) (1e-10)", 1.0, [] {
        double metric = 0.0, profile = 0.0, timing = 0.0;
        for (double chi : {0.3, kPi / 3, kPi / 2}) {
            const auto m = metric_analytic(named_product_state(ProductKind::kPlusMinus, chi, 0.0), 1.0);
            metric = std::max({metric, std::abs(m.g_tt - 1.0), std::abs(m.g_tp),
                               std::abs(m.g_pp - std::sin(chi) * std::sin(chi) / 2)});
            const auto s = named_product_state(ProductKind::kPlusMinus, chi, 0.0);
            for (int i = 0; i < 4096; ++i) {
                const double theta = kPi * i / 4096;
                profile = std::max(profile, std::abs(concurrence_evolved(s, theta) - std::abs(std::sin(2 * theta))));
            }
            for (double J : {0.5, 1.0, 2.0}) {
                timing = std::max(timing, std::abs(max_entanglement_time(s, {J, 0.4, 1.0}).t - kPi / (8 * J)));
            }
        }
        const double normalized = std::max({metric / 1e-10, profile / 1e-12, timing / 1e-10});
        return Outcome{normalized, "metric " + format_double(metric) + ", profile " + format_double(profile) +
                                       ", time " + format_double(timing)};
    });

    criterion(7, "|ud>: Circle radius gamma, C(pi/4)=1, psi(pi/4) ~ (|ud> - i|du>)/sqrt2", 1e-10, [] {
        const auto s = PureState2Q::basis(kUpDown);
        double worst = 0.0;
        for (double gamma : {1.0, std::sqrt(2.0), 2.0}) {
            const auto r = classify(s, gamma);
            if (r.kind != ManifoldKind::kCircle) {
                return Outcome{kInf, "kind " + std::string(manifold_kind_name(r.kind))};
            }
            worst = std::max(worst, std::abs(r.circle_radius.value_or(kInf) - gamma));
        }
        worst = std::max(worst, std::abs(concurrence_evolved(s, kPi / 4) - 1.0));
        const auto target = PureState2Q::normalize(0.0, 1.0, Amp(0.0, -1.0), 0.0);
        const auto evolved = evolve_family(s, {kPi / 4, 0.9});
        worst = std::max(worst, 1.0 - std::norm(inner(evolved, target)));
        if (!ray_equal(evolved, target, 1e-10)) {
            worst = kInf;
        }
        return Outcome{worst, ""};
    });

    criterion(8, "|++>: Circle radius gamma sin(chi)/sqrt2 (1e-10); C == 0 on orbit (1e-12)", 1.0, [&rng] {
        double radius = 0.0, conc = 0.0;
        for (double chi : {0.3, 1.0, kPi / 2, 2.5}) {
            const auto s = named_product_state(ProductKind::kPlusPlus, chi, 0.7);
            const auto r = classify(s, 1.0);
            if (r.kind != ManifoldKind::kCircle) {
                return Outcome{kInf, "kind " + std::string(manifold_kind_name(r.kind))};
            }
            radius = std::max(radius, std::abs(r.circle_radius.value_or(kInf) - std::sin(chi) / std::sqrt(2.0)));
            for (int i = 0; i < 200; ++i) {
                conc = std::max(conc, concurrence(evolve_family(s, {uniform(rng, 0, kPi), uniform(rng, 0, 2 * kPi)})));
            }
        }
        return Outcome{std::max(radius / 1e-10, conc / 1e-12),
                       "radius " + format_double(radius) + ", C " + format_double(conc)};
    });

    criterion(9, "concurrence: 2|ad-bc|, evolved closed form, Wootters agree (1e-10); phi-independence (1e-12)", 1.0,
              [&rng] {
                  double agree = 0.0, phi = 0.0;
                  for (int i = 0; i < 100; ++i) {
                      const auto s = random_state(rng);
                      const double theta = uniform(rng, 0, kPi);
                      const auto evolved = evolve_family(s, {theta, 0.0});
                      const double direct = concurrence(evolved);
                      agree = std::max({agree, std::abs(concurrence(s) - concurrence_wootters_oracle(s)),
                                        std::abs(concurrence_evolved(s, theta) - direct),
                                        std::abs(concurrence_wootters_oracle(evolved) - direct)});
                      for (int j = 0; j < 5; ++j) {
                          phi = std::max(phi, std::abs(concurrence(evolve_family(s, {theta, uniform(rng, 0, 2 * kPi)})) -
                                                       direct));
                      }
                  }
                  return Outcome{std::max(agree / 1e-10, phi / 1e-12),
                                 "agreement " + format_double(agree) + ", phi " + format_double(phi)};
              });

    criterion(10, "periodicity: theta+pi sign flip, phi+2pi (1e-12); primed relation (1e-10)", 1.0, [&rng] {
        double amp = 0.0, primed = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto s = random_state(rng);
            const TorusPoint p{uniform(rng, -4, 4), uniform(rng, -7, 7)};
            const auto base = evolve_family(s, p);
            amp = std::max({amp, max_abs_diff(evolve_family(s, {p.theta + kPi, p.phi}), -base),
                            max_abs_diff(evolve_family(s, {p.theta, p.phi + 2 * kPi}), base)});
            const double k = metric_analytic(s, 1.0).k.value_or(0.0);
            primed = std::max(primed, max_abs_diff(evolve_family_primed(s, {p.theta + kPi, p.phi + k * kPi}, k),
                                                   -evolve_family_primed(s, p, k)));
        }
        return Outcome{std::max(amp / 1e-12, primed / 1e-10),
                       "amplitude " + format_double(amp) + ", primed " + format_double(primed)};
    });

    criterion(11, "CLI: verify exits 0; byte-identical reruns; negative control exits 1", 0.0, [&] {
        const int verify = run_cli(cli + " verify");
        const int negative = run_cli(cli + " verify --negative-control");
        const std::string config = std::string(SPIN_TORUS_SOURCE_DIR) + "/scenarios/updown.json";
        const auto first = scratch / "first.json";
        const auto second = scratch / "second.json";
        const int run1 = run_cli(cli + " run " + config + " --out " + first.string());
        const int run2 = run_cli(cli + " run " + config + " --out " + second.string());
        if (verify != 0 || negative != 1 || run1 != 0 || run2 != 0) {
            return Outcome{kInf, "exit codes verify=" + std::to_string(verify) + " negative=" +
                                     std::to_string(negative) + " run=" + std::to_string(run1) + "," +
                                     std::to_string(run2)};
        }
        const auto r1 = OrderedJson::parse(read_text_file(first));
        const auto r2 = OrderedJson::parse(read_text_file(second));
        const bool same = r1.at("results").dump() == r2.at("results").dump() &&
                          r1.at("config").dump() == r2.at("config").dump();
        return Outcome{same ? 0.0 : kInf, same ? "" : "results blocks differ"};
    });

    std::cout << (g_failures == 0 ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
    return g_failures == 0 ? 0 : 1;
}
