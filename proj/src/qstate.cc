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

#include "spintorus/qstate.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "spintorus/error.h"

namespace spintorus {

namespace {

double squared_norm(const Amplitudes &amps) {
    double total = 0.0;
    for (const auto &x : amps) {
        total += std::norm(x);
    }
    return total;
}

bool all_finite(const Amplitudes &amps) {
    return std::all_of(amps.begin(), amps.end(),
                       [](const Amp &x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

}  // namespace

PureState2Q::PureState2Q() : amps_{Amp{1.0, 0.0}, Amp{}, Amp{}, Amp{}} {
}

PureState2Q PureState2Q::from_normalized(const Amplitudes &amps, double tol) {
    if (!all_finite(amps)) {
        throw Error(ErrorCode::kNotNormalized, "amplitudes must be finite");
    }
    double n = squared_norm(amps);
    if (std::abs(n - 1.0) > tol) {
        throw Error(ErrorCode::kNotNormalized, "squared norm is " + std::to_string(n) + ", expected 1");
    }
    return PureState2Q(amps);
}

PureState2Q PureState2Q::from_normalized(Amp a, Amp b, Amp c, Amp d, double tol) {
    return from_normalized(Amplitudes{a, b, c, d}, tol);
}

PureState2Q PureState2Q::normalize(const Amplitudes &amps) {
    if (!all_finite(amps)) {
        throw Error(ErrorCode::kNotNormalized, "amplitudes must be finite");
    }
    double n = std::sqrt(squared_norm(amps));
    if (n == 0.0) {
        throw Error(ErrorCode::kNotNormalized, "cannot normalize the zero vector");
    }
    Amplitudes out = amps;
    for (auto &x : out) {
        x /= n;
    }
    return PureState2Q(out);
}

PureState2Q PureState2Q::normalize(Amp a, Amp b, Amp c, Amp d) {
    return normalize(Amplitudes{a, b, c, d});
}

PureState2Q PureState2Q::basis(std::size_t index) {
    if (index >= 4) {
        throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    Amplitudes amps{};
    amps[index] = 1.0;
    return PureState2Q(amps);
}

double PureState2Q::norm_sq() const {
    return squared_norm(amps_);
}

PureState2Q PureState2Q::with_phase(double alpha) const {
    Amp phase = std::polar(1.0, alpha);
    Amplitudes out = amps_;
    for (auto &x : out) {
        x *= phase;
    }
    return PureState2Q(out);
}

PureState2Q PureState2Q::operator-() const {
    Amplitudes out = amps_;
    for (auto &x : out) {
        x = -x;
    }
    return PureState2Q(out);
}

PureState2Q assume_normalized(const Amplitudes &amps) {
    return PureState2Q(amps);
}

Operator4 Operator4::identity() {
    return diagonal({1.0, 1.0, 1.0, 1.0});
}

Operator4 Operator4::diagonal(const Amplitudes &diag) {
    Operator4 out;
    for (std::size_t i = 0; i < 4; ++i) {
        out(i, i) = diag[i];
    }
    return out;
}

Operator4 Operator4::adjoint() const {
    Operator4 out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Operator4 Operator4::operator*(const Operator4 &rhs) const {
    Operator4 out;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            Amp acc{};
            for (std::size_t k = 0; k < 4; ++k) {
                acc += (*this)(r, k) * rhs(k, c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

Operator4 Operator4::operator+(const Operator4 &rhs) const {
    Operator4 out;
    for (std::size_t i = 0; i < 16; ++i) {
        out.m_[i] = m_[i] + rhs.m_[i];
    }
    return out;
}

Operator4 Operator4::operator-(const Operator4 &rhs) const {
    Operator4 out;
    for (std::size_t i = 0; i < 16; ++i) {
        out.m_[i] = m_[i] - rhs.m_[i];
    }
    return out;
}

Operator4 Operator4::operator*(Amp scalar) const {
    Operator4 out;
    for (std::size_t i = 0; i < 16; ++i) {
        out.m_[i] = m_[i] * scalar;
    }
    return out;
}

Amplitudes Operator4::operator*(const Amplitudes &v) const {
    Amplitudes out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[r] += (*this)(r, c) * v[c];
        }
    }
    return out;
}

Operator4 operator*(Amp scalar, const Operator4 &op) {
    return op * scalar;
}

double max_abs_diff(const Operator4 &lhs, const Operator4 &rhs) {
    double worst = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            worst = std::max(worst, std::abs(lhs(r, c) - rhs(r, c)));
        }
    }
    return worst;
}

double max_abs_diff(const Amplitudes &lhs, const Amplitudes &rhs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    return worst;
}

double max_abs_diff(const PureState2Q &lhs, const PureState2Q &rhs) {
    return max_abs_diff(lhs.amplitudes(), rhs.amplitudes());
}

double unitarity_residual(const Operator4 &u) {
    return max_abs_diff(u.adjoint() * u, Operator4::identity());
}

Operator4 commutator(const Operator4 &lhs, const Operator4 &rhs) {
    return lhs * rhs - rhs * lhs;
}

Operator4 kron(const std::array<Amp, 4> &first, const std::array<Amp, 4> &second) {
    Operator4 out;
    for (std::size_t r1 = 0; r1 < 2; ++r1) {
        for (std::size_t c1 = 0; c1 < 2; ++c1) {
            for (std::size_t r2 = 0; r2 < 2; ++r2) {
                for (std::size_t c2 = 0; c2 < 2; ++c2) {
                    out(2 * r1 + r2, 2 * c1 + c2) = first[2 * r1 + c1] * second[2 * r2 + c2];
                }
            }
        }
    }
    return out;
}

Amp inner(const Amplitudes &lhs, const Amplitudes &rhs) {
    Amp acc{};
    for (std::size_t i = 0; i < 4; ++i) {
        acc += std::conj(lhs[i]) * rhs[i];
    }
    return acc;
}

Amp inner(const PureState2Q &lhs, const PureState2Q &rhs) {
    return inner(lhs.amplitudes(), rhs.amplitudes());
}

PureState2Q apply(const Operator4 &op, const PureState2Q &state) {
    return assume_normalized(op * state.amplitudes());
}

double fs_distance_sq(const PureState2Q &x, const PureState2Q &y, double gamma) {
    Amp overlap = inner(x, y);
    double perp = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        perp += std::norm(y[i] - overlap * x[i]);
    }
    return gamma * gamma * std::clamp(perp, 0.0, 1.0);
}

bool ray_equal(const PureState2Q &x, const PureState2Q &y, double tol) {
    return std::norm(inner(x, y)) >= 1.0 - tol;
}

}  // namespace spintorus
