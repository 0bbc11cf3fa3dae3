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

#ifndef SPINTORUS_QSTATE_H
#define SPINTORUS_QSTATE_H

#include <array>
#include <complex>
#include <cstddef>

namespace spintorus {

using Amp = std::complex<double>;

/// Raw amplitude vector over the canonical basis |uu>, |ud>, |du>, |dd>
/// (first spin listed first, u = spin up along z). Used for tangent
/// vectors and other unnormalized intermediates.
using Amplitudes = std::array<Amp, 4>;

inline constexpr std::size_t kUpUp = 0;
inline constexpr std::size_t kUpDown = 1;
inline constexpr std::size_t kDownUp = 2;
inline constexpr std::size_t kDownDown = 3;

inline constexpr double kNormTolerance = 1e-12;

/// Unit-norm pure state of two spin-1/2 particles.
class PureState2Q {
   public:
    /// |uu>.
    PureState2Q();

    /// Requires |a|^2+|b|^2+|c|^2+|d|^2 = 1 within `tol`; throws NotNormalized otherwise.
    static PureState2Q from_normalized(const Amplitudes &amps, double tol = kNormTolerance);
    static PureState2Q from_normalized(Amp a, Amp b, Amp c, Amp d, double tol = kNormTolerance);

    /// Rescales to unit norm. Throws NotNormalized for a zero or non-finite vector.
    static PureState2Q normalize(const Amplitudes &amps);
    static PureState2Q normalize(Amp a, Amp b, Amp c, Amp d);

    static PureState2Q basis(std::size_t index);

    const Amp &a() const {
        return amps_[kUpUp];
    }
    const Amp &b() const {
        return amps_[kUpDown];
    }
    const Amp &c() const {
        return amps_[kDownUp];
    }
    const Amp &d() const {
        return amps_[kDownDown];
    }
    const Amp &operator[](std::size_t i) const {
        return amps_[i];
    }
    const Amplitudes &amplitudes() const {
        return amps_;
    }

    double norm_sq() const;

    /// Global phase e^{i alpha} times this state.
    PureState2Q with_phase(double alpha) const;
    PureState2Q operator-() const;

    bool operator==(const PureState2Q &) const = default;

   private:
    explicit PureState2Q(const Amplitudes &amps) : amps_(amps) {
    }

    // Unit norm is the caller's responsibility; used by operations whose
    // result is norm-preserving by construction.
    friend PureState2Q assume_normalized(const Amplitudes &amps);

    Amplitudes amps_;
};

PureState2Q assume_normalized(const Amplitudes &amps);

/// Dense 4x4 complex matrix, row-major over the canonical basis.
class Operator4 {
   public:
    Operator4() : m_{} {
    }

    static Operator4 identity();
    static Operator4 diagonal(const Amplitudes &diag);

    Amp &operator()(std::size_t row, std::size_t col) {
        return m_[row * 4 + col];
    }
    const Amp &operator()(std::size_t row, std::size_t col) const {
        return m_[row * 4 + col];
    }

    Operator4 adjoint() const;

    Operator4 operator*(const Operator4 &rhs) const;
    Operator4 operator+(const Operator4 &rhs) const;
    Operator4 operator-(const Operator4 &rhs) const;
    Operator4 operator*(Amp scalar) const;
    Amplitudes operator*(const Amplitudes &v) const;

   private:
    std::array<Amp, 16> m_;
};

Operator4 operator*(Amp scalar, const Operator4 &op);

/// Largest entrywise modulus of lhs - rhs.
double max_abs_diff(const Operator4 &lhs, const Operator4 &rhs);
double max_abs_diff(const Amplitudes &lhs, const Amplitudes &rhs);
double max_abs_diff(const PureState2Q &lhs, const PureState2Q &rhs);

/// max |U^dagger U - I| entrywise.
double unitarity_residual(const Operator4 &u);

Operator4 commutator(const Operator4 &lhs, const Operator4 &rhs);

/// Kronecker product of two single-spin 2x2 operators (row-major).
Operator4 kron(const std::array<Amp, 4> &first, const std::array<Amp, 4> &second);

/// <lhs|rhs>, conjugating lhs.
Amp inner(const PureState2Q &lhs, const PureState2Q &rhs);
Amp inner(const Amplitudes &lhs, const Amplitudes &rhs);

/// Matrix-vector product. The result is unit norm only when `op` is unitary;
/// use the Amplitudes overload for non-unitary operators.
PureState2Q apply(const Operator4 &op, const PureState2Q &state);

/// gamma^2 (1 - |<x|y>|^2).
///
/// Evaluated as gamma^2 |y - <x|y> x|^2, which equals the overlap form for
/// unit vectors but keeps full relative precision when x and y are close.
/// That matters for the finite-difference metric, where the distance is
/// O(h^2).
double fs_distance_sq(const PureState2Q &x, const PureState2Q &y, double gamma);

/// True iff |<x|y>|^2 >= 1 - tol.
bool ray_equal(const PureState2Q &x, const PureState2Q &y, double tol);

}  // namespace spintorus

#endif  // SPINTORUS_QSTATE_H
