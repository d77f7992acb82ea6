// Copyright 2026 The purity-bounds Authors.
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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "purity_bounds/density.hpp"
#include "purity_bounds/error.hpp"
#include "purity_bounds/matrix.hpp"

namespace purity_bounds {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/**
 * Reproducible random stream.
 *
 * The engine is std::mt19937_64 seeded with splitmix64 mixing of
 * (seed, substream). Uniform doubles take the top 53 bits of one engine
 * output; normals use Box-Muller on two uniforms. Neither goes through the
 * standard library distributions, whose output is implementation-defined,
 * so a given (seed, substream) yields the same sequence on every platform
 * with IEEE doubles and a conforming libm.
 */
class SeededStream {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64/box-muller";

    explicit SeededStream(std::uint64_t seed, std::uint64_t substream = 0)
        : seed_(seed), substream_(substream), engine_(splitmix64(splitmix64(seed) ^ splitmix64(~substream))) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t substream() const noexcept { return substream_; }

    /// Independent stream for work item `index`; does not depend on how much
    /// of this stream has been consumed.
    SeededStream derive(std::uint64_t index) const {
        return SeededStream(seed_, splitmix64(substream_ * 0x2545F4914F6CDD1DULL + index + 1));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Standard complex Gaussian (unit variance split over both parts).
    complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t seed_;
    std::uint64_t substream_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Haar-random pure state on the given factor dimensions.
inline DensityMatrix random_pure_state(std::vector<std::size_t> dims, SeededStream& stream) {
    const std::size_t d = dims_product(dims);
    if (d < 2) {
        throw Error(ErrorCode::DimMismatch, "random pure state needs dimension >= 2");
    }
    std::vector<complex> psi(d);
    for (auto& a : psi) a = stream.complex_normal();
    return pure_state(psi, std::move(dims));
}

inline DensityMatrix random_pure_state(std::size_t d, SeededStream& stream) {
    return random_pure_state(std::vector<std::size_t>{d}, stream);
}

/// Induced-measure mixed state: G G^dagger / Tr for a d x K complex Ginibre
/// matrix G, i.e. the marginal of a Haar-random pure state on d x K.
inline DensityMatrix random_mixed_state(std::vector<std::size_t> dims, std::size_t ancilla_dim, SeededStream& stream) {
    const std::size_t d = dims_product(dims);
    if (d < 1 || ancilla_dim < 1) {
        throw Error(ErrorCode::DimMismatch, "random mixed state needs positive dimensions");
    }
    std::vector<complex> g(d * ancilla_dim);
    for (auto& a : g) a = stream.complex_normal();
    ComplexMatrix m(d);
    double trace = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            complex s{0.0, 0.0};
            for (std::size_t k = 0; k < ancilla_dim; ++k) s += g[r * ancilla_dim + k] * std::conj(g[c * ancilla_dim + k]);
            m(r, c) = s;
        }
        trace += m(r, r).real();
    }
    m *= complex(1.0 / trace);
    return DensityMatrix(std::move(m), std::move(dims), detail::TrustedTag{});
}

inline DensityMatrix random_mixed_state(std::size_t d, std::size_t ancilla_dim, SeededStream& stream) {
    return random_mixed_state(std::vector<std::size_t>{d}, ancilla_dim, stream);
}

/// Orthonormalizes the columns of m in place (modified Gram-Schmidt).
/// Returns false when the columns are numerically dependent.
inline bool orthonormalize_columns(ComplexMatrix& m) {
    const std::size_t n = m.dim();
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                complex dot{0.0, 0.0};
                for (std::size_t r = 0; r < n; ++r) dot += std::conj(m(r, i)) * m(r, j);
                for (std::size_t r = 0; r < n; ++r) m(r, j) -= dot * m(r, i);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += std::norm(m(r, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) return false;
        for (std::size_t r = 0; r < n; ++r) m(r, j) /= norm;
    }
    return true;
}

/// Haar-random unitary: Gram-Schmidt on a Ginibre matrix (the implied R
/// factor has a positive diagonal, which makes the distribution Haar).
inline ComplexMatrix random_unitary(std::size_t d, SeededStream& stream) {
    for (;;) {
        ComplexMatrix g(d);
        for (auto& a : g.data()) a = stream.complex_normal();
        if (orthonormalize_columns(g)) return g;
    }
}

/// Unitary close to the identity: orthonormalized I + scale * Ginibre.
inline ComplexMatrix random_near_identity_unitary(std::size_t d, double scale, SeededStream& stream) {
    for (;;) {
        ComplexMatrix g = ComplexMatrix::identity(d);
        for (auto& a : g.data()) a += scale * stream.complex_normal();
        if (orthonormalize_columns(g)) return g;
    }
}

/// Probability vector uniform on the simplex (normalized exponentials).
inline std::vector<double> random_simplex_point(std::size_t d, SeededStream& stream) {
    std::vector<double> p(d);
    double total = 0.0;
    for (auto& x : p) {
        x = -std::log(1.0 - stream.uniform());
        total += x;
    }
    for (auto& x : p) x /= total;
    return p;
}

}  // namespace purity_bounds
