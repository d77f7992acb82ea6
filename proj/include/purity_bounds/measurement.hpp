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

// Simulation of two-copy (and k-copy) purity measurements.
//
// The swap V acts on rho (x) rho and Tr(V rho (x) rho) = Tr(rho^2). It can be
// read out through an ancilla (Hadamard, controlled-V, Hadamard: the ancilla
// is found in |0> with probability (1 + Tr rho^2) / 2), or without ancilla by
// projecting each pair of corresponding qubits on the singlet
// (|01> - |10>)/sqrt(2), since V = I - 2 |singlet><singlet| on two qubits.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "purity_bounds/density.hpp"
#include "purity_bounds/error.hpp"
#include "purity_bounds/matrix.hpp"
#include "purity_bounds/random.hpp"

namespace purity_bounds {

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr std::size_t kMaxPatternQubits = 5;
inline constexpr std::size_t kMaxShiftDimension = 4096;

/// Swap on C^d (x) C^d: V|i j> = |j i>.
inline ComplexMatrix swap_operator(std::size_t d) {
    ComplexMatrix v(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
    }
    return v;
}

/// Tr(V rho (x) rho).
inline double swap_expectation(const DensityMatrix& rho) {
    const ComplexMatrix pair = tensor_product(rho.matrix(), rho.matrix());
    return trace_of_product(swap_operator(rho.dim()), pair).real();
}

namespace detail {

/// Ancilla qubit (x) system state stored as a 2x2 grid of system blocks.
struct AncillaState {
    std::array<ComplexMatrix, 4> blocks;  // 00, 01, 10, 11

    ComplexMatrix& at(int r, int c) { return blocks[2 * r + c]; }
    const ComplexMatrix& at(int r, int c) const { return blocks[2 * r + c]; }

    /// rho <- (G (x) I) rho (G (x) I)^dagger for a 2x2 ancilla gate G.
    void apply_ancilla_gate(const std::array<std::array<complex, 2>, 2>& g) {
        const std::size_t n = blocks[0].dim();
        std::array<ComplexMatrix, 4> out{ComplexMatrix(n), ComplexMatrix(n), ComplexMatrix(n), ComplexMatrix(n)};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    for (int l = 0; l < 2; ++l) {
                        const complex w = g[i][k] * std::conj(g[j][l]);
                        if (w == complex{0.0, 0.0}) continue;
                        out[2 * i + j] += at(k, l) * w;
                    }
                }
            }
        }
        blocks = std::move(out);
    }

    /// rho <- C rho C^dagger with C = |0><0| (x) I + |1><1| (x) U.
    void apply_controlled(const ComplexMatrix& u) {
        const ComplexMatrix ud = u.adjoint();
        at(0, 1) = at(0, 1) * ud;
        at(1, 0) = u * at(1, 0);
        at(1, 1) = u * at(1, 1) * ud;
    }
};

inline double ancilla_prob0(const ComplexMatrix& system_state, const ComplexMatrix& controlled) {
    const std::size_t n = system_state.dim();
    AncillaState s{{system_state, ComplexMatrix(n), ComplexMatrix(n), ComplexMatrix(n)}};
    const double h = 1.0 / std::sqrt(2.0);
    const std::array<std::array<complex, 2>, 2> hadamard{{{h, h}, {h, -h}}};
    s.apply_ancilla_gate(hadamard);
    s.apply_controlled(controlled);
    s.apply_ancilla_gate(hadamard);
    return s.at(0, 0).trace().real();
}

}  // namespace detail

/// Probability that the ancilla reads 0 after H, controlled-swap, H on
/// |0><0| (x) rho (x) rho, simulated gate by gate.
inline double ancilla_swap_prob0(const DensityMatrix& rho) {
    return detail::ancilla_prob0(tensor_product(rho.matrix(), rho.matrix()), swap_operator(rho.dim()));
}

/// Probability of projecting rho (x) rho onto the antisymmetric subspace,
/// (1 - Tr rho^2) / 2. For a qubit this is the singlet
/// (|01> - |10>)/sqrt(2); for d > 2 it is the projector (I - V)/2.
inline double singlet_prob(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    const ComplexMatrix pair = tensor_product(rho.matrix(), rho.matrix());
    if (d == 2) {
        const double h = 1.0 / std::sqrt(2.0);
        const std::vector<complex> singlet{0.0, h, -h, 0.0};
        return trace_of_product(ComplexMatrix::outer(singlet), pair).real();
    }
    ComplexMatrix projector = ComplexMatrix::identity(d * d) - swap_operator(d);
    projector *= 0.5;
    return trace_of_product(projector, pair).real();
}

enum class PairOutcome { Triplet, Singlet };

struct OutcomePattern {
    std::vector<PairOutcome> bits;  // one per qubit pair, qubit 0 first
    double probability;

    std::size_t singlet_count() const {
        return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), PairOutcome::Singlet));
    }
};

/**
 * Joint distribution of singlet/triplet outcomes when every qubit of one
 * copy is interfered with the corresponding qubit of the other copy.
 * Patterns are enumerated with pair 0 as the most significant bit.
 */
inline std::vector<OutcomePattern> pair_pattern_distribution(const DensityMatrix& rho) {
    const auto dims = rho.dims();
    if (std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d != 2; })) {
        throw Error(ErrorCode::DimMismatch, "pair patterns need a state of qubits");
    }
    const std::size_t n = dims.size();
    if (n > kMaxPatternQubits) {
        throw Error(ErrorCode::TooLarge, "pair patterns limited to " + std::to_string(kMaxPatternQubits) + " qubits",
                    static_cast<double>(n));
    }
    const std::size_t dim = rho.dim();

    // Two-qubit projectors indexed by (a b, a' b') with a from copy one.
    const double h = 1.0 / std::sqrt(2.0);
    const std::array<double, 4> psi{0.0, h, -h, 0.0};
    std::array<std::array<double, 16>, 2> local{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            const double s = psi[r] * psi[c];
            local[1][r * 4 + c] = s;
            local[0][r * 4 + c] = (r == c ? 1.0 : 0.0) - s;
        }
    }

    auto bit = [n](std::size_t index, std::size_t qubit) { return (index >> (n - 1 - qubit)) & 1U; };

    const std::size_t patterns = std::size_t{1} << n;
    std::vector<double> probs(patterns, 0.0);
    std::vector<std::size_t> q(n);
    for (std::size_t i1 = 0; i1 < dim; ++i1) {
        for (std::size_t i2 = 0; i2 < dim; ++i2) {
            for (std::size_t j1 = 0; j1 < dim; ++j1) {
                const complex a = rho(j1, i1);
                if (a == complex{0.0, 0.0}) continue;
                for (std::size_t j2 = 0; j2 < dim; ++j2) {
                    const complex x = a * rho(j2, i2);
                    if (x == complex{0.0, 0.0}) continue;
                    for (std::size_t k = 0; k < n; ++k) {
                        q[k] = (2 * bit(i1, k) + bit(i2, k)) * 4 + 2 * bit(j1, k) + bit(j2, k);
                    }
                    for (std::size_t p = 0; p < patterns; ++p) {
                        double w = 1.0;
                        for (std::size_t k = 0; k < n && w != 0.0; ++k) w *= local[bit(p, k)][q[k]];
                        if (w != 0.0) probs[p] += w * x.real();
                    }
                }
            }
        }
    }

    std::vector<OutcomePattern> out;
    out.reserve(patterns);
    for (std::size_t p = 0; p < patterns; ++p) {
        OutcomePattern pat{std::vector<PairOutcome>(n), probs[p]};
        for (std::size_t k = 0; k < n; ++k) pat.bits[k] = bit(p, k) ? PairOutcome::Singlet : PairOutcome::Triplet;
        out.push_back(std::move(pat));
    }
    return out;
}

/// Tr(V (rho_d (x) rho)), the dephased purity read out with a single
/// dephased copy. Throws InvariantViolation if it disagrees with Tr(rho_d^2).
inline double dephased_overlap(const DensityMatrix& rho) {
    const DensityMatrix dephased = dephase(rho);
    const double overlap =
        trace_of_product(swap_operator(rho.dim()), tensor_product(dephased.matrix(), rho.matrix())).real();
    const double direct = trace_power(dephased, 2);
    if (std::abs(overlap - direct) > kIdentityTolerance) {
        throw Error(ErrorCode::InvariantViolation, "dephased overlap disagrees with dephased purity",
                    overlap - direct);
    }
    return overlap;
}

/// Cyclic shift on k copies of C^d as a basis permutation:
/// V_k |j_1 ... j_k> = |j_k j_1 ... j_{k-1}>, i.e. result[J] is the index of V_k|J>.
inline std::vector<std::size_t> shift_permutation(std::size_t d, int k) {
    if (k < 2) throw Error(ErrorCode::BadOrder, "shift needs at least two copies", k);
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) total *= d;
    std::vector<std::size_t> perm(total);
    const std::size_t top = total / d;
    for (std::size_t idx = 0; idx < total; ++idx) {
        // Digits are most significant first, so moving the last digit to the
        // front is a rotation of the base-d representation.
        perm[idx] = (idx % d) * top + idx / d;
    }
    return perm;
}

/// Tr(V_k (rho_1 (x) ... (x) rho_k)) for distinct states. With this shift
/// convention the value is Tr(rho_k ... rho_1), the complex conjugate of
/// Tr(rho_1 ... rho_k); the two coincide for k = 2 or identical states.
inline complex shift_trace(std::span<const DensityMatrix> states) {
    const int k = static_cast<int>(states.size());
    if (k < 2 || k > 4) throw Error(ErrorCode::BadOrder, "shift order must be between 2 and 4", k);
    const std::size_t d = states[0].dim();
    for (const auto& s : states) {
        if (s.dim() != d) throw Error(ErrorCode::DimMismatch, "shift needs states of equal dimension");
    }
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) total *= d;
    if (total > kMaxShiftDimension) {
        throw Error(ErrorCode::TooLarge, "d^k exceeds " + std::to_string(kMaxShiftDimension), static_cast<double>(total));
    }
    const auto perm = shift_permutation(d, k);
    // Tr(V X) = sum_I X[I, perm[I]] with X the product state; X is never formed.
    std::vector<std::size_t> row(k), col(k);
    complex acc{0.0, 0.0};
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        std::size_t c = perm[idx];
        for (int m = k - 1; m >= 0; --m) {
            row[m] = r % d;
            col[m] = c % d;
            r /= d;
            c /= d;
        }
        complex term{1.0, 0.0};
        for (int m = 0; m < k && term != complex{0.0, 0.0}; ++m) term *= states[m](row[m], col[m]);
        acc += term;
    }
    return acc;
}

/// Tr(V_k rho^{(x) k}) = Tr(rho^k).
inline double shift_expectation(const DensityMatrix& rho, int k) {
    if (k < 2 || k > 4) throw Error(ErrorCode::BadOrder, "shift order must be between 2 and 4", k);
    const std::vector<DensityMatrix> copies(static_cast<std::size_t>(k), rho);
    return shift_trace(copies).real();
}

// ---------------------------------------------------------------------------
// Finite-shot estimation.

enum class MethodKind { AncillaSwap, BellBasis, Shift };

struct MeasurementMethod {
    MethodKind kind = MethodKind::AncillaSwap;
    int order = 2;  // number of copies; Shift only
};

inline std::string method_name(const MeasurementMethod& m) {
    switch (m.kind) {
        case MethodKind::AncillaSwap: return "ancilla";
        case MethodKind::BellBasis: return "bell";
        case MethodKind::Shift: return "shift-" + std::to_string(m.order);
    }
    return "unknown";
}

inline MeasurementMethod parse_method(std::string_view name, int order = 2) {
    if (name == "ancilla") return {MethodKind::AncillaSwap, 2};
    if (name == "bell") return {MethodKind::BellBasis, 2};
    if (name == "shift") {
        if (order < 2 || order > 4) throw Error(ErrorCode::BadOrder, "shift order must be between 2 and 4", order);
        return {MethodKind::Shift, order};
    }
    throw Error(ErrorCode::BadMethod, "unknown measurement method '" + std::string(name) + "'");
}

/// Point estimate of Tr(rho^k) from `shots` repetitions. `estimate` is the raw
/// unbiased value; `clamped_estimate` is restricted to [d^(1-k), 1] and
/// `clamped` records whether that changed it.
struct EstimatorResult {
    double estimate;
    double clamped_estimate;
    double std_error;
    std::uint64_t shots;
    MeasurementMethod method;
    bool clamped;
};

namespace detail {

inline std::uint64_t draw_binomial(std::uint64_t shots, double p, SeededStream& stream) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < shots; ++i) hits += stream.bernoulli(p) ? 1 : 0;
    return hits;
}

/// gamma = 2 p0 - 1 with p0 estimated from ancilla clicks.
inline EstimatorResult estimate_from_prob0(double p0, std::uint64_t shots, MeasurementMethod method, double floor,
                                           SeededStream& stream) {
    const double p_hat = static_cast<double>(draw_binomial(shots, std::clamp(p0, 0.0, 1.0), stream)) /
                         static_cast<double>(shots);
    const double est = 2.0 * p_hat - 1.0;
    const double se = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(shots));
    const double cl = std::clamp(est, floor, 1.0);
    return {est, cl, se, shots, method, cl != est};
}

}  // namespace detail

/// Simulates `shots` runs of the chosen protocol by sampling its exact
/// outcome distribution.
///
/// AncillaSwap: Bernoulli ancilla readout, estimate 2 p0 - 1.
/// BellBasis: for a register of qubits every pair is projected and the
///   estimate is the mean of (-1)^(number of singlets); otherwise the whole
///   pair of copies is projected on the antisymmetric subspace and the
///   estimate is 1 - 2 p_singlet.
/// Shift: ancilla-controlled V_k, estimate of Tr(rho^k) as 2 p0 - 1.
inline EstimatorResult simulate_shots(const DensityMatrix& rho, MeasurementMethod method, std::uint64_t shots,
                                      SeededStream& stream) {
    if (shots < 1) throw Error(ErrorCode::OutOfRange, "shots must be at least 1");
    const double d = static_cast<double>(rho.dim());
    switch (method.kind) {
        case MethodKind::AncillaSwap:
            return detail::estimate_from_prob0(ancilla_swap_prob0(rho), shots, method, 1.0 / d, stream);
        case MethodKind::Shift: {
            if (method.order < 2 || method.order > 4) {
                throw Error(ErrorCode::BadOrder, "shift order must be between 2 and 4", method.order);
            }
            const double p0 = 0.5 * (1.0 + shift_expectation(rho, method.order));
            return detail::estimate_from_prob0(p0, shots, method, std::pow(d, 1.0 - method.order), stream);
        }
        case MethodKind::BellBasis: {
            const auto dims = rho.dims();
            const bool qubits = std::all_of(dims.begin(), dims.end(), [](std::size_t x) { return x == 2; });
            if (qubits && dims.size() > 1) {
                const auto patterns = pair_pattern_distribution(rho);
                std::vector<double> cdf;
                double acc = 0.0;
                for (const auto& p : patterns) cdf.push_back(acc += std::max(0.0, p.probability));
                std::uint64_t odd = 0;  // outcomes with an odd number of singlets
                for (std::uint64_t s = 0; s < shots; ++s) {
                    const double u = stream.uniform() * acc;
                    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                    const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
                    odd += patterns[idx].singlet_count() % 2;
                }
                const double q = static_cast<double>(odd) / static_cast<double>(shots);
                const double est = 1.0 - 2.0 * q;
                const double se = 2.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(shots));
                const double cl = std::clamp(est, 1.0 / d, 1.0);
                return {est, cl, se, shots, method, cl != est};
            }
            const double ps = singlet_prob(rho);
            const double q = static_cast<double>(detail::draw_binomial(shots, std::clamp(ps, 0.0, 1.0), stream)) /
                             static_cast<double>(shots);
            const double est = 1.0 - 2.0 * q;
            const double se = 2.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(shots));
            const double cl = std::clamp(est, 1.0 / d, 1.0);
            return {est, cl, se, shots, method, cl != est};
        }
    }
    throw Error(ErrorCode::BadMethod, "unknown measurement method");
}

/// Ancilla readout of Tr(V (rho_d (x) rho)) = Tr(rho_d^2) with finite shots.
inline EstimatorResult simulate_dephased_shots(const DensityMatrix& rho, std::uint64_t shots, SeededStream& stream) {
    if (shots < 1) throw Error(ErrorCode::OutOfRange, "shots must be at least 1");
    const DensityMatrix dephased = dephase(rho);
    const double p0 =
        detail::ancilla_prob0(tensor_product(dephased.matrix(), rho.matrix()), swap_operator(rho.dim()));
    return detail::estimate_from_prob0(p0, shots, {MethodKind::AncillaSwap, 2}, 1.0 / static_cast<double>(rho.dim()),
                                       stream);
}

}  // namespace purity_bounds
