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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string_view>
#include <vector>

#include "purity_bounds/density.hpp"
#include "purity_bounds/eigen.hpp"
#include "purity_bounds/entropy.hpp"
#include "purity_bounds/error.hpp"

namespace purity_bounds {

enum class Quantity { CoherentInfo, Coherence, MultiInfo };

constexpr std::string_view quantity_name(Quantity q) {
    switch (q) {
        case Quantity::CoherentInfo: return "coherent-info";
        case Quantity::Coherence: return "coherence";
        case Quantity::MultiInfo: return "multi-info";
    }
    return "unknown";
}

/// Lower and upper bound (bits) on a quantity, with the purities they came from.
///
/// For CoherentInfo the inputs are {gamma_AB, gamma_B}; for Coherence
/// {gamma_rho, gamma_dephased}; for MultiInfo {gamma_full, gamma_1, ..., gamma_n}.
struct BoundInterval {
    double lower;
    double upper;
    Quantity quantity;
    std::vector<PurityValue> inputs;

    bool contains(double value, double slack = 0.0) const {
        return value >= lower - slack && value <= upper + slack;
    }
};

struct PuritySummary {
    double gamma_global;
    std::vector<double> gamma_marginals;
    std::vector<std::size_t> dims;
};

inline constexpr double kConsistencySlack = 1e-10;

// ---------------------------------------------------------------------------
// Bounds from purities alone.

/// Coherent information I(A>B) = S(B) - S(AB). Marginal terms use d_B, joint
/// terms use d_A * d_B.
inline BoundInterval coherent_info_bounds(double gamma_ab, double gamma_b, std::size_t d_a, std::size_t d_b) {
    const PurityValue joint(gamma_ab, d_a * d_b);
    const PurityValue marginal(gamma_b, d_b);
    const auto rj = entropy_range(joint);
    const auto rm = entropy_range(marginal);
    return {rm.s_min - rj.s_max, rm.s_max - rj.s_min, Quantity::CoherentInfo, {joint, marginal}};
}

/// Relative entropy of coherence C = S(rho_d) - S(rho). The lower bound is
/// floored at zero since C >= 0.
inline BoundInterval coherence_bounds(double gamma_rho, double gamma_dephased, std::size_t d) {
    const PurityValue state(gamma_rho, d);
    const PurityValue dephased(gamma_dephased, d);
    if (dephased.gamma() > state.gamma() + kConsistencySlack) {
        throw Error(ErrorCode::InconsistentPurities, "dephased purity exceeds state purity",
                    dephased.gamma() - state.gamma());
    }
    const auto rs = entropy_range(state);
    const auto rd = entropy_range(dephased);
    return {std::max(0.0, rd.s_min - rs.s_max), rd.s_max - rs.s_min, Quantity::Coherence, {state, dephased}};
}

/// S_2(rho_B) - S_2(rho_AB) = log2(gamma_AB / gamma_B); positive values witness
/// entanglement.
inline double renyi_coherent_info(double gamma_ab, double gamma_b) {
    return renyi2_entropy(gamma_b) - renyi2_entropy(gamma_ab);
}

/// Multi-information sum_i S(rho_i) - S(rho), floored at zero.
inline BoundInterval multi_information_bounds(double gamma_full, std::span<const double> gamma_marginals,
                                              std::span<const std::size_t> dims) {
    if (gamma_marginals.size() != dims.size() || dims.empty()) {
        throw Error(ErrorCode::DimMismatch, "one marginal purity per subsystem dimension required");
    }
    const PurityValue full(gamma_full, dims_product(dims));
    std::vector<PurityValue> inputs{full};
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const PurityValue marginal(gamma_marginals[i], dims[i]);
        const auto r = entropy_range(marginal);
        lo += r.s_min;
        hi += r.s_max;
        inputs.push_back(marginal);
    }
    const auto rf = entropy_range(full);
    return {std::max(0.0, lo - rf.s_max), hi - rf.s_min, Quantity::MultiInfo, std::move(inputs)};
}

// ---------------------------------------------------------------------------
// Exact quantities from a full state.

inline double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(state_spectrum(rho)); }

inline double exact_coherent_information(const DensityMatrix& rho_ab) {
    if (rho_ab.num_subsystems() != 2) {
        throw Error(ErrorCode::DimMismatch, "coherent information needs a bipartite state");
    }
    return von_neumann_entropy(partial_trace(rho_ab, {1})) - von_neumann_entropy(rho_ab);
}

inline double exact_coherence(const DensityMatrix& rho) {
    return std::max(0.0, von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho));
}

inline double exact_multi_information(const DensityMatrix& rho) {
    if (rho.num_subsystems() < 2) {
        throw Error(ErrorCode::DimMismatch, "multi-information needs at least two subsystems");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < rho.num_subsystems(); ++i) sum += von_neumann_entropy(partial_trace(rho, {i}));
    return std::max(0.0, sum - von_neumann_entropy(rho));
}

/// Quantum relative entropy S(rho || sigma) in bits, +inf when the support of
/// rho is not contained in that of sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorCode::DimMismatch, "relative entropy of states with different dimensions");
    }
    const auto eig = hermitian_eigen(sigma.matrix());
    const std::size_t n = rho.dim();
    double cross = 0.0;  // Tr(rho log2 sigma)
    for (std::size_t k = 0; k < n; ++k) {
        // <v_k| rho |v_k>
        complex w{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) {
            complex row{0.0, 0.0};
            for (std::size_t c = 0; c < n; ++c) row += rho(r, c) * eig.vectors(c, k);
            w += std::conj(eig.vectors(r, k)) * row;
        }
        const double weight = w.real();
        const double lambda = eig.values[k];
        if (lambda <= 0.0) {
            if (weight > kPhysicalTolerance) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(lambda);
    }
    return -von_neumann_entropy(rho) - cross;
}

// ---------------------------------------------------------------------------
// State-based conveniences.

/// Global purity and single-factor marginal purities of a state.
inline PuritySummary purity_summary(const DensityMatrix& rho) {
    PuritySummary s{purity(rho), {}, std::vector<std::size_t>(rho.dims().begin(), rho.dims().end())};
    if (rho.num_subsystems() > 1) {
        for (std::size_t i = 0; i < rho.num_subsystems(); ++i) s.gamma_marginals.push_back(purity(partial_trace(rho, {i})));
    }
    return s;
}

inline BoundInterval coherent_info_bounds(const DensityMatrix& rho_ab) {
    if (rho_ab.num_subsystems() != 2) {
        throw Error(ErrorCode::DimMismatch, "coherent information needs a bipartite state");
    }
    return coherent_info_bounds(purity(rho_ab), purity(partial_trace(rho_ab, {1})), rho_ab.dims()[0],
                                rho_ab.dims()[1]);
}

inline BoundInterval coherence_bounds(const DensityMatrix& rho) {
    return coherence_bounds(purity(rho), purity(dephase(rho)), rho.dim());
}

inline BoundInterval multi_information_bounds(const DensityMatrix& rho) {
    const auto s = purity_summary(rho);
    return multi_information_bounds(s.gamma_global, s.gamma_marginals, s.dims);
}

}  // namespace purity_bounds
