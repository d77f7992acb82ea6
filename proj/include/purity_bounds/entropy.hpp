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

// Entropy extremes at fixed purity.
//
// Among all spectra x of length d with sum(x) = 1 and sum(x^2) = gamma, the
// Shannon entropy is largest for one dominant eigenvalue and d-1 equal ones,
// and smallest for k-1 equal eigenvalues, one smaller eigenvalue alpha and
// d-k zeros, where k is the level with 1/k <= gamma <= 1/(k-1). All entropies
// are in bits with 0 log 0 = 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "purity_bounds/density.hpp"
#include "purity_bounds/error.hpp"

namespace purity_bounds {

inline constexpr double kPurityTolerance = 1e-12;

/// Purity gamma = Tr(rho^2) of a d-dimensional state, clamped to [1/d, 1].
class PurityValue {
public:
    PurityValue(double gamma, std::size_t dim) : dim_(dim) {
        if (dim == 0) {
            throw Error(ErrorCode::DimMismatch, "purity dimension must be positive");
        }
        const double floor = 1.0 / static_cast<double>(dim);
        if (!(gamma >= floor - kPurityTolerance && gamma <= 1.0 + kPurityTolerance)) {
            throw Error(ErrorCode::OutOfRange,
                        "purity " + std::to_string(gamma) + " outside [1/" + std::to_string(dim) + ", 1]", gamma);
        }
        gamma_ = std::clamp(gamma, floor, 1.0);
    }

    double gamma() const noexcept { return gamma_; }
    std::size_t dim() const noexcept { return dim_; }

private:
    double gamma_;
    std::size_t dim_;
};

enum class ExtremalKind { MaxEntropy, MinEntropy };

struct ExtremalSpectrum {
    Spectrum spectrum;
    ExtremalKind kind;
    std::size_t k_level = 0;  // MinEntropy only
    double alpha = 0.0;       // MinEntropy only
};

/// -sum p log2 p.
inline double shannon_entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

inline double shannon_entropy(const Spectrum& s) { return shannon_entropy(s.probs()); }

/// S_2 = -log2(gamma).
inline double renyi2_entropy(const PurityValue& p) { return -std::log2(p.gamma()); }

inline double renyi2_entropy(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0 + kPurityTolerance)) {
        throw Error(ErrorCode::OutOfRange, "purity must lie in (0, 1]", gamma);
    }
    return -std::log2(std::min(gamma, 1.0));
}

namespace detail {

inline double clamped_sqrt(double x) {
    // Boundary purities produce discriminants a few ulps below zero.
    if (x < 0.0) {
        if (x < -kPurityTolerance) {
            throw Error(ErrorCode::OutOfRange, "negative discriminant", x);
        }
        return 0.0;
    }
    return std::sqrt(x);
}

}  // namespace detail

/// Smallest integer k with 1/k <= gamma (so 1/k <= gamma <= 1/(k-1)).
/// At gamma = 1/(k-1) both neighbouring levels are admissible and the smaller
/// one is returned.
inline std::size_t level_index(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0 + kPurityTolerance)) {
        throw Error(ErrorCode::OutOfRange, "purity must lie in (0, 1]", gamma);
    }
    if (gamma >= 1.0 - kPurityTolerance) return 1;
    auto k = static_cast<std::size_t>(std::ceil(1.0 / gamma));
    // 1/k > gamma can only happen through rounding in 1/gamma.
    while (1.0 / static_cast<double>(k) > gamma + kPurityTolerance * 1e-2) ++k;
    while (k > 1 && 1.0 / static_cast<double>(k - 1) <= gamma + kPurityTolerance * 1e-2) --k;
    return k;
}

inline ExtremalSpectrum max_entropy_spectrum(const PurityValue& p) {
    const std::size_t d = p.dim();
    if (d == 1) {
        return {Spectrum::from_probabilities({1.0}), ExtremalKind::MaxEntropy};
    }
    const double dd = static_cast<double>(d);
    const double x1 = std::min(1.0, 1.0 / dd + detail::clamped_sqrt((dd - 1.0) / dd * (p.gamma() - 1.0 / dd)));
    const double rest = (1.0 - x1) / (dd - 1.0);
    std::vector<double> probs(d, rest);
    probs[0] = x1;
    return {Spectrum::from_probabilities(std::move(probs)), ExtremalKind::MaxEntropy};
}

inline ExtremalSpectrum min_entropy_spectrum(const PurityValue& p) {
    const std::size_t d = p.dim();
    const std::size_t k = std::min(level_index(p.gamma()), d);
    std::vector<double> probs(d, 0.0);
    if (k == 1) {
        probs[0] = 1.0;
        return {Spectrum::from_probabilities(std::move(probs)), ExtremalKind::MinEntropy, 1, 1.0};
    }
    const double kk = static_cast<double>(k);
    const double alpha = std::max(0.0, 1.0 / kk - detail::clamped_sqrt((1.0 - 1.0 / kk) * (p.gamma() - 1.0 / kk)));
    const double top = (1.0 - alpha) / (kk - 1.0);
    for (std::size_t i = 0; i + 1 < k; ++i) probs[i] = top;
    probs[k - 1] = alpha;
    return {Spectrum::from_probabilities(std::move(probs)), ExtremalKind::MinEntropy, k, alpha};
}

struct EntropyRange {
    double s_min;
    double s_max;
};

/// Minimum and maximum von Neumann entropy compatible with purity p.
inline EntropyRange entropy_range(const PurityValue& p) {
    return {shannon_entropy(min_entropy_spectrum(p).spectrum), shannon_entropy(max_entropy_spectrum(p).spectrum)};
}

inline EntropyRange entropy_range(double gamma, std::size_t dim) { return entropy_range(PurityValue(gamma, dim)); }

}  // namespace purity_bounds
