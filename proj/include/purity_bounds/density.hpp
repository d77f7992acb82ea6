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
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "purity_bounds/eigen.hpp"
#include "purity_bounds/error.hpp"
#include "purity_bounds/matrix.hpp"

namespace purity_bounds {

/// Slack used for every physicality check on states.
inline constexpr double kPhysicalTolerance = 1e-10;
inline constexpr double kSpectrumTolerance = 1e-12;

/// Probability vector sorted in descending order.
class Spectrum {
public:
    /// Validates entries against [-1e-12, 1 + 1e-12] and the sum against
    /// 1 +- 1e-12, then clamps and sorts.
    static Spectrum from_probabilities(std::vector<double> probs) {
        return build(std::move(probs), kSpectrumTolerance, kSpectrumTolerance);
    }

    /// Same as from_probabilities but with the looser state slack (1e-10)
    /// appropriate for eigenvalues coming out of a diagonalization; the
    /// result is renormalized to unit sum.
    static Spectrum from_eigenvalues(std::vector<double> eigenvalues) {
        return build(std::move(eigenvalues), kPhysicalTolerance, kPhysicalTolerance);
    }

    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

    double purity() const {
        double s = 0.0;
        for (double p : probs_) s += p * p;
        return s;
    }

private:
    explicit Spectrum(std::vector<double> p) : probs_(std::move(p)) {}

    static Spectrum build(std::vector<double> p, double entry_slack, double sum_slack) {
        if (p.empty()) {
            throw Error(ErrorCode::DimMismatch, "empty spectrum");
        }
        double sum = 0.0;
        for (double x : p) {
            if (!(x >= -entry_slack && x <= 1.0 + entry_slack)) {
                throw Error(ErrorCode::OutOfRange, "spectrum entry outside [0,1]", x);
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > sum_slack) {
            throw Error(ErrorCode::OutOfRange, "spectrum does not sum to one", sum - 1.0);
        }
        double clamped_sum = 0.0;
        for (double& x : p) {
            x = std::clamp(x, 0.0, 1.0);
            clamped_sum += x;
        }
        for (double& x : p) x /= clamped_sum;
        std::sort(p.begin(), p.end(), std::greater<>());
        return Spectrum(std::move(p));
    }

    std::vector<double> probs_;
};

namespace detail {
struct TrustedTag {};
}  // namespace detail

/// Validated density matrix together with its tensor-factor dimensions
/// (listed left to right in factor order; bipartite states are [d_A, d_B]).
class DensityMatrix {
public:
    /// Internal constructor for results of operations that preserve
    /// physicality. Use validate_density for external input.
    DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims, detail::TrustedTag)
        : mat_(std::move(mat)), dims_(std::move(dims)) {}

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::span<const std::size_t> dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return mat_.dim(); }
    std::size_t num_subsystems() const noexcept { return dims_.size(); }

    const complex& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

private:
    ComplexMatrix mat_;
    std::vector<std::size_t> dims_;
};

inline std::size_t dims_product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

inline DensityMatrix validate_density(const ComplexMatrix& m, std::vector<std::size_t> dims) {
    if (dims.empty() || std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end() ||
        dims_product(dims) != m.dim()) {
        throw Error(ErrorCode::DimMismatch, "subsystem dimensions do not multiply to the matrix dimension");
    }
    const double defect = m.hermiticity_defect();
    if (defect > kPhysicalTolerance) {
        throw Error(ErrorCode::NotHermitian, "state is not Hermitian", defect);
    }
    const double trace_error = std::abs(m.trace() - 1.0);
    if (trace_error > kPhysicalTolerance) {
        throw Error(ErrorCode::NotUnitTrace, "state trace differs from one", trace_error);
    }
    auto eig = hermitian_eigen(m);
    const double smallest = eig.values.back();
    if (smallest < -kPhysicalTolerance) {
        throw Error(ErrorCode::NotPSD, "state has a negative eigenvalue", smallest);
    }

    const std::size_t n = m.dim();
    ComplexMatrix out(n);
    if (smallest < 0.0) {
        // Rebuild from the clamped, renormalized spectrum.
        double total = 0.0;
        for (double& x : eig.values) {
            x = std::clamp(x, 0.0, 1.0);
            total += x;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const double w = eig.values[k] / total;
            if (w == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r) {
                const complex vr = w * eig.vectors(r, k);
                for (std::size_t c = 0; c < n; ++c) {
                    out(r, c) += vr * std::conj(eig.vectors(c, k));
                }
            }
        }
    } else {
        out = m;
        const double trace = m.trace().real();
        if (trace != 1.0) out *= complex(1.0 / trace);
    }
    for (std::size_t r = 0; r < n; ++r) {
        out(r, r) = out(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            const complex avg = 0.5 * (out(r, c) + std::conj(out(c, r)));
            out(r, c) = avg;
            out(c, r) = std::conj(avg);
        }
    }
    return DensityMatrix(std::move(out), std::move(dims), detail::TrustedTag{});
}

/// |psi><psi| after normalizing psi.
inline DensityMatrix pure_state(std::span<const complex> psi, std::vector<std::size_t> dims) {
    if (dims_product(dims) != psi.size()) {
        throw Error(ErrorCode::DimMismatch, "state vector length does not match dims");
    }
    double norm = 0.0;
    for (const auto& a : psi) norm += std::norm(a);
    if (norm <= 0.0) {
        throw Error(ErrorCode::OutOfRange, "zero state vector");
    }
    std::vector<complex> v(psi.begin(), psi.end());
    for (auto& a : v) a /= std::sqrt(norm);
    return DensityMatrix(ComplexMatrix::outer(v), std::move(dims), detail::TrustedTag{});
}

inline DensityMatrix pure_state(std::initializer_list<complex> psi, std::vector<std::size_t> dims) {
    return pure_state(std::span<const complex>(psi.begin(), psi.size()), std::move(dims));
}

inline DensityMatrix maximally_mixed(std::vector<std::size_t> dims) {
    const std::size_t n = dims_product(dims);
    return DensityMatrix(ComplexMatrix::identity(n) * complex(1.0 / static_cast<double>(n)), std::move(dims),
                         detail::TrustedTag{});
}

/// Reduced state on the subsystems listed in `keep` (any order, duplicates
/// ignored); the result lists its factors in ascending subsystem order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    const auto dims = rho.dims();
    const std::size_t n = dims.size();
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty() || keep.back() >= n) {
        throw Error(ErrorCode::DimMismatch, "invalid subsystem selection for partial trace");
    }

    std::vector<std::size_t> strides(n, 1);
    for (std::size_t i = n; i-- > 1;) strides[i - 1] = strides[i] * dims[i];

    std::vector<bool> kept(n, false);
    for (auto k : keep) kept[k] = true;

    // Offsets into the full index contributed by every multi-index over a
    // subset of factors.
    auto offsets_for = [&](bool want_kept) {
        std::vector<std::size_t> offs{0};
        for (std::size_t i = 0; i < n; ++i) {
            if (kept[i] != want_kept) continue;
            std::vector<std::size_t> next;
            next.reserve(offs.size() * dims[i]);
            for (auto o : offs) {
                for (std::size_t digit = 0; digit < dims[i]; ++digit) next.push_back(o + digit * strides[i]);
            }
            offs = std::move(next);
        }
        return offs;
    };
    const auto keep_offs = offsets_for(true);
    const auto trace_offs = offsets_for(false);

    const std::size_t m = keep_offs.size();
    ComplexMatrix out(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            complex s{0.0, 0.0};
            for (auto t : trace_offs) s += rho(keep_offs[r] + t, keep_offs[c] + t);
            out(r, c) = s;
        }
    }
    std::vector<std::size_t> out_dims;
    for (auto k : keep) out_dims.push_back(dims[k]);
    return DensityMatrix(std::move(out), std::move(out_dims), detail::TrustedTag{});
}

/// Removes all coherences in the computational basis.
inline DensityMatrix dephase(const DensityMatrix& rho) {
    ComplexMatrix out(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) out(i, i) = rho(i, i).real();
    return DensityMatrix(std::move(out), std::vector<std::size_t>(rho.dims().begin(), rho.dims().end()),
                         detail::TrustedTag{});
}

/// Tr(rho^k) from explicit matrix products.
inline double trace_power(const DensityMatrix& rho, int k) {
    if (k < 2) {
        throw Error(ErrorCode::BadOrder, "trace power order must be at least 2", k);
    }
    const ComplexMatrix& m = rho.matrix();
    if (k == 2) {
        double s = 0.0;
        for (const auto& v : m.data()) s += std::norm(v);
        return s;
    }
    ComplexMatrix p = m;
    for (int i = 2; i < k; ++i) p = p * m;
    return trace_of_product(p, m).real();
}

inline double purity(const DensityMatrix& rho) { return trace_power(rho, 2); }

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<std::size_t> dims(a.dims().begin(), a.dims().end());
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix(tensor_product(a.matrix(), b.matrix()), std::move(dims), detail::TrustedTag{});
}

/// p * a + (1 - p) * b for states with identical dims.
inline DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p) {
    if (!std::equal(a.dims().begin(), a.dims().end(), b.dims().begin(), b.dims().end())) {
        throw Error(ErrorCode::DimMismatch, "cannot mix states with different dims");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "mixing weight outside [0,1]", p);
    }
    return DensityMatrix(a.matrix() * complex(p) + b.matrix() * complex(1.0 - p),
                         std::vector<std::size_t>(a.dims().begin(), a.dims().end()), detail::TrustedTag{});
}

/// Eigenvalue spectrum of a state (clamped and renormalized).
inline Spectrum state_spectrum(const DensityMatrix& rho) {
    return Spectrum::from_eigenvalues(hermitian_eigenvalues(rho.matrix()));
}

}  // namespace purity_bounds
