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
#include <numeric>
#include <string>
#include <vector>

#include "purity_bounds/error.hpp"
#include "purity_bounds/matrix.hpp"

namespace purity_bounds {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kJacobiOffDiagonalTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

struct HermitianEigen {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column j is the eigenvector of values[j]
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            if (r != c) s += std::norm(a(r, c));
        }
    }
    return std::sqrt(s);
}

}  // namespace detail

/**
 * Cyclic Jacobi diagonalization of a Hermitian matrix.
 *
 * Each rotation first removes the phase of a(p,q) with a diagonal unitary and
 * then applies the real symmetric Jacobi rotation, so the combined 2x2
 * unitary annihilates a(p,q) exactly. Sweeps continue until the off-diagonal
 * Frobenius norm falls below 1e-14 (scaled by the matrix norm when that
 * exceeds one).
 */
inline HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    const double scale = std::max(1.0, m.max_abs());
    const double defect = m.hermiticity_defect();
    if (defect > kHermitianTolerance * scale) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian", defect);
    }

    const std::size_t n = m.dim();
    ComplexMatrix a = m;
    // Symmetrize so the rotations see an exactly Hermitian input.
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = a(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            const complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = kJacobiOffDiagonalTolerance * std::max(1.0, a.frobenius_norm());
    int sweep = 0;
    while (detail::off_diagonal_norm(a) > threshold) {
        if (sweep == kJacobiMaxSweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "Jacobi did not converge after " + std::to_string(sweep) + " sweeps",
                        static_cast<double>(sweep));
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const complex phase = apq / r;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const complex ph_conj = std::conj(phase);

                // a <- a J, v <- v J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                for (std::size_t k = 0; k < n; ++k) {
                    const complex akp = a(k, p);
                    const complex akq = a(k, q);
                    a(k, p) = c * akp - s * ph_conj * akq;
                    a(k, q) = s * akp + c * ph_conj * akq;
                    const complex vkp = v(k, p);
                    const complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * ph_conj * vkq;
                    v(k, q) = s * vkp + c * ph_conj * vkq;
                }
                // a <- J^dagger a.
                for (std::size_t k = 0; k < n; ++k) {
                    const complex apk = a(p, k);
                    const complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, j) = v(k, order[j]);
        }
    }
    return out;
}

/// Eigenvalues of a Hermitian matrix in descending order.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigen(m).values; }

}  // namespace purity_bounds
