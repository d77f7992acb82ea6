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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "purity_bounds/error.hpp"

namespace purity_bounds {

using complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(1) {}

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, complex{0.0, 0.0}) {
        if (dim == 0) {
            throw Error(ErrorCode::DimMismatch, "matrix dimension must be at least 1");
        }
    }

    ComplexMatrix(std::size_t dim, std::vector<complex> entries) : dim_(dim), data_(std::move(entries)) {
        if (dim == 0 || data_.size() != dim * dim) {
            throw Error(ErrorCode::DimMismatch, "entry count does not equal dim^2");
        }
    }

    /// Builds from nested rows; every row must have as many entries as there are rows.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) : ComplexMatrix(rows.size()) {
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) {
                throw Error(ErrorCode::DimMismatch, "ragged matrix rows");
            }
            std::size_t c = 0;
            for (const auto& v : row) {
                (*this)(r, c++) = v;
            }
            ++r;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> values) {
        return diagonal(std::span<const double>(values.begin(), values.size()));
    }

    /// |v><v| for a (not necessarily normalized) vector.
    static ComplexMatrix outer(std::span<const complex> v) {
        ComplexMatrix m(v.size());
        for (std::size_t r = 0; r < v.size(); ++r) {
            for (std::size_t c = 0; c < v.size(); ++c) {
                m(r, c) = v[r] * std::conj(v[c]);
            }
        }
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    std::span<complex> data() noexcept { return data_; }
    std::span<const complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    complex trace() const {
        complex t{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    /// max |m - m^dagger| over entries.
    double hermiticity_defect() const {
        double m = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = r; c < dim_; ++c) {
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return m;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(complex s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
    friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same(b);
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const complex ark = a(r, k);
                if (ark == complex{0.0, 0.0}) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

private:
    void check_same(const ComplexMatrix& o) const {
        if (o.dim_ != dim_) {
            throw Error(ErrorCode::DimMismatch, "matrix dimensions differ");
        }
    }

    std::size_t dim_;
    std::vector<complex> data_;
};

/// Kronecker product a (x) b; the result has dimension a.dim() * b.dim().
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t ar = 0; ar < na; ++ar) {
        for (std::size_t ac = 0; ac < na; ++ac) {
            const complex s = a(ar, ac);
            if (s == complex{0.0, 0.0}) continue;
            for (std::size_t br = 0; br < nb; ++br) {
                for (std::size_t bc = 0; bc < nb; ++bc) {
                    out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

/// Tr(a b) without forming the product.
inline complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimMismatch, "matrix dimensions differ");
    }
    complex t{0.0, 0.0};
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            t += a(r, c) * b(c, r);
        }
    }
    return t;
}

inline double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimMismatch, "matrix dimensions differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

}  // namespace purity_bounds
