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

// Monte-Carlo datasets of bounds versus exact values, bound surfaces over
// purity grids, and a stochastic search for low coherent information at
// fixed purities.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "purity_bounds/bounds.hpp"
#include "purity_bounds/density.hpp"
#include "purity_bounds/entropy.hpp"
#include "purity_bounds/error.hpp"
#include "purity_bounds/random.hpp"

namespace purity_bounds {

inline constexpr double kSandwichSlack = 1e-9;

struct SampleRecord {
    double gamma_global;
    double gamma_marginal;  // gamma_B for coherent info, gamma of rho_d for coherence
    std::optional<double> exact;
    std::optional<double> renyi;
    double lower;
    double upper;
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

struct ScatterConfig {
    std::vector<std::size_t> dims;
    std::size_t n_samples = 0;
    /// Induced-measure ancilla dimensions drawn uniformly per sample; empty
    /// means {1, 2, d, d^2} with d the total dimension.
    std::vector<std::size_t> ancilla_dims;
    Quantity quantity = Quantity::CoherentInfo;
    /// States evaluated before the random samples (indices 0..m-1).
    std::vector<DensityMatrix> injected;
    std::size_t threads = 1;
};

/// Purities, exact value, witness and bounds for one state. Throws
/// InvariantViolation if the exact value escapes the bounds.
inline SampleRecord evaluate_record(const DensityMatrix& rho, Quantity quantity, std::uint64_t seed,
                                    std::uint64_t index) {
    SampleRecord rec{};
    rec.dims.assign(rho.dims().begin(), rho.dims().end());
    rec.seed = seed;
    rec.index = index;
    BoundInterval b{};
    switch (quantity) {
        case Quantity::CoherentInfo: {
            rec.gamma_global = purity(rho);
            rec.gamma_marginal = purity(partial_trace(rho, {1}));
            rec.exact = exact_coherent_information(rho);
            rec.renyi = renyi_coherent_info(rec.gamma_global, rec.gamma_marginal);
            b = coherent_info_bounds(rec.gamma_global, rec.gamma_marginal, rho.dims()[0], rho.dims()[1]);
            break;
        }
        case Quantity::Coherence: {
            rec.gamma_global = purity(rho);
            rec.gamma_marginal = purity(dephase(rho));
            rec.exact = exact_coherence(rho);
            b = coherence_bounds(rec.gamma_global, rec.gamma_marginal, rho.dim());
            break;
        }
        case Quantity::MultiInfo:
            throw Error(ErrorCode::BadMethod, "scatter datasets support coherent-info and coherence only");
    }
    rec.lower = b.lower;
    rec.upper = b.upper;
    if (!b.contains(*rec.exact, kSandwichSlack)) {
        throw Error(ErrorCode::InvariantViolation,
                    "exact value " + std::to_string(*rec.exact) + " outside [" + std::to_string(b.lower) + ", " +
                        std::to_string(b.upper) + "] at index " + std::to_string(index),
                    *rec.exact);
    }
    return rec;
}

/// Draws one state from the configured induced-measure mixture.
inline DensityMatrix draw_ensemble_state(const ScatterConfig& config, SeededStream& stream) {
    const std::size_t d = dims_product(config.dims);
    std::vector<std::size_t> ks = config.ancilla_dims;
    if (ks.empty()) ks = {1, 2, d, d * d};
    const std::size_t k = ks[stream.uniform_index(ks.size())];
    return random_mixed_state(config.dims, k, stream);
}

/// Sample i draws from stream.derive(i), so the dataset does not depend on
/// the worker count. Records come back sorted by (lower, index).
inline std::vector<SampleRecord> emit_bound_scatter(const ScatterConfig& config, const SeededStream& stream) {
    if (config.quantity == Quantity::CoherentInfo && config.dims.size() != 2) {
        throw Error(ErrorCode::DimMismatch, "coherent-info scatter needs dims [d_A, d_B]");
    }
    if (config.dims.empty()) {
        throw Error(ErrorCode::DimMismatch, "scatter needs dims");
    }
    const std::size_t m = config.injected.size();
    const std::size_t total = m + config.n_samples;
    std::vector<std::optional<SampleRecord>> slots(total);

    for (std::size_t i = 0; i < m; ++i) {
        slots[i] = evaluate_record(config.injected[i], config.quantity, stream.seed(), i);
    }

    auto work = [&](std::size_t worker, std::size_t workers) {
        for (std::size_t i = m + worker; i < total; i += workers) {
            SeededStream s = stream.derive(i);
            const DensityMatrix rho = draw_ensemble_state(config, s);
            slots[i] = evaluate_record(rho, config.quantity, stream.seed(), i);
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, config.n_samples));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    work(w, workers);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    std::vector<SampleRecord> out;
    out.reserve(total);
    for (auto& s : slots) out.push_back(std::move(*s));
    std::sort(out.begin(), out.end(), [](const SampleRecord& a, const SampleRecord& b) {
        return a.lower != b.lower ? a.lower < b.lower : a.index < b.index;
    });
    return out;
}

// ---------------------------------------------------------------------------

struct GridRow {
    double gamma_global;
    double gamma_marginal;
    double lower;
    double upper;
};

namespace detail {

inline std::vector<double> purity_axis(std::size_t d, std::size_t n) {
    std::vector<double> axis(n);
    const double lo = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < n; ++i) {
        axis[i] = lo + (1.0 - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    axis.back() = 1.0;
    return axis;
}

}  // namespace detail

/// Bounds evaluated on a rectangular grid over the purity boxes; no states
/// are involved. For coherence, pairs with gamma_d > gamma_rho are omitted.
inline std::vector<GridRow> grid_bound_surface(Quantity quantity, std::span<const std::size_t> dims, std::size_t grid_n) {
    if (grid_n < 2) {
        throw Error(ErrorCode::OutOfRange, "grid needs at least two points per axis", static_cast<double>(grid_n));
    }
    std::vector<GridRow> rows;
    switch (quantity) {
        case Quantity::CoherentInfo: {
            if (dims.size() != 2) {
                throw Error(ErrorCode::DimMismatch, "coherent-info grid needs dims [d_A, d_B]");
            }
            const auto global = detail::purity_axis(dims[0] * dims[1], grid_n);
            const auto marginal = detail::purity_axis(dims[1], grid_n);
            for (double g : global) {
                for (double m : marginal) {
                    const auto b = coherent_info_bounds(g, m, dims[0], dims[1]);
                    rows.push_back({g, m, b.lower, b.upper});
                }
            }
            break;
        }
        case Quantity::Coherence: {
            const std::size_t d = dims_product(dims);
            const auto axis = detail::purity_axis(d, grid_n);
            for (double g : axis) {
                for (double gd : axis) {
                    if (gd > g) continue;
                    const auto b = coherence_bounds(g, gd, d);
                    rows.push_back({g, gd, b.lower, b.upper});
                }
            }
            break;
        }
        case Quantity::MultiInfo:
            throw Error(ErrorCode::BadMethod, "grid surfaces support coherent-info and coherence only");
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Stochastic search for the minimum coherent information at fixed purities.

struct SearchResult {
    DensityMatrix state;
    double value;
    double lower_bound;
    std::size_t evaluations;
};

namespace detail {

/// Rescales a probability vector to the target purity by mixing it with the
/// uniform vector (to lower purity) or with the basis vector of its largest
/// entry (to raise it). Both mixtures have closed-form parameters.
inline std::vector<double> project_to_purity(std::vector<double> x, double gamma) {
    const std::size_t d = x.size();
    const double dd = static_cast<double>(d);
    double p2 = 0.0;
    for (double v : x) p2 += v * v;
    if (std::abs(p2 - gamma) < 1e-15) return x;
    if (p2 > gamma) {
        const double t = 1.0 - std::sqrt(std::max(0.0, (gamma - 1.0 / dd) / (p2 - 1.0 / dd)));
        for (double& v : x) v = (1.0 - t) * v + t / dd;
    } else {
        const auto m = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
        const double xm = x[m];
        const double a = p2 - 2.0 * xm + 1.0;
        const double b = 2.0 * (xm - p2);
        const double c = p2 - gamma;
        const double t = std::clamp((-b + std::sqrt(std::max(0.0, b * b - 4.0 * a * c))) / (2.0 * a), 0.0, 1.0);
        for (double& v : x) v *= (1.0 - t);
        x[m] += t;
    }
    return x;
}

inline ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const double> lambda) {
    const std::size_t n = u.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (lambda[k] == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const complex urk = lambda[k] * u(r, k);
            for (std::size_t c = 0; c < n; ++c) out(r, c) += urk * std::conj(u(c, k));
        }
    }
    return out;
}

class CoherentInfoSearch {
public:
    CoherentInfoSearch(double gamma_ab, double gamma_b, std::size_t d_a, std::size_t d_b, SeededStream& stream)
        : gamma_ab_(gamma_ab), gamma_b_(gamma_b), d_a_(d_a), d_b_(d_b), d_(d_a * d_b), stream_(stream) {}

    DensityMatrix state(const ComplexMatrix& u, std::span<const double> lambda) const {
        return DensityMatrix(conjugate_diagonal(u, lambda), {d_a_, d_b_}, TrustedTag{});
    }

    double marginal_purity(const ComplexMatrix& u, std::span<const double> lambda) const {
        return purity(partial_trace(state(u, lambda), {1}));
    }

    double value(const ComplexMatrix& u, std::span<const double> lambda) const {
        return von_neumann_entropy(partial_trace(state(u, lambda), {1})) - shannon_entropy(lambda);
    }

    /// Eigenbasis placing the largest d_A eigenvalues on |a, 0>, the next on
    /// |a, 1> and so on: a product-like arrangement with high marginal purity.
    ComplexMatrix product_anchor() const {
        ComplexMatrix u(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            const std::size_t a = j % d_a_;
            const std::size_t b = j / d_a_;
            u(a * d_b_ + b, j) = 1.0;
        }
        return u;
    }

    /// Basis of maximally entangled vectors (needs d_A >= d_B): every state
    /// diagonal in it has rho_B = I / d_B.
    std::optional<ComplexMatrix> entangled_anchor() const {
        if (d_a_ < d_b_) return std::nullopt;
        ComplexMatrix u(d_);
        const double norm = 1.0 / std::sqrt(static_cast<double>(d_b_));
        std::size_t col = 0;
        for (std::size_t a = 0; a < d_a_; ++a) {
            for (std::size_t n = 0; n < d_b_; ++n, ++col) {
                for (std::size_t j = 0; j < d_b_; ++j) {
                    const double phase = 2.0 * std::numbers::pi * static_cast<double>(j * n) / static_cast<double>(d_b_);
                    u(((a + j) % d_a_) * d_b_ + j, col) = norm * complex(std::cos(phase), std::sin(phase));
                }
            }
        }
        return u;
    }

    /// Unitary minimizing marginal purity by a short random descent.
    ComplexMatrix descend_marginal(ComplexMatrix u, std::span<const double> lambda, int steps) {
        double best = marginal_purity(u, lambda);
        double scale = 0.3;
        for (int i = 0; i < steps; ++i) {
            ComplexMatrix cand = u * random_near_identity_unitary(d_, scale, stream_);
            const double g = marginal_purity(cand, lambda);
            if (g < best) {
                best = g;
                u = std::move(cand);
            } else {
                scale = std::max(0.02, scale * 0.97);
            }
        }
        return u;
    }

    /// Moves from `start` along the orthonormalized straight path towards an
    /// anchor whose marginal purity lies on the other side of the target,
    /// then bisects. Returns nullopt when no anchor brackets the target.
    std::optional<ComplexMatrix> match_marginal(const ComplexMatrix& start, std::span<const double> lambda,
                                                std::span<const ComplexMatrix> anchors) const {
        const double g0 = marginal_purity(start, lambda) - gamma_b_;
        if (std::abs(g0) <= kMatchTolerance) return start;
        for (const auto& anchor : anchors) {
            const double ga = marginal_purity(anchor, lambda) - gamma_b_;
            if ((ga > 0.0) == (g0 > 0.0)) continue;
            auto path = [&](double t) -> std::optional<ComplexMatrix> {
                ComplexMatrix m = start * complex(1.0 - t) + anchor * complex(t);
                if (!orthonormalize_columns(m)) return std::nullopt;
                return m;
            };
            // Scan for the first sign change, then bisect inside it.
            double lo = 0.0;
            double f_lo = g0;
            constexpr int kScan = 16;
            std::optional<std::pair<double, double>> bracket;
            for (int s = 1; s <= kScan && !bracket; ++s) {
                const double t = static_cast<double>(s) / kScan;
                auto m = path(t);
                if (!m) continue;
                const double f = marginal_purity(*m, lambda) - gamma_b_;
                if (std::abs(f) <= kMatchTolerance) return m;
                if ((f > 0.0) != (f_lo > 0.0)) {
                    bracket = std::make_pair(lo, t);
                } else {
                    lo = t;
                    f_lo = f;
                }
            }
            if (!bracket) continue;
            auto [a, b] = *bracket;
            std::optional<ComplexMatrix> best;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                auto m = path(mid);
                if (!m) break;
                const double f = marginal_purity(*m, lambda) - gamma_b_;
                best = std::move(m);
                if (std::abs(f) <= kMatchTolerance) return best;
                if ((f > 0.0) == (f_lo > 0.0)) {
                    a = mid;
                    f_lo = f;
                } else {
                    b = mid;
                }
            }
            if (best && std::abs(marginal_purity(*best, lambda) - gamma_b_) <= kProjectionTolerance) return best;
        }
        return std::nullopt;
    }

    std::vector<double> random_spectrum() {
        return project_to_purity(random_simplex_point(d_, stream_), gamma_ab_);
    }

    static constexpr double kMatchTolerance = 1e-11;
    static constexpr double kProjectionTolerance = 1e-7;

private:
    double gamma_ab_;
    double gamma_b_;
    std::size_t d_a_;
    std::size_t d_b_;
    std::size_t d_;
    SeededStream& stream_;
};

}  // namespace detail

/**
 * Best-effort stochastic minimization of I(A>B) over states with purity
 * gamma_ab and marginal purity gamma_b.
 *
 * Candidate spectra are projected onto the global purity exactly; the first
 * candidate is the maximum-entropy spectrum, which attains the lower bound
 * whenever some eigenbasis matches gamma_b. The eigenbasis is adjusted onto
 * the marginal purity by bisection along a path to a bracketing anchor. The
 * first quarter of the budget goes to random restarts, the rest to local
 * perturbations of the incumbent. Throws ProjectionFailed if no candidate
 * meets both purities.
 */
inline SearchResult search_min_coherent_info(double gamma_ab, double gamma_b, std::size_t d_a, std::size_t d_b,
                                             std::size_t budget, SeededStream& stream) {
    if (budget < 1) {
        throw Error(ErrorCode::OutOfRange, "search budget must be at least 1");
    }
    const BoundInterval bounds = coherent_info_bounds(gamma_ab, gamma_b, d_a, d_b);
    gamma_ab = bounds.inputs[0].gamma();
    gamma_b = bounds.inputs[1].gamma();
    const std::size_t d = d_a * d_b;
    detail::CoherentInfoSearch search(gamma_ab, gamma_b, d_a, d_b, stream);

    struct Incumbent {
        ComplexMatrix u;
        std::vector<double> lambda;
        double value;
    };
    std::optional<Incumbent> best;
    std::size_t evaluations = 0;

    const auto max_spectrum = max_entropy_spectrum(PurityValue(gamma_ab, d)).spectrum;
    const std::vector<double> max_lambda(max_spectrum.probs().begin(), max_spectrum.probs().end());

    auto anchors_for = [&](std::span<const double> lambda) {
        std::vector<ComplexMatrix> anchors{search.product_anchor()};
        if (auto e = search.entangled_anchor()) {
            anchors.push_back(std::move(*e));
        } else {
            anchors.push_back(search.descend_marginal(random_unitary(d, stream), lambda, 200));
        }
        anchors.push_back(random_unitary(d, stream));
        return anchors;
    };

    auto consider = [&](ComplexMatrix u, std::vector<double> lambda) {
        const double v = search.value(u, lambda);
        if (!best || v < best->value) best = Incumbent{std::move(u), std::move(lambda), v};
    };

    const std::size_t restarts = std::max<std::size_t>(1, budget / 4);
    for (std::size_t r = 0; r < restarts && evaluations < budget; ++r, ++evaluations) {
        std::vector<double> lambda = r == 0 ? max_lambda : search.random_spectrum();
        const auto anchors = anchors_for(lambda);
        if (auto u = search.match_marginal(random_unitary(d, stream), lambda, anchors)) {
            consider(std::move(*u), std::move(lambda));
        }
    }

    double scale = 0.2;
    while (evaluations < budget && best) {
        ++evaluations;
        std::vector<double> lambda = best->lambda;
        if (stream.bernoulli(0.5)) {
            for (auto& x : lambda) x = std::max(0.0, x + scale * 0.2 * stream.normal() * (x + 1e-3));
            double total = 0.0;
            for (double x : lambda) total += x;
            for (auto& x : lambda) x /= total;
            lambda = detail::project_to_purity(std::move(lambda), gamma_ab);
        }
        const ComplexMatrix start = best->u * random_near_identity_unitary(d, scale, stream);
        const std::vector<ComplexMatrix> anchors = {best->u, search.product_anchor(),
                                                    search.entangled_anchor().value_or(random_unitary(d, stream))};
        const double before = best->value;
        if (auto u = search.match_marginal(start, lambda, anchors)) consider(std::move(*u), std::move(lambda));
        if (best->value >= before) scale = std::max(0.01, scale * 0.98);
    }

    if (!best) {
        throw Error(ErrorCode::ProjectionFailed, "no state found with the requested purities", gamma_b);
    }
    DensityMatrix state = search.state(best->u, best->lambda);
    const double g_ab = purity(state);
    const double g_b = purity(partial_trace(state, {1}));
    if (std::abs(g_ab - gamma_ab) > 1e-6 || std::abs(g_b - gamma_b) > 1e-6) {
        throw Error(ErrorCode::ProjectionFailed, "purity targets missed", std::max(std::abs(g_ab - gamma_ab), std::abs(g_b - gamma_b)));
    }
    return {std::move(state), best->value, bounds.lower, evaluations};
}

// ---------------------------------------------------------------------------
// CSV emission: header row, ',' separator, '\n' line endings, 12 significant
// digits, empty fields for absent values.

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline constexpr const char* kCsvHeader = "gamma_global,gamma_marginal,exact,renyi,lower,upper,seed,index";

inline void write_csv(std::ostream& out, std::span<const SampleRecord> records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_number(r.gamma_global) << ',' << format_number(r.gamma_marginal) << ','
            << (r.exact ? format_number(*r.exact) : "") << ',' << (r.renyi ? format_number(*r.renyi) : "") << ','
            << format_number(r.lower) << ',' << format_number(r.upper) << ',' << r.seed << ',' << r.index << '\n';
    }
}

/// Grid rows in the scatter schema (exact empty, renyi filled for coherent info).
inline std::vector<SampleRecord> grid_records(std::span<const GridRow> rows, Quantity quantity,
                                              std::span<const std::size_t> dims) {
    std::vector<SampleRecord> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SampleRecord r{};
        r.gamma_global = rows[i].gamma_global;
        r.gamma_marginal = rows[i].gamma_marginal;
        if (quantity == Quantity::CoherentInfo) r.renyi = renyi_coherent_info(r.gamma_global, r.gamma_marginal);
        r.lower = rows[i].lower;
        r.upper = rows[i].upper;
        r.dims.assign(dims.begin(), dims.end());
        r.index = i;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace purity_bounds
