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

// Command implementations behind the purity_bounds executable. Each command
// takes a parsed request and returns JSON (or writes a CSV); errors are
// reported as purity_bounds::Error and mapped to exit codes by exit_code().

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "purity_bounds/bounds.hpp"
#include "purity_bounds/error.hpp"
#include "purity_bounds/measurement.hpp"
#include "purity_bounds/random.hpp"
#include "purity_bounds/sampling.hpp"
#include "purity_bounds/state_io.hpp"

namespace purity_bounds::commands {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 2;
inline constexpr int kExitInternalError = 3;

inline int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvariantViolation:
        case ErrorCode::NoConvergence: return kExitInternalError;
        default: return kExitUserError;
    }
}

inline Quantity parse_quantity(const std::string& name) {
    if (name == "coherent-info") return Quantity::CoherentInfo;
    if (name == "coherence") return Quantity::Coherence;
    if (name == "multi-info") return Quantity::MultiInfo;
    throw Error(ErrorCode::BadMethod, "unknown quantity '" + name + "' (coherent-info, coherence, multi-info)");
}

/// Worker count from PURITY_BOUNDS_THREADS, default 1.
inline std::size_t env_threads() {
    const char* v = std::getenv("PURITY_BOUNDS_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) {
        throw Error(ErrorCode::OutOfRange, "PURITY_BOUNDS_THREADS must be a positive integer");
    }
    return static_cast<std::size_t>(n);
}

/// Rounds to 12 significant digits so JSON output matches the CSV precision.
inline double round12(double v) { return std::isfinite(v) ? std::stod(format_number(v)) : v; }

namespace detail {

inline nlohmann::json interval_json(const BoundInterval& b) {
    return {{"lower", round12(b.lower)}, {"upper", round12(b.upper)}};
}

inline std::vector<double> rounded(const std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v) out.push_back(round12(x));
    return out;
}

inline void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
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

}  // namespace detail

// ---------------------------------------------------------------------------
// bounds

struct BoundsRequest {
    Quantity quantity = Quantity::CoherentInfo;
    double gamma_global = 1.0;
    std::vector<double> gamma_marginals;
    std::vector<std::size_t> dims;
};

/// coherent-info: dims [d_A, d_B], one marginal (gamma_B).
/// coherence: dims [d] (or factors multiplying to d), one marginal (gamma of
///   the dephased state).
/// multi-info: one marginal per factor.
inline BoundInterval compute_bounds(const BoundsRequest& req) {
    switch (req.quantity) {
        case Quantity::CoherentInfo:
            if (req.dims.size() != 2) throw Error(ErrorCode::DimMismatch, "coherent-info needs --dims d_A,d_B");
            if (req.gamma_marginals.size() != 1) {
                throw Error(ErrorCode::DimMismatch, "coherent-info needs exactly one marginal purity (gamma_B)");
            }
            return coherent_info_bounds(req.gamma_global, req.gamma_marginals[0], req.dims[0], req.dims[1]);
        case Quantity::Coherence:
            if (req.dims.empty()) throw Error(ErrorCode::DimMismatch, "coherence needs --dims d");
            if (req.gamma_marginals.size() != 1) {
                throw Error(ErrorCode::DimMismatch, "coherence needs exactly one marginal purity (dephased state)");
            }
            return coherence_bounds(req.gamma_global, req.gamma_marginals[0], dims_product(req.dims));
        case Quantity::MultiInfo:
            return multi_information_bounds(req.gamma_global, req.gamma_marginals, req.dims);
    }
    throw Error(ErrorCode::BadMethod, "unknown quantity");
}

inline nlohmann::json run_bounds(const BoundsRequest& req) {
    const BoundInterval b = compute_bounds(req);
    nlohmann::json out = {{"quantity", quantity_name(req.quantity)},
                          {"lower", round12(b.lower)},
                          {"upper", round12(b.upper)},
                          {"inputs",
                           {{"gamma_global", round12(req.gamma_global)},
                            {"gamma_marginals", detail::rounded(req.gamma_marginals)},
                            {"dims", req.dims}}}};
    if (req.quantity == Quantity::CoherentInfo) {
        out["renyi"] = round12(renyi_coherent_info(req.gamma_global, req.gamma_marginals[0]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// analyze

inline nlohmann::json analyze_state(const DensityMatrix& rho, Quantity quantity) {
    nlohmann::json out = {{"quantity", quantity_name(quantity)},
                          {"dims", std::vector<std::size_t>(rho.dims().begin(), rho.dims().end())}};
    const double g = purity(rho);
    std::vector<double> marginals;
    BoundInterval b{};
    double exact = 0.0;
    switch (quantity) {
        case Quantity::CoherentInfo:
            if (rho.num_subsystems() != 2) {
                throw Error(ErrorCode::DimMismatch, "coherent-info needs a state with dims [d_A, d_B]");
            }
            marginals = {purity(partial_trace(rho, {1}))};
            b = coherent_info_bounds(g, marginals[0], rho.dims()[0], rho.dims()[1]);
            exact = exact_coherent_information(rho);
            out["renyi"] = round12(renyi_coherent_info(g, marginals[0]));
            break;
        case Quantity::Coherence:
            marginals = {purity(dephase(rho))};
            b = coherence_bounds(g, marginals[0], rho.dim());
            exact = exact_coherence(rho);
            break;
        case Quantity::MultiInfo: {
            if (rho.num_subsystems() < 2) {
                throw Error(ErrorCode::DimMismatch, "multi-info needs a state with at least two factors");
            }
            const auto s = purity_summary(rho);
            marginals = s.gamma_marginals;
            b = multi_information_bounds(g, marginals, s.dims);
            exact = exact_multi_information(rho);
            break;
        }
    }
    if (!b.contains(exact, kSandwichSlack)) {
        throw Error(ErrorCode::InvariantViolation,
                    "exact value " + format_number(exact) + " outside [" + format_number(b.lower) + ", " +
                        format_number(b.upper) + "]",
                    exact);
    }
    out["gamma_global"] = round12(g);
    out["gamma_marginals"] = detail::rounded(marginals);
    out["exact"] = round12(exact);
    out["lower"] = round12(b.lower);
    out["upper"] = round12(b.upper);
    return out;
}

inline nlohmann::json run_analyze(const std::string& path, Quantity quantity, const std::string& basis = "computational") {
    if (basis != "computational") {
        throw Error(ErrorCode::BadMethod, "only the computational basis is supported");
    }
    return analyze_state(read_state_file(path), quantity);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateRequest {
    std::string method = "ancilla";
    int order = 2;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    std::optional<Quantity> propagate;
};

namespace detail {

inline nlohmann::json estimator_json(const EstimatorResult& r) {
    return {{"method", method_name(r.method)},
            {"estimate", round12(r.estimate)},
            {"clamped_estimate", round12(r.clamped_estimate)},
            {"std_error", round12(r.std_error)},
            {"shots", r.shots},
            {"clamped", r.clamped}};
}

/// Three-point sweep gamma - 1.96 se, gamma, gamma + 1.96 se kept inside [floor, 1].
inline std::vector<double> sensitivity_points(const EstimatorResult& r, double floor) {
    const double c = r.clamped_estimate;
    const double w = 1.96 * r.std_error;
    return {std::clamp(c - w, floor, 1.0), c, std::clamp(c + w, floor, 1.0)};
}

}  // namespace detail

/// Finite-shot purity estimate. With `propagate`, the relevant marginal
/// purity is estimated too (ancilla readout of the reduced state for
/// coherent info, of rho_d (x) rho for coherence), bounds are evaluated at
/// the clamped estimates, and "interval" holds the widest bounds over the
/// estimates moved by +-1.96 standard errors.
inline nlohmann::json simulate_state(const DensityMatrix& rho, const SimulateRequest& req) {
    const MeasurementMethod method = parse_method(req.method, req.order);
    const SeededStream root(req.seed);
    SeededStream global_stream = root.derive(0);
    const EstimatorResult global = simulate_shots(rho, method, req.shots, global_stream);

    nlohmann::json out = detail::estimator_json(global);
    out["seed"] = req.seed;
    out["rng"] = std::string(SeededStream::kAlgorithm);
    if (!req.propagate) return out;

    if (method.order != 2) {
        throw Error(ErrorCode::BadOrder, "bound propagation needs a purity (order 2) estimate", method.order);
    }
    SeededStream marginal_stream = root.derive(1);
    EstimatorResult marginal{};
    std::size_t d_marginal = 0;
    const std::size_t d = rho.dim();
    switch (*req.propagate) {
        case Quantity::CoherentInfo: {
            if (rho.num_subsystems() != 2) {
                throw Error(ErrorCode::DimMismatch, "coherent-info propagation needs a state with dims [d_A, d_B]");
            }
            const DensityMatrix rho_b = partial_trace(rho, {1});
            d_marginal = rho_b.dim();
            marginal = simulate_shots(rho_b, method, req.shots, marginal_stream);
            break;
        }
        case Quantity::Coherence:
            d_marginal = d;
            marginal = simulate_dephased_shots(rho, req.shots, marginal_stream);
            break;
        case Quantity::MultiInfo:
            throw Error(ErrorCode::BadMethod, "propagation supports coherent-info and coherence");
    }

    bool warning = global.clamped || marginal.clamped;
    auto evaluate = [&](double g, double m) {
        if (*req.propagate == Quantity::CoherentInfo) return coherent_info_bounds(g, m, rho.dims()[0], rho.dims()[1]);
        if (m > g) {
            warning = true;
            m = g;
        }
        return coherence_bounds(g, m, d);
    };

    const BoundInterval centre = evaluate(global.clamped_estimate, marginal.clamped_estimate);
    double lo = centre.lower;
    double hi = centre.upper;
    for (double g : detail::sensitivity_points(global, 1.0 / static_cast<double>(d))) {
        for (double m : detail::sensitivity_points(marginal, 1.0 / static_cast<double>(d_marginal))) {
            const BoundInterval b = evaluate(g, m);
            lo = std::min(lo, b.lower);
            hi = std::max(hi, b.upper);
        }
    }
    out["propagate"] = quantity_name(*req.propagate);
    out["marginal"] = detail::estimator_json(marginal);
    out["bounds"] = detail::interval_json(centre);
    out["interval"] = {{"lower", round12(lo)}, {"upper", round12(hi)}};
    out["warning"] = warning;
    return out;
}

inline nlohmann::json run_simulate(const std::string& path, const SimulateRequest& req) {
    return simulate_state(read_state_file(path), req);
}

// ---------------------------------------------------------------------------
// figure

struct FigureRequest {
    std::string which = "1b";
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::vector<std::size_t> dims;  // empty: figure default
    std::size_t grid = 0;           // > 0: bounds-only grid instead of states (figures 2 and 3)
    std::size_t search_budget = 0;  // > 0: figures 1a/1b report searched minima
    std::size_t threads = 1;
};

/// Records for one figure.
///
/// 1a, 1b: 2x2 coherent-info scatter (renyi and lower columns against exact).
/// With a search budget, "exact" becomes the lowest coherent information
/// found at the sample's purity pair (never above the sampled state's own).
/// 2: coherent-info bounds for 4x4, 3: coherence bounds for d = 4; both from
/// sampled states, or from a purity grid when `grid` is set.
inline std::vector<SampleRecord> figure_records(const FigureRequest& req) {
    const std::string& w = req.which;
    if (w != "1a" && w != "1b" && w != "2" && w != "3") {
        throw Error(ErrorCode::BadMethod, "unknown figure '" + w + "' (1a, 1b, 2, 3)");
    }
    const bool coherence = w == "3";
    const Quantity quantity = coherence ? Quantity::Coherence : Quantity::CoherentInfo;
    std::vector<std::size_t> dims = req.dims;
    if (dims.empty()) {
        if (w == "2") dims = {4, 4};
        else if (w == "3") dims = {4};
        else dims = {2, 2};
    }

    if (req.grid > 0) {
        if (w != "2" && w != "3") throw Error(ErrorCode::BadMethod, "--grid applies to figures 2 and 3");
        const auto rows = grid_bound_surface(quantity, dims, req.grid);
        auto records = grid_records(rows, quantity, dims);
        for (auto& r : records) r.seed = req.seed;
        return records;
    }

    ScatterConfig config;
    config.dims = dims;
    config.n_samples = req.samples;
    config.quantity = quantity;
    config.threads = req.threads;
    auto records = emit_bound_scatter(config, SeededStream(req.seed));

    if (req.search_budget > 0 && (w == "1a" || w == "1b")) {
        const SeededStream search_root(req.seed, 1);
        detail::parallel_for(records.size(), req.threads, [&](std::size_t i) {
            auto& r = records[i];
            SeededStream s = search_root.derive(r.index);
            try {
                const auto found = search_min_coherent_info(r.gamma_global, r.gamma_marginal, dims[0], dims[1],
                                                            req.search_budget, s);
                if (found.value < *r.exact) r.exact = found.value;
            } catch (const Error& e) {
                // The sampled state already meets both purities; keep its value.
                if (e.code() != ErrorCode::ProjectionFailed) throw;
            }
            if (*r.exact < r.lower - kSandwichSlack) {
                throw Error(ErrorCode::InvariantViolation,
                            "searched value " + format_number(*r.exact) + " below lower bound " +
                                format_number(r.lower),
                            *r.exact);
            }
        });
    }
    return records;
}

inline std::string figure_csv(const FigureRequest& req) {
    std::ostringstream out;
    write_csv(out, figure_records(req));
    return out.str();
}

inline void run_figure(const FigureRequest& req, const std::string& path) {
    const std::string csv = figure_csv(req);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << csv;
}

// ---------------------------------------------------------------------------
// export-state

struct ExportRequest {
    std::string kind = "bell";
    std::vector<std::size_t> dims;
    double p = 1.0;       // isotropic mixing weight
    std::size_t rank = 1;  // random-mixed ancilla dimension
    std::uint64_t seed = 0;
};

/// bell, isotropic (p |Phi><Phi| + (1-p) I/4), maximally-mixed, max-coherent
/// (uniform superposition), ghz (dims: qubit count as [n]), random-pure,
/// random-mixed.
inline DensityMatrix make_state(const ExportRequest& req) {
    const double h = 1.0 / std::sqrt(2.0);
    const DensityMatrix bell = pure_state({h, 0.0, 0.0, h}, {2, 2});
    const std::string& k = req.kind;
    if (k == "bell") return bell;
    if (k == "isotropic") {
        if (!(req.p >= 0.0 && req.p <= 1.0)) throw Error(ErrorCode::OutOfRange, "--p must lie in [0, 1]", req.p);
        return mix(bell, maximally_mixed({2, 2}), req.p);
    }
    if (req.dims.empty()) throw Error(ErrorCode::DimMismatch, "state kind '" + k + "' needs --dims");
    if (k == "maximally-mixed") return maximally_mixed(req.dims);
    if (k == "max-coherent") {
        const std::size_t d = dims_product(req.dims);
        std::vector<complex> psi(d, complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
        return pure_state(psi, req.dims);
    }
    if (k == "ghz") {
        if (req.dims.size() != 1 || req.dims[0] < 2 || req.dims[0] > 10) {
            throw Error(ErrorCode::DimMismatch, "ghz needs --dims n with 2 <= n <= 10 qubits");
        }
        const std::size_t n = req.dims[0];
        std::vector<complex> psi(std::size_t{1} << n);
        psi.front() = psi.back() = h;
        return pure_state(psi, std::vector<std::size_t>(n, 2));
    }
    SeededStream stream(req.seed);
    if (k == "random-pure") return random_pure_state(req.dims, stream);
    if (k == "random-mixed") return random_mixed_state(req.dims, req.rank, stream);
    throw Error(ErrorCode::BadMethod, "unknown state kind '" + k + "'");
}

inline void run_export(const ExportRequest& req, const std::string& path) { write_state_file(path, make_state(req)); }

}  // namespace purity_bounds::commands
