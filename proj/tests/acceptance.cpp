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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "purity_bounds/purity_bounds.hpp"

using namespace purity_bounds;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0 && secs > time_limit_s) {
        out.pass = false;
        out.detail += " (over time limit " + format_number(time_limit_s) + " s)";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d: %s: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Qubit state with purity gamma: diag(p, 1 - p).
DensityMatrix qubit_with_purity(double gamma) {
    const double p = 0.5 * (1.0 + std::sqrt(std::max(0.0, 2.0 * gamma - 1.0)));
    ComplexMatrix m(2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    return validate_density(m, {2});
}

Outcome oracle_equivalence() {
    double worst = 0.0;
    std::size_t checks = 0;
    for (std::size_t d : {2u, 3u, 4u, 8u}) {
        const auto axis = detail::purity_axis(d, 50);
        for (std::size_t i = 0; i < axis.size(); ++i) {
            const PurityValue p(axis[i], d);
            const auto num = oracle::numeric_entropy_extremes(d, p.gamma(), 1000 * d + i);
            worst = std::max(worst, std::abs(shannon_entropy(max_entropy_spectrum(p).spectrum) - num.max));
            worst = std::max(worst, std::abs(shannon_entropy(min_entropy_spectrum(p).spectrum) - num.min));
            checks += 2;
        }
    }
    return {worst <= 1e-6, fmt("%.0f comparisons, worst |closed form - numeric| = %.3g (tol 1e-6)",
                               static_cast<double>(checks), worst)};
}

Outcome sandwich() {
    constexpr std::size_t kStates = 10000;
    constexpr double kSlack = 1e-9;
    SeededStream root(2024);
    std::size_t violations = 0;
    std::size_t total = 0;
    std::string detail;
    const std::vector<std::pair<std::size_t, std::size_t>> pairs = {{2, 2}, {2, 3}, {3, 3}};
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        const auto [da, db] = pairs[c];
        const std::size_t d = da * db;
        const std::vector<std::size_t> ancillas = {1, 2, d, d * d};
        std::size_t v = 0;
        for (std::size_t i = 0; i < kStates; ++i) {
            SeededStream s = root.derive(c * kStates + i);
            const auto rho = random_mixed_state({da, db}, ancillas[s.uniform_index(ancillas.size())], s);
            if (!coherent_info_bounds(rho).contains(exact_coherent_information(rho), kSlack)) ++v;
        }
        detail += std::to_string(da) + "x" + std::to_string(db) + ":" + std::to_string(v) + " ";
        violations += v;
        total += kStates;
    }
    std::size_t c = pairs.size();
    for (std::size_t d : {2u, 3u, 4u, 8u}) {
        const std::vector<std::size_t> ancillas = {1, 2, d, d * d};
        std::size_t v = 0;
        for (std::size_t i = 0; i < kStates; ++i) {
            SeededStream s = root.derive(c * kStates + i);
            const auto rho = random_mixed_state(d, ancillas[s.uniform_index(ancillas.size())], s);
            if (!coherence_bounds(rho).contains(exact_coherence(rho), kSlack)) ++v;
        }
        detail += "d" + std::to_string(d) + ":" + std::to_string(v) + " ";
        violations += v;
        total += kStates;
        ++c;
    }
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(total) +
                                 " states at slack 1e-9 (" + detail.substr(0, detail.size() - 1) + ")"};
}

Outcome pinned_points() {
    constexpr double kTol = 1e-9;
    double worst = 0.0;
    const double r = 1.0 / std::numbers::sqrt2;
    const auto bell = pure_state({r, 0.0, 0.0, r}, {2, 2});
    const auto b = coherent_info_bounds(bell);
    worst = std::max({worst, std::abs(b.lower - 1.0), std::abs(b.upper - 1.0),
                      std::abs(exact_coherent_information(bell) - 1.0)});
    const auto mixed = maximally_mixed({2, 2});
    const auto m = coherent_info_bounds(mixed);
    worst = std::max({worst, std::abs(m.lower + 1.0), std::abs(m.upper + 1.0),
                      std::abs(exact_coherent_information(mixed) + 1.0)});
    for (std::size_t d : {2u, 3u, 4u, 8u}) {
        std::vector<complex> psi(d, complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
        const auto rho = pure_state(psi, {d});
        const auto c = coherence_bounds(rho);
        const double want = std::log2(static_cast<double>(d));
        worst = std::max({worst, std::abs(c.lower - want), std::abs(c.upper - want),
                          std::abs(exact_coherence(rho) - want)});
    }
    return {worst <= kTol, fmt("Bell, maximally mixed 2x2, maximally coherent d=2,3,4,8; worst deviation %.3g (tol 1e-9)",
                               worst)};
}

Outcome measurement_identities() {
    constexpr double kTol = 1e-10;
    constexpr std::size_t kStates = 1000;
    SeededStream root(77);
    double worst = 0.0;
    for (std::size_t d : {2u, 3u}) {
        for (std::size_t i = 0; i < kStates; ++i) {
            SeededStream s = root.derive(d * kStates + i);
            const auto rho = random_mixed_state(d, 1 + s.uniform_index(d * d), s);
            const double g = trace_power(rho, 2);
            const double swap =
                trace_of_product(swap_operator(d), tensor_product(rho.matrix(), rho.matrix())).real();
            const double deph = trace_power(dephase(rho), 2);
            const double deph_swap =
                trace_of_product(swap_operator(d), tensor_product(dephase(rho).matrix(), rho.matrix())).real();
            worst = std::max({worst, std::abs(swap - g), std::abs(swap_expectation(rho) - g),
                              std::abs(ancilla_swap_prob0(rho) - 0.5 * (1.0 + g)),
                              std::abs(singlet_prob(rho) - 0.5 * (1.0 - g)), std::abs(deph_swap - deph)});
            for (int k = 2; k <= 4; ++k) {
                worst = std::max(worst, std::abs(shift_expectation(rho, k) - trace_power(rho, k)));
            }
        }
    }
    return {worst <= kTol, fmt("2000 states, d=2,3, shift k=2..4; worst deviation %.3g (tol 1e-10)", worst)};
}

Outcome calibration() {
    constexpr std::size_t kReps = 1000;
    constexpr std::uint64_t kShots = 10000;
    bool pass = true;
    std::string detail;
    SeededStream root(5150);
    std::uint64_t stream_index = 0;
    for (double gamma : {0.5, 0.75, 1.0}) {
        const auto rho = qubit_with_purity(gamma);
        const double truth = trace_power(rho, 2);
        std::size_t covered = 0;
        for (std::size_t r = 0; r < kReps; ++r) {
            SeededStream s = root.derive(stream_index++);
            const auto est = simulate_shots(rho, parse_method("ancilla"), kShots, s);
            if (std::abs(est.estimate - truth) <= 1.96 * est.std_error) ++covered;
        }
        const double coverage = static_cast<double>(covered) / static_cast<double>(kReps);
        pass = pass && coverage >= 0.92 && coverage <= 0.98;
        detail += fmt("gamma=%.2f: %.1f%% ", gamma, 100.0 * coverage);
    }
    return {pass, detail + "(target [92%, 98%])"};
}

Outcome figure_two() {
    const std::vector<std::size_t> dims = {4, 4};
    const auto grid = grid_bound_surface(Quantity::CoherentInfo, dims, 41);
    std::size_t inverted = 0;
    std::size_t corners_equal = 0;
    std::size_t equal_elsewhere = 0;
    auto at_end = [](double g, double lo) { return std::abs(g - 1.0) < 1e-12 || std::abs(g - lo) < 1e-12; };
    for (const auto& row : grid) {
        if (row.upper < row.lower) ++inverted;
        const bool corner = at_end(row.gamma_global, 1.0 / 16.0) && at_end(row.gamma_marginal, 0.25);
        const bool equal = std::abs(row.upper - row.lower) <= 1e-12;
        if (corner && equal) ++corners_equal;
        if (!corner && equal) ++equal_elsewhere;
    }

    ScatterConfig config;
    config.dims = dims;
    config.n_samples = 10000;
    const auto records = emit_bound_scatter(config, SeededStream(2));
    std::size_t outside = 0;
    for (const auto& r : records) {
        if (!r.exact || *r.exact < r.lower - 1e-9 || *r.exact > r.upper + 1e-9) ++outside;
    }
    const bool pass = inverted == 0 && corners_equal == 4 && equal_elsewhere == 0 && outside == 0 &&
                      records.size() == config.n_samples;
    return {pass, std::to_string(grid.size()) + " grid points, " + std::to_string(inverted) + " with upper < lower, " +
                      std::to_string(corners_equal) + "/4 corners equal, " + std::to_string(equal_elsewhere) +
                      " equal elsewhere; " + std::to_string(outside) + " bracket violations in " +
                      std::to_string(records.size()) + " samples"};
}

Outcome tightness() {
    constexpr std::size_t kPairs = 20;
    constexpr std::size_t kBudget = 4000;
    SeededStream root(31337);
    std::size_t hits = 0;
    std::string misses;
    double worst = 0.0;
    for (std::size_t i = 0; i < kPairs; ++i) {
        SeededStream pick = root.derive(i);
        const auto rho = random_mixed_state({2, 2}, 1 + pick.uniform_index(4), pick);
        const double g_ab = trace_power(rho, 2);
        const double g_b = trace_power(partial_trace(rho, {1}), 2);
        SeededStream s = root.derive(1000 + i);
        const auto res = search_min_coherent_info(g_ab, g_b, 2, 2, kBudget, s);
        const double gap = res.value - res.lower_bound;
        worst = std::max(worst, gap);
        if (gap <= 0.1) {
            ++hits;
        } else {
            misses += fmt(" (%.4f, %.4f) gap %.3f;", g_ab, g_b, gap);
        }
    }
    std::string detail = std::to_string(hits) + "/20 purity pairs within 0.1 bits of the lower bound (need 15)" +
                         fmt(", worst gap %.3f", worst);
    if (!misses.empty()) detail += "; remainder:" + misses;
    return {hits >= 15, detail};
}

Outcome multi_information() {
    constexpr std::size_t kProducts = 1000;
    constexpr std::size_t kStates = 100;
    SeededStream root(8080);
    std::size_t violations = 0;
    double worst = -1e300;
    std::uint64_t next = 0;
    for (const std::vector<std::size_t>& dims : {std::vector<std::size_t>{2, 3}, std::vector<std::size_t>{2, 2, 2}}) {
        std::vector<DensityMatrix> products;
        products.reserve(kProducts);
        for (std::size_t j = 0; j < kProducts; ++j) {
            SeededStream s = root.derive(next++);
            DensityMatrix sigma = random_mixed_state(dims[0], 1 + s.uniform_index(dims[0] * 2), s);
            for (std::size_t k = 1; k < dims.size(); ++k) {
                sigma = tensor_product(sigma, random_mixed_state(dims[k], 1 + s.uniform_index(dims[k] * 2), s));
            }
            products.push_back(std::move(sigma));
        }
        std::size_t d = 1;
        for (auto x : dims) d *= x;
        for (std::size_t i = 0; i < kStates; ++i) {
            SeededStream s = root.derive(next++);
            const auto rho = random_mixed_state(dims, 1 + s.uniform_index(d * d), s);
            const double mi = exact_multi_information(rho);
            for (const auto& sigma : products) {
                const double rel = relative_entropy(rho, sigma);
                worst = std::max(worst, mi - rel);
                if (mi > rel + 1e-9) ++violations;
            }
        }
    }
    return {violations == 0, std::to_string(violations) + " violations in " +
                                 std::to_string(2 * kProducts * kStates) +
                                 fmt(" (state, product) pairs over 2x3 and 2x2x2; max(I - S(rho||sigma)) = %.3g", worst)};
}

}  // namespace

int main() {
    run(1, "extremal-spectrum oracle equivalence", 60, oracle_equivalence);
    run(2, "sandwich property", 120, sandwich);
    run(3, "pinned exact points", 0, pinned_points);
    run(4, "measurement identities", 60, measurement_identities);
    run(5, "shot-estimator calibration", 60, calibration);
    run(6, "4x4 bound surface and scatter", 0, figure_two);
    run(7, "tightness probe", 300, tightness);
    run(8, "multi-information closed form", 0, multi_information);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
