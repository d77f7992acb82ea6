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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "purity_bounds/purity_bounds.hpp"

using namespace purity_bounds;

namespace {

const double kH = 1.0 / std::sqrt(2.0);
constexpr double kSmax05d4 = 1.40348809842376;   // max entropy at gamma=0.5, d=4
constexpr double kSmin04 = 1.41403187941618;     // min entropy at gamma=0.4
constexpr double kSmax04d4 = 1.63595707558292;   // max entropy at gamma=0.4, d=4
constexpr double kIsotropicH = 0.993392729010363;  // H(0.8125, 0.0625 x3)

DensityMatrix bell() { return pure_state({kH, 0.0, 0.0, kH}, {2, 2}); }

DensityMatrix ghz3() {
    std::vector<complex> psi(8);
    psi[0] = psi[7] = kH;
    return pure_state(psi, {2, 2, 2});
}

/// Product of random full-rank single-factor states.
DensityMatrix random_product(std::span<const std::size_t> dims, SeededStream& s) {
    DensityMatrix out = random_mixed_state(dims[0], dims[0] + 1, s);
    for (std::size_t i = 1; i < dims.size(); ++i) out = tensor_product(out, random_mixed_state(dims[i], dims[i] + 1, s));
    return out;
}

}  // namespace

TEST(CoherentInfoBounds, Examples) {
    auto b = coherent_info_bounds(1.0, 0.5, 2, 2);
    EXPECT_NEAR(b.lower, 1.0, 1e-12);
    EXPECT_NEAR(b.upper, 1.0, 1e-12);
    EXPECT_EQ(b.quantity, Quantity::CoherentInfo);
    ASSERT_EQ(b.inputs.size(), 2u);
    EXPECT_EQ(b.inputs[0].dim(), 4u);
    EXPECT_EQ(b.inputs[1].dim(), 2u);

    b = coherent_info_bounds(0.25, 0.5, 2, 2);
    EXPECT_NEAR(b.lower, -1.0, 1e-12);
    EXPECT_NEAR(b.upper, -1.0, 1e-12);

    b = coherent_info_bounds(0.5, 0.5, 2, 2);
    EXPECT_NEAR(b.lower, 1.0 - kSmax05d4, 1e-12);
    EXPECT_NEAR(b.upper, 0.0, 1e-12);
}

TEST(CoherentInfoBounds, OutOfRange) {
    EXPECT_THROW(coherent_info_bounds(0.2, 0.5, 2, 2), Error);
    EXPECT_THROW(coherent_info_bounds(0.5, 0.4, 2, 2), Error);
    EXPECT_THROW(coherent_info_bounds(1.2, 0.5, 2, 2), Error);
}

TEST(CoherenceBounds, Examples) {
    for (std::size_t d : {2u, 4u, 8u}) {
        const auto b = coherence_bounds(1.0, 1.0 / static_cast<double>(d), d);
        EXPECT_NEAR(b.lower, std::log2(static_cast<double>(d)), 1e-12);
        EXPECT_NEAR(b.upper, std::log2(static_cast<double>(d)), 1e-12);
    }
    auto b = coherence_bounds(1.0, 1.0, 4);
    EXPECT_EQ(b.lower, 0.0);
    EXPECT_EQ(b.upper, 0.0);

    b = coherence_bounds(0.5, 0.4, 4);
    EXPECT_NEAR(b.lower, kSmin04 - kSmax05d4, 1e-12);
    EXPECT_NEAR(b.upper, kSmax04d4 - 1.0, 1e-12);
}

TEST(CoherenceBounds, EndpointsMatchNumericOptimizer) {
    const auto rho = oracle::numeric_entropy_extremes(4, 0.5, 7);
    const auto dep = oracle::numeric_entropy_extremes(4, 0.4, 8);
    const auto b = coherence_bounds(0.5, 0.4, 4);
    EXPECT_NEAR(b.lower, std::max(0.0, dep.min - rho.max), 1e-6);
    EXPECT_NEAR(b.upper, dep.max - rho.min, 1e-6);
}

TEST(CoherenceBounds, InconsistentPurities) {
    try {
        coherence_bounds(0.4, 0.5, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InconsistentPurities);
        EXPECT_NEAR(e.magnitude(), 0.1, 1e-12);
    }
    EXPECT_NO_THROW(coherence_bounds(0.4, 0.4 + 5e-11, 4));
}

TEST(RenyiCoherentInfo, Examples) {
    EXPECT_DOUBLE_EQ(renyi_coherent_info(1.0, 0.5), 1.0);
    EXPECT_EQ(renyi_coherent_info(0.3, 0.3), 0.0);
    EXPECT_DOUBLE_EQ(renyi_coherent_info(0.25, 0.5), -1.0);
    EXPECT_THROW(renyi_coherent_info(0.0, 0.5), Error);
}

TEST(MultiInformationBounds, Examples) {
    const std::vector<double> pure{1.0, 1.0};
    const std::vector<std::size_t> d22{2, 2};
    auto b = multi_information_bounds(1.0, pure, d22);
    EXPECT_EQ(b.lower, 0.0);
    EXPECT_EQ(b.upper, 0.0);

    const std::vector<double> halves3{0.5, 0.5, 0.5};
    const std::vector<std::size_t> d222{2, 2, 2};
    b = multi_information_bounds(1.0, halves3, d222);
    EXPECT_NEAR(b.lower, 3.0, 1e-12);
    EXPECT_NEAR(b.upper, 3.0, 1e-12);

    const std::vector<double> halves2{0.5, 0.5};
    b = multi_information_bounds(0.5, halves2, d22);
    EXPECT_NEAR(b.lower, 2.0 - kSmax05d4, 1e-12);
    EXPECT_NEAR(b.upper, 1.0, 1e-12);

    EXPECT_THROW(multi_information_bounds(0.5, halves3, d22), Error);
}

TEST(ExactQuantities, CoherentInformation) {
    EXPECT_NEAR(exact_coherent_information(bell()), 1.0, 1e-12);
    EXPECT_NEAR(exact_coherent_information(maximally_mixed({2, 2})), -1.0, 1e-12);
    const auto iso = mix(bell(), maximally_mixed({2, 2}), 0.75);
    EXPECT_NEAR(exact_coherent_information(iso), 1.0 - kIsotropicH, 1e-12);
    EXPECT_THROW(exact_coherent_information(ghz3()), Error);
}

TEST(ExactQuantities, Coherence) {
    EXPECT_NEAR(exact_coherence(pure_state({kH, kH}, {2})), 1.0, 1e-12);
    EXPECT_EQ(exact_coherence(validate_density(ComplexMatrix::diagonal({0.6, 0.3, 0.1}), {3})), 0.0);
    const auto plus0 = tensor_product(pure_state({kH, kH}, {2}), pure_state({1.0, 0.0}, {2}));
    EXPECT_NEAR(exact_coherence(plus0), 1.0, 1e-12);
}

TEST(ExactQuantities, MultiInformation) {
    SeededStream s(31);
    const std::vector<std::size_t> d23{2, 3};
    EXPECT_NEAR(exact_multi_information(random_product(d23, s)), 0.0, 1e-10);
    EXPECT_NEAR(exact_multi_information(bell()), 2.0, 1e-12);
    EXPECT_NEAR(exact_multi_information(ghz3()), 3.0, 1e-12);
}

TEST(Sandwich, CoherentInformation) {
    SeededStream s(32);
    for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
        int violations = 0;
        for (int t = 0; t < 10000; ++t) {
            const std::size_t d = da * db;
            const std::size_t ks[] = {1, 2, d, d * d};
            const auto rho = random_mixed_state({da, db}, ks[s.uniform_index(4)], s);
            const auto b = coherent_info_bounds(rho);
            if (!b.contains(exact_coherent_information(rho), 1e-9)) ++violations;
        }
        EXPECT_EQ(violations, 0) << da << "x" << db;
    }
}

TEST(Sandwich, Coherence) {
    SeededStream s(33);
    for (std::size_t d : {2u, 3u, 4u, 8u}) {
        int violations = 0;
        for (int t = 0; t < 10000; ++t) {
            const std::size_t ks[] = {1, 2, d, d * d};
            const auto rho = random_mixed_state(d, ks[s.uniform_index(4)], s);
            if (!coherence_bounds(rho).contains(exact_coherence(rho), 1e-9)) ++violations;
        }
        EXPECT_EQ(violations, 0) << "d=" << d;
    }
}

TEST(Sandwich, MultiInformation) {
    SeededStream s(34);
    for (const std::vector<std::size_t>& dims :
         {std::vector<std::size_t>{2, 2}, {2, 3}, {2, 2, 2}, {2, 3, 2}}) {
        int violations = 0;
        const std::size_t d = dims_product(dims);
        for (int t = 0; t < 3000; ++t) {
            const std::size_t ks[] = {1, 2, d, d * d};
            const auto rho = random_mixed_state(dims, ks[s.uniform_index(4)], s);
            if (!multi_information_bounds(rho).contains(exact_multi_information(rho), 1e-9)) ++violations;
        }
        EXPECT_EQ(violations, 0);
    }
}

TEST(Sandwich, PinnedWhenBothEntropiesDetermined) {
    // Pure joint state and a qubit marginal: both entropy ranges collapse.
    SeededStream s(35);
    for (std::size_t da : {2u, 3u, 4u}) {
        for (int t = 0; t < 200; ++t) {
            const auto rho = random_pure_state({da, 2}, s);
            const auto b = coherent_info_bounds(rho);
            EXPECT_NEAR(b.lower, b.upper, 1e-9);
            EXPECT_NEAR(b.lower, exact_coherent_information(rho), 1e-9);
        }
    }
}

TEST(Witness, BothStayInTheirRanges) {
    // The Renyi witness and the lower bound can disagree in sign; both must
    // stay within their proven ranges.
    SeededStream s(36);
    int discordant = 0;
    for (int t = 0; t < 5000; ++t) {
        const auto rho = random_mixed_state({2, 2}, 1 + s.uniform_index(4), s);
        const double g = purity(rho), gb = purity(partial_trace(rho, {1}));
        const double r = renyi_coherent_info(g, gb);
        const auto b = coherent_info_bounds(g, gb, 2, 2);
        EXPECT_GE(r, -2.0 - 1e-12);
        EXPECT_LE(r, 1.0 + 1e-12);
        EXPECT_GE(b.lower, -2.0 - 1e-12);
        EXPECT_LE(b.upper, 1.0 + 1e-12);
        if ((r > 0.0) != (b.lower > 0.0)) ++discordant;
    }
    RecordProperty("discordant", discordant);
}

TEST(RelativeEntropy, DephasedStateIsClosestIncoherent) {
    SeededStream s(37);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t d = 2 + s.uniform_index(3);
        const auto rho = random_mixed_state(d, 1 + s.uniform_index(2 * d), s);
        const auto sigma = validate_density(ComplexMatrix::diagonal(random_simplex_point(d, s)), {d});
        const double best = relative_entropy(rho, dephase(rho));
        EXPECT_NEAR(best, exact_coherence(rho), 1e-9);
        EXPECT_LE(best, relative_entropy(rho, sigma) + 1e-9);
    }
}

TEST(RelativeEntropy, ProductOfMarginalsIsClosestProduct) {
    SeededStream s(38);
    for (const std::vector<std::size_t>& dims : {std::vector<std::size_t>{2, 2}, {2, 3}, {2, 2, 2}}) {
        for (int t = 0; t < 200; ++t) {
            const auto rho = random_mixed_state(dims, 2, s);
            DensityMatrix marginals = partial_trace(rho, {0});
            for (std::size_t i = 1; i < dims.size(); ++i) marginals = tensor_product(marginals, partial_trace(rho, {i}));
            const double best = relative_entropy(rho, marginals);
            EXPECT_NEAR(best, exact_multi_information(rho), 1e-9);
            EXPECT_LE(best, relative_entropy(rho, random_product(dims, s)) + 1e-9);
        }
    }
}

TEST(RelativeEntropy, SupportMismatchIsInfinite) {
    const auto zero = pure_state({1.0, 0.0}, {2});
    const auto one = pure_state({0.0, 1.0}, {2});
    EXPECT_TRUE(std::isinf(relative_entropy(zero, one)));
    EXPECT_NEAR(relative_entropy(zero, zero), 0.0, 1e-12);
}
