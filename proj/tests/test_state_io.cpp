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

#include <filesystem>

#include "purity_bounds/purity_bounds.hpp"

using namespace purity_bounds;

namespace {

ErrorCode parse_error(const std::string& text) {
    try {
        state_from_json(nlohmann::json::parse(text));
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ErrorCode::InvariantViolation;
}

}  // namespace

TEST(StateJson, RealStateWithoutImaginaryPart) {
    const auto rho = state_from_json(nlohmann::json::parse(R"({"dims":[2],"re":[[0.7,0],[0,0.3]]})"));
    EXPECT_NEAR(purity(rho), 0.58, 1e-15);
}

TEST(StateJson, ComplexState) {
    const auto rho = state_from_json(
        nlohmann::json::parse(R"({"dims":[2],"re":[[0.5,0],[0,0.5]],"im":[[0,-0.5],[0.5,0]]})"));
    EXPECT_NEAR(purity(rho), 1.0, 1e-12);
    EXPECT_EQ(rho(1, 0), complex(0.0, 0.5));
}

TEST(StateJson, Rejections) {
    EXPECT_EQ(parse_error(R"({"re":[[1]]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error(R"({"dims":[2],"re":"x"})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error(R"({"dims":[2],"re":[[1,0],[0]]})"), ErrorCode::DimMismatch);
    EXPECT_EQ(parse_error(R"({"dims":[3],"re":[[1,0],[0,0]]})"), ErrorCode::DimMismatch);
    EXPECT_EQ(parse_error(R"({"dims":[2],"re":[[0.6,0.6],[0.6,0.4]]})"), ErrorCode::NotPSD);
    EXPECT_EQ(parse_error(R"({"dims":[2],"re":[[1,0],[0,1]]})"), ErrorCode::NotUnitTrace);
}

TEST(StateFile, RoundTripPreservesEntries) {
    SeededStream s(61);
    const auto rho = random_mixed_state({2, 3}, 3, s);
    const auto path = std::filesystem::temp_directory_path() / "purity_bounds_roundtrip.json";
    write_state_file(path.string(), rho);
    const auto back = read_state_file(path.string());
    std::filesystem::remove(path);
    EXPECT_LE(max_abs_difference(back.matrix(), rho.matrix()), 1e-15);
    ASSERT_EQ(back.dims().size(), 2u);
    EXPECT_EQ(back.dims()[1], 3u);
    EXPECT_EQ(format_number(purity(back)), format_number(purity(rho)));
}

TEST(StateFile, MissingFile) {
    EXPECT_THROW(read_state_file("/nonexistent/state.json"), Error);
}
