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

// JSON density-matrix files:
//
//   { "dims": [2, 2], "re": [[...], ...], "im": [[...], ...] }
//
// Rows are listed in order (row-major). "im" may be omitted for real states.
// Files are validated as density matrices on load. Doubles are written in
// shortest round-trip form, so save followed by load is bit-exact.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "purity_bounds/density.hpp"
#include "purity_bounds/error.hpp"

namespace purity_bounds {

inline DensityMatrix state_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("dims") || !j.contains("re")) {
            throw Error(ErrorCode::ParseError, "state JSON needs \"dims\" and \"re\"");
        }
        const auto dims = j.at("dims").get<std::vector<std::size_t>>();
        const auto re = j.at("re").get<std::vector<std::vector<double>>>();
        std::vector<std::vector<double>> im;
        if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();

        const std::size_t n = re.size();
        if (n == 0 || (!im.empty() && im.size() != n)) {
            throw Error(ErrorCode::DimMismatch, "\"re\" and \"im\" must be square and of equal size");
        }
        ComplexMatrix m(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (re[r].size() != n || (!im.empty() && im[r].size() != n)) {
                throw Error(ErrorCode::DimMismatch, "state matrix rows must have " + std::to_string(n) + " entries");
            }
            for (std::size_t c = 0; c < n; ++c) m(r, c) = {re[r][c], im.empty() ? 0.0 : im[r][c]};
        }
        return validate_density(m, dims);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
    const std::size_t n = rho.dim();
    std::vector<std::vector<double>> re(n, std::vector<double>(n)), im(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            re[r][c] = rho(r, c).real();
            im[r][c] = rho(r, c).imag();
        }
    }
    return {{"dims", std::vector<std::size_t>(rho.dims().begin(), rho.dims().end())}, {"re", re}, {"im", im}};
}

inline DensityMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open state file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
    }
    return state_from_json(j);
}

inline void write_state_file(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write state file '" + path + "'");
    out << state_to_json(rho).dump(2) << '\n';
}

}  // namespace purity_bounds
