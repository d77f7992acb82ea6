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

// purity_bounds: entropy bounds from purities, state analysis, measurement
// simulation and figure datasets.
//
// Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "purity_bounds/commands.hpp"

namespace pb = purity_bounds;
namespace cmd = purity_bounds::commands;

namespace {

const std::vector<std::string> kQuantities = {"coherent-info", "coherence", "multi-info"};

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy bounds from purity measurements"};
    app.require_subcommand(1);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Bounds on a quantity from global and marginal purities");
    std::string b_quantity = "coherent-info";
    cmd::BoundsRequest b_req;
    std::vector<double> b_marginal;
    bounds->add_option("--quantity", b_quantity)->check(CLI::IsMember(kQuantities));
    bounds->add_option("--gamma-global", b_req.gamma_global, "Tr(rho^2) of the whole state")->required();
    bounds->add_option("--gamma-marginal,--gamma-marginals", b_marginal,
                       "gamma_B (coherent-info), gamma of the dephased state (coherence), or one per factor")
        ->required()
        ->delimiter(',');
    bounds->add_option("--dims", b_req.dims, "Factor dimensions, e.g. 2,2")->required()->delimiter(',');

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Exact value, purities and bounds for a state file");
    std::string a_state, a_quantity = "coherent-info", a_basis = "computational";
    analyze->add_option("--state", a_state, "State JSON file")->required();
    analyze->add_option("--quantity", a_quantity)->check(CLI::IsMember(kQuantities));
    analyze->add_option("--basis", a_basis, "Reference basis for coherence");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Finite-shot purity measurement of a state file");
    std::string s_state, s_propagate;
    cmd::SimulateRequest s_req;
    simulate->add_option("--state", s_state, "State JSON file")->required();
    simulate->add_option("--method", s_req.method)->check(CLI::IsMember({"ancilla", "bell", "shift"}));
    simulate->add_option("--order", s_req.order, "Number of copies for --method shift");
    simulate->add_option("--shots", s_req.shots)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", s_req.seed);
    simulate->add_option("--propagate", s_propagate, "Also bound coherent-info or coherence")
        ->check(CLI::IsMember({"coherent-info", "coherence"}));

    // figure
    auto* figure = app.add_subcommand("figure", "Write a figure dataset as CSV");
    cmd::FigureRequest f_req;
    std::string f_out;
    figure->add_option("--which", f_req.which)->required()->check(CLI::IsMember({"1a", "1b", "2", "3"}));
    figure->add_option("--samples", f_req.samples);
    figure->add_option("--seed", f_req.seed);
    figure->add_option("--out", f_out, "Output CSV path")->required();
    figure->add_option("--dims", f_req.dims, "Override the figure's dimensions")->delimiter(',');
    figure->add_option("--grid", f_req.grid, "Points per purity axis for a bounds-only surface (2, 3)");
    figure->add_option("--search-budget", f_req.search_budget, "Minimum search per sample (1a, 1b)");

    // export-state
    auto* exporter = app.add_subcommand("export-state", "Write a named or random state to a JSON file");
    cmd::ExportRequest e_req;
    std::string e_out;
    exporter->add_option("--kind", e_req.kind)
        ->check(CLI::IsMember(
            {"bell", "isotropic", "maximally-mixed", "max-coherent", "ghz", "random-pure", "random-mixed"}));
    exporter->add_option("--dims", e_req.dims)->delimiter(',');
    exporter->add_option("--p", e_req.p, "Isotropic weight of the Bell state");
    exporter->add_option("--rank", e_req.rank, "Ancilla dimension for random-mixed");
    exporter->add_option("--seed", e_req.seed);
    exporter->add_option("--out", e_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cmd::kExitOk : cmd::kExitUserError;
    }

    try {
        if (bounds->parsed()) {
            b_req.quantity = cmd::parse_quantity(b_quantity);
            b_req.gamma_marginals = b_marginal;
            print(cmd::run_bounds(b_req));
        } else if (analyze->parsed()) {
            print(cmd::run_analyze(a_state, cmd::parse_quantity(a_quantity), a_basis));
        } else if (simulate->parsed()) {
            if (!s_propagate.empty()) s_req.propagate = cmd::parse_quantity(s_propagate);
            print(cmd::run_simulate(s_state, s_req));
        } else if (figure->parsed()) {
            f_req.threads = cmd::env_threads();
            cmd::run_figure(f_req, f_out);
        } else if (exporter->parsed()) {
            cmd::run_export(e_req, e_out);
        }
    } catch (const pb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cmd::exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return cmd::kExitInternalError;
    }
    return cmd::kExitOk;
}
