// Copyright 2026 The pcteleport Authors
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

/// CSV and JSON serialization of fidelity results, scan grids and figure tables.
/// Doubles are written with 17 significant digits so they read back exactly.

#ifndef PCTELEPORT_SCAN_IO_HPP
#define PCTELEPORT_SCAN_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pcteleport/optimize.hpp"

namespace pcteleport {

std::string format_number(double v);
/// Inverse of format_number; throws DomainError on malformed input.
double parse_number(std::string_view text);

std::optional<FidelityMethod> parse_method(std::string_view name);

nlohmann::json fidelity_to_json(const FidelityResult &result, const nlohmann::json &params);

/// Header: axis names, value, method, truncation_used, tail_estimate,
/// quad_residual, extra columns, error. One row per point in grid order.
void write_scan_csv(const ScanGrid &grid, std::ostream &out);
ScanGrid read_scan_csv(std::istream &in);

nlohmann::json scan_to_json(const ScanGrid &grid);
ScanGrid scan_from_json(const nlohmann::json &doc);

/// A plain numeric table (figure data).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table_csv(const Table &table, std::ostream &out);

/// Columns zeta, f_pair_g1, f_tmsv, f_smeared. The squeezed baseline uses the
/// squeezing with the same mean photon number per mode.
Table fig2_table(const std::vector<double> &zetas, double tol = 1e-10, const QuadSpec &quad = {});

/// Columns alpha_abs, f_opt, zeta_opt, g_opt.
Table fig1_table(const std::vector<double> &alphas, double tol = 1e-6);

}  // namespace pcteleport

#endif
