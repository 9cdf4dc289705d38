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

#include "pcteleport/scan_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "pcteleport/hvmodel.hpp"

namespace pcteleport {

namespace {

constexpr std::string_view kFixedColumns[] = {"value", "method", "truncation_used", "tail_estimate", "quad_residual"};

std::string quote_csv(const std::string &field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::optional<ExtraColumn> parse_extra(std::string_view name) {
    for (const auto e : {ExtraColumn::tmsv, ExtraColumn::smeared}) {
        if (name == to_string(e)) {
            return e;
        }
    }
    return std::nullopt;
}

nlohmann::json number_or_null(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

double number_from_json(const nlohmann::json &v) {
    if (v.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return v.get<double>();
}

// Axis definitions from the coordinates of a grid read back from disk.
void infer_axes(ScanGrid &grid, const std::vector<AxisName> &names) {
    grid.axes.clear();
    for (std::size_t k = 0; k < names.size(); ++k) {
        std::vector<double> distinct;
        for (const auto &p : grid.points) {
            if (std::find(distinct.begin(), distinct.end(), p.coords[k]) == distinct.end()) {
                distinct.push_back(p.coords[k]);
            }
        }
        if (distinct.empty()) {
            throw DomainError("scan file has an empty axis");
        }
        AxisDef axis;
        axis.name = names[k];
        axis.min = *std::min_element(distinct.begin(), distinct.end());
        axis.max = *std::max_element(distinct.begin(), distinct.end());
        axis.count = static_cast<int>(distinct.size());
        grid.axes.push_back(axis);
    }
    grid.argmax = grid_argmax(grid);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    if (text == "nan" || text.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DomainError("malformed number '" + std::string(text) + "'");
    }
    return v;
}

std::optional<FidelityMethod> parse_method(std::string_view name) {
    for (const auto m : {FidelityMethod::series, FidelityMethod::g1_series, FidelityMethod::quadrature,
                         FidelityMethod::smeared, FidelityMethod::tmsv}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

nlohmann::json fidelity_to_json(const FidelityResult &result, const nlohmann::json &params) {
    nlohmann::json out;
    out["value"] = number_or_null(result.value);
    out["method"] = std::string(to_string(result.method));
    out["truncation_used"] = result.truncation_used;
    out["tail_estimate"] = number_or_null(result.tail_estimate);
    out["quad_residual"] = number_or_null(result.quad_residual);
    out["params"] = params;
    return out;
}

void write_scan_csv(const ScanGrid &grid, std::ostream &out) {
    bool first = true;
    const auto sep = [&] {
        if (!first) {
            out << ',';
        }
        first = false;
    };
    for (const auto &axis : grid.axes) {
        sep();
        out << to_string(axis.name);
    }
    for (const auto col : kFixedColumns) {
        sep();
        out << col;
    }
    for (const auto extra : grid.extras) {
        sep();
        out << to_string(extra);
    }
    sep();
    out << "error\n";
    for (const auto &p : grid.points) {
        first = true;
        for (const double c : p.coords) {
            sep();
            out << format_number(c);
        }
        sep();
        out << format_number(p.result.value);
        sep();
        out << to_string(p.result.method);
        sep();
        out << p.result.truncation_used;
        sep();
        out << format_number(p.result.tail_estimate);
        sep();
        out << format_number(p.result.quad_residual);
        for (const double e : p.extras) {
            sep();
            out << format_number(e);
        }
        sep();
        out << quote_csv(p.error) << '\n';
    }
}

ScanGrid read_scan_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DomainError("scan CSV is empty");
    }
    const auto header = split_csv_line(line);
    std::vector<AxisName> names;
    std::size_t col = 0;
    while (col < header.size() && header[col] != kFixedColumns[0]) {
        const auto name = parse_axis_name(header[col]);
        if (!name) {
            throw DomainError("scan CSV: unknown axis column '" + header[col] + "'");
        }
        names.push_back(*name);
        ++col;
    }
    for (const auto fixed : kFixedColumns) {
        if (col >= header.size() || header[col] != fixed) {
            throw DomainError("scan CSV: expected column '" + std::string(fixed) + "'");
        }
        ++col;
    }
    ScanGrid grid;
    while (col < header.size() && header[col] != "error") {
        const auto extra = parse_extra(header[col]);
        if (!extra) {
            throw DomainError("scan CSV: unknown column '" + header[col] + "'");
        }
        grid.extras.push_back(*extra);
        ++col;
    }
    if (col + 1 != header.size()) {
        throw DomainError("scan CSV: header must end with 'error'");
    }
    bool method_set = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != header.size()) {
            throw DomainError("scan CSV: row has " + std::to_string(f.size()) + " fields, expected " +
                              std::to_string(header.size()));
        }
        ScanPoint p;
        std::size_t i = 0;
        for (; i < names.size(); ++i) {
            p.coords.push_back(parse_number(f[i]));
        }
        p.result.value = parse_number(f[i++]);
        const auto method = parse_method(f[i++]);
        if (!method) {
            throw DomainError("scan CSV: unknown method '" + f[i - 1] + "'");
        }
        p.result.method = *method;
        if (!method_set) {
            grid.method = *method;
            method_set = true;
        }
        p.result.truncation_used = std::stoi(f[i++]);
        p.result.tail_estimate = parse_number(f[i++]);
        p.result.quad_residual = parse_number(f[i++]);
        for (std::size_t e = 0; e < grid.extras.size(); ++e) {
            p.extras.push_back(parse_number(f[i++]));
        }
        p.error = f[i];
        grid.points.push_back(std::move(p));
    }
    infer_axes(grid, names);
    return grid;
}

nlohmann::json scan_to_json(const ScanGrid &grid) {
    nlohmann::json doc;
    doc["method"] = std::string(to_string(grid.method));
    doc["axes"] = nlohmann::json::array();
    for (const auto &axis : grid.axes) {
        doc["axes"].push_back(
            {{"name", std::string(to_string(axis.name))}, {"min", axis.min}, {"max", axis.max}, {"count", axis.count}});
    }
    doc["extras"] = nlohmann::json::array();
    for (const auto e : grid.extras) {
        doc["extras"].push_back(std::string(to_string(e)));
    }
    doc["points"] = nlohmann::json::array();
    for (const auto &p : grid.points) {
        nlohmann::json extras = nlohmann::json::array();
        for (const double e : p.extras) {
            extras.push_back(number_or_null(e));
        }
        doc["points"].push_back({{"coords", p.coords},
                                 {"value", number_or_null(p.result.value)},
                                 {"method", std::string(to_string(p.result.method))},
                                 {"truncation_used", p.result.truncation_used},
                                 {"tail_estimate", number_or_null(p.result.tail_estimate)},
                                 {"quad_residual", number_or_null(p.result.quad_residual)},
                                 {"extras", extras},
                                 {"error", p.error}});
    }
    if (grid.argmax) {
        doc["argmax"] = {{"coords", grid.argmax->coords}, {"value", grid.argmax->value}, {"index", grid.argmax->index}};
    } else {
        doc["argmax"] = nullptr;
    }
    return doc;
}

ScanGrid scan_from_json(const nlohmann::json &doc) {
    ScanGrid grid;
    const auto method = parse_method(doc.at("method").get<std::string>());
    if (!method) {
        throw DomainError("scan JSON: unknown method");
    }
    grid.method = *method;
    for (const auto &a : doc.at("axes")) {
        const auto name = parse_axis_name(a.at("name").get<std::string>());
        if (!name) {
            throw DomainError("scan JSON: unknown axis");
        }
        grid.axes.push_back({*name, a.at("min").get<double>(), a.at("max").get<double>(), a.at("count").get<int>()});
    }
    for (const auto &e : doc.at("extras")) {
        const auto extra = parse_extra(e.get<std::string>());
        if (!extra) {
            throw DomainError("scan JSON: unknown extra column");
        }
        grid.extras.push_back(*extra);
    }
    for (const auto &jp : doc.at("points")) {
        ScanPoint p;
        p.coords = jp.at("coords").get<std::vector<double>>();
        p.result.value = number_from_json(jp.at("value"));
        const auto pm = parse_method(jp.at("method").get<std::string>());
        p.result.method = pm.value_or(grid.method);
        p.result.truncation_used = jp.at("truncation_used").get<int>();
        p.result.tail_estimate = number_from_json(jp.at("tail_estimate"));
        p.result.quad_residual = number_from_json(jp.at("quad_residual"));
        for (const auto &e : jp.at("extras")) {
            p.extras.push_back(number_from_json(e));
        }
        p.error = jp.at("error").get<std::string>();
        grid.points.push_back(std::move(p));
    }
    grid.argmax = grid_argmax(grid);
    return grid;
}

void write_table_csv(const Table &table, std::ostream &out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
}

Table fig2_table(const std::vector<double> &zetas, double tol, const QuadSpec &quad) {
    Table table;
    table.columns = {"zeta", "f_pair_g1", "f_tmsv", "f_smeared"};
    table.rows.resize(zetas.size());
    parallel_for(zetas.size(), [&](std::size_t i) {
        const double z = zetas[i];
        table.rows[i] = {z, avg_fidelity_g1_series(z, tol).value, tmsv_unit_gain_fidelity(matched_squeezing(z)),
                         smeared_avg_fidelity(z, quad, std::max(tol, 1e-8)).value};
    });
    return table;
}

Table fig1_table(const std::vector<double> &alphas, double tol) {
    Table table;
    table.columns = {"alpha_abs", "f_opt", "zeta_opt", "g_opt"};
    table.rows.resize(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        const auto opt = optimize_gain_and_zeta(alphas[i], tol);
        table.rows[i] = {alphas[i], opt.value, opt.zeta, opt.gain};
    });
    return table;
}

}  // namespace pcteleport
