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

// pcteleport: fidelity, scan and wigner subcommands.
//
// Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 I/O failure. Failures
// print one JSON error record on stderr.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcteleport/errors.hpp"
#include "pcteleport/optimize.hpp"
#include "pcteleport/scan_io.hpp"
#include "pcteleport/states.hpp"

namespace pt = pcteleport;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int report(const std::string &kind, const std::string &message, int code, nlohmann::json extra = {}) {
    nlohmann::json record = {{"error", kind}, {"message", message}, {"exit_code", code}};
    if (extra.is_object()) {
        record.update(extra);
    }
    std::cerr << record.dump() << '\n';
    return code;
}

// "name:min:max:count"
std::vector<std::string> split_spec(const std::string &spec, std::size_t expected) {
    std::vector<std::string> parts;
    std::stringstream in(spec);
    std::string part;
    while (std::getline(in, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != expected) {
        throw UsageError("malformed spec '" + spec + "'; expected name:min:max:count");
    }
    return parts;
}

double spec_number(const std::string &text, const std::string &spec) {
    try {
        const double v = pt::parse_number(text);
        if (!std::isfinite(v)) {
            throw UsageError("non-finite bound in '" + spec + "'");
        }
        return v;
    } catch (const pt::DomainError &) {
        throw UsageError("malformed number in '" + spec + "'");
    }
}

int spec_count(const std::string &text, const std::string &spec) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) {
            throw UsageError("malformed count in '" + spec + "'");
        }
        return v;
    } catch (const std::logic_error &) {
        throw UsageError("malformed count in '" + spec + "'");
    }
}

pt::AxisDef parse_axis(const std::string &spec) {
    const auto parts = split_spec(spec, 4);
    const auto name = pt::parse_axis_name(parts[0]);
    if (!name) {
        throw UsageError("unknown axis '" + parts[0] + "'; use zeta, gain, alpha_abs or r");
    }
    return {*name, spec_number(parts[1], spec), spec_number(parts[2], spec), spec_count(parts[3], spec)};
}

pt::FidelityMethod method_from(const std::string &name) {
    const auto method = pt::parse_method(name);
    if (!method) {
        throw UsageError("unknown method '" + name + "'");
    }
    return *method;
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return out;
}

void finish_output(std::ofstream &out, const std::string &path) {
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::vector<double> linspace(double lo, double hi, int count) {
    return pt::AxisDef{pt::AxisName::zeta, lo, hi, count}.values();
}

struct FidelityArgs {
    double alpha = 0.0;
    double zeta = 0.0;
    double gain = 1.0;
    double r = 0.0;
    std::string method = "series";
    double tol = 1e-8;
    int nmax = -1;
};

int run_fidelity(const FidelityArgs &args) {
    pt::ScanRequest request;
    request.method = method_from(args.method);
    request.tol = args.tol;
    request.n_max = args.nmax;
    if ((request.method == pt::FidelityMethod::g1_series || request.method == pt::FidelityMethod::smeared) &&
        args.gain != 1.0) {
        throw UsageError("method " + args.method + " requires --gain 1");
    }
    const auto result = pt::evaluate_point(request, args.zeta, args.gain, args.alpha, args.r);
    const nlohmann::json params = {{"alpha", args.alpha}, {"zeta", args.zeta}, {"gain", args.gain},
                                   {"r", args.r},         {"tol", args.tol},   {"nmax", args.nmax}};
    std::cout << pt::fidelity_to_json(result, params).dump() << '\n';
    return 0;
}

struct ScanArgs {
    std::vector<std::string> axes;
    std::string method = "series";
    double zeta = 0.0;
    double gain = 1.0;
    double alpha = 0.0;
    double r = 0.0;
    double tol = 1e-8;
    int nmax = -1;
    std::vector<std::string> extras;
    unsigned threads = 0;
    std::string out;
    std::string format = "csv";
    std::string preset;
};

int run_preset(const ScanArgs &args) {
    std::vector<double> grid;
    const auto expected = args.preset == "fig1" ? pt::AxisName::alpha_abs : pt::AxisName::zeta;
    if (args.axes.size() > 1) {
        throw UsageError("presets accept at most one --axis");
    }
    if (args.axes.size() == 1) {
        const auto axis = parse_axis(args.axes[0]);
        if (axis.name != expected || axis.count < 1) {
            throw UsageError("preset " + args.preset + " scans " + std::string(pt::to_string(expected)));
        }
        grid = axis.values();
    } else {
        grid = args.preset == "fig1" ? linspace(0.0, 5.0, 26) : linspace(0.0, 3.0, 61);
    }
    if (args.format != "csv") {
        throw UsageError("presets write CSV only");
    }
    const auto table = args.preset == "fig1" ? pt::fig1_table(grid, std::max(args.tol, 1e-7))
                                             : pt::fig2_table(grid, std::min(args.tol, 1e-10));
    auto out = open_output(args.out);
    pt::write_table_csv(table, out);
    finish_output(out, args.out);
    return 0;
}

int run_scan(const ScanArgs &args) {
    if (args.format != "csv" && args.format != "json") {
        throw UsageError("--format must be csv or json");
    }
    if (!args.preset.empty()) {
        return run_preset(args);
    }
    if (args.axes.empty()) {
        throw UsageError("scan needs at least one --axis or a --preset");
    }
    pt::ScanRequest request;
    for (const auto &spec : args.axes) {
        request.axes.push_back(parse_axis(spec));
    }
    request.method = method_from(args.method);
    request.zeta = args.zeta;
    request.gain = args.gain;
    request.alpha_abs = args.alpha;
    request.r = args.r;
    request.tol = args.tol;
    request.n_max = args.nmax;
    request.threads = args.threads;
    for (const auto &e : args.extras) {
        if (e == "f_tmsv" || e == "tmsv") {
            request.extras.push_back(pt::ExtraColumn::tmsv);
        } else if (e == "f_smeared" || e == "smeared") {
            request.extras.push_back(pt::ExtraColumn::smeared);
        } else {
            throw UsageError("unknown extra column '" + e + "'");
        }
    }
    pt::ScanGrid grid;
    try {
        grid = pt::scan(request);
    } catch (const pt::DomainError &e) {
        throw UsageError(e.what());
    }
    auto out = open_output(args.out);
    if (args.format == "csv") {
        pt::write_scan_csv(grid, out);
    } else {
        out << pt::scan_to_json(grid).dump(2) << '\n';
    }
    finish_output(out, args.out);
    return 0;
}

struct WignerArgs {
    double zeta = 0.0;
    std::string x = "re_alpha:-2:2:41";
    std::string y = "re_beta:-2:2:41";
    double tol = 1e-10;
    std::string out;
};

struct SectionAxis {
    std::string name;
    int slot = 0;  // 0 re alpha, 1 im alpha, 2 re beta, 3 im beta
    std::vector<double> values;
};

SectionAxis parse_section_axis(const std::string &spec) {
    const auto parts = split_spec(spec, 4);
    static const char *names[] = {"re_alpha", "im_alpha", "re_beta", "im_beta"};
    SectionAxis axis;
    axis.name = parts[0];
    axis.slot = -1;
    for (int i = 0; i < 4; ++i) {
        if (parts[0] == names[i]) {
            axis.slot = i;
        }
    }
    if (axis.slot < 0) {
        throw UsageError("unknown section axis '" + parts[0] + "'; use re_alpha, im_alpha, re_beta or im_beta");
    }
    const double lo = spec_number(parts[1], spec);
    const double hi = spec_number(parts[2], spec);
    const int count = spec_count(parts[3], spec);
    if (count < 1) {
        throw UsageError("section axis '" + parts[0] + "' needs at least one point");
    }
    if (count > 1 && !(lo < hi)) {
        throw UsageError("section axis '" + parts[0] + "' must be increasing");
    }
    axis.values = count == 1 ? std::vector<double>{lo} : linspace(lo, hi, count);
    return axis;
}

int run_wigner(const WignerArgs &args) {
    const auto x = parse_section_axis(args.x);
    const auto y = parse_section_axis(args.y);
    if (x.slot == y.slot) {
        throw UsageError("section axes must differ");
    }
    if (!std::isfinite(args.zeta) || args.zeta < 0.0) {
        throw UsageError("--zeta must be finite and >= 0");
    }
    const pt::PairCoherentState state(args.zeta);
    auto out = open_output(args.out);
    out << x.name << ',' << y.name << ",w\n";
    double min_w = std::numeric_limits<double>::infinity();
    double max_w = -std::numeric_limits<double>::infinity();
    double min_x = 0.0;
    double min_y = 0.0;
    for (const double xv : x.values) {
        for (const double yv : y.values) {
            double c[4] = {0.0, 0.0, 0.0, 0.0};
            c[x.slot] = xv;
            c[y.slot] = yv;
            const pt::PhasePoint point{{c[0], c[1]}, {c[2], c[3]}};
            const double w = pt::wigner(state, point, args.tol);
            out << pt::format_number(xv) << ',' << pt::format_number(yv) << ',' << pt::format_number(w) << '\n';
            if (w < min_w) {
                min_w = w;
                min_x = xv;
                min_y = yv;
            }
            max_w = std::max(max_w, w);
        }
    }
    finish_output(out, args.out);
    const nlohmann::json summary = {{"zeta", args.zeta},
                                    {"points", x.values.size() * y.values.size()},
                                    {"min_w", min_w},
                                    {"max_w", max_w},
                                    {"argmin", {{x.name, min_x}, {y.name, min_y}}},
                                    {"negative", min_w < 0.0}};
    std::cout << summary.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Teleportation fidelity with pair-coherent channels"};
    app.require_subcommand(1);

    FidelityArgs fid;
    auto *fidelity = app.add_subcommand("fidelity", "Average fidelity for one parameter set (JSON on stdout)");
    fidelity->add_option("--alpha", fid.alpha, "Input coherent amplitude |alpha|")->check(CLI::NonNegativeNumber);
    fidelity->add_option("--zeta", fid.zeta, "Pair-coherent eigenvalue")->check(CLI::NonNegativeNumber);
    fidelity->add_option("--gain", fid.gain, "Displacement gain g")->check(CLI::NonNegativeNumber);
    fidelity->add_option("--r", fid.r, "Squeezing for --method tmsv")->check(CLI::NonNegativeNumber);
    fidelity->add_option("--method", fid.method, "series | quadrature | g1-series | smeared | tmsv");
    fidelity->add_option("--tol", fid.tol, "Target absolute accuracy")->check(CLI::PositiveNumber);
    fidelity->add_option("--nmax", fid.nmax, "Channel Fock truncation override");

    ScanArgs sc;
    auto *scan = app.add_subcommand("scan", "Dense grid evaluation to CSV or JSON");
    scan->add_option("--axis", sc.axes, "name:min:max:count; name in zeta, gain, alpha_abs, r");
    scan->add_option("--method", sc.method, "series | quadrature | g1-series | smeared | tmsv");
    scan->add_option("--zeta", sc.zeta, "Fixed zeta when not scanned");
    scan->add_option("--gain", sc.gain, "Fixed gain when not scanned");
    scan->add_option("--alpha", sc.alpha, "Fixed |alpha| when not scanned");
    scan->add_option("--r", sc.r, "Fixed squeezing when not scanned");
    scan->add_option("--tol", sc.tol, "Target absolute accuracy")->check(CLI::PositiveNumber);
    scan->add_option("--nmax", sc.nmax, "Channel Fock truncation override");
    scan->add_option("--extra", sc.extras, "Extra columns: f_tmsv, f_smeared");
    scan->add_option("--threads", sc.threads, "Worker threads (0: all cores)");
    scan->add_option("--out", sc.out, "Output path")->required();
    scan->add_option("--format", sc.format, "csv | json");
    scan->add_option("--preset", sc.preset, "fig1 | fig2")->check(CLI::IsMember({"fig1", "fig2"}));

    WignerArgs wa;
    auto *wig = app.add_subcommand("wigner", "Wigner function on a 2D real section (CSV), summary on stdout");
    wig->add_option("--zeta", wa.zeta, "Pair-coherent eigenvalue");
    wig->add_option("--x", wa.x, "Section axis name:min:max:count");
    wig->add_option("--y", wa.y, "Section axis name:min:max:count");
    wig->add_option("--tol", wa.tol, "Series truncation tolerance")->check(CLI::PositiveNumber);
    wig->add_option("--out", wa.out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report("usage", e.what(), kExitUsage);
    }

    try {
        if (fidelity->parsed()) {
            return run_fidelity(fid);
        }
        if (scan->parsed()) {
            return run_scan(sc);
        }
        return run_wigner(wa);
    } catch (const UsageError &e) {
        return report("usage", e.what(), kExitUsage);
    } catch (const pt::DomainError &e) {
        return report("usage", e.what(), kExitUsage);
    } catch (const IoError &e) {
        return report("io", e.what(), kExitIo);
    } catch (const pt::TruncationError &e) {
        return report("truncation", e.what(), kExitNumerical, {{"suggested_nmax", e.suggested_n_max()}});
    } catch (const pt::ResolutionError &e) {
        return report("resolution", e.what(), kExitNumerical,
                      {{"suggested_radius", e.suggested_radius()}, {"suggested_nodes", e.suggested_nodes()}});
    } catch (const pt::NumericalError &e) {
        return report("numerical", e.what(), kExitNumerical);
    } catch (const std::exception &e) {
        return report("numerical", e.what(), kExitNumerical);
    }
}
