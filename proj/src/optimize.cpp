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

#include "pcteleport/optimize.hpp"

#include <array>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "pcteleport/hvmodel.hpp"

namespace pcteleport {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;
constexpr double kSeriesTol = 1e-10;
constexpr int kZetaScanPoints = 50;
constexpr int kMaxOuterIterations = 100;
constexpr std::size_t kMaxScanPoints = 1000000;
// Differences below this are treated as flat when classifying a scan.
constexpr double kFlat = 1e-13;

double unit_gain_fidelity(double zeta) { return avg_fidelity_g1_series(zeta, kSeriesTol).value; }

ScanShape classify(const std::vector<std::pair<double, double>> &scan) {
    bool seen_decrease = false;
    bool any_increase = false;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double d = scan[i].second - scan[i - 1].second;
        if (d > kFlat) {
            if (seen_decrease) {
                throw NonUnimodalError("fidelity scan rises again after falling", scan);
            }
            any_increase = true;
        } else if (d < -kFlat) {
            seen_decrease = true;
        }
    }
    if (!seen_decrease) {
        return ScanShape::monotone_increasing;
    }
    if (!any_increase) {
        return ScanShape::monotone_decreasing;
    }
    return ScanShape::unimodal;
}

}  // namespace

GoldenResult golden_section_maximize(const std::function<double(double)> &f, double lo, double hi, double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("golden_section_maximize: need a finite bracket lo < hi");
    }
    if (!(tol > 0.0)) {
        throw DomainError("golden_section_maximize: tolerance must be positive");
    }
    GoldenResult out;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    out.evaluations = 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        ++out.evaluations;
    }
    if (fc >= fd) {
        out.x = c;
        out.value = fc;
    } else {
        out.x = d;
        out.value = fd;
    }
    // The interior probes never reach the bracket ends; check them explicitly.
    for (const double end : {lo, hi}) {
        if (std::abs(out.x - end) <= 2.0 * tol) {
            const double fe = f(end);
            ++out.evaluations;
            if (fe > out.value) {
                out.x = end;
                out.value = fe;
            }
        }
    }
    return out;
}

ZetaOptimum optimize_zeta_at_unit_gain(double zeta_hi, double tol, double zeta_lo) {
    if (!std::isfinite(zeta_hi) || !std::isfinite(zeta_lo) || zeta_lo < 0.0 || !(zeta_hi > zeta_lo)) {
        throw DomainError("optimize_zeta_at_unit_gain: need 0 <= zeta_lo < zeta_hi");
    }
    ZetaOptimum out;
    out.scan.reserve(kZetaScanPoints);
    for (int i = 0; i < kZetaScanPoints; ++i) {
        const double z = zeta_lo + (zeta_hi - zeta_lo) * i / (kZetaScanPoints - 1);
        out.scan.emplace_back(z, unit_gain_fidelity(z));
    }
    out.shape = classify(out.scan);
    if (out.shape == ScanShape::monotone_increasing) {
        out.zeta = zeta_hi;
        out.value = out.scan.back().second;
        return out;
    }
    if (out.shape == ScanShape::monotone_decreasing) {
        out.zeta = zeta_lo;
        out.value = out.scan.front().second;
        return out;
    }
    const auto golden = golden_section_maximize(unit_gain_fidelity, zeta_lo, zeta_hi, tol);
    const auto best = std::max_element(out.scan.begin(), out.scan.end(),
                                       [](const auto &l, const auto &r) { return l.second < r.second; });
    const double cell = (zeta_hi - zeta_lo) / (kZetaScanPoints - 1);
    if (std::abs(golden.x - best->first) > cell) {
        throw NonUnimodalError("golden-section maximum disagrees with the verification scan", out.scan);
    }
    out.zeta = golden.x;
    out.value = golden.value;
    return out;
}

GainZetaOptimum optimize_gain_and_zeta(double alpha_abs, double tol, const GainZetaBounds &bounds) {
    if (!std::isfinite(alpha_abs) || alpha_abs < 0.0) {
        throw DomainError("optimize_gain_and_zeta: |alpha| must be finite and >= 0");
    }
    if (!(bounds.gain_lo >= 0.0 && bounds.gain_lo < bounds.gain_hi && bounds.zeta_lo >= 0.0 &&
          bounds.zeta_lo < bounds.zeta_hi)) {
        throw DomainError("optimize_gain_and_zeta: invalid bounds");
    }
    const auto fidelity = [alpha_abs](double g, double z) { return avg_fidelity_series(alpha_abs, z, g, kSeriesTol).value; };
    const double line_tol = 0.25 * tol;

    GainZetaOptimum out;
    out.gain = std::clamp(1.0, bounds.gain_lo, bounds.gain_hi);
    out.zeta = std::clamp(optimize_zeta_at_unit_gain(bounds.zeta_hi, line_tol, bounds.zeta_lo).zeta, bounds.zeta_lo,
                          bounds.zeta_hi);
    for (out.iterations = 1; out.iterations <= kMaxOuterIterations; ++out.iterations) {
        const double z = out.zeta;
        const auto g_step =
            golden_section_maximize([&](double g) { return fidelity(g, z); }, bounds.gain_lo, bounds.gain_hi, line_tol);
        const double g = g_step.x;
        const auto z_step =
            golden_section_maximize([&](double zz) { return fidelity(g, zz); }, bounds.zeta_lo, bounds.zeta_hi, line_tol);
        // Line search along the sweep displacement, clipped to the box.
        const double sg = g_step.x - out.gain;
        const double sz = z_step.x - out.zeta;
        double t_max = std::numeric_limits<double>::infinity();
        if (sg > 0.0) {
            t_max = std::min(t_max, (bounds.gain_hi - g_step.x) / sg);
        }
        if (sg < 0.0) {
            t_max = std::min(t_max, (bounds.gain_lo - g_step.x) / sg);
        }
        if (sz > 0.0) {
            t_max = std::min(t_max, (bounds.zeta_hi - z_step.x) / sz);
        }
        if (sz < 0.0) {
            t_max = std::min(t_max, (bounds.zeta_lo - z_step.x) / sz);
        }
        double next_g = g_step.x;
        double next_z = z_step.x;
        double next_value = z_step.value;
        const double span = std::max(std::abs(sg), std::abs(sz));
        if (span > 0.0 && t_max > 0.0) {
            const auto along = [&](double t) {
                return fidelity(std::clamp(g_step.x + t * sg, bounds.gain_lo, bounds.gain_hi),
                                std::clamp(z_step.x + t * sz, bounds.zeta_lo, bounds.zeta_hi));
            };
            const auto t_step = golden_section_maximize(along, 0.0, t_max, line_tol / span);
            if (t_step.value > next_value) {
                next_g = std::clamp(g_step.x + t_step.x * sg, bounds.gain_lo, bounds.gain_hi);
                next_z = std::clamp(z_step.x + t_step.x * sz, bounds.zeta_lo, bounds.zeta_hi);
                next_value = t_step.value;
            }
        }
        const double dg = std::abs(next_g - out.gain);
        const double dz = std::abs(next_z - out.zeta);
        out.gain = next_g;
        out.zeta = next_z;
        out.value = next_value;
        if (dg < tol && dz < tol) {
            return out;
        }
    }
    throw ConvergenceError("optimize_gain_and_zeta: coordinate ascent did not converge in " +
                           std::to_string(kMaxOuterIterations) + " iterations");
}

std::string_view to_string(AxisName axis) {
    switch (axis) {
        case AxisName::zeta:
            return "zeta";
        case AxisName::gain:
            return "gain";
        case AxisName::alpha_abs:
            return "alpha_abs";
        case AxisName::r:
            return "r";
    }
    return "unknown";
}

std::optional<AxisName> parse_axis_name(std::string_view name) {
    for (const auto axis : {AxisName::zeta, AxisName::gain, AxisName::alpha_abs, AxisName::r}) {
        if (name == to_string(axis)) {
            return axis;
        }
    }
    if (name == "g") {
        return AxisName::gain;
    }
    if (name == "alpha") {
        return AxisName::alpha_abs;
    }
    return std::nullopt;
}

std::string_view to_string(ExtraColumn column) {
    switch (column) {
        case ExtraColumn::tmsv:
            return "f_tmsv";
        case ExtraColumn::smeared:
            return "f_smeared";
    }
    return "unknown";
}

std::vector<double> AxisDef::values() const {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = (i == count - 1) ? max : min + (max - min) * i / (count - 1);
    }
    return out;
}

double matched_squeezing(double zeta) {
    const double n_bar = mean_photon_number(PairCoherentState(zeta));
    return std::asinh(std::sqrt(n_bar));
}

FidelityResult evaluate_point(const ScanRequest &request, double zeta, double gain, double alpha_abs, double r) {
    switch (request.method) {
        case FidelityMethod::series:
            return avg_fidelity_series(alpha_abs, zeta, gain, request.tol);
        case FidelityMethod::g1_series:
            if (gain != 1.0) {
                throw DomainError("g1-series requires unit gain");
            }
            return avg_fidelity_g1_series(zeta, request.tol);
        case FidelityMethod::quadrature: {
            TeleportScenario scenario;
            scenario.input_alpha = complex(alpha_abs, 0.0);
            scenario.channel = PairCoherentState(zeta, 0, request.n_max);
            scenario.gain = gain;
            scenario.quad = request.quad;
            scenario.series_tol = request.tol;
            return avg_fidelity_quadrature(scenario);
        }
        case FidelityMethod::tmsv: {
            const TwoModeSqueezedState state(r, request.n_max);
            if (gain == 1.0) {
                FidelityResult result;
                result.method = FidelityMethod::tmsv;
                result.value = tmsv_unit_gain_fidelity(r);
                result.truncation_used = state.n_max();
                return result;
            }
            TeleportScenario scenario;
            scenario.input_alpha = complex(alpha_abs, 0.0);
            scenario.channel = state;
            scenario.gain = gain;
            scenario.quad = request.quad;
            scenario.series_tol = request.tol;
            auto result = avg_fidelity_quadrature(scenario);
            result.method = FidelityMethod::tmsv;
            return result;
        }
        case FidelityMethod::smeared:
            if (gain != 1.0) {
                throw DomainError("smeared model is defined at unit gain only");
            }
            return smeared_avg_fidelity(zeta, request.quad, request.tol);
    }
    throw DomainError("unknown fidelity method");
}

std::optional<ScanGrid::Argmax> grid_argmax(const ScanGrid &grid) {
    std::optional<ScanGrid::Argmax> best;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const auto &p = grid.points[i];
        if (!p.error.empty() || !std::isfinite(p.result.value)) {
            continue;
        }
        if (!best || p.result.value > best->value) {
            best = ScanGrid::Argmax{p.coords, p.result.value, i};
        }
    }
    return best;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn, unsigned threads) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

ScanGrid scan(const ScanRequest &request) {
    if (request.axes.empty()) {
        throw DomainError("scan: at least one axis is required");
    }
    std::size_t total = 1;
    std::array<bool, 4> seen{};
    for (const auto &axis : request.axes) {
        if (axis.count < 2) {
            throw DomainError("scan: axis '" + std::string(to_string(axis.name)) + "' needs at least two points");
        }
        if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !(axis.min < axis.max)) {
            throw DomainError("scan: axis '" + std::string(to_string(axis.name)) + "' must be strictly increasing");
        }
        auto &flag = seen[static_cast<std::size_t>(axis.name)];
        if (flag) {
            throw DomainError("scan: axis '" + std::string(to_string(axis.name)) + "' given twice");
        }
        flag = true;
        total *= static_cast<std::size_t>(axis.count);
        if (total > kMaxScanPoints) {
            throw DomainError("scan: more than 1e6 grid points requested");
        }
    }

    ScanGrid grid;
    grid.axes = request.axes;
    grid.method = request.method;
    grid.extras = request.extras;
    grid.points.resize(total);

    std::vector<std::vector<double>> axis_values;
    for (const auto &axis : request.axes) {
        axis_values.push_back(axis.values());
    }

    parallel_for(
        total,
        [&](std::size_t index) {
            auto &point = grid.points[index];
            point.coords.resize(request.axes.size());
            double zeta = request.zeta;
            double gain = request.gain;
            double alpha_abs = request.alpha_abs;
            double r = request.r;
            bool has_r_axis = false;
            // Decode the lexicographic index, last axis fastest.
            std::size_t rest = index;
            for (std::size_t k = request.axes.size(); k-- > 0;) {
                const auto count = static_cast<std::size_t>(request.axes[k].count);
                const double v = axis_values[k][rest % count];
                rest /= count;
                point.coords[k] = v;
                switch (request.axes[k].name) {
                    case AxisName::zeta:
                        zeta = v;
                        break;
                    case AxisName::gain:
                        gain = v;
                        break;
                    case AxisName::alpha_abs:
                        alpha_abs = v;
                        break;
                    case AxisName::r:
                        r = v;
                        has_r_axis = true;
                        break;
                }
            }
            try {
                point.result = evaluate_point(request, zeta, gain, alpha_abs, r);
            } catch (const std::exception &e) {
                point.result = FidelityResult{};
                point.result.method = request.method;
                point.result.value = std::numeric_limits<double>::quiet_NaN();
                point.error = e.what();
            }
            point.extras.reserve(request.extras.size());
            for (const auto extra : request.extras) {
                double v = std::numeric_limits<double>::quiet_NaN();
                try {
                    if (extra == ExtraColumn::tmsv) {
                        v = tmsv_unit_gain_fidelity(has_r_axis ? r : matched_squeezing(zeta));
                    } else {
                        v = smeared_avg_fidelity(zeta, request.quad, request.tol).value;
                    }
                } catch (const std::exception &e) {
                    if (point.error.empty()) {
                        point.error = std::string(to_string(extra)) + ": " + e.what();
                    }
                }
                point.extras.push_back(v);
            }
        },
        request.threads);

    grid.argmax = grid_argmax(grid);
    return grid;
}

}  // namespace pcteleport
