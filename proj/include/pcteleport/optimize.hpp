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

/// Parameter scans and deterministic maximization over (zeta, g, |alpha|).

#ifndef PCTELEPORT_OPTIMIZE_HPP
#define PCTELEPORT_OPTIMIZE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcteleport/errors.hpp"
#include "pcteleport/teleport.hpp"

namespace pcteleport {

struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// Golden-section search for the maximum of f on [lo, hi], stopping when the
/// bracket is narrower than tol. Deterministic.
GoldenResult golden_section_maximize(const std::function<double(double)> &f, double lo, double hi, double tol);

enum class ScanShape { unimodal, monotone_increasing, monotone_decreasing };

/// The verification scan contradicted the unimodality assumption.
class NonUnimodalError : public NumericalError {
   public:
    NonUnimodalError(const std::string &what, std::vector<std::pair<double, double>> scan)
        : NumericalError(what), scan_(std::move(scan)) {}
    const std::vector<std::pair<double, double>> &scan() const { return scan_; }

   private:
    std::vector<std::pair<double, double>> scan_;
};

struct ZetaOptimum {
    double zeta = 0.0;
    double value = 0.0;
    ScanShape shape = ScanShape::unimodal;
    std::vector<std::pair<double, double>> scan;  // (zeta, fidelity), 50 points
};

/// Maximizes the unit-gain fidelity over zeta in [zeta_lo, zeta_hi].
ZetaOptimum optimize_zeta_at_unit_gain(double zeta_hi, double tol = 1e-7, double zeta_lo = 0.0);

struct GainZetaOptimum {
    double gain = 1.0;
    double zeta = 0.0;
    double value = 0.0;
    int iterations = 0;
};

struct GainZetaBounds {
    double gain_lo = 0.0;
    double gain_hi = 1.5;
    double zeta_lo = 0.0;
    double zeta_hi = 4.0;
};

/// Coordinate ascent over (g, zeta) with golden-section line searches on the
/// series fidelity; each sweep ends with a line search along its net step.
/// Throws ConvergenceError after 100 outer iterations.
GainZetaOptimum optimize_gain_and_zeta(double alpha_abs, double tol = 1e-6, const GainZetaBounds &bounds = {});

enum class AxisName { zeta, gain, alpha_abs, r };

std::string_view to_string(AxisName axis);
std::optional<AxisName> parse_axis_name(std::string_view name);

struct AxisDef {
    AxisName name = AxisName::zeta;
    double min = 0.0;
    double max = 0.0;
    int count = 2;

    /// Evenly spaced values, min and max included.
    std::vector<double> values() const;
};

enum class ExtraColumn { tmsv, smeared };

struct ScanRequest {
    std::vector<AxisDef> axes;
    FidelityMethod method = FidelityMethod::series;
    // Values used for parameters that are not scanned.
    double zeta = 0.0;
    double gain = 1.0;
    double alpha_abs = 0.0;
    double r = 0.0;
    double tol = 1e-8;
    int n_max = -1;  // channel truncation for quadrature methods; < 0: default
    QuadSpec quad{};
    std::vector<ExtraColumn> extras;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ScanPoint {
    std::vector<double> coords;  // one per axis
    FidelityResult result;       // value is NaN on failure
    std::vector<double> extras;  // one per requested extra column
    std::string error;           // empty on success
};

struct ScanGrid {
    std::vector<AxisDef> axes;
    FidelityMethod method = FidelityMethod::series;
    std::vector<ExtraColumn> extras;
    std::vector<ScanPoint> points;  // lexicographic, first axis slowest

    struct Argmax {
        std::vector<double> coords;
        double value = 0.0;
        std::size_t index = 0;
    };
    std::optional<Argmax> argmax;
};

std::string_view to_string(ExtraColumn column);

/// Dense evaluation of the request. Per-point failures are recorded in the
/// grid; invalid requests throw DomainError.
ScanGrid scan(const ScanRequest &request);

/// Evaluates one point of a request at the given parameter values.
FidelityResult evaluate_point(const ScanRequest &request, double zeta, double gain, double alpha_abs, double r);

/// Squeezing whose mean photon number per mode matches |zeta, 0>.
double matched_squeezing(double zeta);

/// Recomputes the argmax of a grid from its points.
std::optional<ScanGrid::Argmax> grid_argmax(const ScanGrid &grid);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn, unsigned threads = 0);

}  // namespace pcteleport

#endif
