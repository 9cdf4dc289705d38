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

/// Continuous-variable teleportation of coherent states through a
/// pure two-mode channel with a diagonal Schmidt form.
///
/// Alice's joint homodyne outcome A maps the input to Bob's unnormalized
/// state T(A)|alpha>, with
///
///     T(A) = (2 / sqrt(pi)) sum_n c_n |n><n| D(-2A),
///
/// where c_n are the channel's Schmidt coefficients. The factor 2 / sqrt(pi)
/// makes the outcome density P(A) = ||T(A)|alpha>||^2 integrate to one over
/// the complex plane. Bob then displaces by D(2 g A).

#ifndef PCTELEPORT_TELEPORT_HPP
#define PCTELEPORT_TELEPORT_HPP

#include <string_view>
#include <vector>

#include "pcteleport/states.hpp"

namespace pcteleport {

enum class FidelityMethod { series, g1_series, quadrature, smeared, tmsv };

std::string_view to_string(FidelityMethod method);

struct FidelityResult {
    double value = 0.0;
    FidelityMethod method = FidelityMethod::series;
    int truncation_used = 0;     // last series diagonal, or channel n_max for quadrature
    double tail_estimate = 0.0;  // bound on the discarded series/Schmidt tail
    double quad_residual = 0.0;  // outermost-ring contribution (quadrature only)
};

/// Numerical controls for planar quadratures.
struct QuadSpec {
    int radial_nodes = 128;
    int angular_nodes = 64;
    double radius = 0.0;    // <= 0 selects the default disk radius
    int hermite_nodes = 48; // per axis, Gauss-Hermite rules
};

struct TeleportScenario {
    complex input_alpha{0.0, 0.0};
    Channel channel{PairCoherentState(0.0)};
    double gain = 1.0;
    QuadSpec quad{};
    double series_tol = 1e-8;
};

/// Throws DomainError if the scenario violates its invariants.
void validate(const TeleportScenario &scenario);

/// Fock coefficients of T(A)|alpha> in the diagonal-Fock form, n <= n_max.
std::vector<complex> transfer_apply(const Channel &channel, complex outcome, complex input_alpha);

/// Same coefficients from the circle representation of a pair-coherent
/// channel, integrating over the circle angle with a uniform trapezoid rule.
std::vector<complex> transfer_apply_circle(const PairCoherentState &channel, complex outcome, complex input_alpha,
                                           int theta_nodes = 256);

/// P(A) = ||T(A)|alpha>||^2.
double measurement_density(const Channel &channel, complex outcome, complex input_alpha);

/// Center alpha/2, radius |alpha|/2 + 3 sqrt(1 + n) + 3 with n = zeta for
/// pair-coherent channels and sinh^2 r for squeezed ones.
double default_disk_radius(complex input_alpha, const Channel &channel);

struct PlanarIntegral {
    double value = 0.0;
    double outer_ring = 0.0;
};

/// Integral of P(A) over the outcome plane with the scenario's disk rule.
PlanarIntegral integrate_measurement_density(const TeleportScenario &scenario);

/// Closed-form average fidelity as a quadruple series in (m, n, p, q) with
/// an inner j sum; depends on the input only through |alpha|. Throws
/// ConvergenceError if cancellation between terms exceeds tol.
FidelityResult avg_fidelity_series(double alpha_abs, double zeta, double gain, double tol = 1e-12);

/// Unit-gain reduction (1 / (2 I0(2 zeta))) sum (zeta/2)^{m+n} (m+n)! / (m! n!)^2.
FidelityResult avg_fidelity_g1_series(double zeta, double tol = 1e-12);

/// Direct quadrature of |<alpha| D(2gA) T(A) |alpha>|^2 over the outcome plane.
FidelityResult avg_fidelity_quadrature(const TeleportScenario &scenario);

/// Unit-gain two-mode squeezed vacuum baseline, 1 / (1 + exp(-2r)).
double tmsv_unit_gain_fidelity(double r);

}  // namespace pcteleport

#endif
