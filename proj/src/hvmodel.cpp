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

#include "pcteleport/hvmodel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "pcteleport/errors.hpp"
#include "pcteleport/quadrature.hpp"

namespace pcteleport {

namespace {

// Integrates (1/pi) f(lambda) over the plane where f ~ exp(-|lambda|^2 / s^2) * smooth.
// Gauss-Hermite in each axis; the residual is the contribution of the outermost
// node frame.
FidelityResult hermite_fidelity(const std::function<complex(complex)> &integrand, double s, const QuadSpec &quad,
                                double tol, FidelityMethod method, const PairCoherentState &state) {
    if (quad.hermite_nodes < 2) {
        throw DomainError("hermite quadrature needs at least two nodes per axis");
    }
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    const int n = quad.hermite_nodes;
    const auto rule = gauss_hermite(n);
    double integral = 0.0;
    double frame = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = s * rule.nodes[static_cast<std::size_t>(i)];
            const double y = s * rule.nodes[static_cast<std::size_t>(j)];
            const complex lambda(x, y);
            const double w = s * s * rule.weights[static_cast<std::size_t>(i)] * rule.weights[static_cast<std::size_t>(j)];
            const double v = w * std::exp(std::norm(lambda) / (s * s)) * integrand(lambda).real() / std::numbers::pi;
            integral += v;
            if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
                frame += v;
            }
        }
    }
    FidelityResult result;
    result.method = method;
    result.truncation_used = state.n_max();
    result.tail_estimate = pair_coherent_amplitudes(state).tail_bound;
    result.quad_residual = std::abs(frame);
    if (result.quad_residual > 10.0 * tol) {
        throw ResolutionError("smeared fidelity: outermost Gauss-Hermite frame carries " +
                                  std::to_string(result.quad_residual),
                              0.0, 2 * n);
    }
    if (!std::isfinite(integral) || integral < -10.0 * tol || integral > 1.0 + 10.0 * tol) {
        throw RangeError("smeared fidelity " + std::to_string(integral) + " outside [0, 1]");
    }
    result.value = std::clamp(integral, 0.0, 1.0);
    return result;
}

// Integrand decays as exp(-3 |lambda|^2) for the smeared channel and
// exp(-2 |lambda|^2) for the bare one.
const double kSmearedScale = 1.0 / std::sqrt(3.0);
const double kBareScale = 1.0 / std::sqrt(2.0);

}  // namespace

FidelityResult smeared_avg_fidelity(double zeta, const QuadSpec &quad, double tol) {
    const PairCoherentState state(zeta);
    return hermite_fidelity(
        [&](complex lambda) { return std::exp(-std::norm(lambda)) * smeared_characteristic(state, lambda); },
        kSmearedScale, quad, tol, FidelityMethod::smeared, state);
}

FidelityResult smeared_avg_fidelity_full(double zeta, complex input_alpha, const QuadSpec &quad, double tol) {
    if (!std::isfinite(input_alpha.real()) || !std::isfinite(input_alpha.imag())) {
        throw DomainError("smeared_avg_fidelity_full: non-finite input amplitude");
    }
    const PairCoherentState state(zeta);
    // chi_in(lambda) = exp(lambda conj(alpha) - conj(lambda) alpha) exp(-|lambda|^2 / 2)
    const auto chi_in = [&](complex lambda) {
        return std::exp(lambda * std::conj(input_alpha) - std::conj(lambda) * input_alpha - 0.5 * std::norm(lambda));
    };
    return hermite_fidelity(
        [&](complex lambda) {
            const complex chi_out_neg = chi_in(-lambda) * smeared_characteristic(state, -lambda);
            return chi_in(lambda) * chi_out_neg;
        },
        kSmearedScale, quad, tol, FidelityMethod::smeared, state);
}

FidelityResult characteristic_avg_fidelity(double zeta, const QuadSpec &quad, double tol) {
    const PairCoherentState state(zeta);
    return hermite_fidelity(
        [&](complex lambda) {
            return std::exp(-std::norm(lambda)) * pair_coherent_characteristic(state, std::conj(lambda), lambda);
        },
        kBareScale, quad, tol, FidelityMethod::quadrature, state);
}

}  // namespace pcteleport
