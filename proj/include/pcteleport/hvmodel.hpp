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

/// Hidden-variable ("smeared") channel: the pair-coherent Wigner function is
/// replaced by its Q function, i.e. one unit of vacuum noise is added to each
/// mode. Fidelities are computed at unit gain from characteristic functions:
///
///     F = (1/pi) int |chi_in(lambda)|^2 chi_channel(lambda*, lambda) d^2 lambda.

#ifndef PCTELEPORT_HVMODEL_HPP
#define PCTELEPORT_HVMODEL_HPP

#include "pcteleport/teleport.hpp"

namespace pcteleport {

/// Unit-gain average fidelity through the smeared pair-coherent channel.
/// Uses the coherent-input simplification |chi_in|^2 = exp(-|lambda|^2).
FidelityResult smeared_avg_fidelity(double zeta, const QuadSpec &quad = {}, double tol = 1e-8);

/// Same fidelity with the full input-dependent integrand
/// (1/pi) int chi_in(lambda) chi_out(-lambda) d^2 lambda.
FidelityResult smeared_avg_fidelity_full(double zeta, complex input_alpha, const QuadSpec &quad = {},
                                         double tol = 1e-8);

/// Unit-gain fidelity through the unsmeared channel by the same route; equals
/// the unit-gain series.
FidelityResult characteristic_avg_fidelity(double zeta, const QuadSpec &quad = {}, double tol = 1e-8);

}  // namespace pcteleport

#endif
