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

/// Channel states for the teleportation protocol and their phase-space
/// representations.
///
/// Both channels are pure two-mode states with a diagonal Schmidt form
/// sum_n c_n |n + q, n>, so a truncated amplitude vector describes them
/// completely.

#ifndef PCTELEPORT_STATES_HPP
#define PCTELEPORT_STATES_HPP

#include <utility>
#include <variant>
#include <vector>

#include "pcteleport/specfn.hpp"

namespace pcteleport {

/// Default tolerance on the discarded Schmidt weight sum_{n > n_max} c_n^2.
inline constexpr double kDefaultTailTolerance = 1e-12;

/// Pair-coherent ("circle") state |zeta, q>: eigenstate of the pair
/// annihilator ab with eigenvalue zeta and of the number difference with
/// eigenvalue q.
class PairCoherentState {
   public:
    /// n_max < 0 selects default_truncation(zeta).
    explicit PairCoherentState(double zeta, int charge = 0, int n_max = -1);

    double zeta() const { return zeta_; }
    int charge() const { return charge_; }
    int n_max() const { return n_max_; }

    /// Fock labels (n_a, n_b) of the n-th Schmidt ket.
    std::pair<int, int> ket(int n) const { return {n + charge_, n}; }

    /// ceil(zeta) + 8 sqrt(zeta + 1) + 20, rounded up.
    static int default_truncation(double zeta);

   private:
    double zeta_;
    int charge_;
    int n_max_;
};

/// Two-mode squeezed vacuum with Schmidt coefficients tanh^n(r) / cosh(r).
class TwoModeSqueezedState {
   public:
    explicit TwoModeSqueezedState(double r, int n_max = -1);

    double r() const { return r_; }
    int n_max() const { return n_max_; }

    /// Smallest cutoff whose geometric tail tanh^{2(n_max+1)} r is below 1e-14.
    static int default_truncation(double r);

   private:
    double r_;
    int n_max_;
};

using Channel = std::variant<PairCoherentState, TwoModeSqueezedState>;

struct SchmidtAmplitudes {
    std::vector<double> values;  // c_0 ... c_{n_max}
    double tail_bound = 0.0;     // upper bound on sum_{n > n_max} c_n^2
};

/// Fock amplitudes c_n of |zeta, q>, computed in log space. Throws
/// TruncationError (with a suggested n_max) if the tail bound exceeds tail_tol.
SchmidtAmplitudes pair_coherent_amplitudes(const PairCoherentState &state,
                                           double tail_tol = kDefaultTailTolerance);

SchmidtAmplitudes tmsv_amplitudes(const TwoModeSqueezedState &state, double tail_tol = kDefaultTailTolerance);

SchmidtAmplitudes schmidt_amplitudes(const Channel &channel, double tail_tol = kDefaultTailTolerance);

/// Mean photon number of the b mode, from the truncated amplitudes.
double mean_photon_number(const Channel &channel);

int truncation_of(const Channel &channel);

/// ||ab psi - zeta psi|| for the truncated amplitude vector.
double pair_annihilator_residual(const PairCoherentState &state);

/// Two-mode phase-space point (alpha, beta).
struct PhasePoint {
    complex alpha;
    complex beta;
};

/// Two-mode Wigner function of |zeta, 0> at the phase-space point, from the
/// closed-form double series with terminating 2F0 factors. Throws
/// ConvergenceError if the adaptive truncation cannot reach `tol`.
double wigner(const PairCoherentState &state, const PhasePoint &point, double tol = 1e-10);

/// Same quantity from the truncated Fock expansion and single-mode Wigner
/// matrix elements. Supports any charge.
double wigner_fock_oracle(const PairCoherentState &state, const PhasePoint &point);

/// tr[rho D(lambda1) (x) D(lambda2)] for rho = |zeta, q><zeta, q|.
complex pair_coherent_characteristic(const PairCoherentState &state, complex lambda1, complex lambda2);

/// Characteristic function of the smeared channel on the teleportation
/// slice: chi(lambda*, lambda) * exp(-|lambda|^2). Requires charge 0.
complex smeared_characteristic(const PairCoherentState &state, complex lambda);

}  // namespace pcteleport

#endif
