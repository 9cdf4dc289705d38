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

#include "pcteleport/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pcteleport/errors.hpp"

namespace pcteleport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kWignerDiagonalCap = 400;

// ln sum_n zeta^{2n} / (n! (n+q)!), the squared normalization of |zeta, q>.
double log_pair_coherent_norm(double zeta, int charge) {
    if (charge == 0) {
        return log_bessel_i0(2.0 * zeta);
    }
    const double lz = std::log(zeta);
    SignedLogSum sum;
    for (int n = 0;; ++n) {
        const double lt = 2.0 * n * lz - log_factorial(n) - log_factorial(n + charge);
        sum.add_log(lt, 1);
        if (n > zeta && lt < sum.result().log_abs + std::log(1e-20)) {
            break;
        }
    }
    return sum.result().log_abs;
}

// c_{N+1}^2 / (1 - rho^2), rho the amplitude ratio beyond N+1.
double pair_coherent_tail(double zeta, int charge, int n_max, double log_norm) {
    if (zeta == 0.0) {
        return 0.0;
    }
    const int n = n_max + 1;
    const double rho = zeta / std::sqrt((n + 1.0) * (n + 1.0 + charge));
    if (rho >= 1.0) {
        return kInf;
    }
    const double log_c2 = 2.0 * n * std::log(zeta) - log_factorial(n) - log_factorial(n + charge) - log_norm;
    return std::exp(log_c2) / (1.0 - rho * rho);
}

void require_charge_zero(const PairCoherentState &state, const char *what) {
    if (state.charge() != 0) {
        throw DomainError(std::string(what) + ": only charge q = 0 is supported");
    }
}

}  // namespace

PairCoherentState::PairCoherentState(double zeta, int charge, int n_max)
    : zeta_(zeta), charge_(charge), n_max_(n_max < 0 ? default_truncation(zeta) : n_max) {
    if (!std::isfinite(zeta) || zeta < 0.0) {
        throw DomainError("PairCoherentState: zeta must be finite and >= 0");
    }
    if (charge < 0) {
        throw DomainError("PairCoherentState: charge must be >= 0");
    }
    if (n_max_ < 1) {
        throw DomainError("PairCoherentState: n_max must be >= 1");
    }
}

int PairCoherentState::default_truncation(double zeta) {
    if (!std::isfinite(zeta) || zeta < 0.0) {
        throw DomainError("PairCoherentState: zeta must be finite and >= 0");
    }
    return static_cast<int>(std::ceil(std::ceil(zeta) + 8.0 * std::sqrt(zeta + 1.0) + 20.0));
}

TwoModeSqueezedState::TwoModeSqueezedState(double r, int n_max)
    : r_(r), n_max_(n_max < 0 ? default_truncation(r) : n_max) {
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("TwoModeSqueezedState: r must be finite and >= 0");
    }
    if (n_max_ < 1) {
        throw DomainError("TwoModeSqueezedState: n_max must be >= 1");
    }
}

int TwoModeSqueezedState::default_truncation(double r) {
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("TwoModeSqueezedState: r must be finite and >= 0");
    }
    const double t = std::tanh(r);
    if (t == 0.0) {
        return 1;
    }
    const double n = std::ceil(std::log(1e-14) / (2.0 * std::log(t))) - 1.0;
    return std::max(1, static_cast<int>(n));
}

SchmidtAmplitudes pair_coherent_amplitudes(const PairCoherentState &state, double tail_tol) {
    const double zeta = state.zeta();
    const int charge = state.charge();
    const int n_max = state.n_max();
    SchmidtAmplitudes out;
    out.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (zeta == 0.0) {
        out.values[0] = 1.0;
        return out;
    }
    const double log_norm = log_pair_coherent_norm(zeta, charge);
    const double lz = std::log(zeta);
    for (int n = 0; n <= n_max; ++n) {
        const double lc = n * lz - 0.5 * (log_factorial(n) + log_factorial(n + charge)) - 0.5 * log_norm;
        out.values[static_cast<std::size_t>(n)] = std::exp(lc);
    }
    out.tail_bound = pair_coherent_tail(zeta, charge, n_max, log_norm);
    if (!(out.tail_bound <= tail_tol)) {
        int suggested = n_max + 1;
        while (!(pair_coherent_tail(zeta, charge, suggested, log_norm) <= tail_tol)) {
            ++suggested;
        }
        throw TruncationError("pair-coherent truncation n_max=" + std::to_string(n_max) +
                                  " leaves tail weight above tolerance; need n_max >= " + std::to_string(suggested),
                              suggested);
    }
    return out;
}

SchmidtAmplitudes tmsv_amplitudes(const TwoModeSqueezedState &state, double tail_tol) {
    const double t = std::tanh(state.r());
    const double log_cosh = std::log(std::cosh(state.r()));
    const int n_max = state.n_max();
    SchmidtAmplitudes out;
    out.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        out.values[static_cast<std::size_t>(n)] = std::exp(log_pow(t, n) - log_cosh);
    }
    out.tail_bound = std::exp(log_pow(t, 2 * (n_max + 1)));
    if (!(out.tail_bound <= tail_tol)) {
        const int suggested =
            static_cast<int>(std::ceil(std::log(tail_tol) / (2.0 * std::log(t))));
        throw TruncationError("two-mode squeezed truncation n_max=" + std::to_string(n_max) +
                                  " leaves tail weight above tolerance; need n_max >= " + std::to_string(suggested),
                              suggested);
    }
    return out;
}

SchmidtAmplitudes schmidt_amplitudes(const Channel &channel, double tail_tol) {
    return std::visit(
        [&](const auto &state) -> SchmidtAmplitudes {
            using T = std::decay_t<decltype(state)>;
            if constexpr (std::is_same_v<T, PairCoherentState>) {
                return pair_coherent_amplitudes(state, tail_tol);
            } else {
                return tmsv_amplitudes(state, tail_tol);
            }
        },
        channel);
}

double mean_photon_number(const Channel &channel) {
    const auto amps = schmidt_amplitudes(channel, 1.0);
    double n_bar = 0.0;
    for (std::size_t n = 0; n < amps.values.size(); ++n) {
        n_bar += static_cast<double>(n) * amps.values[n] * amps.values[n];
    }
    return n_bar;
}

int truncation_of(const Channel &channel) {
    return std::visit([](const auto &state) { return state.n_max(); }, channel);
}

double pair_annihilator_residual(const PairCoherentState &state) {
    const auto amps = pair_coherent_amplitudes(state, 1.0);
    const auto &c = amps.values;
    const int q = state.charge();
    const int n_max = state.n_max();
    // ab |n+q, n> = sqrt((n+q) n) |n+q-1, n-1>; component k of ab psi is
    // sqrt((k+1)(k+1+q)) c_{k+1}, with c_{n_max+1} absent.
    double sq = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        const double lowered =
            k < n_max ? std::sqrt((k + 1.0) * (k + 1.0 + q)) * c[static_cast<std::size_t>(k + 1)] : 0.0;
        const double d = lowered - state.zeta() * c[static_cast<std::size_t>(k)];
        sq += d * d;
    }
    return std::sqrt(sq);
}

double wigner(const PairCoherentState &state, const PhasePoint &point, double tol) {
    require_charge_zero(state, "wigner");
    const complex a = 2.0 * point.alpha;
    const complex b = 2.0 * point.beta;
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) || !std::isfinite(b.imag())) {
        throw DomainError("wigner: non-finite phase-space point");
    }
    const double zeta = state.zeta();
    const double xa = std::abs(a);
    const double xb = std::abs(b);
    const double phi = std::arg(a) + std::arg(b);
    const double log_pre =
        std::log(4.0) - 0.5 * (xa * xa + xb * xb) - 2.0 * std::log(std::numbers::pi) - log_bessel_i0(2.0 * zeta);

    if (zeta == 0.0) {
        return std::exp(log_pre);
    }
    const double lz = std::log(zeta);

    // |x^{m+n} 2F0(-m,-n;;-1/x^2)| <= x^{m-n} m!/(m-n)! e^{x^2/2} (m >= n),
    // so each diagonal s = m + n is bounded by the sum of these majorants.
    double sum = 0.0;
    double prev_bound = kInf;
    for (int s = 0; s <= kWignerDiagonalCap; ++s) {
        double diag = 0.0;
        SignedLogSum bound;
        for (int n = 0; 2 * n <= s; ++n) {
            const int m = s - n;
            const double weight = (m == n) ? 1.0 : 2.0;
            const SignedLog fa = scaled_hyper2f0(m, n, xa);
            const SignedLog fb = scaled_hyper2f0(m, n, xb);
            const SignedLog prod = fa * fb;
            if (prod.sign != 0) {
                const double lt = s * lz - 2.0 * (log_factorial(m) + log_factorial(n)) + prod.log_abs + log_pre;
                diag += weight * std::cos((m - n) * phi) * prod.sign * std::exp(lt);
            }
            const double lb = s * lz - 2.0 * (log_factorial(n) + log_factorial(m - n)) + log_pow(xa * xb, m - n) +
                              std::log(4.0) - 2.0 * std::log(std::numbers::pi) - log_bessel_i0(2.0 * zeta);
            bound.add_log(lb + std::log(weight), 1);
        }
        sum += diag;
        const double b_s = bound.value();
        if (b_s == 0.0) {
            // Odd diagonals vanish identically when alpha or beta is zero.
            continue;
        }
        if (s > 2 && b_s < prev_bound) {
            const double rho = b_s / prev_bound;
            if (rho < 1.0 && b_s / (1.0 - rho) < tol) {
                return sum;
            }
        }
        prev_bound = b_s;
    }
    throw ConvergenceError("wigner: double series did not reach tolerance within " +
                           std::to_string(kWignerDiagonalCap) + " diagonals");
}

double wigner_fock_oracle(const PairCoherentState &state, const PhasePoint &point) {
    const auto amps = pair_coherent_amplitudes(state);
    const auto &c = amps.values;
    const int q = state.charge();
    const int size = state.n_max() + 1;
    // Single-mode Wigner function of |m><n| is (2/pi) (-1)^m <n| D(2 gamma) |m>.
    const DisplacementBlock da(2.0 * point.alpha, size + q, size + q);
    const DisplacementBlock db(2.0 * point.beta, size, size);
    double w = 0.0;
    for (int m = 0; m < size; ++m) {
        for (int n = 0; n < size; ++n) {
            const double cc = c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(n)];
            if (cc == 0.0) {
                continue;
            }
            const double sign = ((2 * m + q) % 2 == 0) ? 1.0 : -1.0;
            w += sign * cc * (da(n + q, m + q) * db(n, m)).real();
        }
    }
    return w * 4.0 / (std::numbers::pi * std::numbers::pi);
}

complex pair_coherent_characteristic(const PairCoherentState &state, complex lambda1, complex lambda2) {
    const auto amps = pair_coherent_amplitudes(state);
    const auto &c = amps.values;
    const int q = state.charge();
    const int size = state.n_max() + 1;
    const DisplacementBlock d1(lambda1, size + q, size + q);
    const DisplacementBlock d2(lambda2, size, size);
    complex chi(0.0, 0.0);
    for (int m = 0; m < size; ++m) {
        for (int n = 0; n < size; ++n) {
            const double cc = c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(n)];
            if (cc == 0.0) {
                continue;
            }
            chi += cc * d1(n + q, m + q) * d2(n, m);
        }
    }
    return chi;
}

complex smeared_characteristic(const PairCoherentState &state, complex lambda) {
    require_charge_zero(state, "smeared_characteristic");
    return pair_coherent_characteristic(state, std::conj(lambda), lambda) * std::exp(-std::norm(lambda));
}

}  // namespace pcteleport
