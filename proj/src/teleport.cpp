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

#include "pcteleport/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pcteleport/errors.hpp"
#include "pcteleport/quadrature.hpp"

namespace pcteleport {

namespace {

constexpr int kSeriesDiagonalCap = 200;
constexpr double kBig = 1e200;
constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

const double kTransferPrefactor = 2.0 / std::sqrt(std::numbers::pi);

void require_finite(complex z, const char *what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

void require_series_args(double alpha_abs, double zeta, double gain, double tol, const char *what) {
    if (!std::isfinite(alpha_abs) || alpha_abs < 0.0) {
        throw DomainError(std::string(what) + ": |alpha| must be finite and >= 0");
    }
    if (!std::isfinite(zeta) || zeta < 0.0) {
        throw DomainError(std::string(what) + ": zeta must be finite and >= 0");
    }
    if (!std::isfinite(gain) || gain < 0.0) {
        throw DomainError(std::string(what) + ": gain must be finite and >= 0");
    }
    if (!(tol > 0.0)) {
        throw DomainError(std::string(what) + ": tolerance must be positive");
    }
}

// Fidelities within 10 tol of [0, 1] are clamped; anything further out is a bug.
double checked_fidelity(double value, double tol, const char *what) {
    if (!std::isfinite(value) || value < -10.0 * tol || value > 1.0 + 10.0 * tol) {
        throw RangeError(std::string(what) + ": fidelity " + std::to_string(value) + " outside [0, 1]");
    }
    return std::clamp(value, 0.0, 1.0);
}

void require_charge_zero(const Channel &channel) {
    if (const auto *pc = std::get_if<PairCoherentState>(&channel); pc != nullptr && pc->charge() != 0) {
        throw DomainError("teleportation requires a charge-zero pair-coherent channel");
    }
}

int input_support(complex input_alpha) {
    const int k = coherent_support(std::abs(input_alpha));
    if (k > LogFactorialTable::kDefaultCap) {
        throw TruncationError("input coherent amplitude needs Fock support " + std::to_string(k) +
                                  " beyond the factorial table cap",
                              k);
    }
    return k;
}

// Precomputed pieces of the protocol for a fixed channel and input.
class TransferKernel {
   public:
    TransferKernel(const Channel &channel, complex input_alpha, double tail_tol = kDefaultTailTolerance)
        : alpha_(input_alpha) {
        require_charge_zero(channel);
        require_finite(input_alpha, "transfer");
        const auto amps = schmidt_amplitudes(channel, tail_tol);
        schmidt_ = amps.values;
        tail_ = amps.tail_bound;
        input_ = coherent_amplitudes(input_alpha, input_support(input_alpha));
    }

    int channel_size() const { return static_cast<int>(schmidt_.size()); }
    int input_size() const { return static_cast<int>(input_.size()); }
    double tail() const { return tail_; }

    // psi_n = (2/sqrt(pi)) c_n <n| D(-2A) |alpha>
    std::vector<complex> apply(complex outcome) const {
        const DisplacementBlock d(-2.0 * outcome, channel_size(), input_size());
        std::vector<complex> psi(schmidt_.size());
        for (int n = 0; n < channel_size(); ++n) {
            const double c = schmidt_[static_cast<std::size_t>(n)];
            if (c == 0.0) {
                continue;
            }
            complex acc(0.0, 0.0);
            for (int k = 0; k < input_size(); ++k) {
                acc += d(n, k) * input_[static_cast<std::size_t>(k)];
            }
            psi[static_cast<std::size_t>(n)] = kTransferPrefactor * c * acc;
        }
        return psi;
    }

    // <alpha| D(2gA) |psi>
    complex reconstruct_overlap(complex outcome, double gain, const std::vector<complex> &psi) const {
        const DisplacementBlock d(2.0 * gain * outcome, input_size(), channel_size());
        complex amp(0.0, 0.0);
        for (int n = 0; n < channel_size(); ++n) {
            const complex p = psi[static_cast<std::size_t>(n)];
            if (p == complex(0.0, 0.0)) {
                continue;
            }
            complex row(0.0, 0.0);
            for (int k = 0; k < input_size(); ++k) {
                row += std::conj(input_[static_cast<std::size_t>(k)]) * d(k, n);
            }
            amp += row * p;
        }
        return amp;
    }

   private:
    complex alpha_;
    std::vector<double> schmidt_;
    double tail_ = 0.0;
    std::vector<complex> input_;
};

double norm_squared(const std::vector<complex> &v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return s;
}

std::vector<PlanarNode> scenario_disk(const TeleportScenario &scenario) {
    const double radius =
        scenario.quad.radius > 0.0 ? scenario.quad.radius : default_disk_radius(scenario.input_alpha, scenario.channel);
    return disk_rule(0.5 * scenario.input_alpha, radius, scenario.quad.radial_nodes, scenario.quad.angular_nodes);
}

}  // namespace

std::string_view to_string(FidelityMethod method) {
    switch (method) {
        case FidelityMethod::series:
            return "series";
        case FidelityMethod::g1_series:
            return "g1-series";
        case FidelityMethod::quadrature:
            return "quadrature";
        case FidelityMethod::smeared:
            return "smeared";
        case FidelityMethod::tmsv:
            return "tmsv";
    }
    return "unknown";
}

void validate(const TeleportScenario &scenario) {
    require_finite(scenario.input_alpha, "TeleportScenario");
    if (!std::isfinite(scenario.gain) || scenario.gain < 0.0) {
        throw DomainError("TeleportScenario: gain must be finite and >= 0");
    }
    if (!(scenario.series_tol > 0.0 && scenario.series_tol <= 1e-4)) {
        throw DomainError("TeleportScenario: series_tol must lie in (0, 1e-4]");
    }
    if (scenario.quad.radial_nodes < 2 || scenario.quad.angular_nodes < 2) {
        throw DomainError("TeleportScenario: quadrature needs at least two nodes per axis");
    }
    require_charge_zero(scenario.channel);
}

std::vector<complex> transfer_apply(const Channel &channel, complex outcome, complex input_alpha) {
    require_finite(outcome, "transfer_apply");
    return TransferKernel(channel, input_alpha).apply(outcome);
}

std::vector<complex> transfer_apply_circle(const PairCoherentState &channel, complex outcome, complex input_alpha,
                                           int theta_nodes) {
    require_charge_zero(channel);
    require_finite(outcome, "transfer_apply_circle");
    require_finite(input_alpha, "transfer_apply_circle");
    if (theta_nodes < 1) {
        throw DomainError("transfer_apply_circle: need at least one node");
    }
    const double zeta = channel.zeta();
    const int size = channel.n_max() + 1;
    const double radius = std::sqrt(zeta);
    // T(A) = 2 e^zeta / (2 pi sqrt(pi I0(2 zeta))) int |g><g| D(-2A) dtheta, g = sqrt(zeta) e^{i theta}
    const double log_pre = std::log(2.0) + zeta - std::log(2.0 * std::numbers::pi) -
                           0.5 * (std::log(std::numbers::pi) + log_bessel_i0(2.0 * zeta));
    const double dtheta = 2.0 * std::numbers::pi / theta_nodes;
    // D(-2A)|alpha> = exp(i Im(-2A conj(alpha))) |alpha - 2A>
    const complex shift = -2.0 * outcome;
    const complex displaced = input_alpha + shift;
    const complex phase = std::exp(complex(0.0, (shift * std::conj(input_alpha)).imag()));

    std::vector<complex> out(static_cast<std::size_t>(size), complex(0.0, 0.0));
    for (int t = 0; t < theta_nodes; ++t) {
        const complex g = std::polar(radius, t * dtheta);
        // <g|displaced> = exp(-|g|^2/2 - |displaced|^2/2 + conj(g) displaced)
        const complex bra = phase * std::exp(-0.5 * zeta - 0.5 * std::norm(displaced) + std::conj(g) * displaced);
        for (int n = 0; n < size; ++n) {
            // <n|g> = e^{-zeta/2} g^n / sqrt(n!)
            const double log_mag = -0.5 * zeta + log_pow(radius, n) - 0.5 * log_factorial(n);
            const complex ket = std::polar(std::exp(log_mag), n * t * dtheta);
            out[static_cast<std::size_t>(n)] += ket * bra;
        }
    }
    for (auto &z : out) {
        z *= std::exp(log_pre) * dtheta;
    }
    return out;
}

double measurement_density(const Channel &channel, complex outcome, complex input_alpha) {
    return norm_squared(transfer_apply(channel, outcome, input_alpha));
}

double default_disk_radius(complex input_alpha, const Channel &channel) {
    const double n = std::visit(
        [](const auto &state) -> double {
            using T = std::decay_t<decltype(state)>;
            if constexpr (std::is_same_v<T, PairCoherentState>) {
                return state.zeta();
            } else {
                const double s = std::sinh(state.r());
                return s * s;
            }
        },
        channel);
    return 0.5 * std::abs(input_alpha) + 3.0 * std::sqrt(1.0 + n) + 3.0;
}

PlanarIntegral integrate_measurement_density(const TeleportScenario &scenario) {
    validate(scenario);
    const TransferKernel kernel(scenario.channel, scenario.input_alpha);
    const auto nodes = scenario_disk(scenario);
    const int outer = scenario.quad.radial_nodes - 1;
    PlanarIntegral out;
    for (const auto &node : nodes) {
        const double v = node.weight * norm_squared(kernel.apply(node.z));
        out.value += v;
        if (node.ring == outer) {
            out.outer_ring += v;
        }
    }
    return out;
}

FidelityResult avg_fidelity_series(double alpha_abs, double zeta, double gain, double tol) {
    require_series_args(alpha_abs, zeta, gain, tol, "avg_fidelity_series");
    const double g = gain;
    const double g2p1 = 1.0 + g * g;
    const double a2 = alpha_abs * alpha_abs;
    const double log_prefactor = -(g - 1.0) * (g - 1.0) / g2p1 * a2 - std::log(g2p1) - log_bessel_i0(2.0 * zeta);

    FidelityResult result;
    result.method = FidelityMethod::series;
    // Base of the (|alpha|^2 (1-g)^2/(1+g^2))^{m+n-j} factor.
    const double w = (1.0 - g) * (1.0 - g) / g2p1 * a2;
    if (zeta == 0.0 || (g == 0.0 && w == 0.0)) {
        // Only m = n = p = q = j = 0 survives.
        result.value = checked_fidelity(std::exp(log_prefactor), tol, "avg_fidelity_series");
        return result;
    }
    const double lz = std::log(zeta);
    const double log_g2p1 = std::log(g2p1);
    const double wg2 = w * g * g;

    SignedLogSum total;
    SignedLogSum magnitude;  // sum of |terms|, for the cancellation estimate
    double prev_abs = 0.0;
    for (int s = 0; s <= kSeriesDiagonalCap; ++s) {
        SignedLogSum diag;
        for (int m = 0; m <= s; ++m) {
            const int n = s - m;
            const double log_mn = s * lz - 2.0 * (log_factorial(m) + log_factorial(n));
            for (int p = 0; p <= m; ++p) {
                for (int q = 0; q <= n; ++q) {
                    const int np = n + p;
                    const int mq = m + q;
                    const int top = std::min(np, mq);
                    // j = top has the lowest powers of w and g; walk down from there.
                    const double log_start = log_pow(w, s - top) + log_pow(g, s + 2 * (p + q - top)) +
                                             log_factorial(np) + log_factorial(mq) - log_factorial(top) -
                                             log_factorial(np - top) - log_factorial(mq - top);
                    if (log_start == -std::numeric_limits<double>::infinity()) {
                        continue;
                    }
                    double term = 1.0;
                    double inner = 1.0;
                    double log_offset = 0.0;
                    for (int j = top; j >= 1; --j) {
                        term *= wg2 * j / (static_cast<double>(np - j + 1) * static_cast<double>(mq - j + 1));
                        inner += term;
                        if (inner > kBig) {
                            inner /= kBig;
                            term /= kBig;
                            log_offset += std::log(kBig);
                        }
                    }
                    const int sign = ((s + p + q) % 2 == 0) ? 1 : -1;
                    const double lt = log_mn + log_binomial(m, p) + log_binomial(n, q) - (p + q) * log_g2p1 +
                                      log_start + log_offset + std::log(inner);
                    diag.add_log(lt, sign);
                    magnitude.add_log(lt, 1);
                }
            }
        }
        total.add(diag.result());
        const double diag_abs = diag.abs_value() * std::exp(log_prefactor);
        result.truncation_used = s;
        if (diag_abs == 0.0) {
            continue;
        }
        if (prev_abs > 0.0) {
            const double rho = diag_abs / prev_abs;
            if (rho < 0.5) {
                const double tail = diag_abs * rho / (1.0 - rho);
                if (diag_abs < tol && tail < tol) {
                    result.tail_estimate = tail;
                    const double rounding = kEpsilon * magnitude.value() * std::exp(log_prefactor);
                    if (rounding > tol) {
                        throw ConvergenceError("avg_fidelity_series: cancellation limits accuracy to about " +
                                               std::to_string(rounding) + "; loosen tol or use quadrature");
                    }
                    const double value = total.value() * std::exp(log_prefactor);
                    result.value = checked_fidelity(value, tol, "avg_fidelity_series");
                    return result;
                }
            }
        }
        prev_abs = diag_abs;
    }
    throw ConvergenceError("avg_fidelity_series: no convergence within " + std::to_string(kSeriesDiagonalCap) +
                           " diagonals");
}

FidelityResult avg_fidelity_g1_series(double zeta, double tol) {
    require_series_args(0.0, zeta, 1.0, tol, "avg_fidelity_g1_series");
    FidelityResult result;
    result.method = FidelityMethod::g1_series;
    const double log_pre = -std::log(2.0) - log_bessel_i0(2.0 * zeta);
    if (zeta == 0.0) {
        result.value = 0.5;
        return result;
    }
    const double lz2 = std::log(0.5 * zeta);
    SignedLogSum total;
    double prev = 0.0;
    for (int s = 0; s <= kSeriesDiagonalCap; ++s) {
        // (zeta/2)^s s! sum_m 1 / (m! (s-m)!)^2
        SignedLogSum inner;
        for (int m = 0; m <= s; ++m) {
            inner.add_log(-2.0 * (log_factorial(m) + log_factorial(s - m)), 1);
        }
        const double lt = s * lz2 + log_factorial(s) + inner.result().log_abs + log_pre;
        total.add_log(lt, 1);
        const double term = std::exp(lt);
        result.truncation_used = s;
        if (s > 2.0 * zeta && prev > 0.0) {
            const double rho = term / prev;
            if (rho < 1.0) {
                const double tail = term * rho / (1.0 - rho);
                if (term < tol && tail < tol) {
                    result.tail_estimate = tail;
                    result.value = checked_fidelity(total.value(), tol, "avg_fidelity_g1_series");
                    return result;
                }
            }
        }
        prev = term;
    }
    throw ConvergenceError("avg_fidelity_g1_series: no convergence within " + std::to_string(kSeriesDiagonalCap) +
                           " diagonals");
}

FidelityResult avg_fidelity_quadrature(const TeleportScenario &scenario) {
    validate(scenario);
    const TransferKernel kernel(scenario.channel, scenario.input_alpha);
    const auto nodes = scenario_disk(scenario);
    const int outer = scenario.quad.radial_nodes - 1;
    double integral = 0.0;
    double outer_ring = 0.0;
    for (const auto &node : nodes) {
        // F(A) P(A) = |<alpha| D(2gA) |psi_t(A)>|^2, no division by P(A).
        const auto psi = kernel.apply(node.z);
        const double v = node.weight * std::norm(kernel.reconstruct_overlap(node.z, scenario.gain, psi));
        integral += v;
        if (node.ring == outer) {
            outer_ring += v;
        }
    }
    FidelityResult result;
    result.method = FidelityMethod::quadrature;
    result.truncation_used = truncation_of(scenario.channel);
    result.tail_estimate = kernel.tail();
    result.quad_residual = std::abs(outer_ring);
    const double tol = scenario.series_tol;
    if (result.quad_residual > 10.0 * tol) {
        const double radius = scenario.quad.radius > 0.0
                                  ? scenario.quad.radius
                                  : default_disk_radius(scenario.input_alpha, scenario.channel);
        throw ResolutionError("avg_fidelity_quadrature: outermost ring carries " + std::to_string(result.quad_residual) +
                                  "; enlarge the disk or add nodes",
                              1.5 * radius, 2 * scenario.quad.radial_nodes);
    }
    result.value = checked_fidelity(integral, tol, "avg_fidelity_quadrature");
    return result;
}

double tmsv_unit_gain_fidelity(double r) {
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("tmsv_unit_gain_fidelity: r must be finite and >= 0");
    }
    return 1.0 / (1.0 + std::exp(-2.0 * r));
}

}  // namespace pcteleport
