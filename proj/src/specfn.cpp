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

#include "pcteleport/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pcteleport/errors.hpp"

namespace pcteleport {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Rescaling threshold for recurrences carried in plain doubles.
constexpr double kBig = 1e200;
const double kLogBig = std::log(kBig);

void require_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

void require_nonnegative_index(int n, const char *what) {
    if (n < 0) {
        throw DomainError(std::string(what) + ": negative index " + std::to_string(n));
    }
}

// Power series for I0 carried in log space relative to `shift`:
// returns sum_k exp(ln t_k - shift), t_k = (x/2)^{2k} / (k!)^2.
// Power series sum_k (x/2)^{2k} / (k!)^2, for moderate x.
double bessel_i0_power_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1;; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-17 * sum) {
            break;
        }
    }
    return sum;
}

// e^{-x} sqrt(2 pi x) I0(x) from the large-argument expansion
// sum_k ((2k-1)!!)^2 / (k! (8x)^k), truncated at its smallest term.
double bessel_i0_asymptotic_factor(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * x * k);
        if (next >= term || next < 1e-17 * sum) {
            break;
        }
        term = next;
        sum += term;
    }
    return sum;
}

constexpr double kBesselAsymptoticFrom = 50.0;

}  // namespace

SignedLog SignedLog::from_value(double v) {
    if (v == 0.0) {
        return {};
    }
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

double SignedLog::value() const {
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::exp(log_abs);
}

SignedLog SignedLog::operator*(const SignedLog &o) const {
    if (sign == 0 || o.sign == 0) {
        return {};
    }
    return {log_abs + o.log_abs, sign * o.sign};
}

void SignedLogSum::add(const SignedLog &term) {
    if (term.sign == 0 || term.log_abs == kNegInf) {
        return;
    }
    if (term.log_abs > scale_) {
        const double r = std::exp(scale_ - term.log_abs);
        acc_ *= r;
        abs_acc_ *= r;
        scale_ = term.log_abs;
    }
    const double mag = std::exp(term.log_abs - scale_);
    acc_ += term.sign * mag;
    abs_acc_ += mag;
}

SignedLog SignedLogSum::result() const {
    if (acc_ == 0.0) {
        return {};
    }
    return {scale_ + std::log(std::abs(acc_)), acc_ > 0 ? 1 : -1};
}

double SignedLogSum::abs_value() const {
    if (abs_acc_ == 0.0) {
        return 0.0;
    }
    return std::exp(scale_ + std::log(abs_acc_));
}

LogFactorialTable::LogFactorialTable(int cap) {
    if (cap < 0) {
        throw DomainError("LogFactorialTable: negative cap");
    }
    values_.resize(static_cast<std::size_t>(cap) + 1);
    values_[0] = 0.0;
    for (int n = 1; n <= cap; ++n) {
        values_[static_cast<std::size_t>(n)] = values_[static_cast<std::size_t>(n - 1)] + std::log(static_cast<double>(n));
    }
}

const LogFactorialTable &LogFactorialTable::instance() {
    static const LogFactorialTable table;
    return table;
}

double log_factorial(int n) {
    require_nonnegative_index(n, "log_factorial");
    const auto &table = LogFactorialTable::instance();
    if (n <= table.cap()) {
        return table[n];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        throw DomainError("log_binomial: k outside [0, n]");
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_pow(double base, int k) {
    if (k == 0) {
        return 0.0;
    }
    if (base == 0.0) {
        return kNegInf;
    }
    return k * std::log(std::abs(base));
}

double bessel_i0(double x) {
    require_finite(x, "bessel_i0");
    if (x < 0.0) {
        throw DomainError("bessel_i0: negative argument");
    }
    if (x < kBesselAsymptoticFrom) {
        return bessel_i0_power_series(x);
    }
    if (x <= 700.0) {
        return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * bessel_i0_asymptotic_factor(x);
    }
    return std::exp(log_bessel_i0(x));
}

double log_bessel_i0(double x) {
    require_finite(x, "log_bessel_i0");
    if (x < 0.0) {
        throw DomainError("log_bessel_i0: negative argument");
    }
    if (x < kBesselAsymptoticFrom) {
        return std::log(bessel_i0_power_series(x));
    }
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(bessel_i0_asymptotic_factor(x));
}

double hyper2f0_finite(int m, int n, double z) {
    require_nonnegative_index(m, "hyper2f0_finite");
    require_nonnegative_index(n, "hyper2f0_finite");
    require_finite(z, "hyper2f0_finite");
    if (z == 0.0 || m == 0 || n == 0) {
        return 1.0;
    }
    // (-m)_k (-n)_k / k! = m! n! / ((m-k)! (n-k)! k!) > 0.
    const double lz = std::log(std::abs(z));
    SignedLogSum sum;
    const int top = std::min(m, n);
    for (int k = 0; k <= top; ++k) {
        const double lc = log_factorial(m) + log_factorial(n) - log_factorial(m - k) - log_factorial(n - k) - log_factorial(k);
        const int sign = (z < 0.0 && (k % 2 == 1)) ? -1 : 1;
        sum.add_log(lc + k * lz, sign);
    }
    return sum.value();
}

SignedLog scaled_hyper2f0(int m, int n, double x) {
    require_nonnegative_index(m, "scaled_hyper2f0");
    require_nonnegative_index(n, "scaled_hyper2f0");
    require_finite(x, "scaled_hyper2f0");
    x = std::abs(x);
    // Terms c_k = m! n! / ((m-k)! (n-k)! k!) (-1)^k x^{m+n-2k}; start from the
    // lowest power of x (k = top) and walk down with the exact term ratio.
    const int top = std::min(m, n);
    const double log_start = log_factorial(m) + log_factorial(n) - log_factorial(m - top) - log_factorial(n - top) -
                             log_factorial(top) + log_pow(x, m + n - 2 * top);
    if (log_start == kNegInf) {
        return SignedLog::zero();
    }
    const int start_sign = (top % 2 == 0) ? 1 : -1;
    const double x2 = x * x;
    double term = 1.0;
    double sum = 1.0;
    double log_offset = 0.0;
    for (int k = top; k >= 1; --k) {
        term *= -static_cast<double>(k) * x2 / (static_cast<double>(m - k + 1) * static_cast<double>(n - k + 1));
        sum += term;
        if (std::abs(term) > kBig || std::abs(sum) > kBig) {
            term /= kBig;
            sum /= kBig;
            log_offset += kLogBig;
        }
    }
    if (sum == 0.0) {
        return SignedLog::zero();
    }
    return {log_start + log_offset + std::log(std::abs(sum)), start_sign * (sum > 0 ? 1 : -1)};
}

namespace {

// Fills one diagonal of the displacement matrix: offset k = |m - n| >= 0,
// j = min(m, n) in [0, j_max]. `lower` selects m >= n.
template <typename Store>
void displacement_diagonal(complex beta, int k, int j_max, bool lower, Store &&store) {
    const double x = std::norm(beta);
    const double abs_beta = std::sqrt(x);
    // beta^k for m >= n, (-conj beta)^k for m < n.
    const complex unit = abs_beta > 0.0 ? beta / abs_beta : complex(1.0, 0.0);
    const complex phase = lower ? std::pow(unit, k) : std::pow(-std::conj(unit), k);
    const double log_beta_k = log_pow(abs_beta, k);
    if (log_beta_k == kNegInf) {
        for (int j = 0; j <= j_max; ++j) {
            store(j, complex(0.0, 0.0));
        }
        return;
    }
    // Laguerre L_j^{(k)}(x) by forward recurrence, rescaled to stay finite.
    double l_prev = 0.0;
    double l_cur = 1.0;
    double log_scale = 0.0;
    for (int j = 0; j <= j_max; ++j) {
        if (j == 1) {
            l_prev = l_cur;
            l_cur = (1.0 + k - x) * std::exp(-log_scale);
        } else if (j >= 2) {
            const double next = ((2.0 * (j - 1) + 1.0 + k - x) * l_cur - ((j - 1) + k) * l_prev) / j;
            l_prev = l_cur;
            l_cur = next;
        }
        if (std::abs(l_cur) > kBig) {
            l_cur /= kBig;
            l_prev /= kBig;
            log_scale += kLogBig;
        }
        const double log_mag = 0.5 * (log_factorial(j) - log_factorial(j + k)) + log_beta_k - 0.5 * x + log_scale;
        store(j, phase * (l_cur * std::exp(log_mag)));
    }
}

}  // namespace

complex displaced_fock_overlap(int m, int n, complex beta) {
    require_nonnegative_index(m, "displaced_fock_overlap");
    require_nonnegative_index(n, "displaced_fock_overlap");
    require_finite(beta.real(), "displaced_fock_overlap");
    require_finite(beta.imag(), "displaced_fock_overlap");
    const bool lower = m >= n;
    const int k = lower ? m - n : n - m;
    const int j_target = std::min(m, n);
    complex out;
    displacement_diagonal(beta, k, j_target, lower, [&](int j, complex v) {
        if (j == j_target) {
            out = v;
        }
    });
    return out;
}

DisplacementBlock::DisplacementBlock(complex beta, int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) {
        throw DomainError("DisplacementBlock: negative size");
    }
    require_finite(beta.real(), "DisplacementBlock");
    require_finite(beta.imag(), "DisplacementBlock");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), complex(0.0, 0.0));
    // m >= n diagonals
    for (int k = 0; k < rows; ++k) {
        const int j_max = std::min(rows - 1 - k, cols - 1);
        if (j_max < 0) {
            continue;
        }
        displacement_diagonal(beta, k, j_max, true, [&](int j, complex v) {
            data_[static_cast<std::size_t>((j + k) * cols_ + j)] = v;
        });
    }
    // m < n diagonals
    for (int k = 1; k < cols; ++k) {
        const int j_max = std::min(rows - 1, cols - 1 - k);
        if (j_max < 0) {
            continue;
        }
        displacement_diagonal(beta, k, j_max, false, [&](int j, complex v) {
            data_[static_cast<std::size_t>(j * cols_ + j + k)] = v;
        });
    }
}

std::vector<complex> coherent_amplitudes(complex alpha, int size) {
    require_finite(alpha.real(), "coherent_amplitudes");
    require_finite(alpha.imag(), "coherent_amplitudes");
    std::vector<complex> out(static_cast<std::size_t>(std::max(size, 0)));
    const double r = std::abs(alpha);
    const double arg = std::arg(alpha);
    for (int n = 0; n < size; ++n) {
        const double log_mag = -0.5 * r * r + log_pow(r, n) - 0.5 * log_factorial(n);
        out[static_cast<std::size_t>(n)] = std::polar(std::exp(log_mag), n * arg);
    }
    return out;
}

int coherent_support(double alpha_abs) {
    require_finite(alpha_abs, "coherent_support");
    const double a = std::abs(alpha_abs);
    return static_cast<int>(std::ceil(a * a + 8.0 * a + 20.0));
}

}  // namespace pcteleport
