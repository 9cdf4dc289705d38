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

/// Scalar special functions used by the fidelity and Wigner formulas.
///
/// Products of factorials, binomials and powers are assembled in log space
/// with an explicit sign, since the fidelity series alternates and its
/// factorial ratios overflow doubles long before the series converges.

#ifndef PCTELEPORT_SPECFN_HPP
#define PCTELEPORT_SPECFN_HPP

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace pcteleport {

using complex = std::complex<double>;

/// A real number stored as sign * exp(log_abs). Zero is sign == 0.
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static SignedLog zero() { return {}; }
    static SignedLog from_value(double v);
    double value() const;
    SignedLog operator*(const SignedLog &o) const;
};

/// Running sum of SignedLog terms, kept relative to the largest magnitude seen.
class SignedLogSum {
   public:
    void add(const SignedLog &term);
    void add_log(double log_abs, int sign) { add(SignedLog{log_abs, sign}); }
    SignedLog result() const;
    double value() const { return result().value(); }
    /// Sum of |term|, in the same scale; useful for tail and cancellation estimates.
    double abs_value() const;

   private:
    double scale_ = -std::numeric_limits<double>::infinity();
    double acc_ = 0.0;
    double abs_acc_ = 0.0;
};

/// ln(n!) for n in [0, cap], built once.
class LogFactorialTable {
   public:
    static constexpr int kDefaultCap = 512;

    explicit LogFactorialTable(int cap = kDefaultCap);
    int cap() const { return static_cast<int>(values_.size()) - 1; }
    double operator[](int n) const { return values_[static_cast<std::size_t>(n)]; }
    const std::vector<double> &values() const { return values_; }

    /// Shared immutable instance with the default cap.
    static const LogFactorialTable &instance();

   private:
    std::vector<double> values_;
};

/// ln(n!); table lookup up to the cap, lgamma beyond.
double log_factorial(int n);
/// ln C(n, k) for 0 <= k <= n.
double log_binomial(int n, int k);
/// k * ln(base) with the convention 0^0 = 1 (returns -inf for 0^k, k > 0).
double log_pow(double base, int k);

/// Modified Bessel function I0(x), x >= 0, relative error <= 1e-12.
double bessel_i0(double x);
/// ln I0(x), finite for all finite x >= 0.
double log_bessel_i0(double x);

/// 2F0(-m, -n;; z) = sum_{k=0}^{min(m,n)} (-m)_k (-n)_k z^k / k!, a terminating sum.
double hyper2f0_finite(int m, int n, double z);

/// x^(m+n) * 2F0(-m, -n;; -1/x^2) with the negative powers of x cancelled
/// term by term, so x = 0 is evaluated as the limit.
SignedLog scaled_hyper2f0(int m, int n, double x);

/// <m| D(beta) |n> with D(beta) = exp(beta a^dag - conj(beta) a).
complex displaced_fock_overlap(int m, int n, complex beta);

/// Dense block of displacement matrix elements <m|D(beta)|n>, m < rows, n < cols.
class DisplacementBlock {
   public:
    DisplacementBlock(complex beta, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    complex operator()(int m, int n) const { return data_[static_cast<std::size_t>(m * cols_ + n)]; }

   private:
    int rows_;
    int cols_;
    std::vector<complex> data_;
};

/// Fock amplitudes <n|alpha> of a coherent state, n < size.
std::vector<complex> coherent_amplitudes(complex alpha, int size);

/// Smallest Fock cutoff whose coherent-state tail weight is negligible (< ~1e-16).
int coherent_support(double alpha_abs);

}  // namespace pcteleport

#endif
