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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "pcteleport/errors.hpp"
#include "pcteleport/specfn.hpp"

namespace pt = pcteleport;
using pt::complex;

namespace {

// exp(beta a^dag - conj(beta) a) on a truncated Fock space.
Eigen::MatrixXcd dense_displacement(complex beta, int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
    return gen.exp();
}

}  // namespace

TEST(BesselI0, MatchesStandardLibrary) {
    for (const double x : {0.0, 1e-3, 0.5, 1.0, 2.0, 2.4714, 7.5, 30.0, 300.0}) {
        const double expected = std::cyl_bessel_i(0.0, x);
        EXPECT_NEAR(pt::bessel_i0(x), expected, 1e-13 * expected) << "x=" << x;
    }
}

TEST(BesselI0, LogFormLargeArgumentAsymptotics) {
    for (const double x : {800.0, 5000.0, 1e6}) {
        const double expected = x - 0.5 * std::log(2.0 * M_PI * x) +
                                std::log1p(1.0 / (8.0 * x) + 9.0 / (128.0 * x * x) + 225.0 / (3072.0 * x * x * x));
        EXPECT_NEAR(pt::log_bessel_i0(x), expected, 1e-11 * x) << "x=" << x;
    }
    EXPECT_NEAR(pt::log_bessel_i0(2.0), std::log(std::cyl_bessel_i(0.0, 2.0)), 1e-14);
}

TEST(BesselI0, MonotoneOnAGrid) {
    double prev = pt::bessel_i0(0.0);
    EXPECT_EQ(prev, 1.0);
    for (int i = 1; i <= 400; ++i) {
        const double v = pt::bessel_i0(0.05 * i);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Factorials, LogFactorialAgreesWithLgamma) {
    for (const int n : {0, 1, 2, 10, 170, 511, 512, 2000}) {
        EXPECT_NEAR(pt::log_factorial(n), std::lgamma(n + 1.0), 1e-12 * (1.0 + std::lgamma(n + 1.0)));
    }
    EXPECT_NEAR(std::exp(pt::log_binomial(10, 3)), 120.0, 1e-10);
    EXPECT_EQ(pt::log_pow(0.0, 0), 0.0);
    EXPECT_EQ(pt::log_pow(0.0, 3), -std::numeric_limits<double>::infinity());
}

TEST(SignedLogSum, CancelsExactly) {
    pt::SignedLogSum sum;
    sum.add(pt::SignedLog::from_value(3.5));
    sum.add(pt::SignedLog::from_value(-1.25));
    sum.add(pt::SignedLog::from_value(-2.0));
    EXPECT_NEAR(sum.value(), 0.25, 1e-15);
    EXPECT_EQ(pt::SignedLogSum{}.value(), 0.0);
}

TEST(Hyper2F0, TerminatingRationalValue) {
    // 1 + 6z + 6z^2 at z = -0.7.
    EXPECT_NEAR(pt::hyper2f0_finite(3, 2, -0.7), -0.26, 1e-14);
    EXPECT_EQ(pt::hyper2f0_finite(0, 5, 2.0), 1.0);
}

TEST(Hyper2F0, ScaledFormMatchesDirectProduct) {
    for (const auto &[m, n] : {std::pair{4, 3}, std::pair{0, 6}, std::pair{7, 7}, std::pair{10, 2}}) {
        for (const double x : {0.3, 0.8, 1.7}) {
            const double direct = std::pow(x, m + n) * pt::hyper2f0_finite(m, n, -1.0 / (x * x));
            const double scaled = pt::scaled_hyper2f0(m, n, x).value();
            EXPECT_NEAR(scaled, direct, 1e-11 * std::max(1.0, std::abs(direct))) << m << "," << n << " x=" << x;
        }
    }
    // At x = 0 only the k = min(m, n) term survives: (-1)^k m! n! / (k! (m-k)! (n-k)!) x^{|m-n|}.
    EXPECT_NEAR(pt::scaled_hyper2f0(3, 3, 0.0).value(), -6.0, 1e-12);
    EXPECT_EQ(pt::scaled_hyper2f0(3, 4, 0.0).value(), 0.0);
}

TEST(Displacement, MatchesDenseMatrixExponential) {
    const int dim = 60;
    const complex beta(0.5, 0.1);
    const Eigen::MatrixXcd d = dense_displacement(beta, dim);
    EXPECT_LT(std::abs(pt::displaced_fock_overlap(2, 3, beta) - d(2, 3)), 1e-13);
    for (int m = 0; m < 20; ++m) {
        for (int n = 0; n < 20; ++n) {
            EXPECT_LT(std::abs(pt::displaced_fock_overlap(m, n, beta) - d(m, n)), 1e-12) << m << "," << n;
        }
    }
}

TEST(Displacement, LargeArgumentAgainstDenseExponential) {
    const complex beta(-1.8, 2.3);
    const Eigen::MatrixXcd d = dense_displacement(beta, 160);
    const pt::DisplacementBlock block(beta, 30, 30);
    for (int m = 0; m < 30; ++m) {
        for (int n = 0; n < 30; ++n) {
            EXPECT_LT(std::abs(block(m, n) - d(m, n)), 1e-11) << m << "," << n;
        }
    }
}

TEST(Displacement, ColumnsAreNormalized) {
    const complex beta(1.5, -0.4);
    const pt::DisplacementBlock block(beta, 200, 12);
    for (int n = 0; n < 12; ++n) {
        double norm = 0.0;
        for (int k = 0; k < 200; ++k) {
            norm += std::norm(block(k, n));
        }
        EXPECT_NEAR(norm, 1.0, 1e-12);
    }
}

TEST(Displacement, AdjointSymmetry) {
    const complex beta(0.7, -1.1);
    for (int m = 0; m < 15; ++m) {
        for (int n = 0; n < 15; ++n) {
            const complex lhs = pt::displaced_fock_overlap(m, n, beta);
            const complex rhs = std::conj(pt::displaced_fock_overlap(n, m, -beta));
            EXPECT_LT(std::abs(lhs - rhs), 1e-14);
        }
    }
}

TEST(Coherent, AmplitudesAreFirstDisplacementColumn) {
    const complex alpha(1.2, 0.9);
    const auto amps = pt::coherent_amplitudes(alpha, 40);
    double norm = 0.0;
    for (int n = 0; n < 40; ++n) {
        EXPECT_LT(std::abs(amps[static_cast<std::size_t>(n)] - pt::displaced_fock_overlap(n, 0, alpha)), 1e-14);
        norm += std::norm(amps[static_cast<std::size_t>(n)]);
    }
    EXPECT_NEAR(norm, 1.0, 1e-14);
    EXPECT_GE(pt::coherent_support(5.0), 25);
}
