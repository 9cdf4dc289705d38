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

#include <cmath>

#include "pcteleport/errors.hpp"
#include "pcteleport/teleport.hpp"

namespace pt = pcteleport;
using pt::complex;

namespace {

pt::FidelityResult quadrature_fidelity(complex alpha, const pt::Channel &channel, double gain) {
    pt::TeleportScenario s;
    s.input_alpha = alpha;
    s.channel = channel;
    s.gain = gain;
    return pt::avg_fidelity_quadrature(s);
}

}  // namespace

TEST(Transfer, CircleFormMatchesDiagonalForm) {
    for (const double zeta : {0.3, 1.0, 2.0}) {
        for (const complex a : {complex(0.0, 0.0), complex(0.4, -0.3), complex(-1.0, 0.8)}) {
            const pt::PairCoherentState pc(zeta);
            const complex alpha(0.7, 0.2);
            const auto diag = pt::transfer_apply(pc, a, alpha);
            const auto circ = pt::transfer_apply_circle(pc, a, alpha);
            ASSERT_EQ(diag.size(), circ.size());
            for (std::size_t n = 0; n < diag.size(); ++n) {
                EXPECT_LT(std::abs(diag[n] - circ[n]), 1e-10) << "zeta=" << zeta << " n=" << n;
            }
        }
    }
}

TEST(Transfer, MeasurementDensityIntegratesToOne) {
    for (const double zeta : {0.0, 1.0, 2.5}) {
        for (const complex alpha : {complex(0.0, 0.0), complex(1.0, 1.0), complex(-2.0, 0.5)}) {
            pt::TeleportScenario s;
            s.input_alpha = alpha;
            s.channel = pt::PairCoherentState(zeta);
            const auto integral = pt::integrate_measurement_density(s);
            EXPECT_NEAR(integral.value, 1.0, 1e-8) << "zeta=" << zeta;
            EXPECT_LT(std::abs(integral.outer_ring), 1e-10);
        }
    }
}

TEST(Transfer, VacuumChannelDensityPeaksAtHalfInput) {
    const pt::PairCoherentState vacuum(0.0);
    const complex alpha(1.2, -0.6);
    const double peak = pt::measurement_density(vacuum, alpha / 2.0, alpha);
    for (const complex d : {complex(0.2, 0.0), complex(0.0, -0.2), complex(-0.15, 0.15)}) {
        EXPECT_LT(pt::measurement_density(vacuum, alpha / 2.0 + d, alpha), peak);
    }
    // Vacuum channel: (4/pi) |<0|alpha - 2A>|^2 = (4/pi) exp(-4|A - alpha/2|^2).
    const complex a(0.3, 0.1);
    EXPECT_NEAR(pt::measurement_density(vacuum, a, alpha), 4.0 / M_PI * std::exp(-4.0 * std::norm(a - alpha / 2.0)),
                1e-14);
}

TEST(Series, VacuumChannelClosedForm) {
    for (const double alpha : {0.0, 1.0, 2.5}) {
        for (const double g : {0.0, 0.6, 1.0, 1.4}) {
            const double expected = std::exp(-(g - 1.0) * (g - 1.0) * alpha * alpha / (1.0 + g * g)) / (1.0 + g * g);
            EXPECT_NEAR(pt::avg_fidelity_series(alpha, 0.0, g).value, expected, 1e-14);
        }
    }
    EXPECT_NEAR(pt::avg_fidelity_series(1.0, 0.0, 1.0).value, 0.5, 1e-15);
}

TEST(Series, AgreesWithDirectQuadrature) {
    const struct {
        double alpha, zeta, gain;
    } cases[] = {{0.0, 1.0, 0.6}, {1.0, 0.5, 0.8}, {2.0, 2.0, 1.0}, {1.5, 1.2357, 0.9}, {3.0, 1.0, 1.2}};
    for (const auto &c : cases) {
        const double series = pt::avg_fidelity_series(c.alpha, c.zeta, c.gain).value;
        const auto quad = quadrature_fidelity(complex(c.alpha, 0.0), pt::PairCoherentState(c.zeta), c.gain);
        EXPECT_NEAR(series, quad.value, 1e-8) << c.alpha << " " << c.zeta << " " << c.gain;
    }
}

TEST(Series, UnitGainIsInputIndependentAndMatchesReduction) {
    for (const double zeta : {0.3, 1.2357, 2.5}) {
        const double g1 = pt::avg_fidelity_g1_series(zeta).value;
        for (const double alpha : {0.0, 1.0, 3.0, 5.0}) {
            EXPECT_NEAR(pt::avg_fidelity_series(alpha, zeta, 1.0).value, g1, 1e-12);
        }
    }
}

TEST(Series, DependsOnlyOnInputModulus) {
    const double mod = 1.3;
    const double series = pt::avg_fidelity_series(mod, 0.9, 0.75).value;
    for (const double phase : {0.0, 1.0, 2.5, -2.0}) {
        const complex alpha = std::polar(mod, phase);
        EXPECT_NEAR(quadrature_fidelity(alpha, pt::PairCoherentState(0.9), 0.75).value, series, 1e-8);
    }
}

TEST(Series, ConjugateInputGivesSameFidelity) {
    const complex alpha(0.8, 1.1);
    const double a = quadrature_fidelity(alpha, pt::PairCoherentState(1.4), 0.85).value;
    const double b = quadrature_fidelity(std::conj(alpha), pt::PairCoherentState(1.4), 0.85).value;
    EXPECT_NEAR(a, b, 1e-10);
}

TEST(Series, StaysInUnitInterval) {
    for (const double alpha : {0.0, 0.5, 2.0, 5.0}) {
        for (const double zeta : {0.0, 0.2, 1.0, 3.0, 4.0}) {
            for (const double g : {0.0, 0.5, 1.0, 1.5}) {
                const double f = pt::avg_fidelity_series(alpha, zeta, g, 1e-10).value;
                EXPECT_GE(f, 0.0);
                EXPECT_LE(f, 1.0);
            }
        }
    }
}

TEST(Series, ReportsCancellationInsteadOfGarbage) {
    EXPECT_THROW(pt::avg_fidelity_series(5.0, 6.0, 2.0, 1e-8), pt::ConvergenceError);
    EXPECT_THROW(pt::avg_fidelity_series(5.0, 6.0, 2.0, 1e-3), pt::ConvergenceError);
}

TEST(Series, UnitGainMaximumValue) {
    EXPECT_NEAR(pt::avg_fidelity_g1_series(0.0).value, 0.5, 1e-15);
    EXPECT_NEAR(pt::avg_fidelity_g1_series(1.2357).value, 0.75884, 1e-5);
}

TEST(Series, RejectsBadArguments) {
    EXPECT_THROW(pt::avg_fidelity_series(-1.0, 1.0, 1.0), pt::DomainError);
    EXPECT_THROW(pt::avg_fidelity_series(1.0, -1.0, 1.0), pt::DomainError);
    EXPECT_THROW(pt::avg_fidelity_series(1.0, 1.0, -0.1), pt::DomainError);
    EXPECT_THROW(pt::avg_fidelity_g1_series(std::nan("")), pt::DomainError);
}

TEST(Squeezed, UnitGainClosedFormAgainstQuadrature) {
    for (const double r : {0.0, 0.5, 1.0}) {
        const auto q = quadrature_fidelity(complex(1.0, -0.5), pt::TwoModeSqueezedState(r), 1.0);
        EXPECT_NEAR(q.value, pt::tmsv_unit_gain_fidelity(r), 1e-6) << "r=" << r;
    }
    EXPECT_NEAR(pt::tmsv_unit_gain_fidelity(0.0), 0.5, 1e-15);
}

TEST(Scenario, ValidationRejectsLooseTolerance) {
    pt::TeleportScenario s;
    s.series_tol = 1e-3;
    EXPECT_THROW(pt::validate(s), pt::DomainError);
    s.series_tol = 1e-8;
    s.gain = -1.0;
    EXPECT_THROW(pt::validate(s), pt::DomainError);
}

TEST(Scenario, UnderResolvedDiskIsReported) {
    pt::TeleportScenario s;
    s.input_alpha = complex(2.0, 0.0);
    s.channel = pt::PairCoherentState(1.0);
    s.quad.radius = 1.0;
    EXPECT_THROW(pt::avg_fidelity_quadrature(s), pt::ResolutionError);
}
