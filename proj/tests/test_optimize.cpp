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

#include "pcteleport/optimize.hpp"

namespace pt = pcteleport;

TEST(Golden, FindsInteriorAndBoundaryMaxima) {
    const auto inner = pt::golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 2.0, 1e-9);
    EXPECT_NEAR(inner.x, 0.3, 1e-8);
    const auto edge = pt::golden_section_maximize([](double x) { return x; }, 0.0, 1.0, 1e-9);
    EXPECT_EQ(edge.x, 1.0);
    EXPECT_THROW(pt::golden_section_maximize([](double x) { return x; }, 1.0, 0.0, 1e-9), pt::DomainError);
}

TEST(UnitGainOptimum, LocatesMaximum) {
    const auto opt = pt::optimize_zeta_at_unit_gain(3.0);
    EXPECT_NEAR(opt.zeta, 1.2357, 2e-4);
    EXPECT_NEAR(opt.value, 0.75884, 1e-5);
    EXPECT_EQ(opt.shape, pt::ScanShape::unimodal);
    EXPECT_EQ(opt.scan.size(), 50u);
}

TEST(UnitGainOptimum, MonotoneBracketReturnsBoundary) {
    const auto opt = pt::optimize_zeta_at_unit_gain(0.1);
    EXPECT_EQ(opt.zeta, 0.1);
    EXPECT_EQ(opt.shape, pt::ScanShape::monotone_increasing);
    EXPECT_NEAR(opt.value, pt::avg_fidelity_g1_series(0.1).value, 1e-10);
}

TEST(GainOptimum, VacuumInputMatchesGridArgmax) {
    const auto opt = pt::optimize_gain_and_zeta(0.0);
    const pt::GainZetaBounds b;
    const double dg = (b.gain_hi - b.gain_lo) / 99.0;
    const double dz = (b.zeta_hi - b.zeta_lo) / 99.0;
    double best = -1.0;
    double bg = 0.0;
    double bz = 0.0;
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const double g = b.gain_lo + dg * i;
            const double z = b.zeta_lo + dz * j;
            const double f = pt::avg_fidelity_series(0.0, z, g).value;
            if (f > best) {
                best = f;
                bg = g;
                bz = z;
            }
        }
    }
    EXPECT_EQ(bg, 0.0);
    EXPECT_EQ(bz, 0.0);
    EXPECT_LE(std::abs(opt.gain - bg), dg);
    EXPECT_LE(std::abs(opt.zeta - bz), dz);
    EXPECT_GE(opt.value, best - 1e-9);
}

TEST(GainOptimum, GainApproachesOneForLargeInputs) {
    const auto o1 = pt::optimize_gain_and_zeta(1.0);
    const auto o3 = pt::optimize_gain_and_zeta(3.0);
    const auto o5 = pt::optimize_gain_and_zeta(5.0);
    EXPECT_LE(o1.gain, o3.gain);
    EXPECT_LE(o3.gain, o5.gain);
    EXPECT_LT(o5.gain, 1.0);
    EXPECT_GT(o5.gain, 0.9);
    EXPECT_NEAR(o5.zeta, 1.2357, 0.05);
    for (const auto *o : {&o1, &o3, &o5}) {
        EXPECT_GE(o->value, pt::avg_fidelity_g1_series(o->zeta).value - 1e-12);
    }
}

TEST(Scan, ZetaAxisShapeAndOrder) {
    pt::ScanRequest req;
    req.axes = {{pt::AxisName::zeta, 0.0, 2.0, 3}};
    req.method = pt::FidelityMethod::g1_series;
    const auto grid = pt::scan(req);
    ASSERT_EQ(grid.points.size(), 3u);
    EXPECT_EQ(grid.points[0].coords[0], 0.0);
    EXPECT_EQ(grid.points[1].coords[0], 1.0);
    EXPECT_EQ(grid.points[2].coords[0], 2.0);
    EXPECT_NEAR(grid.points[0].result.value, 0.5, 1e-15);
    ASSERT_TRUE(grid.argmax.has_value());
    EXPECT_EQ(grid.argmax->index, 1u);
}

TEST(Scan, LastAxisVariesFastest) {
    pt::ScanRequest req;
    req.axes = {{pt::AxisName::alpha_abs, 0.0, 1.0, 2}, {pt::AxisName::gain, 0.5, 1.0, 3}};
    req.zeta = 1.0;
    const auto grid = pt::scan(req);
    ASSERT_EQ(grid.points.size(), 6u);
    EXPECT_EQ(grid.points[1].coords, (std::vector<double>{0.0, 0.75}));
    EXPECT_EQ(grid.points[3].coords, (std::vector<double>{1.0, 0.5}));
    EXPECT_EQ(grid.points[5].result.value, pt::avg_fidelity_series(1.0, 1.0, 1.0, req.tol).value);
}

TEST(Scan, PerPointFailuresAreRecorded) {
    pt::ScanRequest req;
    req.axes = {{pt::AxisName::gain, 0.5, 1.0, 2}};
    req.method = pt::FidelityMethod::g1_series;
    const auto grid = pt::scan(req);
    EXPECT_TRUE(std::isnan(grid.points[0].result.value));
    EXPECT_FALSE(grid.points[0].error.empty());
    EXPECT_TRUE(grid.points[1].error.empty());
    EXPECT_EQ(grid.argmax->index, 1u);
}

TEST(Scan, ExtraColumns) {
    pt::ScanRequest req;
    req.axes = {{pt::AxisName::zeta, 0.0, 1.0, 2}};
    req.method = pt::FidelityMethod::g1_series;
    req.extras = {pt::ExtraColumn::tmsv, pt::ExtraColumn::smeared};
    const auto grid = pt::scan(req);
    EXPECT_NEAR(grid.points[0].extras[0], 0.5, 1e-15);
    EXPECT_NEAR(grid.points[0].extras[1], 1.0 / 3.0, 1e-8);
    EXPECT_NEAR(grid.points[1].extras[0], pt::tmsv_unit_gain_fidelity(pt::matched_squeezing(1.0)), 1e-15);
}

TEST(Scan, InvalidRequestsThrow) {
    pt::ScanRequest req;
    EXPECT_THROW(pt::scan(req), pt::DomainError);
    req.axes = {{pt::AxisName::zeta, 0.0, 1.0, 1}};
    EXPECT_THROW(pt::scan(req), pt::DomainError);
    req.axes = {{pt::AxisName::zeta, 1.0, 0.0, 3}};
    EXPECT_THROW(pt::scan(req), pt::DomainError);
    req.axes = {{pt::AxisName::zeta, 0.0, 1.0, 3}, {pt::AxisName::zeta, 0.0, 1.0, 3}};
    EXPECT_THROW(pt::scan(req), pt::DomainError);
}

TEST(Scan, MatchedSqueezingHasSameMeanPhotonNumber) {
    for (const double zeta : {0.5, 2.0}) {
        const double r = pt::matched_squeezing(zeta);
        EXPECT_NEAR(std::pow(std::sinh(r), 2), pt::mean_photon_number(pt::PairCoherentState(zeta)), 1e-12);
    }
}

TEST(Axis, NamesRoundTrip) {
    for (const auto a : {pt::AxisName::zeta, pt::AxisName::gain, pt::AxisName::alpha_abs, pt::AxisName::r}) {
        EXPECT_EQ(pt::parse_axis_name(pt::to_string(a)), a);
    }
    EXPECT_FALSE(pt::parse_axis_name("theta").has_value());
}
