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

#include "pcteleport/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "pcteleport/errors.hpp"

namespace pcteleport {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) {
        throw DomainError("gauss_legendre: need at least one node");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        // Re-evaluate the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

namespace {

// Orthonormal Hermite recurrence; returns (p_n, p_{n-1}) at x.
std::pair<double, double> hermite_orthonormal(int n, double x) {
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    double p0 = 0.0;
    double p1 = pim4;
    for (int k = 1; k <= n; ++k) {
        const double p2 = x * std::sqrt(2.0 / k) * p1 - std::sqrt((k - 1.0) / k) * p0;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
    if (n < 1) {
        throw DomainError("gauss_hermite: need at least one node");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // Initial guesses for the largest roots, then each root seeds the next.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
        }
        double dp = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            auto [p, pm1] = hermite_orthonormal(n, z);
            dp = std::sqrt(2.0 * n) * pm1;
            const double dz = p / dp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) {
                break;
            }
        }
        auto [p, pm1] = hermite_orthonormal(n, z);
        dp = std::sqrt(2.0 * n) * pm1;
        const double w = 2.0 / (dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

std::vector<PlanarNode> disk_rule(std::complex<double> center, double radius, int radial_nodes, int angular_nodes) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("disk_rule: radius must be positive and finite");
    }
    if (angular_nodes < 1) {
        throw DomainError("disk_rule: need at least one angular node");
    }
    const auto radial = gauss_legendre(radial_nodes);
    std::vector<PlanarNode> out;
    out.reserve(static_cast<std::size_t>(radial_nodes) * static_cast<std::size_t>(angular_nodes));
    const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
    for (int i = 0; i < radial_nodes; ++i) {
        const double r = 0.5 * radius * (radial.nodes[static_cast<std::size_t>(i)] + 1.0);
        const double wr = 0.5 * radius * radial.weights[static_cast<std::size_t>(i)] * r;
        for (int t = 0; t < angular_nodes; ++t) {
            out.push_back({center + std::polar(r, t * dtheta), wr * dtheta, i});
        }
    }
    return out;
}

std::vector<PlanarNode> gauss_hermite_plane(int n, double s) {
    const auto rule = gauss_hermite(n);
    std::vector<PlanarNode> out;
    out.reserve(rule.size() * rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (std::size_t j = 0; j < rule.size(); ++j) {
            out.push_back({std::complex<double>(s * rule.nodes[i], s * rule.nodes[j]),
                           s * s * rule.weights[i] * rule.weights[j], static_cast<int>(i)});
        }
    }
    return out;
}

}  // namespace pcteleport
