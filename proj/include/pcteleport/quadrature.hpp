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

#ifndef PCTELEPORT_QUADRATURE_HPP
#define PCTELEPORT_QUADRATURE_HPP

#include <complex>
#include <vector>

namespace pcteleport {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Gauss-Hermite rule for weight exp(-x^2) on the real line.
QuadratureRule gauss_hermite(int n);

/// A point of a planar rule: position in the complex plane and its weight.
/// `ring` is the index of the radial node (0 innermost) for disk rules.
struct PlanarNode {
    std::complex<double> z;
    double weight;
    int ring;
};

/// Polar product rule on the disk |z - center| <= radius: Gauss-Legendre in
/// the radius (with the r dr Jacobian folded in) times a uniform trapezoid
/// rule in the angle.
std::vector<PlanarNode> disk_rule(std::complex<double> center, double radius, int radial_nodes, int angular_nodes);

/// Tensor Gauss-Hermite rule on the plane for the weight exp(-|z|^2 / s^2):
/// nodes are scaled by s, weights carry s^2.
std::vector<PlanarNode> gauss_hermite_plane(int n, double s = 1.0);

}  // namespace pcteleport

#endif
