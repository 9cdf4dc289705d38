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

#ifndef PCTELEPORT_ERRORS_HPP
#define PCTELEPORT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcteleport {

/// Invalid argument: negative, non-finite, or otherwise outside an operation's domain.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Base for failures of the numerics themselves (as opposed to bad input).
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A Fock truncation is too small for the requested tolerance.
class TruncationError : public NumericalError {
   public:
    TruncationError(const std::string &what, int suggested_n_max)
        : NumericalError(what), suggested_n_max_(suggested_n_max) {}
    int suggested_n_max() const noexcept { return suggested_n_max_; }

   private:
    int suggested_n_max_;
};

/// An adaptive series or iterative solver hit its cap without converging.
class ConvergenceError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// A quadrature rule did not resolve its integrand.
class ResolutionError : public NumericalError {
   public:
    ResolutionError(const std::string &what, double suggested_radius, int suggested_nodes)
        : NumericalError(what), suggested_radius_(suggested_radius), suggested_nodes_(suggested_nodes) {}
    double suggested_radius() const noexcept { return suggested_radius_; }
    int suggested_nodes() const noexcept { return suggested_nodes_; }

   private:
    double suggested_radius_;
    int suggested_nodes_;
};

/// A computed fidelity landed outside [0, 1] by more than its tolerance.
class RangeError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace pcteleport

#endif
