// Copyright 2026 The ksforge Authors
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

#ifndef KSFORGE_COLOURING_H
#define KSFORGE_COLOURING_H

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ksforge/rays.h"
#include "ksforge/rng.h"
#include "ksforge/scenario.h"

namespace ksforge {

/// Orthonormal basis of (C^2)^{(x) n} made of product rays.
class ProductBasis {
   public:
    /// Throws std::invalid_argument unless there are 2^n qubit product rays
    /// on n qubits that are pairwise orthogonal.
    explicit ProductBasis(std::vector<ProductRay> rays);

    size_t num_qubits() const {
        return rays_.front().num_factors();
    }
    const std::vector<ProductRay> &rays() const {
        return rays_;
    }
    std::vector<Ray> flattened() const;

   private:
    std::vector<ProductRay> rays_;
};

/// c(v) = 1 iff the ray of v is all-north.
///
/// Every assigned ray must factor into qubits (checked with is_product_ray).
/// Throws std::invalid_argument when some ray is entangled or the dimension is
/// not a power of two.
Colouring all_north_colouring(const Scenario &s, const RayAssignment &a);

/// Haar-random qubit ray: theta = arccos(1 - 2u), phi = 2 pi v.
Ray haar_qubit_ray(CounterRng &rng);

/// A splitting decision: which qubit (position among the remaining ones) is
/// fixed at this level and which ray it takes in the first half.
struct SplitChoice {
    size_t position = 0;
    Ray ray = kets::zero();
};

/// Supplies split choices. Called with the number of qubits still to be placed.
using SplitChooser = std::function<SplitChoice(size_t remaining)>;

/// Recursive splitting construction. With k qubits left the chooser fixes qubit
/// position i to psi; two independent bases on the other k - 1 qubits are
/// built, first for the psi half, then for the psi-perp half. One qubit left
/// yields {psi, psi-perp}. Throws std::invalid_argument for n = 0.
ProductBasis product_basis_by_splitting(size_t n, const SplitChooser &choose);

/// product_basis_by_splitting with a uniform position and a Haar-random ray.
ProductBasis random_product_basis(size_t n, CounterRng &rng);

/// Exactly one member of the basis is all-north.
bool verify_exactly_one_north(const ProductBasis &b);

/// Some qubit position on which every member carries either psi or psi-perp for
/// a single psi, i.e. the basis splits at the first measurement.
std::optional<size_t> splitting_position(const ProductBasis &b);

/// Eigenvalue with the product rays spanning its eigenspace.
struct Eigenspace {
    double value = 0;
    std::vector<ProductRay> support;
};

/// Observable whose spectral projectors are spanned by product rays.
class ObservableWithProductEigenbasis {
   public:
    /// Builds A = sum_j value_j Pi_j. Throws std::invalid_argument when the
    /// support rays are not an orthonormal basis of the full space, or two
    /// eigenspaces share an eigenvalue (within 1e-9).
    explicit ObservableWithProductEigenbasis(std::vector<Eigenspace> spectrum);

    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    const std::vector<Eigenspace> &spectrum() const {
        return spectrum_;
    }
    size_t dim() const {
        return static_cast<size_t>(matrix_.rows());
    }

    /// g(A) for the polynomial with the given coefficients (constant first).
    /// Eigenspaces whose images coincide are merged.
    ObservableWithProductEigenbasis apply_polynomial(const std::vector<double> &coefficients) const;

   private:
    std::vector<Eigenspace> spectrum_;
    Eigen::MatrixXcd matrix_;
};

/// A KS-colouring given on rank-one product projections; nullopt = undefined.
using RayColouring = std::function<std::optional<int>(const ProductRay &)>;

/// The all-north colouring as a RayColouring (defined on every qubit product ray).
RayColouring all_north_ray_colouring();

/// v(A) = sum_j lambda_j c(Pi_j) with c(Pi_j) the sum over its rank-one parts.
///
/// Throws std::invalid_argument if c is undefined on some support ray, gives a
/// projector a value other than 0/1, or does not give exactly one projector 1.
double valuation_from_colouring(const ObservableWithProductEigenbasis &a, const RayColouring &c);

}  // namespace ksforge

#endif
