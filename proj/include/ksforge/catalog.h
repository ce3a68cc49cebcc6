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

#ifndef KSFORGE_CATALOG_H
#define KSFORGE_CATALOG_H

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ksforge/colouring.h"
#include "ksforge/rays.h"
#include "ksforge/scenario.h"

namespace ksforge {

/// Properties observed on the built object (never copied from constants).
struct ExpectedProperties {
    bool colourable = false;
    size_t vertex_count = 0;
    size_t hyperedge_count = 0;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    Scenario scenario;
    RayAssignment assignment;
    ExpectedProperties expected;
    /// Subsystem dimensions of the rays, e.g. {2, 2} for two qubits.
    std::vector<size_t> subsystem_dims;
};

/// The 3x3 unitary used to embed the second copy of the Peres rays.
Eigen::Matrix3cd embedding_unitary();

/// The 33 Peres rays of C^3, with components in {0, +-1, +-sqrt 2} before
/// normalization.
std::vector<Ray> peres33_rays();

/// Adds, for every orthogonal pair of the input, the unique ray completing
/// it to a basis (cross product of the conjugated coordinates), then returns
/// the all-bases scenario over the closure. Input rays keep their order and
/// the new rays follow in discovery order. Throws std::invalid_argument unless
/// every ray lives in C^3.
ScenarioWithRays complete_pairs(const std::vector<Ray> &rays);

/// Eigenbases of the six contexts of the square, rows first then columns.
/// Each basis is ordered by the eigenvalue pair of the first two operators.
std::vector<Basis> peres_mermin_contexts();

/// The 24 distinct rays of the six contexts, in all-bases mode.
CatalogEntry peres_mermin_scenario();

/// complete_pairs(peres33_rays()).
CatalogEntry peres57();

/// The two-qubit KS set: Peres rays embedded once into span{|01>,|10>,|11>}
/// and once, after the embedding unitary, into span{|00>,|10>,|11>}, plus the
/// computational basis; all-bases mode.
CatalogEntry two_qubit_ks_set();

/// Cross checks of the two-qubit set.
struct TwoQubitKsDiagnostics {
    /// Smallest |<a|b>| over entangled a from the first embedding and entangled
    /// b from the second one.
    double min_cross_overlap = 0;
    size_t entangled_first = 0;
    size_t entangled_second = 0;
    /// Hyperedges of the closure with no product member.
    size_t fully_entangled_hyperedges = 0;
    bool has_computational_basis = false;
};
TwoQubitKsDiagnostics two_qubit_ks_diagnostics(const CatalogEntry &entry);

/// {|000>,|+10>,|0+1>,|10+>,|111>,|-10>,|0-1>,|10->}.
ProductBasis nonlocal_basis_eq1();

/// The single-hyperedge scenario of nonlocal_basis_eq1().
CatalogEntry eq1_basis_scenario();

/// A KS set of product rays on subsystems of the given dimensions.
///
/// The first factor of dimension 3 carries the Peres set (dimension 4 the
/// two-qubit set); every basis is tensored element-wise with the
/// computational bases of the other factors and the scenario uses exactly
/// these direct product bases. Throws std::invalid_argument when all
/// dimensions are below 3, some dimension is below 2, or the large factor has
/// a dimension other than 3 or 4.
CatalogEntry unentangled_ks_set(const std::vector<size_t> &dims);

/// All-bases scenario over all products of the six axis states on two qubits.
CatalogEntry two_qubit_axis_products();

/// All-bases scenario over all products of {|0>,|1>,|+>,|->} on three qubits.
CatalogEntry three_qubit_xz_products();

std::vector<std::string> catalog_names();

/// Builds the named entry. Throws std::invalid_argument for an unknown name.
CatalogEntry build_catalog_entry(const std::string &name);

struct CatalogCheck {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
};

/// Recomputes the entry's properties and compares them with reference values.
std::vector<CatalogCheck> verify_catalog_entry(const CatalogEntry &entry);

/// Whether every ray of the entry factors over its subsystem dimensions.
bool all_rays_product(const CatalogEntry &entry);

}  // namespace ksforge

#endif
