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

#ifndef KSFORGE_SCENARIO_H
#define KSFORGE_SCENARIO_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ksforge/lp.h"
#include "ksforge/rays.h"

namespace ksforge {

/// Contextuality scenario: a hypergraph whose hyperedges are complete
/// measurements. Hyperedges are stored as sorted vertex-index lists.
class Scenario {
   public:
    Scenario() = default;

    /// Throws std::invalid_argument on duplicate ids, empty or duplicate
    /// hyperedges, or out-of-range vertex indices.
    Scenario(std::vector<std::string> vertex_ids, std::vector<std::vector<size_t>> hyperedges);

    size_t num_vertices() const {
        return ids_.size();
    }
    const std::vector<std::string> &vertex_ids() const {
        return ids_;
    }
    const std::vector<std::vector<size_t>> &hyperedges() const {
        return edges_;
    }
    std::optional<size_t> index_of(const std::string &id) const;

    /// Hyperedge indices containing each vertex.
    std::vector<std::vector<size_t>> incidence() const;

   private:
    std::vector<std::string> ids_;
    std::vector<std::vector<size_t>> edges_;
};

/// One ray per vertex, in vertex order.
struct RayAssignment {
    std::vector<Ray> rays;
    size_t dim() const {
        return rays.empty() ? 0 : rays.front().dim();
    }
};

/// {0,1} per vertex, exactly one 1 in every hyperedge.
struct Colouring {
    std::vector<uint8_t> values;
    bool operator==(const Colouring &) const = default;
    auto operator<=>(const Colouring &) const = default;
};

/// [0,1] per vertex, summing to one over every hyperedge.
struct ProbModel {
    std::vector<double> values;
};

inline constexpr double kModelNormTol = 1e-9;

bool is_valid_colouring(const Scenario &s, const Colouring &c);

/// Throws std::invalid_argument when p has the wrong size, leaves [0,1], or
/// misses normalization on some hyperedge by more than tol.
void validate_model(const Scenario &s, const ProbModel &p, double tol = kModelNormTol);

ProbModel as_model(const Colouring &c);

/// Density operator: Hermitian, unit trace, positive semidefinite.
class DensityOperator {
   public:
    /// Throws std::invalid_argument when the invariants fail.
    explicit DensityOperator(Eigen::MatrixXcd matrix);

    static DensityOperator pure(const Ray &r);
    static DensityOperator maximally_mixed(size_t dim);
    /// sum_i weights[i] |rays[i]><rays[i]|; weights must be >= 0 and sum to 1.
    static DensityOperator mixture(const std::vector<double> &weights, const std::vector<Ray> &rays);

    size_t dim() const {
        return static_cast<size_t>(m_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    /// <psi|rho|psi>. Throws std::invalid_argument on dim mismatch.
    double expectation(const Ray &psi) const;

   private:
    Eigen::MatrixXcd m_;
};

/// Builds the orthogonality graph adjacency of rays (tolerance kOrthogonalityTol).
std::vector<std::vector<bool>> orthogonality_graph(const std::vector<Ray> &rays);

/// All maximal cliques of an undirected graph (Bron-Kerbosch with pivoting),
/// each sorted, listed lexicographically.
std::vector<std::vector<size_t>> maximal_cliques(const std::vector<std::vector<bool>> &adjacency);

struct ScenarioWithRays {
    Scenario scenario;
    RayAssignment assignment;
};

/// Every complete orthogonal subset of the rays becomes a hyperedge.
/// Throws std::invalid_argument on duplicate rays or mixed dimensions.
ScenarioWithRays scenario_from_rays(const std::vector<Ray> &rays, std::vector<std::string> ids = {});

/// Exactly the given bases become hyperedges; every basis ray must be one of
/// the listed rays. Throws std::invalid_argument otherwise.
ScenarioWithRays scenario_from_rays(
    const std::vector<Ray> &rays, const std::vector<Basis> &bases, std::vector<std::string> ids = {});

/// Ids "v0", "v1", ...
std::vector<std::string> default_vertex_ids(size_t n);

/// Complete search for a KS-colouring; vertices branch in order with 1 tried
/// before 0, and exactly-one propagation runs after every assignment.
std::optional<Colouring> find_ks_colouring(const Scenario &s);

struct ColouringEnumeration {
    std::vector<Colouring> colourings;
    bool truncated = false;
};

inline constexpr size_t kDefaultColouringCap = 1000000;

/// All KS-colourings in search order, stopping after cap of them.
ColouringEnumeration enumerate_ks_colourings(const Scenario &s, size_t cap = kDefaultColouringCap);

enum class Classicality { classical, non_classical, inconclusive };

const char *to_string(Classicality c);

struct ClassicalityResult {
    Classicality verdict = Classicality::inconclusive;
    size_t colourings_used = 0;
    bool cap_hit = false;
    /// LP details; on non_classical the separating inequality over vertices.
    HullMembership lp;
};

/// Is p a convex mixture of KS-colourings? Throws std::invalid_argument when
/// p is not a valid model on s.
ClassicalityResult is_classical_model(const Scenario &s, const ProbModel &p, size_t cap = kDefaultColouringCap);

/// p(v) = <psi_v|rho|psi_v>. Throws std::invalid_argument when the values fail
/// to normalize on some hyperedge, i.e. the rays are not complete sets.
ProbModel quantum_model(const Scenario &s, const RayAssignment &a, const DensityOperator &rho);

}  // namespace ksforge

#endif
