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

#ifndef KSFORGE_ONTMODEL_H
#define KSFORGE_ONTMODEL_H

#include <array>
#include <cstdint>
#include <vector>

#include "ksforge/colouring.h"
#include "ksforge/rays.h"
#include "ksforge/rng.h"
#include "ksforge/scenario.h"

namespace ksforge {

/// One point on the Bloch sphere per qubit.
struct OnticState {
    std::vector<BlochPoint> points;
};

/// Preparation: a pure product state or a convex mixture of them.
class EpistemicState {
   public:
    struct Component {
        double weight;
        ProductRay state;
    };

    static EpistemicState pure(ProductRay chi);
    /// Throws std::invalid_argument unless weights are >= 0, sum to one within
    /// 1e-12, and all states have the same number of qubit factors.
    static EpistemicState mixture(std::vector<Component> components);

    const std::vector<Component> &components() const {
        return components_;
    }
    size_t num_qubits() const {
        return components_.front().state.num_factors();
    }
    bool is_pure() const {
        return components_.size() == 1;
    }
    DensityOperator density() const;

   private:
    explicit EpistemicState(std::vector<Component> components);
    std::vector<Component> components_;
};

struct SimConfig {
    uint64_t samples = 1000000;
    uint64_t seed = 0;
    /// Worker threads; results do not depend on it.
    unsigned jobs = 1;
};

struct Estimate {
    double estimate = 0;
    double std_error = 0;
    uint64_t hits = 0;
    uint64_t samples = 0;
};

/// Deterministic outcome: 1 iff every rotated factor U_{lambda_j}|psi_j> is north,
/// with U_lambda = |0><lambda| + |1><lambda-perp| and
/// lambda-perp = sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>.
/// Throws std::invalid_argument on a qubit-count mismatch or non-qubit factors.
int response(const ProductRay &psi, const OnticState &lambda);

/// One draw from the preparation density of chi: per qubit, in the frame with
/// chi_j at the pole, theta' = arcsin(sqrt(u)) and phi' = 2 pi v, then rotated back.
OnticState sample_ontic(const ProductRay &chi, CounterRng &rng);

/// Monte Carlo estimate of Pr(psi | state). Sample i always uses the stream
/// (cfg.seed, i), so the result is independent of cfg.jobs.
Estimate simulate_probability(const ProductRay &psi, const EpistemicState &state, const SimConfig &cfg);

/// Outcome frequencies of a product-basis measurement, one entry per member.
/// Throws std::runtime_error if some ontic state gives no or several outcomes.
std::vector<Estimate> simulate_basis_measurement(
    const ProductBasis &b, const EpistemicState &state, const SimConfig &cfg);

/// <psi|rho|psi> clamped to [0, 1].
double born(const Ray &psi, const DensityOperator &rho);

enum class Heaviside { h0, h1 };

/// Quadrature of (1/pi) H^y(psi.lambda) H^0(chi.lambda) (chi.lambda) over the
/// sphere, to absolute error below 1e-6. The polar variable runs over an
/// adaptive Simpson grid and the azimuthal one over panels split where
/// psi.lambda changes sign.
double hemisphere_integral(const Ray &psi, const Ray &chi, Heaviside convention);

/// Rotation matrix taking the north pole to the Bloch vector v (unit length).
std::array<std::array<double, 3>, 3> rotation_from_pole(const std::array<double, 3> &v);

}  // namespace ksforge

#endif
