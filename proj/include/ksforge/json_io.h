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

#ifndef KSFORGE_JSON_IO_H
#define KSFORGE_JSON_IO_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ksforge/bell.h"
#include "ksforge/ontmodel.h"
#include "ksforge/rays.h"
#include "ksforge/scenario.h"

namespace ksforge {

using Json = nlohmann::json;

/// Malformed or inconsistent JSON input.
class JsonFormatError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// {"dim": d, "amplitudes": [[re, im], ...]}
Json ray_to_json(const Ray &r);
Ray ray_from_json(const Json &j);

/// {"factors": [ray, ...]}
Json product_ray_to_json(const ProductRay &p);
ProductRay product_ray_from_json(const Json &j);

/// Product of axis states, one character per qubit from 0 1 + - r l
/// (r = |+i>, l = |-i>), e.g. "+0-". Throws JsonFormatError otherwise.
ProductRay product_ray_from_label(const std::string &label);

/// {"dim": d, "vertices": [{"id": ..., "ray": ...}], "hyperedges": [[id, ...]]}.
/// Rays (and dim) are omitted when no assignment is given.
Json scenario_to_json(const Scenario &s, const RayAssignment *a = nullptr);

struct LoadedScenario {
    Scenario scenario;
    /// Present when every vertex carries a ray.
    std::optional<RayAssignment> assignment;
};
LoadedScenario scenario_from_json(const Json &j);

/// {"values": {id: value}}
Json colouring_to_json(const Scenario &s, const Colouring &c);
Colouring colouring_from_json(const Scenario &s, const Json &j);
Json model_to_json(const Scenario &s, const ProbModel &p);
ProbModel model_from_json(const Scenario &s, const Json &j);

/// {"parties": n, "settings": [...], "p": {"a|x": value}}
Json behaviour_to_json(const Behaviour &b);
Behaviour behaviour_from_json(const Json &j);

/// Accepts {"density": [[[re, im], ...], ...]}, {"ray": ray} or
/// {"mixture": [{"weight": w, "ray": ray}, ...]}.
DensityOperator density_from_json(const Json &j);
Json density_to_json(const DensityOperator &rho);

/// Accepts a product ray {"factors": ...} or
/// {"mixture": [{"weight": w, "state": product ray}, ...]}.
EpistemicState epistemic_from_json(const Json &j);

/// {"rays": [product ray, ...]}
std::vector<ProductRay> product_rays_from_json(const Json &j);
Json product_rays_to_json(const std::vector<ProductRay> &rays);

}  // namespace ksforge

#endif
