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

#include "ksforge/json_io.h"

#include <algorithm>
#include <set>

namespace ksforge {

namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw JsonFormatError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const Json &j, const char *what) {
    if (!j.is_number()) {
        throw JsonFormatError(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

size_t count(const Json &j, const char *what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw JsonFormatError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<size_t>();
}

Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        throw JsonFormatError("complex numbers are [re, im] pairs");
    }
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json complex_to_json(const Complex &z) {
    return Json::array({z.real(), z.imag()});
}

// Wraps library validation errors so every bad input maps to one exception type.
template <class F>
auto guarded(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const JsonFormatError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw JsonFormatError(std::string(what) + ": " + e.what());
    } catch (const nlohmann::json::exception &e) {
        throw JsonFormatError(std::string(what) + ": " + e.what());
    }
}

std::vector<double> values_by_id(const Scenario &s, const Json &j) {
    const Json &values = field(j, "values");
    if (!values.is_object()) {
        throw JsonFormatError("'values' must map vertex ids to numbers");
    }
    std::vector<double> out(s.num_vertices(), 0.0);
    std::vector<bool> seen(s.num_vertices(), false);
    for (const auto &[id, v] : values.items()) {
        auto index = s.index_of(id);
        if (!index) {
            throw JsonFormatError("unknown vertex id '" + id + "'");
        }
        out[*index] = number(v, "vertex value");
        seen[*index] = true;
    }
    for (size_t k = 0; k < seen.size(); k++) {
        if (!seen[k]) {
            throw JsonFormatError("no value for vertex '" + s.vertex_ids()[k] + "'");
        }
    }
    return out;
}

}  // namespace

Json ray_to_json(const Ray &r) {
    Json amps = Json::array();
    for (const Complex &z : r.amplitudes()) {
        amps.push_back(complex_to_json(z));
    }
    return Json{{"dim", r.dim()}, {"amplitudes", amps}};
}

Ray ray_from_json(const Json &j) {
    return guarded("ray", [&] {
        const Json &amps = field(j, "amplitudes");
        if (!amps.is_array()) {
            throw JsonFormatError("'amplitudes' must be an array");
        }
        std::vector<Complex> v;
        for (const Json &z : amps) {
            v.push_back(complex_from_json(z));
        }
        if (j.contains("dim") && count(j.at("dim"), "dim") != v.size()) {
            throw JsonFormatError("'dim' does not match the number of amplitudes");
        }
        return Ray(std::move(v));
    });
}

Json product_ray_to_json(const ProductRay &p) {
    Json factors = Json::array();
    for (const Ray &f : p.factors()) {
        factors.push_back(ray_to_json(f));
    }
    return Json{{"factors", factors}};
}

ProductRay product_ray_from_json(const Json &j) {
    return guarded("product ray", [&] {
        const Json &factors = field(j, "factors");
        if (!factors.is_array()) {
            throw JsonFormatError("'factors' must be an array");
        }
        std::vector<Ray> out;
        for (const Json &f : factors) {
            out.push_back(ray_from_json(f));
        }
        return ProductRay(std::move(out));
    });
}

ProductRay product_ray_from_label(const std::string &label) {
    if (label.empty()) {
        throw JsonFormatError("empty product-state label");
    }
    std::vector<Ray> factors;
    for (char c : label) {
        switch (c) {
            case '0':
                factors.push_back(kets::zero());
                break;
            case '1':
                factors.push_back(kets::one());
                break;
            case '+':
                factors.push_back(kets::plus());
                break;
            case '-':
                factors.push_back(kets::minus());
                break;
            case 'r':
                factors.push_back(kets::plus_i());
                break;
            case 'l':
                factors.push_back(kets::minus_i());
                break;
            default:
                throw JsonFormatError(std::string("unknown qubit label '") + c + "'");
        }
    }
    return ProductRay(std::move(factors));
}

Json scenario_to_json(const Scenario &s, const RayAssignment *a) {
    Json vertices = Json::array();
    for (size_t v = 0; v < s.num_vertices(); v++) {
        Json entry{{"id", s.vertex_ids()[v]}};
        if (a) {
            entry["ray"] = ray_to_json(a->rays.at(v));
        }
        vertices.push_back(entry);
    }
    Json edges = Json::array();
    for (const auto &e : s.hyperedges()) {
        Json ids = Json::array();
        for (size_t v : e) {
            ids.push_back(s.vertex_ids()[v]);
        }
        edges.push_back(ids);
    }
    Json out;
    if (a) {
        out["dim"] = a->dim();
    }
    out["vertices"] = vertices;
    out["hyperedges"] = edges;
    return out;
}

LoadedScenario scenario_from_json(const Json &j) {
    return guarded("scenario", [&] {
        const Json &vertices = field(j, "vertices");
        const Json &edges = field(j, "hyperedges");
        if (!vertices.is_array() || !edges.is_array()) {
            throw JsonFormatError("'vertices' and 'hyperedges' must be arrays");
        }
        std::vector<std::string> ids;
        std::vector<Ray> rays;
        size_t with_ray = 0;
        for (const Json &v : vertices) {
            const Json &id = field(v, "id");
            if (!id.is_string()) {
                throw JsonFormatError("vertex ids must be strings");
            }
            ids.push_back(id.get<std::string>());
            if (v.contains("ray")) {
                rays.push_back(ray_from_json(v.at("ray")));
                with_ray++;
            }
        }
        if (with_ray != 0 && with_ray != ids.size()) {
            throw JsonFormatError("either every vertex carries a ray or none does");
        }
        std::vector<std::vector<size_t>> hyperedges;
        for (const Json &e : edges) {
            if (!e.is_array()) {
                throw JsonFormatError("hyperedges must be arrays of vertex ids");
            }
            std::vector<size_t> members;
            for (const Json &id : e) {
                if (!id.is_string()) {
                    throw JsonFormatError("hyperedges must list vertex ids");
                }
                auto it = std::find(ids.begin(), ids.end(), id.get<std::string>());
                if (it == ids.end()) {
                    throw JsonFormatError("hyperedge names unknown vertex '" + id.get<std::string>() + "'");
                }
                members.push_back(static_cast<size_t>(it - ids.begin()));
            }
            hyperedges.push_back(std::move(members));
        }
        LoadedScenario out{Scenario(std::move(ids), std::move(hyperedges)), std::nullopt};
        if (with_ray != 0) {
            size_t d = rays.front().dim();
            for (const Ray &r : rays) {
                if (r.dim() != d) {
                    throw JsonFormatError("vertex rays have different dimensions");
                }
            }
            if (j.contains("dim") && count(j.at("dim"), "dim") != d) {
                throw JsonFormatError("'dim' does not match the vertex rays");
            }
            out.assignment = RayAssignment{std::move(rays)};
        }
        return out;
    });
}

Json colouring_to_json(const Scenario &s, const Colouring &c) {
    Json values = Json::object();
    for (size_t v = 0; v < s.num_vertices(); v++) {
        values[s.vertex_ids()[v]] = static_cast<int>(c.values.at(v));
    }
    return Json{{"values", values}};
}

Colouring colouring_from_json(const Scenario &s, const Json &j) {
    return guarded("colouring", [&] {
        Colouring c;
        for (double v : values_by_id(s, j)) {
            if (v != 0 && v != 1) {
                throw JsonFormatError("colouring values must be 0 or 1");
            }
            c.values.push_back(static_cast<uint8_t>(v));
        }
        if (!is_valid_colouring(s, c)) {
            throw std::invalid_argument("colouring must give exactly one 1 in every hyperedge");
        }
        return c;
    });
}

Json model_to_json(const Scenario &s, const ProbModel &p) {
    Json values = Json::object();
    for (size_t v = 0; v < s.num_vertices(); v++) {
        values[s.vertex_ids()[v]] = p.values.at(v);
    }
    return Json{{"values", values}};
}

ProbModel model_from_json(const Scenario &s, const Json &j) {
    return guarded("model", [&] {
        ProbModel p{values_by_id(s, j)};
        validate_model(s, p);
        return p;
    });
}

Json behaviour_to_json(const Behaviour &b) {
    Json p = Json::object();
    auto events = bell_events(b.scenario());
    for (size_t k = 0; k < events.size(); k++) {
        p[event_label(events[k])] = b.values()[k];
    }
    return Json{{"parties", b.scenario().parties()}, {"settings", b.scenario().settings()}, {"p", p}};
}

Behaviour behaviour_from_json(const Json &j) {
    return guarded("behaviour", [&] {
        size_t parties = count(field(j, "parties"), "parties");
        const Json &settings = field(j, "settings");
        if (!settings.is_array() || settings.size() != parties) {
            throw JsonFormatError("'settings' must list one count per party");
        }
        std::vector<size_t> counts;
        for (const Json &s : settings) {
            counts.push_back(count(s, "setting count"));
        }
        BellScenario b(counts);
        const Json &p = field(j, "p");
        if (!p.is_object()) {
            throw JsonFormatError("'p' must map event labels to probabilities");
        }
        std::vector<double> values(b.num_events(), 0.0);
        std::vector<bool> seen(b.num_events(), false);
        for (const auto &[label, v] : p.items()) {
            size_t k = event_index(b, parse_event_label(b, label));
            values[k] = number(v, "probability");
            seen[k] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw JsonFormatError("behaviour does not give every event a probability");
        }
        return Behaviour(b, std::move(values));
    });
}

DensityOperator density_from_json(const Json &j) {
    return guarded("state", [&] {
        if (j.is_object() && j.contains("density")) {
            const Json &rows = j.at("density");
            if (!rows.is_array() || rows.empty()) {
                throw JsonFormatError("'density' must be a non-empty matrix");
            }
            Eigen::Index d = static_cast<Eigen::Index>(rows.size());
            Eigen::MatrixXcd m(d, d);
            for (Eigen::Index r = 0; r < d; r++) {
                const Json &row = rows[static_cast<size_t>(r)];
                if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
                    throw JsonFormatError("'density' must be square");
                }
                for (Eigen::Index c = 0; c < d; c++) {
                    m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
                }
            }
            return DensityOperator(m);
        }
        if (j.is_object() && j.contains("ray")) {
            return DensityOperator::pure(ray_from_json(j.at("ray")));
        }
        if (j.is_object() && j.contains("mixture")) {
            std::vector<double> weights;
            std::vector<Ray> rays;
            for (const Json &c : j.at("mixture")) {
                weights.push_back(number(field(c, "weight"), "weight"));
                rays.push_back(ray_from_json(field(c, "ray")));
            }
            return DensityOperator::mixture(weights, rays);
        }
        throw JsonFormatError("a state needs 'density', 'ray' or 'mixture'");
    });
}

Json density_to_json(const DensityOperator &rho) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < rho.matrix().cols(); c++) {
            row.push_back(complex_to_json(rho.matrix()(r, c)));
        }
        rows.push_back(row);
    }
    return Json{{"density", rows}};
}

EpistemicState epistemic_from_json(const Json &j) {
    return guarded("preparation", [&] {
        if (j.is_object() && j.contains("mixture")) {
            std::vector<EpistemicState::Component> components;
            for (const Json &c : j.at("mixture")) {
                components.push_back({number(field(c, "weight"), "weight"), product_ray_from_json(field(c, "state"))});
            }
            return EpistemicState::mixture(std::move(components));
        }
        return EpistemicState::pure(product_ray_from_json(j));
    });
}

std::vector<ProductRay> product_rays_from_json(const Json &j) {
    return guarded("ray list", [&] {
        const Json &rays = field(j, "rays");
        if (!rays.is_array()) {
            throw JsonFormatError("'rays' must be an array");
        }
        std::vector<ProductRay> out;
        for (const Json &r : rays) {
            out.push_back(r.is_string() ? product_ray_from_label(r.get<std::string>()) : product_ray_from_json(r));
        }
        return out;
    });
}

Json product_rays_to_json(const std::vector<ProductRay> &rays) {
    Json list = Json::array();
    for (const ProductRay &p : rays) {
        list.push_back(product_ray_to_json(p));
    }
    return Json{{"rays", list}};
}

}  // namespace ksforge
