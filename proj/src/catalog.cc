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

#include "ksforge/catalog.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace ksforge {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Appends r unless an equal ray is already present; returns its index.
size_t add_unique(std::vector<Ray> &rays, const Ray &r) {
    for (size_t k = 0; k < rays.size(); k++) {
        if (rays[k].same_ray(r)) {
            return k;
        }
    }
    rays.push_back(r);
    return rays.size() - 1;
}

ExpectedProperties observe(const Scenario &s) {
    ExpectedProperties e;
    e.vertex_count = s.num_vertices();
    e.hyperedge_count = s.hyperedges().size();
    e.colourable = find_ks_colouring(s).has_value();
    return e;
}

CatalogEntry make_entry(
    std::string name, std::string description, ScenarioWithRays built, std::vector<size_t> dims) {
    CatalogEntry entry;
    entry.name = std::move(name);
    entry.description = std::move(description);
    entry.expected = observe(built.scenario);
    entry.scenario = std::move(built.scenario);
    entry.assignment = std::move(built.assignment);
    entry.subsystem_dims = std::move(dims);
    return entry;
}

Eigen::Matrix2cd pauli(char p) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (p) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::logic_error("unknown Pauli label");
    }
    return m;
}

Eigen::Matrix4cd two_qubit_operator(const char *label) {
    Eigen::Matrix2cd a = pauli(label[0]);
    Eigen::Matrix2cd b = pauli(label[1]);
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Ray ray_of(const Eigen::VectorXcd &v) {
    return Ray(std::vector<Complex>(v.data(), v.data() + v.size()));
}

// Common eigenbasis of two commuting operators with +-1 spectra: diagonalize
// a, then resolve each degenerate block with b.
std::vector<Ray> common_eigenbasis(const Eigen::Matrix4cd &a, const Eigen::Matrix4cd &b) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(a);
    std::vector<Ray> out;
    for (double sign : {1.0, -1.0}) {
        std::vector<int> cols;
        for (int k = 0; k < 4; k++) {
            if (std::abs(solver.eigenvalues()(k) - sign) < 1e-9) {
                cols.push_back(k);
            }
        }
        Eigen::MatrixXcd block(4, static_cast<Eigen::Index>(cols.size()));
        for (size_t k = 0; k < cols.size(); k++) {
            block.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(cols[k]);
        }
        Eigen::MatrixXcd reduced = block.adjoint() * b * block;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(reduced);
        // Eigenvalues come out ascending; list +1 first.
        for (Eigen::Index k = inner.eigenvalues().size(); k-- > 0;) {
            out.push_back(ray_of(block * inner.eigenvectors().col(k)));
        }
    }
    return out;
}

std::vector<Basis> bases_of(const ScenarioWithRays &s) {
    std::vector<Basis> out;
    for (const auto &e : s.scenario.hyperedges()) {
        std::vector<Ray> members;
        for (size_t v : e) {
            members.push_back(s.assignment.rays[v]);
        }
        out.emplace_back(std::move(members));
    }
    return out;
}

bool is_product(const Ray &r, const std::vector<size_t> &dims) {
    return is_product_ray(r, dims).has_value();
}

Ray embed(const Ray &v, const std::array<size_t, 3> &slots) {
    std::vector<Complex> amps(4, 0);
    for (size_t k = 0; k < 3; k++) {
        amps[slots[k]] = v[k];
    }
    return Ray(std::move(amps));
}

constexpr std::array<size_t, 3> kSlots00 = {1, 2, 3};
constexpr std::array<size_t, 3> kSlots01 = {0, 2, 3};

Ray map_ray(const Eigen::Matrix3cd &u, const Ray &v) {
    Eigen::Vector3cd x(v[0], v[1], v[2]);
    Eigen::Vector3cd y = u * x;
    return Ray({y(0), y(1), y(2)});
}

std::vector<Ray> first_embedding(const std::vector<Ray> &peres) {
    std::vector<Ray> out;
    for (const Ray &v : peres) {
        out.push_back(embed(v, kSlots00));
    }
    return out;
}

std::vector<Ray> second_embedding(const std::vector<Ray> &peres) {
    Eigen::Matrix3cd u = embedding_unitary();
    std::vector<Ray> out;
    for (const Ray &v : peres) {
        out.push_back(embed(map_ray(u, v), kSlots01));
    }
    return out;
}

}  // namespace

Eigen::Matrix3cd embedding_unitary() {
    double tm = (2 - kSqrt2 - std::sqrt(6.0)) / 2;
    double tp = (2 - kSqrt2 + std::sqrt(6.0)) / 2;
    double d = 1 + kSqrt2;
    Eigen::Matrix3cd u;
    u << d, tm, tp, tp, d, tm, tm, tp, d;
    return u / 3.0;
}

std::vector<Ray> peres33_rays() {
    std::vector<Ray> out;
    for (size_t i = 0; i < 3; i++) {
        out.push_back(Ray::basis(3, i));
    }
    // e_i +- e_j over unordered pairs.
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = i + 1; j < 3; j++) {
            for (double s : {1.0, -1.0}) {
                std::vector<Complex> a(3, 0);
                a[i] = 1;
                a[j] = s;
                out.emplace_back(std::move(a));
            }
        }
    }
    // e_i +- sqrt2 e_j over ordered pairs.
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            if (i == j) {
                continue;
            }
            for (double s : {1.0, -1.0}) {
                std::vector<Complex> a(3, 0);
                a[i] = 1;
                a[j] = s * kSqrt2;
                out.emplace_back(std::move(a));
            }
        }
    }
    // sqrt2 e_i +- e_j +- e_k.
    for (size_t i = 0; i < 3; i++) {
        for (double s : {1.0, -1.0}) {
            for (double t : {1.0, -1.0}) {
                std::vector<Complex> a(3, 0);
                a[i] = kSqrt2;
                a[(i + 1) % 3] = s;
                a[(i + 2) % 3] = t;
                out.emplace_back(std::move(a));
            }
        }
    }
    return out;
}

ScenarioWithRays complete_pairs(const std::vector<Ray> &rays) {
    for (const Ray &r : rays) {
        if (r.dim() != 3) {
            throw std::invalid_argument("complete_pairs works on rays of C^3");
        }
    }
    std::vector<Ray> closure;
    for (const Ray &r : rays) {
        add_unique(closure, r);
    }
    size_t n = closure.size();
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (!is_orthogonal(closure[i], closure[j])) {
                continue;
            }
            Complex a0 = std::conj(closure[i][0]), a1 = std::conj(closure[i][1]), a2 = std::conj(closure[i][2]);
            Complex b0 = std::conj(closure[j][0]), b1 = std::conj(closure[j][1]), b2 = std::conj(closure[j][2]);
            add_unique(closure, Ray({a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0}));
        }
    }
    return scenario_from_rays(closure);
}

std::vector<Basis> peres_mermin_contexts() {
    static const std::array<std::array<const char *, 3>, 6> contexts = {{
        {"XI", "IX", "XX"},
        {"IY", "YI", "YY"},
        {"XY", "YX", "ZZ"},
        {"XI", "IY", "XY"},
        {"IX", "YI", "YX"},
        {"XX", "YY", "ZZ"},
    }};
    std::vector<Basis> out;
    for (const auto &c : contexts) {
        out.emplace_back(common_eigenbasis(two_qubit_operator(c[0]), two_qubit_operator(c[1])));
    }
    return out;
}

CatalogEntry peres_mermin_scenario() {
    std::vector<Ray> rays;
    for (const Basis &b : peres_mermin_contexts()) {
        for (const Ray &r : b.rays()) {
            add_unique(rays, r);
        }
    }
    return make_entry(
        "peres_mermin", "Eigenbases of the Peres-Mermin square contexts, all-bases closure",
        scenario_from_rays(rays), {2, 2});
}

CatalogEntry peres57() {
    return make_entry("peres57", "Peres 33 rays completed to 57 rays of C^3", complete_pairs(peres33_rays()), {3});
}

CatalogEntry two_qubit_ks_set() {
    std::vector<Ray> peres = peres57().assignment.rays;
    std::vector<Ray> rays;
    for (const Ray &r : first_embedding(peres)) {
        add_unique(rays, r);
    }
    for (const Ray &r : second_embedding(peres)) {
        add_unique(rays, r);
    }
    for (size_t k = 0; k < 4; k++) {
        add_unique(rays, Ray::basis(4, k));
    }
    return make_entry(
        "two_qubit_ks", "Two embedded copies of the Peres set in C^2 (x) C^2, all-bases closure",
        scenario_from_rays(rays), {2, 2});
}

TwoQubitKsDiagnostics two_qubit_ks_diagnostics(const CatalogEntry &entry) {
    const std::vector<size_t> dims = {2, 2};
    std::vector<Ray> peres = peres57().assignment.rays;
    std::vector<Ray> first;
    std::vector<Ray> second;
    for (const Ray &r : first_embedding(peres)) {
        if (!is_product(r, dims)) {
            first.push_back(r);
        }
    }
    for (const Ray &r : second_embedding(peres)) {
        if (!is_product(r, dims)) {
            second.push_back(r);
        }
    }
    TwoQubitKsDiagnostics d;
    d.entangled_first = first.size();
    d.entangled_second = second.size();
    d.min_cross_overlap = 1;
    for (const Ray &a : first) {
        for (const Ray &b : second) {
            d.min_cross_overlap = std::min(d.min_cross_overlap, std::abs(inner_product(a, b)));
        }
    }
    const auto &rays = entry.assignment.rays;
    for (const auto &e : entry.scenario.hyperedges()) {
        bool any_product = std::any_of(e.begin(), e.end(), [&](size_t v) { return is_product(rays[v], dims); });
        if (!any_product) {
            d.fully_entangled_hyperedges++;
        }
        bool computational = std::all_of(e.begin(), e.end(), [&](size_t v) {
            for (size_t k = 0; k < 4; k++) {
                if (rays[v].same_ray(Ray::basis(4, k))) {
                    return true;
                }
            }
            return false;
        });
        d.has_computational_basis = d.has_computational_basis || computational;
    }
    return d;
}

ProductBasis nonlocal_basis_eq1() {
    using namespace kets;
    std::vector<ProductRay> members = {
        ProductRay({zero(), zero(), zero()}),  ProductRay({plus(), one(), zero()}),
        ProductRay({zero(), plus(), one()}),   ProductRay({one(), zero(), plus()}),
        ProductRay({one(), one(), one()}),     ProductRay({minus(), one(), zero()}),
        ProductRay({zero(), minus(), one()}),  ProductRay({one(), zero(), minus()}),
    };
    return ProductBasis(std::move(members));
}

CatalogEntry eq1_basis_scenario() {
    std::vector<Ray> rays = nonlocal_basis_eq1().flattened();
    return make_entry(
        "eq1_basis", "Three-qubit product basis without a splitting qubit", scenario_from_rays(rays, {Basis(rays)}),
        {2, 2, 2});
}

CatalogEntry unentangled_ks_set(const std::vector<size_t> &dims) {
    if (dims.empty()) {
        throw std::invalid_argument("unentangled_ks_set needs at least one subsystem");
    }
    for (size_t d : dims) {
        if (d < 2) {
            throw std::invalid_argument("subsystem dimensions must be at least 2");
        }
    }
    auto large = std::find_if(dims.begin(), dims.end(), [](size_t d) { return d >= 3; });
    if (large == dims.end()) {
        throw std::invalid_argument(
            "every subsystem is a qubit; a KS set of product rays needs a subsystem of dimension at least 3");
    }
    size_t position = static_cast<size_t>(large - dims.begin());
    CatalogEntry seed;
    if (*large == 3) {
        seed = peres57();
    } else if (*large == 4) {
        seed = two_qubit_ks_set();
    } else {
        throw std::invalid_argument(
            "no KS set is available for a subsystem of dimension " + std::to_string(*large));
    }
    std::vector<Basis> seed_bases = bases_of(ScenarioWithRays{seed.scenario, seed.assignment});

    // Multi-indices over the other subsystems, last index fastest.
    std::vector<std::vector<size_t>> others = {{}};
    for (size_t k = 0; k < dims.size(); k++) {
        if (k == position) {
            continue;
        }
        std::vector<std::vector<size_t>> next;
        for (const auto &prefix : others) {
            for (size_t i = 0; i < dims[k]; i++) {
                auto grown = prefix;
                grown.push_back(i);
                next.push_back(std::move(grown));
            }
        }
        others = std::move(next);
    }
    auto lift = [&](const Ray &w, const std::vector<size_t> &index) {
        std::vector<Ray> factors;
        size_t j = 0;
        for (size_t k = 0; k < dims.size(); k++) {
            factors.push_back(k == position ? w : Ray::basis(dims[k], index[j++]));
        }
        return tensor(factors);
    };

    std::vector<Ray> rays;
    for (const Ray &w : seed.assignment.rays) {
        for (const auto &index : others) {
            rays.push_back(lift(w, index));
        }
    }
    std::vector<Basis> bases;
    for (const Basis &b : seed_bases) {
        std::vector<Ray> members;
        for (const Ray &w : b.rays()) {
            for (const auto &index : others) {
                members.push_back(lift(w, index));
            }
        }
        bases.emplace_back(std::move(members));
    }
    std::string name = "unentangled";
    for (size_t k = 0; k < dims.size(); k++) {
        name += (k == 0 ? "_" : "x") + std::to_string(dims[k]);
    }
    return make_entry(
        name, "Direct product bases of a KS set with computational bases of the other subsystems",
        scenario_from_rays(rays, bases), dims);
}

CatalogEntry two_qubit_axis_products() {
    using namespace kets;
    std::vector<Ray> axis = {zero(), one(), plus(), minus(), plus_i(), minus_i()};
    std::vector<Ray> rays;
    for (const Ray &a : axis) {
        for (const Ray &b : axis) {
            rays.push_back(tensor({a, b}));
        }
    }
    return make_entry(
        "two_qubit_axis_products", "Products of the six axis states on two qubits, all-bases closure",
        scenario_from_rays(rays), {2, 2});
}

CatalogEntry three_qubit_xz_products() {
    using namespace kets;
    std::vector<Ray> axis = {zero(), one(), plus(), minus()};
    std::vector<Ray> rays;
    for (const Ray &a : axis) {
        for (const Ray &b : axis) {
            for (const Ray &c : axis) {
                rays.push_back(tensor({a, b, c}));
            }
        }
    }
    return make_entry(
        "three_qubit_xz_products", "Products of |0>,|1>,|+>,|-> on three qubits, all-bases closure",
        scenario_from_rays(rays), {2, 2, 2});
}

namespace {

struct Builder {
    const char *name;
    std::function<CatalogEntry()> build;
};

const std::vector<Builder> &builders() {
    static const std::vector<Builder> table = {
        {"peres_mermin", peres_mermin_scenario},
        {"peres57", peres57},
        {"two_qubit_ks", two_qubit_ks_set},
        {"eq1_basis", eq1_basis_scenario},
        {"unentangled_2x3", [] { return unentangled_ks_set({2, 3}); }},
        {"two_qubit_axis_products", two_qubit_axis_products},
        {"three_qubit_xz_products", three_qubit_xz_products},
    };
    return table;
}

// Reference values the rebuilt entries are compared with.
struct Reference {
    std::optional<size_t> vertices;
    std::optional<size_t> hyperedges;
    bool colourable;
};

const std::map<std::string, Reference> &references() {
    static const std::map<std::string, Reference> table = {
        {"peres_mermin", {24, 24, false}},
        {"peres57", {57, 40, false}},
        {"two_qubit_ks", {115, 80, false}},
        {"eq1_basis", {8, 1, true}},
        {"unentangled_2x3", {114, 40, false}},
        {"two_qubit_axis_products", {36, 45, true}},
        {"three_qubit_xz_products", {64, 744, true}},
    };
    return table;
}

std::string yes_no(bool b) {
    return b ? "true" : "false";
}

void add_check(std::vector<CatalogCheck> &out, std::string name, std::string expected, std::string observed) {
    bool pass = expected == observed;
    out.push_back(CatalogCheck{std::move(name), std::move(expected), std::move(observed), pass});
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto &b : builders()) {
        out.emplace_back(b.name);
    }
    return out;
}

CatalogEntry build_catalog_entry(const std::string &name) {
    for (const auto &b : builders()) {
        if (name == b.name) {
            return b.build();
        }
    }
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
}

bool all_rays_product(const CatalogEntry &entry) {
    return std::all_of(entry.assignment.rays.begin(), entry.assignment.rays.end(), [&](const Ray &r) {
        return is_product(r, entry.subsystem_dims);
    });
}

std::vector<CatalogCheck> verify_catalog_entry(const CatalogEntry &entry) {
    std::vector<CatalogCheck> out;
    const Scenario &s = entry.scenario;
    ExpectedProperties seen = observe(s);

    auto ref = references().find(entry.name);
    if (ref != references().end()) {
        if (ref->second.vertices) {
            add_check(out, "vertex_count", std::to_string(*ref->second.vertices), std::to_string(seen.vertex_count));
        }
        if (ref->second.hyperedges) {
            add_check(
                out, "hyperedge_count", std::to_string(*ref->second.hyperedges), std::to_string(seen.hyperedge_count));
        }
        add_check(out, "colourable", yes_no(ref->second.colourable), yes_no(seen.colourable));
    }
    add_check(
        out, "recorded_counts_match",
        std::to_string(entry.expected.vertex_count) + "/" + std::to_string(entry.expected.hyperedge_count),
        std::to_string(seen.vertex_count) + "/" + std::to_string(seen.hyperedge_count));
    add_check(out, "recorded_colourability_matches", yes_no(entry.expected.colourable), yes_no(seen.colourable));

    size_t d = entry.assignment.dim();
    size_t bad_edges = 0;
    for (const auto &e : s.hyperedges()) {
        std::vector<Ray> members;
        for (size_t v : e) {
            members.push_back(entry.assignment.rays[v]);
        }
        bool complete = members.size() == d;
        for (size_t i = 0; complete && i < members.size(); i++) {
            for (size_t j = i + 1; j < members.size(); j++) {
                if (!is_orthogonal(members[i], members[j])) {
                    complete = false;
                    break;
                }
            }
        }
        bad_edges += complete ? 0 : 1;
    }
    add_check(out, "hyperedges_are_bases", "0", std::to_string(bad_edges));

    bool product = all_rays_product(entry);
    bool qubits = std::all_of(entry.subsystem_dims.begin(), entry.subsystem_dims.end(), [](size_t x) { return x == 2; });
    if (product && qubits) {
        bool valid = is_valid_colouring(s, all_north_colouring(s, entry.assignment));
        add_check(out, "all_north_colouring_valid", "true", yes_no(valid));
    }

    if (entry.name == "peres57") {
        add_check(out, "seed_ray_count", "33", std::to_string(peres33_rays().size()));
        size_t again = complete_pairs(entry.assignment.rays).assignment.rays.size();
        add_check(out, "closure_idempotent", std::to_string(seen.vertex_count), std::to_string(again));
    } else if (entry.name == "two_qubit_ks") {
        TwoQubitKsDiagnostics diag = two_qubit_ks_diagnostics(entry);
        add_check(out, "cross_overlaps_nonzero", "true", yes_no(diag.min_cross_overlap > 1e-9));
        add_check(out, "fully_entangled_hyperedges", "0", std::to_string(diag.fully_entangled_hyperedges));
        add_check(out, "computational_basis_present", "true", yes_no(diag.has_computational_basis));
    } else if (entry.name == "peres_mermin") {
        size_t found = 0;
        for (const Basis &b : peres_mermin_contexts()) {
            std::vector<size_t> edge;
            for (const Ray &r : b.rays()) {
                for (size_t v = 0; v < entry.assignment.rays.size(); v++) {
                    if (entry.assignment.rays[v].same_ray(r)) {
                        edge.push_back(v);
                    }
                }
            }
            std::sort(edge.begin(), edge.end());
            const auto &edges = s.hyperedges();
            found += std::find(edges.begin(), edges.end(), edge) != edges.end() ? 1 : 0;
        }
        add_check(out, "context_bases_present", "6", std::to_string(found));
    } else if (entry.name.rfind("unentangled", 0) == 0) {
        add_check(out, "all_rays_product", "true", yes_no(product));
    }
    return out;
}

}  // namespace ksforge
