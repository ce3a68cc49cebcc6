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

#include "ksforge/colouring.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ksforge {

ProductBasis::ProductBasis(std::vector<ProductRay> rays) : rays_(std::move(rays)) {
    if (rays_.empty()) {
        throw std::invalid_argument("product basis must be non-empty");
    }
    size_t n = rays_.front().num_factors();
    if (n >= 8 * sizeof(size_t) || rays_.size() != (size_t{1} << n)) {
        throw std::invalid_argument(
            "a product basis on " + std::to_string(n) + " qubits needs 2^n members, got " +
            std::to_string(rays_.size()));
    }
    for (const ProductRay &p : rays_) {
        if (p.num_factors() != n) {
            throw std::invalid_argument("product basis members have different qubit counts");
        }
        for (const Ray &f : p.factors()) {
            if (f.dim() != 2) {
                throw std::invalid_argument("product basis factors must be qubits");
            }
        }
    }
    std::vector<Ray> flat = flattened();
    for (size_t i = 0; i < flat.size(); i++) {
        for (size_t j = i + 1; j < flat.size(); j++) {
            if (!is_orthogonal(flat[i], flat[j])) {
                throw std::invalid_argument(
                    "product basis members " + std::to_string(i) + " and " + std::to_string(j) +
                    " are not orthogonal");
            }
        }
    }
}

std::vector<Ray> ProductBasis::flattened() const {
    std::vector<Ray> out;
    out.reserve(rays_.size());
    for (const ProductRay &p : rays_) {
        out.push_back(p.flatten());
    }
    return out;
}

namespace {

size_t qubit_count(size_t dim) {
    size_t n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    if ((size_t{1} << n) != dim) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return n;
}

}  // namespace

Colouring all_north_colouring(const Scenario &s, const RayAssignment &a) {
    if (a.rays.size() != s.num_vertices()) {
        throw std::invalid_argument("ray assignment size does not match the scenario");
    }
    Colouring c;
    c.values.reserve(a.rays.size());
    for (size_t v = 0; v < a.rays.size(); v++) {
        const Ray &r = a.rays[v];
        std::vector<size_t> dims(qubit_count(r.dim()), 2);
        auto p = is_product_ray(r, dims);
        if (!p) {
            throw std::invalid_argument(
                "vertex '" + s.vertex_ids()[v] + "' carries an entangled ray; the all-north colouring needs product rays");
        }
        c.values.push_back(is_all_north(*p) ? 1 : 0);
    }
    return c;
}

Ray haar_qubit_ray(CounterRng &rng) {
    double u = rng.uniform();
    double v = rng.uniform();
    return qubit_ray(std::acos(1 - 2 * u), 2 * std::numbers::pi * v);
}

namespace {

// Bases over `remaining` qubits, each member listing factors in qubit order.
std::vector<std::vector<Ray>> split_recursive(size_t remaining, const SplitChooser &choose) {
    SplitChoice choice = choose(remaining);
    if (choice.position >= remaining) {
        throw std::invalid_argument("split position out of range");
    }
    if (choice.ray.dim() != 2) {
        throw std::invalid_argument("split ray must be a qubit ray");
    }
    Ray perp = qubit_complement(choice.ray);
    if (remaining == 1) {
        return {{choice.ray}, {perp}};
    }
    std::vector<std::vector<Ray>> out;
    for (const Ray *fixed : {&choice.ray, &perp}) {
        for (auto &rest : split_recursive(remaining - 1, choose)) {
            rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(choice.position), *fixed);
            out.push_back(std::move(rest));
        }
    }
    return out;
}

}  // namespace

ProductBasis product_basis_by_splitting(size_t n, const SplitChooser &choose) {
    if (n == 0) {
        throw std::invalid_argument("a product basis needs at least one qubit");
    }
    std::vector<ProductRay> members;
    for (auto &factors : split_recursive(n, choose)) {
        members.emplace_back(std::move(factors));
    }
    return ProductBasis(std::move(members));
}

ProductBasis random_product_basis(size_t n, CounterRng &rng) {
    return product_basis_by_splitting(n, [&rng](size_t remaining) {
        SplitChoice c;
        c.position = rng.below(remaining);
        c.ray = haar_qubit_ray(rng);
        return c;
    });
}

bool verify_exactly_one_north(const ProductBasis &b) {
    size_t count = 0;
    for (const ProductRay &p : b.rays()) {
        count += is_all_north(p) ? 1 : 0;
    }
    return count == 1;
}

std::optional<size_t> splitting_position(const ProductBasis &b) {
    for (size_t q = 0; q < b.num_qubits(); q++) {
        const Ray &anchor = b.rays().front().factor(q);
        bool splits = true;
        for (const ProductRay &p : b.rays()) {
            const Ray &f = p.factor(q);
            if (!f.same_ray(anchor) && !is_orthogonal(f, anchor)) {
                splits = false;
                break;
            }
        }
        if (splits) {
            return q;
        }
    }
    return std::nullopt;
}

namespace {

Eigen::VectorXcd to_vector(const Ray &r) {
    Eigen::VectorXcd v(r.dim());
    for (size_t k = 0; k < r.dim(); k++) {
        v(k) = r[k];
    }
    return v;
}

}  // namespace

ObservableWithProductEigenbasis::ObservableWithProductEigenbasis(std::vector<Eigenspace> spectrum)
    : spectrum_(std::move(spectrum)) {
    if (spectrum_.empty()) {
        throw std::invalid_argument("observable needs at least one eigenspace");
    }
    std::vector<Ray> flat;
    for (size_t j = 0; j < spectrum_.size(); j++) {
        if (spectrum_[j].support.empty()) {
            throw std::invalid_argument("eigenspace " + std::to_string(j) + " is empty");
        }
        for (size_t k = 0; k < j; k++) {
            if (std::abs(spectrum_[j].value - spectrum_[k].value) <= 1e-9) {
                throw std::invalid_argument("two eigenspaces share an eigenvalue");
            }
        }
        for (const ProductRay &p : spectrum_[j].support) {
            flat.push_back(p.flatten());
        }
    }
    size_t d = flat.front().dim();
    if (flat.size() != d) {
        throw std::invalid_argument("eigenspace supports do not span the space");
    }
    Basis check(flat);
    matrix_ = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd identity = Eigen::MatrixXcd::Zero(d, d);
    size_t k = 0;
    for (const Eigenspace &e : spectrum_) {
        for (size_t i = 0; i < e.support.size(); i++, k++) {
            Eigen::VectorXcd v = to_vector(flat[k]);
            Eigen::MatrixXcd proj = v * v.adjoint();
            matrix_ += e.value * proj;
            identity += proj;
        }
    }
    if ((identity - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("spectral projectors do not sum to the identity");
    }
}

ObservableWithProductEigenbasis ObservableWithProductEigenbasis::apply_polynomial(
    const std::vector<double> &coefficients) const {
    auto g = [&](double x) {
        double acc = 0;
        for (size_t k = coefficients.size(); k-- > 0;) {
            acc = acc * x + coefficients[k];
        }
        return acc;
    };
    std::vector<Eigenspace> merged;
    for (const Eigenspace &e : spectrum_) {
        double y = g(e.value);
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Eigenspace &m) {
            return std::abs(m.value - y) <= 1e-9;
        });
        if (it == merged.end()) {
            merged.push_back(Eigenspace{y, e.support});
        } else {
            it->support.insert(it->support.end(), e.support.begin(), e.support.end());
        }
    }
    return ObservableWithProductEigenbasis(std::move(merged));
}

RayColouring all_north_ray_colouring() {
    return [](const ProductRay &p) -> std::optional<int> {
        for (const Ray &f : p.factors()) {
            if (f.dim() != 2) {
                return std::nullopt;
            }
        }
        return is_all_north(p) ? 1 : 0;
    };
}

double valuation_from_colouring(const ObservableWithProductEigenbasis &a, const RayColouring &c) {
    double value = 0;
    int coloured = 0;
    for (const Eigenspace &e : a.spectrum()) {
        int projector_value = 0;
        for (const ProductRay &p : e.support) {
            std::optional<int> x = c(p);
            if (!x) {
                throw std::invalid_argument("colouring is undefined on an eigenprojector ray");
            }
            projector_value += *x;
        }
        if (projector_value != 0 && projector_value != 1) {
            throw std::invalid_argument("colouring gives an eigenprojector a value other than 0 or 1");
        }
        coloured += projector_value;
        value += e.value * projector_value;
    }
    if (coloured != 1) {
        throw std::invalid_argument(
            "colouring assigns 1 to " + std::to_string(coloured) + " eigenprojectors instead of exactly one");
    }
    return value;
}

}  // namespace ksforge
