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

#include "ksforge/rays.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ksforge {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void canonicalize(std::vector<Complex> &v) {
    for (const Complex &a : v) {
        double m = std::abs(a);
        if (m > kPhaseThreshold) {
            Complex phase = std::conj(a) / m;
            for (Complex &b : v) {
                b *= phase;
            }
            break;
        }
    }
    // The leading component is real by construction; drop the rounding residue.
    for (Complex &a : v) {
        if (std::abs(a) > kPhaseThreshold) {
            a = Complex(a.real(), 0);
            break;
        }
    }
}

void require_same_dim(const Ray &a, const Ray &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(
            "ray dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

void require_qubit(const Ray &q) {
    if (q.dim() != 2) {
        throw std::invalid_argument("expected a qubit ray, got dim " + std::to_string(q.dim()));
    }
}

Eigen::MatrixXcd reduced_operator(const Ray &r, std::span<const size_t> dims, size_t k) {
    size_t total = 1;
    for (size_t d : dims) {
        if (d == 0) {
            throw std::invalid_argument("subsystem dimension must be positive");
        }
        total *= d;
    }
    if (total != r.dim()) {
        throw std::invalid_argument(
            "subsystem dims multiply to " + std::to_string(total) + " but ray has dim " + std::to_string(r.dim()));
    }
    if (k >= dims.size()) {
        throw std::out_of_range("subsystem index out of range");
    }
    size_t left = 1;
    for (size_t j = 0; j < k; j++) {
        left *= dims[j];
    }
    size_t dk = dims[k];
    size_t right = total / (left * dk);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
    for (size_t l = 0; l < left; l++) {
        for (size_t s = 0; s < right; s++) {
            for (size_t i = 0; i < dk; i++) {
                Complex vi = r[(l * dk + i) * right + s];
                for (size_t j = 0; j < dk; j++) {
                    rho(i, j) += vi * std::conj(r[(l * dk + j) * right + s]);
                }
            }
        }
    }
    return rho;
}

}  // namespace

Ray::Ray(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw std::invalid_argument("ray must have positive dimension");
    }
    double norm2 = 0;
    for (const Complex &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("ray amplitude is not finite");
        }
        norm2 += std::norm(a);
    }
    if (norm2 < 1e-24) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    double inv = 1 / std::sqrt(norm2);
    for (Complex &a : amps_) {
        a *= inv;
    }
    canonicalize(amps_);
}

Ray Ray::basis(size_t dim, size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    std::vector<Complex> v(dim);
    v[index] = 1;
    return Ray(std::move(v));
}

bool Ray::same_ray(const Ray &other, double tol) const {
    if (dim() != other.dim()) {
        return false;
    }
    Complex overlap = inner_product(*this, other);
    double m = std::abs(overlap);
    if (m < 0.5) {
        return false;
    }
    Complex phase = overlap / m;
    for (size_t k = 0; k < dim(); k++) {
        if (std::abs(other.amps_[k] - phase * amps_[k]) > tol) {
            return false;
        }
    }
    return true;
}

Complex inner_product(const Ray &a, const Ray &b) {
    require_same_dim(a, b);
    Complex acc = 0;
    for (size_t k = 0; k < a.dim(); k++) {
        acc += std::conj(a[k]) * b[k];
    }
    return acc;
}

bool is_orthogonal(const Ray &a, const Ray &b, double tol) {
    return std::abs(inner_product(a, b)) <= tol;
}

Ray tensor(std::span<const Ray> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("tensor product of an empty factor list");
    }
    std::vector<Complex> acc(factors[0].amplitudes().begin(), factors[0].amplitudes().end());
    for (size_t f = 1; f < factors.size(); f++) {
        const Ray &next = factors[f];
        std::vector<Complex> out;
        out.reserve(acc.size() * next.dim());
        for (const Complex &a : acc) {
            for (const Complex &b : next.amplitudes()) {
                out.push_back(a * b);
            }
        }
        acc = std::move(out);
    }
    return Ray(std::move(acc));
}

Ray tensor(std::initializer_list<Ray> factors) {
    return tensor(std::span<const Ray>(factors.begin(), factors.size()));
}

Ray qubit_ray(double theta, double phi) {
    return Ray({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

Ray qubit_ray(BlochPoint p) {
    return qubit_ray(p.theta, p.phi);
}

BlochPoint bloch_of(const Ray &q) {
    require_qubit(q);
    double m0 = std::abs(q[0]);
    double m1 = std::abs(q[1]);
    BlochPoint p;
    p.theta = 2 * std::atan2(m1, m0);
    if (m0 < 1e-12 || m1 < 1e-12) {
        p.phi = 0;
        return p;
    }
    double phi = std::arg(q[1] * std::conj(q[0]));
    if (phi < 0) {
        phi += kTwoPi;
    }
    if (phi >= kTwoPi) {
        phi -= kTwoPi;
    }
    p.phi = phi;
    return p;
}

std::array<double, 3> bloch_vector(BlochPoint p) {
    return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi), std::cos(p.theta)};
}

std::array<double, 3> bloch_vector(const Ray &q) {
    require_qubit(q);
    Complex c = std::conj(q[0]) * q[1];
    return {2 * c.real(), 2 * c.imag(), std::norm(q[0]) - std::norm(q[1])};
}

Ray qubit_complement(const Ray &q) {
    require_qubit(q);
    return Ray({-std::conj(q[1]), std::conj(q[0])});
}

bool is_north(BlochPoint p) {
    constexpr double half_pi = std::numbers::pi / 2;
    if (p.theta < half_pi - kNorthEps) {
        return true;
    }
    if (std::abs(p.theta - half_pi) > kNorthEps) {
        return false;
    }
    // Equator: phi in (pi, 2 pi], with phi = 0 read as 2 pi so |+> is north.
    double phi = std::fmod(p.phi, kTwoPi);
    if (phi < 0) {
        phi += kTwoPi;
    }
    return phi > std::numbers::pi + kNorthEps || phi <= kNorthEps;
}

bool is_north(const Ray &q) {
    return is_north(bloch_of(q));
}

namespace kets {
Ray zero() {
    return Ray({1, 0});
}
Ray one() {
    return Ray({0, 1});
}
Ray plus() {
    return Ray({1, 1});
}
Ray minus() {
    return Ray({1, -1});
}
Ray plus_i() {
    return Ray({1, Complex(0, 1)});
}
Ray minus_i() {
    return Ray({1, Complex(0, -1)});
}
}  // namespace kets

ProductRay::ProductRay(std::vector<Ray> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("product ray needs at least one factor");
    }
}

std::vector<size_t> ProductRay::dims() const {
    std::vector<size_t> out;
    out.reserve(factors_.size());
    for (const Ray &f : factors_) {
        out.push_back(f.dim());
    }
    return out;
}

Ray ProductRay::flatten() const {
    return tensor(std::span<const Ray>(factors_));
}

bool ProductRay::same_ray(const ProductRay &other, double tol) const {
    if (other.factors_.size() != factors_.size()) {
        return false;
    }
    for (size_t k = 0; k < factors_.size(); k++) {
        if (!factors_[k].same_ray(other.factors_[k], tol)) {
            return false;
        }
    }
    return true;
}

bool is_all_north(const ProductRay &p) {
    for (const Ray &f : p.factors()) {
        require_qubit(f);
    }
    for (const Ray &f : p.factors()) {
        if (!is_north(f)) {
            return false;
        }
    }
    return true;
}

double reduced_purity(const Ray &r, std::span<const size_t> dims, size_t k) {
    Eigen::MatrixXcd rho = reduced_operator(r, dims, k);
    return (rho * rho).trace().real();
}

std::optional<ProductRay> is_product_ray(const Ray &r, std::span<const size_t> dims, double tol) {
    std::vector<Ray> factors;
    factors.reserve(dims.size());
    for (size_t k = 0; k < dims.size(); k++) {
        Eigen::MatrixXcd rho = reduced_operator(r, dims, k);
        if ((rho * rho).trace().real() < 1 - tol) {
            return std::nullopt;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
        Eigen::Index top = rho.rows() - 1;
        std::vector<Complex> v(rho.rows());
        for (Eigen::Index i = 0; i < rho.rows(); i++) {
            v[i] = es.eigenvectors()(i, top);
        }
        factors.emplace_back(std::move(v));
    }
    if (dims.empty()) {
        throw std::invalid_argument("empty subsystem dims");
    }
    return ProductRay(std::move(factors));
}

Basis::Basis(std::vector<Ray> rays) : rays_(std::move(rays)) {
    if (rays_.empty()) {
        throw std::invalid_argument("basis must be non-empty");
    }
    size_t d = rays_.size();
    for (const Ray &r : rays_) {
        if (r.dim() != d) {
            throw std::invalid_argument(
                "basis of " + std::to_string(d) + " rays contains a ray of dim " + std::to_string(r.dim()));
        }
    }
    for (size_t i = 0; i < d; i++) {
        for (size_t j = i + 1; j < d; j++) {
            if (!is_orthogonal(rays_[i], rays_[j])) {
                throw std::invalid_argument(
                    "basis rays " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
            }
        }
    }
}

}  // namespace ksforge
