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

#ifndef KSFORGE_RAYS_H
#define KSFORGE_RAYS_H

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <array>

namespace ksforge {

using Complex = std::complex<double>;

inline constexpr double kOrthogonalityTol = 1e-9;
inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kNorthEps = 1e-9;
/// Amplitudes below this modulus are treated as zero when fixing the phase.
inline constexpr double kPhaseThreshold = 1e-9;

/// A unit vector of C^d standing for its ray.
///
/// Rays are stored in canonical phase: the first amplitude with modulus above
/// kPhaseThreshold is real and positive. Construction normalizes its input.
class Ray {
   public:
    /// Normalizes and canonicalizes. Throws std::invalid_argument on an empty,
    /// zero, or non-finite vector.
    explicit Ray(std::vector<Complex> amplitudes);

    /// The computational basis vector |index> of C^dim.
    static Ray basis(size_t dim, size_t index);

    size_t dim() const {
        return amps_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amps_;
    }
    const Complex &operator[](size_t k) const {
        return amps_[k];
    }

    /// True when both vectors represent the same ray: after aligning the global
    /// phase every amplitude agrees within tol.
    bool same_ray(const Ray &other, double tol = kOrthogonalityTol) const;

   private:
    std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in a. Throws std::invalid_argument on dim mismatch.
Complex inner_product(const Ray &a, const Ray &b);

bool is_orthogonal(const Ray &a, const Ray &b, double tol = kOrthogonalityTol);

/// Row-major Kronecker product. Throws std::invalid_argument on an empty list.
Ray tensor(std::span<const Ray> factors);
Ray tensor(std::initializer_list<Ray> factors);

/// Point on the Bloch sphere: theta in [0, pi], phi in [0, 2 pi).
struct BlochPoint {
    double theta = 0;
    double phi = 0;
};

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
Ray qubit_ray(double theta, double phi);
Ray qubit_ray(BlochPoint p);

/// Inverse of qubit_ray up to global phase. At the poles phi is fixed to 0.
/// Throws std::invalid_argument if q is not a qubit ray.
BlochPoint bloch_of(const Ray &q);

/// Cartesian unit vector of the Bloch point.
std::array<double, 3> bloch_vector(BlochPoint p);
std::array<double, 3> bloch_vector(const Ray &q);

/// The qubit ray orthogonal to q.
Ray qubit_complement(const Ray &q);

bool is_north(BlochPoint p);
bool is_north(const Ray &q);

namespace kets {
Ray zero();
Ray one();
Ray plus();
Ray minus();
Ray plus_i();
Ray minus_i();
}  // namespace kets

/// A ray of a composite system that factors as a tensor product.
class ProductRay {
   public:
    /// Throws std::invalid_argument on an empty factor list.
    explicit ProductRay(std::vector<Ray> factors);

    size_t num_factors() const {
        return factors_.size();
    }
    const std::vector<Ray> &factors() const {
        return factors_;
    }
    const Ray &factor(size_t k) const {
        return factors_[k];
    }
    std::vector<size_t> dims() const;
    Ray flatten() const;

    /// Factor-wise same_ray.
    bool same_ray(const ProductRay &other, double tol = kOrthogonalityTol) const;

   private:
    std::vector<Ray> factors_;
};

/// True iff every factor is north. Throws std::invalid_argument when some
/// factor is not a qubit.
bool is_all_north(const ProductRay &p);

/// Factorizes r over the subsystem dims when every single-subsystem reduced
/// state has purity at least 1 - tol. Each factor is the dominant eigenvector
/// of its reduced operator. Throws std::invalid_argument if the dims do not
/// multiply to r.dim().
std::optional<ProductRay> is_product_ray(const Ray &r, std::span<const size_t> dims, double tol = 1e-9);

/// Purity Tr(rho_k^2) of the reduced state on subsystem k.
double reduced_purity(const Ray &r, std::span<const size_t> dims, size_t k);

/// Orthonormal basis of C^dim.
class Basis {
   public:
    /// Throws std::invalid_argument unless there are exactly dim rays, all of
    /// dimension dim, pairwise orthogonal and pairwise distinct.
    explicit Basis(std::vector<Ray> rays);

    size_t dim() const {
        return rays_.size();
    }
    const std::vector<Ray> &rays() const {
        return rays_;
    }

   private:
    std::vector<Ray> rays_;
};

}  // namespace ksforge

#endif
