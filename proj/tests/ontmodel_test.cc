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

#include "ksforge/ontmodel.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ksforge/catalog.h"

using namespace ksforge;

namespace {

constexpr double kPi = std::numbers::pi;

ProductRay pr(std::initializer_list<Ray> f) {
    return ProductRay(std::vector<Ray>(f));
}

BlochPoint uniform_point(CounterRng &rng) {
    return BlochPoint{std::acos(1 - 2 * rng.uniform()), 2 * kPi * rng.uniform()};
}

double dot(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double overlap_sq(const ProductRay &a, const ProductRay &b) {
    double p = 1;
    for (size_t j = 0; j < a.num_factors(); j++) {
        p *= std::norm(inner_product(a.factor(j), b.factor(j)));
    }
    return p;
}

ProductRay random_product(size_t n, CounterRng &rng) {
    std::vector<Ray> f;
    for (size_t j = 0; j < n; j++) {
        f.push_back(haar_qubit_ray(rng));
    }
    return ProductRay(f);
}

}  // namespace

TEST(Response, Examples) {
    OnticState poles{{BlochPoint{0, 0}, BlochPoint{0, 0}}};
    EXPECT_EQ(response(pr({kets::zero(), kets::zero()}), poles), 1);
    EXPECT_EQ(response(pr({kets::one()}), OnticState{{BlochPoint{0, 0}}}), 0);
    EXPECT_EQ(response(pr({kets::one()}), OnticState{{BlochPoint{kPi, 0}}}), 1);
    EXPECT_THROW(response(pr({kets::zero()}), poles), std::invalid_argument);
    EXPECT_THROW(response(pr({Ray::basis(3, 0)}), OnticState{{BlochPoint{0, 0}}}), std::invalid_argument);
}

TEST(Response, OneHemisphereAroundLambda) {
    // Away from the boundary, a qubit ray responds iff its Bloch vector lies
    // within 90 degrees of lambda.
    CounterRng rng(41, 0);
    for (int t = 0; t < 20000; t++) {
        Ray psi = haar_qubit_ray(rng);
        BlochPoint lam = uniform_point(rng);
        double c = dot(bloch_vector(psi), bloch_vector(lam));
        if (std::abs(c) < 1e-6) {
            continue;
        }
        EXPECT_EQ(response(ProductRay({psi}), OnticState{{lam}}), c > 0 ? 1 : 0) << "trial " << t;
    }
}

TEST(Response, IsDeterministic) {
    CounterRng rng(42, 0);
    for (int t = 0; t < 1000; t++) {
        ProductRay psi = random_product(3, rng);
        OnticState lam{{uniform_point(rng), uniform_point(rng), uniform_point(rng)}};
        EXPECT_EQ(response(psi, lam), response(psi, lam));
    }
}

TEST(Response, ExactlyOneOutcomePerBasis) {
    for (uint64_t t = 0; t < 10000; t++) {
        CounterRng rng(43, t);
        size_t n = 1 + rng.below(4);
        ProductBasis b = random_product_basis(n, rng);
        OnticState lam;
        for (size_t j = 0; j < n; j++) {
            lam.points.push_back(uniform_point(rng));
        }
        int total = 0;
        for (const ProductRay &p : b.rays()) {
            total += response(p, lam);
        }
        EXPECT_EQ(total, 1) << "trial " << t;
    }
}

TEST(Response, ExactlyOneOutcomeAtPolesAndEquator) {
    // Lambdas on the axes place basis vectors exactly on the boundary.
    std::vector<BlochPoint> axes = {{0, 0},          {kPi, 0},         {kPi / 2, 0},
                                    {kPi / 2, kPi},  {kPi / 2, kPi / 2}, {kPi / 2, 3 * kPi / 2}};
    std::vector<Ray> states = {kets::zero(), kets::one(), kets::plus(), kets::minus(), kets::plus_i(), kets::minus_i()};
    for (const BlochPoint &l : axes) {
        for (size_t s = 0; s < states.size(); s += 2) {
            int total = response(pr({states[s]}), OnticState{{l}}) + response(pr({states[s + 1]}), OnticState{{l}});
            EXPECT_EQ(total, 1);
        }
    }
}

TEST(RotationFromPole, TakesPoleToTarget) {
    CounterRng rng(44, 0);
    for (int t = 0; t < 1000; t++) {
        auto v = bloch_vector(uniform_point(rng));
        if (t == 0) {
            v = {0, 0, 1};
        } else if (t == 1) {
            v = {0, 0, -1};
        }
        auto r = rotation_from_pole(v);
        for (int i = 0; i < 3; i++) {
            EXPECT_NEAR(r[i][2], v[i], 1e-12);
            for (int j = 0; j < 3; j++) {
                double g = 0;
                for (int k = 0; k < 3; k++) {
                    g += r[k][i] * r[k][j];
                }
                EXPECT_NEAR(g, i == j ? 1.0 : 0.0, 1e-12);
            }
        }
        double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                     r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                     r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        EXPECT_NEAR(det, 1, 1e-12);
    }
}

TEST(SampleOntic, SupportAndMeanCosine) {
    // Oracle for E[chi.lambda]: midpoint rule of (1/pi) c^2 over the hemisphere.
    const int m = 20000;
    double oracle = 0;
    for (int k = 0; k < m; k++) {
        double th = (k + 0.5) * (kPi / 2) / m;
        oracle += std::cos(th) * std::cos(th) * std::sin(th) * 2 * kPi / kPi * (kPi / 2) / m;
    }
    EXPECT_NEAR(oracle, 2.0 / 3, 1e-8);

    ProductRay chi({qubit_ray(1.2, 4.0)});
    auto c = bloch_vector(chi.factor(0));
    CounterRng rng(45, 0);
    const int n = 1000000;
    double sum = 0;
    for (int k = 0; k < n; k++) {
        OnticState s = sample_ontic(chi, rng);
        double d = dot(c, bloch_vector(s.points[0]));
        ASSERT_GT(d, 0);
        sum += d;
    }
    double sigma = std::sqrt(1.0 / 18 / n);
    EXPECT_LT(std::abs(sum / n - oracle), 3 * sigma);
}

TEST(SampleOntic, PoleStatesAndFactorIndependence) {
    CounterRng rng(46, 0);
    ProductRay chi = pr({kets::zero(), kets::one(), kets::plus()});
    std::vector<std::array<double, 3>> axes;
    for (const Ray &f : chi.factors()) {
        axes.push_back(bloch_vector(f));
    }
    const int n = 200000;
    double s0 = 0, s1 = 0, s01 = 0;
    for (int k = 0; k < n; k++) {
        OnticState s = sample_ontic(chi, rng);
        ASSERT_EQ(s.points.size(), 3u);
        double d[3];
        for (int j = 0; j < 3; j++) {
            d[j] = dot(axes[j], bloch_vector(s.points[j]));
            ASSERT_GT(d[j], 0);
        }
        s0 += d[0];
        s1 += d[1];
        s01 += d[0] * d[1];
    }
    double cov = s01 / n - (s0 / n) * (s1 / n);
    EXPECT_LT(std::abs(cov), 5 * (1.0 / 18) / std::sqrt(n));
}

TEST(Born, Examples) {
    EXPECT_DOUBLE_EQ(born(kets::zero(), DensityOperator::pure(kets::zero())), 1.0);
    EXPECT_NEAR(born(kets::zero(), DensityOperator::maximally_mixed(2)), 0.5, 1e-15);
    EXPECT_NEAR(born(kets::plus(), DensityOperator::pure(kets::zero())), 0.5, 1e-15);
    EXPECT_THROW(born(kets::zero(), DensityOperator::maximally_mixed(4)), std::invalid_argument);
}

TEST(Simulate, Examples) {
    SimConfig cfg{1000000, 42, 1};
    Estimate same = simulate_probability(pr({kets::zero(), kets::zero()}),
                                         EpistemicState::pure(pr({kets::zero(), kets::zero()})), cfg);
    EXPECT_EQ(same.estimate, 1.0);
    EXPECT_EQ(same.std_error, 0.0);
    EXPECT_EQ(same.hits, cfg.samples);

    Estimate half = simulate_probability(pr({kets::plus()}), EpistemicState::pure(pr({kets::zero()})), cfg);
    EXPECT_LT(std::abs(half.estimate - 0.5), 3 * half.std_error);
    EXPECT_NEAR(half.std_error, std::sqrt(half.estimate * (1 - half.estimate) / cfg.samples), 1e-15);
    EXPECT_THROW(simulate_probability(pr({kets::plus()}), EpistemicState::pure(pr({kets::zero(), kets::zero()})), cfg),
                 std::invalid_argument);
}

TEST(Simulate, IndependentOfJobs) {
    CounterRng rng(47, 0);
    ProductRay psi = random_product(2, rng);
    ProductRay chi = random_product(2, rng);
    Estimate a = simulate_probability(psi, EpistemicState::pure(chi), SimConfig{100003, 9, 1});
    Estimate b = simulate_probability(psi, EpistemicState::pure(chi), SimConfig{100003, 9, 4});
    Estimate c = simulate_probability(psi, EpistemicState::pure(chi), SimConfig{100003, 9, 7});
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_EQ(a.hits, c.hits);
    Estimate d = simulate_probability(psi, EpistemicState::pure(chi), SimConfig{100003, 10, 1});
    EXPECT_NE(a.hits, d.hits);
}

TEST(Simulate, BornAgreementOnRandomPairs) {
    // Reduced version of the full acceptance run; 4 sigma per pair.
    size_t failures = 0;
    for (size_t n = 1; n <= 3; n++) {
        for (uint64_t t = 0; t < 10; t++) {
            CounterRng rng(48, n * 1000 + t);
            ProductRay psi = random_product(n, rng);
            ProductRay chi = random_product(n, rng);
            Estimate e = simulate_probability(psi, EpistemicState::pure(chi), SimConfig{200000, 1000 * n + t, 2});
            double expected = overlap_sq(psi, chi);
            double sigma = std::max(e.std_error, 1.0 / e.samples);
            failures += std::abs(e.estimate - expected) > 4 * sigma ? 1 : 0;
        }
    }
    EXPECT_EQ(failures, 0u);
}

TEST(Simulate, MixtureMatchesDensity) {
    CounterRng rng(49, 0);
    ProductRay a = random_product(2, rng), b = random_product(2, rng), psi = random_product(2, rng);
    EpistemicState mix = EpistemicState::mixture({{0.3, a}, {0.7, b}});
    double expected = born(psi.flatten(), mix.density());
    EXPECT_NEAR(expected, 0.3 * overlap_sq(psi, a) + 0.7 * overlap_sq(psi, b), 1e-12);
    Estimate e = simulate_probability(psi, mix, SimConfig{400000, 5, 3});
    EXPECT_LT(std::abs(e.estimate - expected), 3 * e.std_error);

    EXPECT_THROW(EpistemicState::mixture({{0.3, a}, {0.6, b}}), std::invalid_argument);
    EXPECT_THROW(EpistemicState::mixture({{-0.1, a}, {1.1, b}}), std::invalid_argument);
    EXPECT_THROW(EpistemicState::mixture({{0.5, a}, {0.5, pr({kets::zero()})}}), std::invalid_argument);
}

TEST(Simulate, DecompositionsAgreeOnFrequenciesNotOnticStates) {
    // I/2 as {|0>,|1>} and as {|+>,|->}.
    EpistemicState z = EpistemicState::mixture({{0.5, pr({kets::zero()})}, {0.5, pr({kets::one()})}});
    EpistemicState x = EpistemicState::mixture({{0.5, pr({kets::plus()})}, {0.5, pr({kets::minus()})}});
    EXPECT_LT((z.density().matrix() - x.density().matrix()).norm(), 1e-12);
    CounterRng rng(50, 0);
    for (int t = 0; t < 5; t++) {
        ProductRay psi({haar_qubit_ray(rng)});
        Estimate ez = simulate_probability(psi, z, SimConfig{200000, 11, 1});
        Estimate ex = simulate_probability(psi, x, SimConfig{200000, 12, 1});
        double sigma = std::sqrt(ez.std_error * ez.std_error + ex.std_error * ex.std_error);
        EXPECT_LT(std::abs(ez.estimate - ex.estimate), 3 * sigma);
    }
    // Ontic level: |z| of lambda concentrates near the poles for the Z
    // decomposition and near the equator for the X one.
    CounterRng r1(51, 0), r2(52, 0);
    double mz = 0, mx = 0;
    const int n = 100000;
    for (int k = 0; k < n; k++) {
        const auto &zc = z.components()[k % 2].state;
        const auto &xc = x.components()[k % 2].state;
        mz += std::abs(bloch_vector(sample_ontic(zc, r1).points[0])[2]);
        mx += std::abs(bloch_vector(sample_ontic(xc, r2).points[0])[2]);
    }
    EXPECT_GT(mz / n - mx / n, 0.1);
}

TEST(BasisMeasurement, Examples) {
    std::vector<ProductRay> comp;
    for (int k = 0; k < 4; k++) {
        comp.push_back(pr({k & 2 ? kets::one() : kets::zero(), k & 1 ? kets::one() : kets::zero()}));
    }
    SimConfig cfg{100000, 3, 2};
    auto f = simulate_basis_measurement(ProductBasis(comp), EpistemicState::pure(comp[0]), cfg);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0].estimate, 1.0);
    EXPECT_EQ(f[1].hits + f[2].hits + f[3].hits, 0u);

    ProductBasis eq1 = nonlocal_basis_eq1();
    ProductRay zero3 = pr({kets::zero(), kets::zero(), kets::zero()});
    auto g = simulate_basis_measurement(eq1, EpistemicState::pure(zero3), cfg);
    EXPECT_EQ(g[0].estimate, 1.0);
    EXPECT_EQ(g[1].estimate, 0.0);

    ProductRay plus3 = pr({kets::plus(), kets::plus(), kets::plus()});
    SimConfig big{1000000, 4, 4};
    auto h = simulate_basis_measurement(eq1, EpistemicState::pure(plus3), big);
    uint64_t total = 0;
    for (size_t k = 0; k < 8; k++) {
        double expected = overlap_sq(eq1.rays()[k], plus3);
        double sigma = std::sqrt(expected * (1 - expected) / big.samples);
        EXPECT_LT(std::abs(h[k].estimate - expected), 4 * std::max(sigma, 1.0 / big.samples)) << k;
        total += h[k].hits;
    }
    EXPECT_EQ(total, big.samples);
}

TEST(HemisphereIntegral, MatchesClosedForm) {
    CounterRng rng(53, 0);
    for (double phi : {0.0, kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3, kPi}) {
        // psi at Bloch angle phi from chi, both in a random frame.
        Ray chi = qubit_ray(0, 0);
        Ray psi = qubit_ray(phi, 0);
        double expected = (1 + std::cos(phi)) / 2;
        double h0 = hemisphere_integral(psi, chi, Heaviside::h0);
        double h1 = hemisphere_integral(psi, chi, Heaviside::h1);
        EXPECT_NEAR(h0, expected, 1e-6) << phi;
        EXPECT_NEAR(h1, expected, 1e-6) << phi;
        EXPECT_NEAR(h0, h1, 2e-6) << phi;
    }
    for (int t = 0; t < 20; t++) {
        Ray psi = haar_qubit_ray(rng);
        Ray chi = haar_qubit_ray(rng);
        double expected = std::norm(inner_product(psi, chi));
        EXPECT_NEAR(hemisphere_integral(psi, chi, Heaviside::h0), expected, 1e-6);
        EXPECT_NEAR(hemisphere_integral(psi, chi, Heaviside::h1), expected, 1e-6);
    }
}
