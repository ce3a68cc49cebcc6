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

#include "ksforge/lp.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "ksforge/rng.h"

using namespace ksforge;

namespace {

void expect_reproduces(const std::vector<std::vector<double>> &points, const std::vector<double> &target,
                       const HullMembership &h) {
    ASSERT_EQ(h.weights.size(), points.size());
    double total = 0;
    std::vector<double> mix(target.size(), 0.0);
    for (size_t k = 0; k < points.size(); k++) {
        EXPECT_GE(h.weights[k], -1e-12);
        total += h.weights[k];
        for (size_t i = 0; i < target.size(); i++) {
            mix[i] += h.weights[k] * points[k][i];
        }
    }
    EXPECT_NEAR(total, 1, 1e-7);
    for (size_t i = 0; i < target.size(); i++) {
        EXPECT_NEAR(mix[i], target[i], 1e-7);
    }
}

void expect_separates(const std::vector<std::vector<double>> &points, const std::vector<double> &target,
                      const HullMembership &h) {
    ASSERT_EQ(h.coefficients.size(), target.size());
    for (const auto &p : points) {
        double v = 0;
        for (size_t i = 0; i < p.size(); i++) {
            v += h.coefficients[i] * p[i];
        }
        EXPECT_LE(v, h.bound + 1e-7);
    }
    double t = 0;
    for (size_t i = 0; i < target.size(); i++) {
        t += h.coefficients[i] * target[i];
    }
    EXPECT_GT(t, h.bound + 1e-7);
}

}  // namespace

TEST(HullMembership, SquareCentreIsInside) {
    std::vector<std::vector<double>> square = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    std::vector<double> centre = {0.5, 0.5};
    HullMembership h = convex_hull_membership(square, centre);
    EXPECT_TRUE(h.feasible);
    expect_reproduces(square, centre, h);
}

TEST(HullMembership, VertexIsInside) {
    std::vector<std::vector<double>> square = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    std::vector<double> corner = {1, 0};
    HullMembership h = convex_hull_membership(square, corner);
    EXPECT_TRUE(h.feasible);
    expect_reproduces(square, corner, h);
}

TEST(HullMembership, OutsidePointGetsSeparatingInequality) {
    std::vector<std::vector<double>> square = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    std::vector<double> outside = {1.2, 0.5};
    HullMembership h = convex_hull_membership(square, outside);
    EXPECT_FALSE(h.feasible);
    EXPECT_GT(h.residual, 1e-7);
    expect_separates(square, outside, h);
}

TEST(HullMembership, EmptyPointSetIsInfeasible) {
    std::vector<std::vector<double>> none;
    std::vector<double> target = {0.5};
    HullMembership h = convex_hull_membership(none, target);
    EXPECT_FALSE(h.feasible);
}

TEST(HullMembership, RejectsMismatchedDimensions) {
    std::vector<std::vector<double>> pts = {{0, 0}, {1}};
    std::vector<double> target = {0, 0};
    EXPECT_THROW(convex_hull_membership(pts, target), std::invalid_argument);
}

TEST(HullMembership, DegenerateDuplicatePoints) {
    std::vector<std::vector<double>> pts = {{0, 0, 1}, {0, 0, 1}, {1, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    std::vector<double> target = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    HullMembership h = convex_hull_membership(pts, target);
    EXPECT_TRUE(h.feasible);
    expect_reproduces(pts, target, h);
}

TEST(HullMembership, RandomMixturesAreInside) {
    CounterRng rng(11, 0);
    for (int t = 0; t < 200; t++) {
        size_t dim = 2 + rng.below(6);
        size_t n = 1 + rng.below(12);
        std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
        for (auto &p : pts) {
            for (double &x : p) {
                x = rng.uniform() < 0.5 ? 0.0 : 1.0;
            }
        }
        std::vector<double> w(n);
        double total = 0;
        for (double &x : w) {
            x = rng.uniform();
            total += x;
        }
        std::vector<double> target(dim, 0.0);
        for (size_t k = 0; k < n; k++) {
            for (size_t i = 0; i < dim; i++) {
                target[i] += w[k] / total * pts[k][i];
            }
        }
        HullMembership h = convex_hull_membership(pts, target);
        EXPECT_TRUE(h.feasible) << "trial " << t;
        expect_reproduces(pts, target, h);
    }
}

TEST(HullMembership, RandomOutsidePointsAreSeparated) {
    CounterRng rng(12, 0);
    for (int t = 0; t < 200; t++) {
        size_t dim = 2 + rng.below(6);
        size_t n = 1 + rng.below(12);
        std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
        for (auto &p : pts) {
            for (double &x : p) {
                x = rng.uniform();
            }
        }
        // Exceeds every point in one coordinate, hence outside the hull.
        std::vector<double> target(dim);
        for (double &x : target) {
            x = rng.uniform();
        }
        size_t axis = rng.below(dim);
        double top = 0;
        for (const auto &p : pts) {
            top = std::max(top, p[axis]);
        }
        target[axis] = top + 0.01 + rng.uniform();
        HullMembership h = convex_hull_membership(pts, target);
        EXPECT_FALSE(h.feasible) << "trial " << t;
        expect_separates(pts, target, h);
    }
}
