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

#ifndef KSFORGE_LP_H
#define KSFORGE_LP_H

#include <span>
#include <vector>

namespace ksforge {

inline constexpr double kLpFeasibilityTol = 1e-7;

/// Outcome of a convex-hull membership test.
struct HullMembership {
    bool feasible = false;
    /// Convex weights over the input points (feasible case).
    std::vector<double> weights;
    /// Separating inequality (infeasible case): sum_i coefficients[i] * q[i] <= bound
    /// holds for every point q of the hull while the target exceeds the bound.
    std::vector<double> coefficients;
    double bound = 0;
    /// Phase-I optimum, i.e. the total residual that could not be absorbed.
    double residual = 0;
    size_t pivots = 0;
};

/// Decides whether target lies in the convex hull of points.
///
/// Solves  sum_k w_k points[k] = target,  sum_k w_k = 1,  w >= 0  by a dense
/// Phase-I simplex with Bland's rule, accepting when the artificial residual is
/// at most tol. Every point must have target.size() coordinates; throws
/// std::invalid_argument otherwise.
HullMembership convex_hull_membership(
    std::span<const std::vector<double>> points, std::span<const double> target, double tol = kLpFeasibilityTol);

}  // namespace ksforge

#endif
