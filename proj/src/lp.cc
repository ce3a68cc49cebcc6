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

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksforge {

namespace {

constexpr double kPivotEps = 1e-11;

// Dense tableau for  min 1.a  s.t.  A w + a = b,  w, a >= 0,  b >= 0.
// Columns [0, n) are structural, [n, n + m) artificial, the last is the rhs.
// Row m holds reduced costs, with the negated objective in its rhs slot.
class Tableau {
   public:
    Tableau(size_t rows, size_t structural)
        : m_(rows), n_(structural), width_(structural + rows + 1), cells_((rows + 1) * width_, 0.0), basis_(rows) {
    }

    double &at(size_t r, size_t c) {
        return cells_[r * width_ + c];
    }
    double at(size_t r, size_t c) const {
        return cells_[r * width_ + c];
    }

    size_t rhs() const {
        return width_ - 1;
    }

    void start_with_artificial_basis() {
        for (size_t r = 0; r < m_; r++) {
            at(r, n_ + r) = 1;
            basis_[r] = n_ + r;
        }
        for (size_t c = 0; c < width_; c++) {
            double acc = 0;
            for (size_t r = 0; r < m_; r++) {
                acc += at(r, c);
            }
            at(m_, c) = c >= n_ && c < n_ + m_ ? 0.0 : -acc;
        }
    }

    // Bland's rule: lowest-index improving column, ties in the ratio test
    // broken by the lowest basic variable index.
    size_t run() {
        size_t pivots = 0;
        while (true) {
            size_t enter = width_;
            for (size_t c = 0; c + 1 < width_; c++) {
                if (at(m_, c) < -kPivotEps) {
                    enter = c;
                    break;
                }
            }
            if (enter == width_) {
                return pivots;
            }
            size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (size_t r = 0; r < m_; r++) {
                double a = at(r, enter);
                if (a > kPivotEps) {
                    double ratio = at(r, rhs()) / a;
                    bool tie = leave != m_ && std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave];
                    if (ratio < best - 1e-14 || tie) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == m_) {
                // Phase I is bounded below by zero, so this cannot happen.
                throw std::logic_error("phase-I simplex reported an unbounded direction");
            }
            pivot(leave, enter);
            pivots++;
        }
    }

    void pivot(size_t row, size_t col) {
        double p = at(row, col);
        for (size_t c = 0; c < width_; c++) {
            at(row, c) /= p;
        }
        for (size_t r = 0; r <= m_; r++) {
            if (r == row) {
                continue;
            }
            double f = at(r, col);
            if (f == 0) {
                continue;
            }
            for (size_t c = 0; c < width_; c++) {
                at(r, c) -= f * at(row, c);
            }
        }
        basis_[row] = col;
    }

    double objective() const {
        return -at(m_, rhs());
    }

    std::vector<double> structural_values() const {
        std::vector<double> w(n_, 0.0);
        for (size_t r = 0; r < m_; r++) {
            if (basis_[r] < n_) {
                w[basis_[r]] = at(r, rhs());
            }
        }
        return w;
    }

    // y_r = c_art - reduced cost of artificial r = 1 - d_{n + r}.
    std::vector<double> duals() const {
        std::vector<double> y(m_);
        for (size_t r = 0; r < m_; r++) {
            y[r] = 1 - at(m_, n_ + r);
        }
        return y;
    }

   private:
    size_t m_;
    size_t n_;
    size_t width_;
    std::vector<double> cells_;
    std::vector<size_t> basis_;
};

}  // namespace

HullMembership convex_hull_membership(
    std::span<const std::vector<double>> points, std::span<const double> target, double tol) {
    size_t dim = target.size();
    for (const auto &p : points) {
        if (p.size() != dim) {
            throw std::invalid_argument("hull point dimension does not match the target");
        }
    }
    HullMembership out;
    size_t m = dim + 1;
    size_t n = points.size();
    if (n == 0) {
        out.feasible = false;
        out.residual = 1;
        out.coefficients.assign(dim, 0.0);
        out.bound = -1;
        return out;
    }

    std::vector<double> sign(m, 1.0);
    Tableau t(m, n);
    for (size_t r = 0; r < m; r++) {
        double b = r < dim ? target[r] : 1.0;
        if (b < 0) {
            sign[r] = -1;
        }
        for (size_t k = 0; k < n; k++) {
            double a = r < dim ? points[k][r] : 1.0;
            t.at(r, k) = sign[r] * a;
        }
        t.at(r, t.rhs()) = sign[r] * b;
    }
    t.start_with_artificial_basis();
    out.pivots = t.run();
    out.residual = t.objective();
    out.feasible = out.residual <= tol;

    if (out.feasible) {
        out.weights = t.structural_values();
        return out;
    }
    // y.A_k <= 0 for every point and y.b = residual > 0. Splitting off the
    // normalization row gives  sum_i y_i q_i <= -y_last  on the hull.
    std::vector<double> y = t.duals();
    out.coefficients.resize(dim);
    for (size_t i = 0; i < dim; i++) {
        out.coefficients[i] = sign[i] * y[i];
    }
    out.bound = -sign[dim] * y[dim];
    return out;
}

}  // namespace ksforge
