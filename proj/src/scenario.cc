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

#include "ksforge/scenario.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ksforge {

Scenario::Scenario(std::vector<std::string> vertex_ids, std::vector<std::vector<size_t>> hyperedges)
    : ids_(std::move(vertex_ids)), edges_(std::move(hyperedges)) {
    std::unordered_set<std::string> seen;
    for (const auto &id : ids_) {
        if (!seen.insert(id).second) {
            throw std::invalid_argument("duplicate vertex id '" + id + "'");
        }
    }
    std::set<std::vector<size_t>> distinct;
    for (auto &e : edges_) {
        if (e.empty()) {
            throw std::invalid_argument("hyperedges must be non-empty");
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw std::invalid_argument("hyperedge repeats a vertex");
        }
        if (e.back() >= ids_.size()) {
            throw std::invalid_argument("hyperedge refers to an unknown vertex");
        }
        if (!distinct.insert(e).second) {
            throw std::invalid_argument("duplicate hyperedge");
        }
    }
}

std::optional<size_t> Scenario::index_of(const std::string &id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return static_cast<size_t>(it - ids_.begin());
}

std::vector<std::vector<size_t>> Scenario::incidence() const {
    std::vector<std::vector<size_t>> out(ids_.size());
    for (size_t e = 0; e < edges_.size(); e++) {
        for (size_t v : edges_[e]) {
            out[v].push_back(e);
        }
    }
    return out;
}

bool is_valid_colouring(const Scenario &s, const Colouring &c) {
    if (c.values.size() != s.num_vertices()) {
        return false;
    }
    for (uint8_t x : c.values) {
        if (x > 1) {
            return false;
        }
    }
    for (const auto &e : s.hyperedges()) {
        int ones = 0;
        for (size_t v : e) {
            ones += c.values[v];
        }
        if (ones != 1) {
            return false;
        }
    }
    return true;
}

void validate_model(const Scenario &s, const ProbModel &p, double tol) {
    if (p.values.size() != s.num_vertices()) {
        throw std::invalid_argument("model size does not match the scenario");
    }
    for (double x : p.values) {
        if (!std::isfinite(x) || x < -tol || x > 1 + tol) {
            throw std::invalid_argument("model value outside [0, 1]");
        }
    }
    for (size_t e = 0; e < s.hyperedges().size(); e++) {
        double acc = 0;
        for (size_t v : s.hyperedges()[e]) {
            acc += p.values[v];
        }
        if (std::abs(acc - 1) > tol) {
            throw std::invalid_argument(
                "model sums to " + std::to_string(acc) + " on hyperedge " + std::to_string(e));
        }
    }
}

ProbModel as_model(const Colouring &c) {
    ProbModel p;
    p.values.assign(c.values.begin(), c.values.end());
    return p;
}

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw std::invalid_argument("density operator must be a non-empty square matrix");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("density operator is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1, 0)) > 1e-12) {
        throw std::invalid_argument("density operator does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("density operator has a negative eigenvalue");
    }
}

DensityOperator DensityOperator::pure(const Ray &r) {
    Eigen::VectorXcd v(r.dim());
    for (size_t k = 0; k < r.dim(); k++) {
        v(k) = r[k];
    }
    Eigen::MatrixXcd m = v * v.adjoint();
    // Remove rounding so the Hermiticity check is exact.
    m = (m + m.adjoint()) / 2.0;
    m /= m.trace().real();
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    return DensityOperator(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::mixture(const std::vector<double> &weights, const std::vector<Ray> &rays) {
    if (weights.size() != rays.size() || rays.empty()) {
        throw std::invalid_argument("mixture needs one weight per ray");
    }
    double total = 0;
    for (double w : weights) {
        if (w < 0) {
            throw std::invalid_argument("mixture weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw std::invalid_argument("mixture weights must sum to one");
    }
    size_t d = rays.front().dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (size_t i = 0; i < rays.size(); i++) {
        if (rays[i].dim() != d) {
            throw std::invalid_argument("mixture rays have different dimensions");
        }
        m += weights[i] * DensityOperator::pure(rays[i]).matrix();
    }
    m = (m + m.adjoint()) / 2.0;
    m /= m.trace().real();
    return DensityOperator(std::move(m));
}

double DensityOperator::expectation(const Ray &psi) const {
    if (psi.dim() != dim()) {
        throw std::invalid_argument("state and ray dimensions differ");
    }
    Complex acc = 0;
    for (size_t i = 0; i < psi.dim(); i++) {
        for (size_t j = 0; j < psi.dim(); j++) {
            acc += std::conj(psi[i]) * m_(i, j) * psi[j];
        }
    }
    return acc.real();
}

std::vector<std::vector<bool>> orthogonality_graph(const std::vector<Ray> &rays) {
    size_t n = rays.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (is_orthogonal(rays[i], rays[j])) {
                adj[i][j] = adj[j][i] = true;
            }
        }
    }
    return adj;
}

namespace {

class Bitset {
   public:
    explicit Bitset(size_t n) : words_((n + 63) / 64, 0) {
    }
    void set(size_t i) {
        words_[i / 64] |= uint64_t{1} << (i % 64);
    }
    void reset(size_t i) {
        words_[i / 64] &= ~(uint64_t{1} << (i % 64));
    }
    bool any() const {
        for (uint64_t w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    size_t count_and(const Bitset &o) const {
        size_t c = 0;
        for (size_t k = 0; k < words_.size(); k++) {
            c += std::popcount(words_[k] & o.words_[k]);
        }
        return c;
    }
    Bitset operator&(const Bitset &o) const {
        Bitset r = *this;
        for (size_t k = 0; k < words_.size(); k++) {
            r.words_[k] &= o.words_[k];
        }
        return r;
    }
    Bitset and_not(const Bitset &o) const {
        Bitset r = *this;
        for (size_t k = 0; k < words_.size(); k++) {
            r.words_[k] &= ~o.words_[k];
        }
        return r;
    }
    template <typename F>
    void for_each(F f) const {
        for (size_t k = 0; k < words_.size(); k++) {
            uint64_t w = words_[k];
            while (w) {
                f(k * 64 + static_cast<size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

   private:
    std::vector<uint64_t> words_;
};

void bron_kerbosch(
    const std::vector<Bitset> &nbr,
    std::vector<size_t> &r,
    Bitset p,
    Bitset x,
    std::vector<std::vector<size_t>> &out) {
    if (!p.any() && !x.any()) {
        std::vector<size_t> clique = r;
        std::sort(clique.begin(), clique.end());
        out.push_back(std::move(clique));
        return;
    }
    // Pivot: the vertex of P u X with the most neighbours in P.
    size_t pivot = 0;
    size_t best = 0;
    bool have = false;
    auto consider = [&](size_t u) {
        size_t c = nbr[u].count_and(p);
        if (!have || c > best) {
            have = true;
            best = c;
            pivot = u;
        }
    };
    p.for_each(consider);
    x.for_each(consider);
    Bitset candidates = p.and_not(nbr[pivot]);
    std::vector<size_t> order;
    candidates.for_each([&](size_t v) { order.push_back(v); });
    for (size_t v : order) {
        r.push_back(v);
        bron_kerbosch(nbr, r, p & nbr[v], x & nbr[v], out);
        r.pop_back();
        p.reset(v);
        x.set(v);
    }
}

}  // namespace

std::vector<std::vector<size_t>> maximal_cliques(const std::vector<std::vector<bool>> &adjacency) {
    size_t n = adjacency.size();
    std::vector<Bitset> nbr(n, Bitset(n));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (i != j && adjacency[i][j]) {
                nbr[i].set(j);
            }
        }
    }
    Bitset all(n);
    for (size_t i = 0; i < n; i++) {
        all.set(i);
    }
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> r;
    if (n > 0) {
        bron_kerbosch(nbr, r, all, Bitset(n), out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> default_vertex_ids(size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (size_t k = 0; k < n; k++) {
        ids.push_back("v" + std::to_string(k));
    }
    return ids;
}

namespace {

void check_rays(const std::vector<Ray> &rays, std::vector<std::string> &ids) {
    if (rays.empty()) {
        throw std::invalid_argument("scenario needs at least one ray");
    }
    size_t d = rays.front().dim();
    for (size_t i = 0; i < rays.size(); i++) {
        if (rays[i].dim() != d) {
            throw std::invalid_argument("rays have different dimensions");
        }
        for (size_t j = 0; j < i; j++) {
            if (rays[i].same_ray(rays[j])) {
                throw std::invalid_argument(
                    "duplicate ray at positions " + std::to_string(j) + " and " + std::to_string(i));
            }
        }
    }
    if (ids.empty()) {
        ids = default_vertex_ids(rays.size());
    }
    if (ids.size() != rays.size()) {
        throw std::invalid_argument("need one vertex id per ray");
    }
}

}  // namespace

ScenarioWithRays scenario_from_rays(const std::vector<Ray> &rays, std::vector<std::string> ids) {
    check_rays(rays, ids);
    size_t d = rays.front().dim();
    std::vector<std::vector<size_t>> edges;
    for (auto &clique : maximal_cliques(orthogonality_graph(rays))) {
        if (clique.size() == d) {
            edges.push_back(std::move(clique));
        }
    }
    return ScenarioWithRays{Scenario(std::move(ids), std::move(edges)), RayAssignment{rays}};
}

ScenarioWithRays scenario_from_rays(
    const std::vector<Ray> &rays, const std::vector<Basis> &bases, std::vector<std::string> ids) {
    check_rays(rays, ids);
    size_t d = rays.front().dim();
    std::vector<std::vector<size_t>> edges;
    for (size_t b = 0; b < bases.size(); b++) {
        if (bases[b].dim() != d) {
            throw std::invalid_argument("basis " + std::to_string(b) + " has the wrong dimension");
        }
        std::vector<size_t> edge;
        for (const Ray &r : bases[b].rays()) {
            auto it = std::find_if(rays.begin(), rays.end(), [&](const Ray &x) { return x.same_ray(r); });
            if (it == rays.end()) {
                throw std::invalid_argument("basis " + std::to_string(b) + " uses a ray outside the vertex set");
            }
            edge.push_back(static_cast<size_t>(it - rays.begin()));
        }
        std::sort(edge.begin(), edge.end());
        edges.push_back(std::move(edge));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return ScenarioWithRays{Scenario(std::move(ids), std::move(edges)), RayAssignment{rays}};
}

namespace {

// Backtracking search over {0,1} vertex values with exactly-one propagation.
class ExactlyOneSearch {
   public:
    explicit ExactlyOneSearch(const Scenario &s)
        : s_(s),
          incidence_(s.incidence()),
          value_(s.num_vertices(), kUnset),
          ones_(s.hyperedges().size(), 0),
          open_(s.hyperedges().size()) {
        for (size_t e = 0; e < s.hyperedges().size(); e++) {
            open_[e] = static_cast<int>(s.hyperedges()[e].size());
        }
    }

    // Calls visit(colouring) for each solution until it returns false.
    template <typename Visit>
    void run(Visit &&visit) {
        stop_ = false;
        // Hyperedges of size one force their vertex immediately.
        std::vector<std::pair<size_t, int8_t>> forced;
        for (const auto &e : s_.hyperedges()) {
            if (e.size() == 1) {
                forced.emplace_back(e[0], 1);
            }
        }
        size_t mark = trail_.size();
        if (propagate(std::move(forced))) {
            descend(0, visit);
        }
        undo(mark);
    }

   private:
    static constexpr int8_t kUnset = -1;

    template <typename Visit>
    void descend(size_t from, Visit &visit) {
        size_t v = from;
        while (v < value_.size() && value_[v] != kUnset) {
            v++;
        }
        if (v == value_.size()) {
            Colouring c;
            c.values.assign(value_.begin(), value_.end());
            if (!visit(std::move(c))) {
                stop_ = true;
            }
            return;
        }
        for (int8_t x : {int8_t{1}, int8_t{0}}) {
            size_t mark = trail_.size();
            if (propagate({{v, x}})) {
                descend(v + 1, visit);
            }
            undo(mark);
            if (stop_) {
                return;
            }
        }
    }

    bool propagate(std::vector<std::pair<size_t, int8_t>> queue) {
        size_t head = 0;
        while (head < queue.size()) {
            auto [v, x] = queue[head++];
            if (value_[v] != kUnset) {
                if (value_[v] != x) {
                    return false;
                }
                continue;
            }
            assign(v, x);
            for (size_t e : incidence_[v]) {
                const auto &edge = s_.hyperedges()[e];
                if (ones_[e] > 1) {
                    return false;
                }
                if (x == 1) {
                    for (size_t u : edge) {
                        if (value_[u] == kUnset) {
                            queue.emplace_back(u, 0);
                        }
                    }
                } else if (ones_[e] == 0) {
                    if (open_[e] == 0) {
                        return false;
                    }
                    if (open_[e] == 1) {
                        for (size_t u : edge) {
                            if (value_[u] == kUnset) {
                                queue.emplace_back(u, 1);
                            }
                        }
                    }
                }
            }
        }
        return true;
    }

    void assign(size_t v, int8_t x) {
        value_[v] = x;
        trail_.push_back(v);
        for (size_t e : incidence_[v]) {
            open_[e]--;
            ones_[e] += x;
        }
    }

    void undo(size_t mark) {
        while (trail_.size() > mark) {
            size_t v = trail_.back();
            trail_.pop_back();
            for (size_t e : incidence_[v]) {
                open_[e]++;
                ones_[e] -= value_[v];
            }
            value_[v] = kUnset;
        }
    }

    const Scenario &s_;
    std::vector<std::vector<size_t>> incidence_;
    std::vector<int8_t> value_;
    std::vector<int> ones_;
    std::vector<int> open_;
    std::vector<size_t> trail_;
    bool stop_ = false;
};

}  // namespace

std::optional<Colouring> find_ks_colouring(const Scenario &s) {
    std::optional<Colouring> found;
    ExactlyOneSearch search(s);
    search.run([&](Colouring c) {
        found = std::move(c);
        return false;
    });
    return found;
}

ColouringEnumeration enumerate_ks_colourings(const Scenario &s, size_t cap) {
    if (cap == 0) {
        throw std::invalid_argument("colouring cap must be positive");
    }
    ColouringEnumeration out;
    ExactlyOneSearch search(s);
    search.run([&](Colouring c) {
        if (out.colourings.size() == cap) {
            out.truncated = true;
            return false;
        }
        out.colourings.push_back(std::move(c));
        return true;
    });
    return out;
}

const char *to_string(Classicality c) {
    switch (c) {
        case Classicality::classical:
            return "classical";
        case Classicality::non_classical:
            return "non_classical";
        case Classicality::inconclusive:
            return "inconclusive";
    }
    return "?";
}

ClassicalityResult is_classical_model(const Scenario &s, const ProbModel &p, size_t cap) {
    validate_model(s, p);
    ColouringEnumeration en = enumerate_ks_colourings(s, cap);
    std::vector<std::vector<double>> points;
    points.reserve(en.colourings.size());
    for (const auto &c : en.colourings) {
        points.emplace_back(c.values.begin(), c.values.end());
    }
    ClassicalityResult out;
    out.colourings_used = points.size();
    out.cap_hit = en.truncated;
    out.lp = convex_hull_membership(points, p.values);
    if (out.lp.feasible) {
        out.verdict = Classicality::classical;
    } else {
        out.verdict = en.truncated ? Classicality::inconclusive : Classicality::non_classical;
    }
    return out;
}

ProbModel quantum_model(const Scenario &s, const RayAssignment &a, const DensityOperator &rho) {
    if (a.rays.size() != s.num_vertices()) {
        throw std::invalid_argument("ray assignment size does not match the scenario");
    }
    ProbModel p;
    p.values.reserve(a.rays.size());
    for (const Ray &r : a.rays) {
        double x = rho.expectation(r);
        p.values.push_back(std::clamp(x, 0.0, 1.0));
    }
    validate_model(s, p);
    return p;
}

}  // namespace ksforge
