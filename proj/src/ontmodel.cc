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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace ksforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 rotate(const Mat3 &m, const Vec3 &v) {
    return {
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    };
}

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

BlochPoint point_of(const Vec3 &v) {
    BlochPoint p;
    double z = std::clamp(v[2], -1.0, 1.0);
    p.theta = std::acos(z);
    double r = std::hypot(v[0], v[1]);
    if (r < 1e-15) {
        p.phi = 0;
        return p;
    }
    double phi = std::atan2(v[1], v[0]);
    if (phi < 0) {
        phi += kTwoPi;
    }
    p.phi = phi >= kTwoPi ? 0 : phi;
    return p;
}

// North test of the qubit ray U_lambda |psi> where lambda has Bloch vector l.
// The z component of the rotated ray's Bloch vector is psi.lambda, so only a
// thin band around the equator needs the exact angle bookkeeping.
bool rotated_is_north(const Complex &psi0, const Complex &psi1, const Vec3 &l) {
    double z = std::clamp(l[2], -1.0, 1.0);
    double c = std::sqrt((1 + z) / 2);
    double s = std::sqrt((1 - z) / 2);
    double r = std::hypot(l[0], l[1]);
    Complex phase = r < 1e-300 ? Complex(1, 0) : Complex(l[0] / r, l[1] / r);
    Complex a0 = c * psi0 + std::conj(phase) * s * psi1;
    Complex a1 = s * psi0 - std::conj(phase) * c * psi1;
    double zr = std::norm(a0) - std::norm(a1);
    if (zr > 1e-8) {
        return true;
    }
    if (zr < -1e-8) {
        return false;
    }
    double m0 = std::abs(a0);
    double m1 = std::abs(a1);
    BlochPoint p;
    p.theta = 2 * std::atan2(m1, m0);
    if (m0 < 1e-12 || m1 < 1e-12) {
        p.phi = 0;
    } else {
        double phi = std::arg(a1 * std::conj(a0));
        p.phi = phi < 0 ? phi + kTwoPi : phi;
    }
    return is_north(p);
}

void require_qubits(const ProductRay &p) {
    for (const Ray &f : p.factors()) {
        if (f.dim() != 2) {
            throw std::invalid_argument("the ontological model covers qubit product rays only");
        }
    }
}

// Per-qubit sampling frame for chi.
struct QubitFrame {
    Mat3 rotation;
};

std::vector<QubitFrame> frames_of(const ProductRay &chi) {
    std::vector<QubitFrame> out;
    out.reserve(chi.num_factors());
    for (const Ray &f : chi.factors()) {
        out.push_back(QubitFrame{rotation_from_pole(bloch_vector(f))});
    }
    return out;
}

Vec3 sample_vector(const QubitFrame &frame, CounterRng &rng) {
    double u = rng.uniform();
    double v = rng.uniform();
    // theta' = arcsin(sqrt(u)): density proportional to cos(theta') sin(theta').
    double sin_t = std::sqrt(u);
    double cos_t = std::sqrt(1 - u);
    double phi = kTwoPi * v;
    Vec3 local = {sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
    return rotate(frame.rotation, local);
}

struct Prepared {
    std::vector<double> cumulative;
    std::vector<std::vector<QubitFrame>> frames;
};

Prepared prepare(const EpistemicState &state) {
    Prepared p;
    double acc = 0;
    for (const auto &c : state.components()) {
        acc += c.weight;
        p.cumulative.push_back(acc);
        p.frames.push_back(frames_of(c.state));
    }
    p.cumulative.back() = 1.0;
    return p;
}

// Draws the ontic state for sample index i into `out`.
void draw(const Prepared &prep, uint64_t seed, uint64_t index, std::vector<Vec3> &out) {
    CounterRng rng(seed, index);
    size_t component = 0;
    if (prep.frames.size() > 1) {
        double u = rng.uniform();
        while (component + 1 < prep.cumulative.size() && u >= prep.cumulative[component]) {
            component++;
        }
    }
    const auto &frames = prep.frames[component];
    out.resize(frames.size());
    for (size_t j = 0; j < frames.size(); j++) {
        out[j] = sample_vector(frames[j], rng);
    }
}

bool respond(const ProductRay &psi, const std::vector<Vec3> &lambda) {
    for (size_t j = 0; j < lambda.size(); j++) {
        const Ray &f = psi.factor(j);
        if (!rotated_is_north(f[0], f[1], lambda[j])) {
            return false;
        }
    }
    return true;
}

// Runs body(begin, end, counts) over disjoint index ranges and sums the counts.
std::vector<uint64_t> parallel_count(
    uint64_t samples,
    unsigned jobs,
    size_t width,
    const std::function<void(uint64_t, uint64_t, std::vector<uint64_t> &)> &body) {
    jobs = std::max(1u, jobs);
    if (jobs > samples) {
        jobs = static_cast<unsigned>(std::max<uint64_t>(1, samples));
    }
    std::vector<std::vector<uint64_t>> partial(jobs, std::vector<uint64_t>(width, 0));
    if (jobs == 1) {
        body(0, samples, partial[0]);
    } else {
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; w++) {
            uint64_t begin = samples * w / jobs;
            uint64_t end = samples * (w + 1) / jobs;
            workers.emplace_back([&, w, begin, end] { body(begin, end, partial[w]); });
        }
        for (auto &t : workers) {
            t.join();
        }
    }
    std::vector<uint64_t> total(width, 0);
    for (const auto &p : partial) {
        for (size_t k = 0; k < width; k++) {
            total[k] += p[k];
        }
    }
    return total;
}

Estimate make_estimate(uint64_t hits, uint64_t samples) {
    Estimate e;
    e.hits = hits;
    e.samples = samples;
    e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    e.std_error = std::sqrt(e.estimate * (1 - e.estimate) / static_cast<double>(samples));
    return e;
}

}  // namespace

EpistemicState::EpistemicState(std::vector<Component> components) : components_(std::move(components)) {
}

EpistemicState EpistemicState::pure(ProductRay chi) {
    require_qubits(chi);
    return EpistemicState({Component{1.0, std::move(chi)}});
}

EpistemicState EpistemicState::mixture(std::vector<Component> components) {
    if (components.empty()) {
        throw std::invalid_argument("mixture needs at least one component");
    }
    double total = 0;
    size_t n = components.front().state.num_factors();
    for (const auto &c : components) {
        if (!(c.weight >= 0)) {
            throw std::invalid_argument("mixture weights must be non-negative");
        }
        if (c.state.num_factors() != n) {
            throw std::invalid_argument("mixture components have different qubit counts");
        }
        require_qubits(c.state);
        total += c.weight;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw std::invalid_argument("mixture weights must sum to one");
    }
    return EpistemicState(std::move(components));
}

DensityOperator EpistemicState::density() const {
    std::vector<double> w;
    std::vector<Ray> rays;
    for (const auto &c : components_) {
        w.push_back(c.weight);
        rays.push_back(c.state.flatten());
    }
    return DensityOperator::mixture(w, rays);
}

Mat3 rotation_from_pole(const Vec3 &v) {
    double s = std::hypot(v[0], v[1]);
    double c = v[2];
    if (s < 1e-15) {
        if (c > 0) {
            return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        }
        // Half turn about x.
        return {{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
    }
    // Rodrigues formula with axis (pole x v) / |pole x v| = (-v_y, v_x, 0) / s.
    double kx = -v[1] / s;
    double ky = v[0] / s;
    double t = 1 - c;
    return {{
        {c + kx * kx * t, kx * ky * t, ky * s},
        {kx * ky * t, c + ky * ky * t, -kx * s},
        {-ky * s, kx * s, c},
    }};
}

int response(const ProductRay &psi, const OnticState &lambda) {
    require_qubits(psi);
    if (psi.num_factors() != lambda.points.size()) {
        throw std::invalid_argument(
            "ray has " + std::to_string(psi.num_factors()) + " qubits but the ontic state has " +
            std::to_string(lambda.points.size()));
    }
    std::vector<Vec3> l;
    l.reserve(lambda.points.size());
    for (const BlochPoint &p : lambda.points) {
        l.push_back(bloch_vector(p));
    }
    return respond(psi, l) ? 1 : 0;
}

OnticState sample_ontic(const ProductRay &chi, CounterRng &rng) {
    require_qubits(chi);
    OnticState out;
    for (const QubitFrame &f : frames_of(chi)) {
        out.points.push_back(point_of(sample_vector(f, rng)));
    }
    return out;
}

Estimate simulate_probability(const ProductRay &psi, const EpistemicState &state, const SimConfig &cfg) {
    require_qubits(psi);
    if (cfg.samples == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
    if (psi.num_factors() != state.num_qubits()) {
        throw std::invalid_argument("ray and state have different qubit counts");
    }
    Prepared prep = prepare(state);
    auto counts = parallel_count(cfg.samples, cfg.jobs, 1, [&](uint64_t begin, uint64_t end, auto &out) {
        std::vector<Vec3> lambda;
        uint64_t hits = 0;
        for (uint64_t i = begin; i < end; i++) {
            draw(prep, cfg.seed, i, lambda);
            hits += respond(psi, lambda) ? 1 : 0;
        }
        out[0] += hits;
    });
    return make_estimate(counts[0], cfg.samples);
}

std::vector<Estimate> simulate_basis_measurement(
    const ProductBasis &b, const EpistemicState &state, const SimConfig &cfg) {
    if (cfg.samples == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
    if (b.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("basis and state have different qubit counts");
    }
    Prepared prep = prepare(state);
    size_t m = b.rays().size();
    auto counts = parallel_count(cfg.samples, cfg.jobs, m, [&](uint64_t begin, uint64_t end, auto &out) {
        std::vector<Vec3> lambda;
        for (uint64_t i = begin; i < end; i++) {
            draw(prep, cfg.seed, i, lambda);
            size_t fired = 0;
            size_t which = 0;
            for (size_t k = 0; k < m; k++) {
                if (respond(b.rays()[k], lambda)) {
                    fired++;
                    which = k;
                }
            }
            if (fired != 1) {
                throw std::runtime_error(
                    "ontic state at sample " + std::to_string(i) + " produced " + std::to_string(fired) +
                    " outcomes instead of exactly one");
            }
            out[which]++;
        }
    });
    std::vector<Estimate> out;
    for (uint64_t c : counts) {
        out.push_back(make_estimate(c, cfg.samples));
    }
    return out;
}

double born(const Ray &psi, const DensityOperator &rho) {
    double p = rho.expectation(psi);
    if (p < -1e-12 || p > 1 + 1e-12) {
        throw std::logic_error("Born probability outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

namespace {

double adaptive_simpson(
    const std::function<double(double)> &f, double a, double b, double fa, double fm, double fb, double whole,
    double tol, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2;
    double rm = (m + b) / 2;
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15 * tol) {
        return left + right + diff / 15;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)> &f, double a, double b, double tol) {
    double fa = f(a);
    double fb = f(b);
    double fm = f((a + b) / 2);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

double heaviside(double x, Heaviside y) {
    if (x > 0) {
        return 1;
    }
    if (x < 0) {
        return 0;
    }
    return y == Heaviside::h1 ? 1 : 0;
}

constexpr std::array<double, 5> kGaussNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665, 0.2369268850561891};

}  // namespace

double hemisphere_integral(const Ray &psi, const Ray &chi, Heaviside convention) {
    if (psi.dim() != 2 || chi.dim() != 2) {
        throw std::invalid_argument("hemisphere integral takes qubit rays");
    }
    // Work in the frame where chi sits at the pole; R^T undoes R.
    Mat3 r = rotation_from_pole(bloch_vector(chi));
    Vec3 pg = bloch_vector(psi);
    Vec3 p = {
        r[0][0] * pg[0] + r[1][0] * pg[1] + r[2][0] * pg[2],
        r[0][1] * pg[0] + r[1][1] * pg[1] + r[2][1] * pg[2],
        r[0][2] * pg[0] + r[1][2] * pg[1] + r[2][2] * pg[2],
    };
    double sa = std::hypot(p[0], p[1]);
    double ca = p[2];
    double beta = sa < 1e-15 ? 0.0 : std::atan2(p[1], p[0]);

    // Azimuthal integral of H^y(psi.lambda) at fixed polar angle t, on panels
    // split where psi.lambda = sa sin t cos(phi - beta) + ca cos t vanishes.
    auto azimuthal = [&](double t) {
        double st = std::sin(t);
        double ct = std::cos(t);
        std::vector<double> cuts = {0.0, kTwoPi};
        double amp = sa * st;
        if (amp > 1e-300) {
            double kappa = -ca * ct / amp;
            if (kappa > -1 && kappa < 1) {
                double d = std::acos(kappa);
                for (double x : {beta + d, beta - d}) {
                    x = std::fmod(x, kTwoPi);
                    if (x < 0) {
                        x += kTwoPi;
                    }
                    cuts.push_back(x);
                }
            }
        }
        std::sort(cuts.begin(), cuts.end());
        double acc = 0;
        for (size_t k = 0; k + 1 < cuts.size(); k++) {
            double lo = cuts[k];
            double hi = cuts[k + 1];
            if (hi - lo <= 0) {
                continue;
            }
            double half = (hi - lo) / 2;
            double mid = (hi + lo) / 2;
            for (size_t g = 0; g < kGaussNodes.size(); g++) {
                double phi = mid + half * kGaussNodes[g];
                Vec3 lambda = {st * std::cos(phi), st * std::sin(phi), ct};
                acc += half * kGaussWeights[g] * heaviside(dot(p, lambda), convention);
            }
        }
        return acc;
    };
    auto polar = [&](double t) {
        double ct = std::cos(t);
        double chi_dot = ct;
        return heaviside(chi_dot, Heaviside::h0) * chi_dot * std::sin(t) * azimuthal(t) / kPi;
    };
    // Kink where the sign-change arc appears: tan t = |cos a| / sin a.
    double kink = std::atan2(std::abs(ca), sa);
    double top = kPi / 2;
    double total = 0;
    double tol = 1e-10;
    if (kink > 1e-12 && kink < top - 1e-12) {
        total = integrate(polar, 0, kink, tol) + integrate(polar, kink, top, tol);
    } else {
        total = integrate(polar, 0, top, tol);
    }
    return total;
}

}  // namespace ksforge
