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

#include "ksforge/bell.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "ksforge/catalog.h"
#include "ksforge/rng.h"

using namespace ksforge;

namespace {

constexpr double kPi = std::numbers::pi;

Ray ghz3() {
    std::vector<Complex> a(8, 0.0);
    a[0] = a[7] = 1;
    return Ray(a);
}

using Event = std::vector<std::pair<uint8_t, uint8_t>>;  // (setting, outcome) per party

// Leaf sets of adaptive strategies, generated independently of the library.
std::vector<std::set<Event>> leaf_sets(const std::vector<size_t> &settings, const Event &partial) {
    std::vector<size_t> open;
    for (size_t r = 0; r < settings.size(); r++) {
        if (partial[r].first == 0xff) {
            open.push_back(r);
        }
    }
    if (open.empty()) {
        return {std::set<Event>{partial}};
    }
    std::vector<std::set<Event>> out;
    for (size_t r : open) {
        for (size_t x = 0; x < settings[r]; x++) {
            Event e0 = partial, e1 = partial;
            e0[r] = {static_cast<uint8_t>(x), 0};
            e1[r] = {static_cast<uint8_t>(x), 1};
            auto l0 = leaf_sets(settings, e0);
            auto l1 = leaf_sets(settings, e1);
            for (const auto &a : l0) {
                for (const auto &b : l1) {
                    std::set<Event> u = a;
                    u.insert(b.begin(), b.end());
                    out.push_back(u);
                }
            }
        }
    }
    return out;
}

size_t oracle_hyperedge_count(const std::vector<size_t> &settings) {
    Event empty(settings.size(), {0xff, 0xff});
    auto all = leaf_sets(settings, empty);
    std::set<std::set<Event>> distinct(all.begin(), all.end());
    return distinct.size();
}

std::vector<ProductRay> eq1_rays() {
    return nonlocal_basis_eq1().rays();
}

}  // namespace

TEST(BellScenario, Basics) {
    BellScenario b({2, 3});
    EXPECT_EQ(b.parties(), 2u);
    EXPECT_EQ(b.num_setting_tuples(), 6u);
    EXPECT_EQ(b.num_events(), 24u);
    EXPECT_THROW(BellScenario({2}), std::invalid_argument);
    EXPECT_THROW(BellScenario({2, 0}), std::invalid_argument);
    EXPECT_THROW(BellScenario({2, 11}), std::invalid_argument);
}

TEST(BellEvents, OrderAndLabels) {
    BellScenario b({2, 2});
    auto ev = bell_events(b);
    ASSERT_EQ(ev.size(), 16u);
    EXPECT_EQ(event_label(ev[0]), "00|00");
    EXPECT_EQ(event_label(ev[1]), "01|00");
    EXPECT_EQ(event_label(ev[4]), "00|01");
    EXPECT_EQ(event_label(ev[15]), "11|11");
    for (size_t k = 0; k < ev.size(); k++) {
        EXPECT_EQ(event_index(b, ev[k]), k);
        EXPECT_EQ(parse_event_label(b, event_label(ev[k])), ev[k]);
    }
    EXPECT_THROW(parse_event_label(b, "00|02"), std::invalid_argument);
    EXPECT_THROW(parse_event_label(b, "0|00"), std::invalid_argument);
    EXPECT_THROW(parse_event_label(b, "0000"), std::invalid_argument);
}

TEST(Behaviour, Validation) {
    BellScenario b({2, 2});
    EXPECT_THROW(Behaviour(b, std::vector<double>(15, 0.25)), std::invalid_argument);
    EXPECT_NO_THROW(Behaviour(b, std::vector<double>(16, 0.25)));
    std::vector<double> bad(16, 0.25);
    bad[0] = 0.5;
    bad[1] = 0.0;
    EXPECT_THROW(Behaviour(b, bad), std::invalid_argument);
    // Signalling: Bob's marginal depends on Alice's setting.
    std::vector<double> sig(16, 0.0);
    sig[0] = 1;   // 00|00
    sig[4] = 1;   // 00|01
    sig[9] = 1;   // 01|10
    sig[12] = 1;  // 00|11
    EXPECT_THROW(Behaviour(b, sig), std::invalid_argument);
}

TEST(QuantumBehaviour, Examples) {
    LocalMeasurementSet comp = zx_plane_measurements({{0}, {0}});
    Behaviour p = quantum_behaviour(DensityOperator::pure(Ray::basis(4, 0)), comp);
    EXPECT_NEAR(p(BellEvent{{0, 0}, {0, 0}}), 1, 1e-12);
    Behaviour u = quantum_behaviour(DensityOperator::maximally_mixed(4), chsh_optimal_measurements());
    for (double v : u.values()) {
        EXPECT_NEAR(v, 0.25, 1e-12);
    }
    EXPECT_THROW(quantum_behaviour(DensityOperator::maximally_mixed(8), comp), std::invalid_argument);
}

TEST(QuantumBehaviour, SingletMatchesCorrelatorOracle) {
    std::vector<double> a = {0, kPi / 2}, b = {kPi / 4, 3 * kPi / 4};
    Behaviour p = quantum_behaviour(DensityOperator::pure(singlet()), chsh_optimal_measurements());
    double e[2][2];
    for (uint8_t x = 0; x < 2; x++) {
        for (uint8_t y = 0; y < 2; y++) {
            double corr = p(BellEvent{{0, 0}, {x, y}}) + p(BellEvent{{1, 1}, {x, y}}) - p(BellEvent{{0, 1}, {x, y}}) -
                          p(BellEvent{{1, 0}, {x, y}});
            e[x][y] = -std::cos(a[x] - b[y]);
            EXPECT_NEAR(corr, e[x][y], 1e-12);
        }
    }
    // The optimum negates the (0, 1) term for these angles.
    double oracle = std::abs(e[0][0] - e[0][1] + e[1][0] + e[1][1]);
    EXPECT_NEAR(oracle, 2 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(chsh_value(p), 2 * std::sqrt(2.0), 1e-9);
    EXPECT_EQ(is_local(p).verdict, Locality::nonlocal);
    EXPECT_GT(is_local(p).violation, 0);
}

TEST(QuantumBehaviour, RandomProductMeasurementsAreNoSignalling) {
    CounterRng rng(61, 0);
    for (int t = 0; t < 50; t++) {
        std::vector<std::vector<double>> angles(2 + rng.below(2));
        for (auto &party : angles) {
            party.resize(1 + rng.below(3));
            for (double &x : party) {
                x = 2 * kPi * rng.uniform();
            }
        }
        size_t dim = size_t{1} << angles.size();
        std::vector<Complex> v(dim);
        for (Complex &z : v) {
            z = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
        EXPECT_NO_THROW(quantum_behaviour(DensityOperator::pure(Ray(v)), zx_plane_measurements(angles)));
    }
}

TEST(LocalDeterministic, CountsAndLocality) {
    EXPECT_EQ(enumerate_local_deterministic(BellScenario({2, 2})).size(), 16u);
    auto three = enumerate_local_deterministic(BellScenario({2, 2, 2}));
    EXPECT_EQ(three.size(), 64u);
    std::set<std::vector<double>> distinct;
    for (const Behaviour &d : three) {
        distinct.insert(d.values());
    }
    EXPECT_EQ(distinct.size(), 64u);
    for (const Behaviour &d : enumerate_local_deterministic(BellScenario({2, 2}))) {
        EXPECT_EQ(is_local(d).verdict, Locality::local);
        EXPECT_LE(chsh_value(d), 2 + 1e-12);
    }
    BellScenario b({2, 2});
    EXPECT_EQ(is_local(Behaviour(b, std::vector<double>(16, 0.25))).verdict, Locality::local);
    EXPECT_THROW(enumerate_local_deterministic(BellScenario({10, 10, 1})), std::invalid_argument);
}

TEST(BellHypergraph, ChshStructure) {
    BellScenario b({2, 2});
    Scenario h = bell_hypergraph(b);
    EXPECT_EQ(h.num_vertices(), 16u);
    EXPECT_EQ(h.hyperedges().size(), 12u);
    auto has = [&](std::vector<std::string> labels) {
        std::vector<size_t> e;
        for (const auto &l : labels) {
            e.push_back(*h.index_of(l));
        }
        std::sort(e.begin(), e.end());
        return std::find(h.hyperedges().begin(), h.hyperedges().end(), e) != h.hyperedges().end();
    };
    EXPECT_TRUE(has({"00|00", "01|00", "10|01", "11|01"}));
    for (std::string x : {"00", "01", "10", "11"}) {
        EXPECT_TRUE(has({"00|" + x, "01|" + x, "10|" + x, "11|" + x}));
    }
}

TEST(BellHypergraph, CountsMatchIndependentEnumeration) {
    for (std::vector<size_t> s : std::vector<std::vector<size_t>>{{1, 1}, {2, 2}, {1, 3}, {2, 3}, {3, 3}, {2, 2, 2}}) {
        EXPECT_EQ(bell_hypergraph(BellScenario(s)).hyperedges().size(), oracle_hyperedge_count(s));
    }
    // Two parties: s_A s_B^2 + s_B s_A^2 - s_A s_B.
    EXPECT_EQ(bell_hypergraph(BellScenario({2, 3})).hyperedges().size(), 2u * 9 + 3 * 4 - 6);
    EXPECT_THROW(bell_hypergraph(BellScenario({2, 2, 2, 2})), std::invalid_argument);
    EXPECT_THROW(bell_hypergraph(BellScenario({4, 2})), std::invalid_argument);
}

TEST(BellHypergraph, DeterministicBehavioursAreTheColourings) {
    BellScenario b({2, 2});
    Scenario h = bell_hypergraph(b);
    std::set<Colouring> from_behaviours;
    for (const Behaviour &d : enumerate_local_deterministic(b)) {
        ProbModel m = behaviours_as_models(d, h);
        Colouring c;
        for (double v : m.values) {
            ASSERT_TRUE(v == 0.0 || v == 1.0);
            c.values.push_back(static_cast<uint8_t>(v));
        }
        EXPECT_TRUE(is_valid_colouring(h, c));
        from_behaviours.insert(c);
        EXPECT_EQ(behaviour_from_colouring(b, h, c).values(), d.values());
    }
    auto all = enumerate_ks_colourings(h).colourings;
    std::set<Colouring> colourings(all.begin(), all.end());
    EXPECT_EQ(from_behaviours.size(), 16u);
    EXPECT_EQ(from_behaviours, colourings);
}

TEST(BellHypergraph, ModelsAndClassicality) {
    BellScenario b({2, 2});
    Scenario h = bell_hypergraph(b);
    ProbModel uniform = behaviours_as_models(Behaviour(b, std::vector<double>(16, 0.25)), h);
    for (double v : uniform.values) {
        EXPECT_DOUBLE_EQ(v, 0.25);
    }
    EXPECT_EQ(is_classical_model(h, uniform).verdict, Classicality::classical);

    CounterRng rng(62, 0);
    auto det = enumerate_local_deterministic(b);
    std::vector<double> p(16, 0.0);
    double total = 0;
    std::vector<double> w(det.size());
    for (double &x : w) {
        x = rng.uniform();
        total += x;
    }
    for (size_t k = 0; k < det.size(); k++) {
        for (size_t e = 0; e < 16; e++) {
            p[e] += w[k] / total * det[k].values()[e];
        }
    }
    Behaviour local(b, p);
    EXPECT_EQ(is_local(local).verdict, Locality::local);
    EXPECT_EQ(is_classical_model(h, behaviours_as_models(local, h)).verdict, Classicality::classical);

    Behaviour q = quantum_behaviour(DensityOperator::pure(singlet()), chsh_optimal_measurements());
    EXPECT_EQ(is_classical_model(h, behaviours_as_models(q, h)).verdict, Classicality::non_classical);
}

TEST(Extension, WorkedExample) {
    std::vector<ProductRay> s = {ProductRay({kets::zero(), kets::zero()}), ProductRay({kets::plus(), kets::one()}),
                                 ProductRay({kets::zero(), kets::plus()})};
    BellExtension ext = extend_rays_to_bell(s);
    EXPECT_EQ(ext.scenario.settings(), (std::vector<size_t>{2, 2}));
    EXPECT_EQ(ext.extended.size(), 16u);
    EXPECT_EQ(event_label(ext.source_events[1]), "01|10");
    for (size_t k = 0; k < s.size(); k++) {
        EXPECT_TRUE(ext.extended[event_index(ext.scenario, ext.source_events[k])].same_ray(s[k]));
    }
}

TEST(Extension, SingleRayAndOrthogonalDedup) {
    BellExtension one = extend_rays_to_bell({ProductRay({kets::plus(), qubit_ray(1.0, 2.0)})});
    EXPECT_EQ(one.scenario.settings(), (std::vector<size_t>{1, 1}));
    EXPECT_EQ(one.extended.size(), 4u);
    Ray psi = qubit_ray(0.4, 0.9);
    BellExtension two =
        extend_rays_to_bell({ProductRay({psi, kets::zero()}), ProductRay({psi, kets::one()})});
    EXPECT_EQ(two.scenario.settings(), (std::vector<size_t>{1, 1}));
    EXPECT_THROW(extend_rays_to_bell({}), std::invalid_argument);
    EXPECT_THROW(extend_rays_to_bell({ProductRay({kets::zero()})}), std::invalid_argument);
    EXPECT_THROW(extend_rays_to_bell({ProductRay({Ray::basis(3, 0), kets::zero()})}), std::invalid_argument);
}

TEST(Theorem4, ChshDemo) {
    Theorem4Report r = theorem4_pipeline(chsh_rays(), DensityOperator::pure(singlet()));
    EXPECT_EQ(r.h_vertices, 16u);
    EXPECT_EQ(r.h_hyperedges, 12u);
    EXPECT_EQ(r.h_verdict, Classicality::non_classical);
    EXPECT_EQ(r.bell_hyperedges, 12u);
    EXPECT_EQ(r.bell_hyperedges_missing_from_g, 0u);
    EXPECT_TRUE(r.extra.empty());
    EXPECT_EQ(r.locality.verdict, Locality::nonlocal);
    ASSERT_TRUE(r.chsh.has_value());
    EXPECT_NEAR(*r.chsh, 2 * std::sqrt(2.0), 1e-9);
    EXPECT_TRUE(r.implication_holds);
    EXPECT_TRUE(r.all_checks_pass);
}

TEST(Theorem4, Eq1BasisWithGhz) {
    Theorem4Report r = theorem4_pipeline(eq1_rays(), DensityOperator::pure(ghz3()));
    EXPECT_EQ(r.h_vertices, 8u);
    EXPECT_EQ(r.h_verdict, Classicality::classical);
    EXPECT_EQ(r.g_vertices, 64u);
    EXPECT_EQ(r.bell_hyperedges, 680u);
    EXPECT_EQ(r.bell_hyperedges_missing_from_g, 0u);
    EXPECT_EQ(r.deterministic_behaviours, 64u);
    EXPECT_EQ(r.colourings_invalid_on_g, 0u);
    ASSERT_FALSE(r.extra.empty());
    for (const ExtraHyperedgeCheck &c : r.extra) {
        EXPECT_TRUE(c.locally_orthogonal);
        EXPECT_TRUE(c.saturated);
        EXPECT_LE(c.max_sum, 1 + 1e-12);
    }
    EXPECT_TRUE(r.implication_holds);
    EXPECT_TRUE(r.all_checks_pass);
}

TEST(Theorem4, ExtraHyperedgesSaturatedByAffineCombinations) {
    std::vector<ProductRay> s = eq1_rays();
    Theorem4Report r = theorem4_pipeline(s, DensityOperator::pure(ghz3()));
    BellExtension ext = extend_rays_to_bell(s);
    auto det = enumerate_local_deterministic(ext.scenario);
    CounterRng rng(63, 0);
    for (int t = 0; t < 100; t++) {
        std::vector<double> w(det.size());
        double total = 0;
        for (size_t k = 0; k + 1 < w.size(); k++) {
            w[k] = 4 * rng.uniform() - 2;
            total += w[k];
        }
        w.back() = 1 - total;
        std::vector<double> p(ext.scenario.num_events(), 0.0);
        for (size_t k = 0; k < det.size(); k++) {
            for (size_t e = 0; e < p.size(); e++) {
                p[e] += w[k] * det[k].values()[e];
            }
        }
        for (const ExtraHyperedgeCheck &c : r.extra) {
            double sum = 0;
            for (size_t v : c.events) {
                sum += p[v];
            }
            EXPECT_NEAR(sum, 1, 1e-9);
        }
    }
}

TEST(Chsh, Guards) {
    BellScenario b({2, 2, 2});
    EXPECT_THROW(chsh_value(Behaviour(b, std::vector<double>(b.num_events(), 1.0 / 8))), std::invalid_argument);
    Behaviour mixed = quantum_behaviour(DensityOperator::maximally_mixed(4), chsh_optimal_measurements());
    EXPECT_NEAR(chsh_value(mixed), 0, 1e-12);
}
