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
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace ksforge {

BellScenario::BellScenario(std::vector<size_t> settings) : settings_(std::move(settings)) {
    if (settings_.size() < 2) {
        throw std::invalid_argument("a Bell scenario needs at least two parties");
    }
    for (size_t s : settings_) {
        if (s < 1 || s > 10) {
            throw std::invalid_argument("setting counts must lie in [1, 10]");
        }
    }
}

size_t BellScenario::num_setting_tuples() const {
    size_t n = 1;
    for (size_t s : settings_) {
        n *= s;
    }
    return n;
}

size_t BellScenario::num_events() const {
    return num_setting_tuples() << parties();
}

std::vector<BellEvent> bell_events(const BellScenario &b) {
    size_t n = b.parties();
    std::vector<BellEvent> out;
    out.reserve(b.num_events());
    std::vector<uint8_t> x(n, 0);
    for (size_t t = 0; t < b.num_setting_tuples(); t++) {
        for (size_t a = 0; a < (size_t{1} << n); a++) {
            BellEvent e;
            e.settings = x;
            e.outcomes.resize(n);
            for (size_t r = 0; r < n; r++) {
                e.outcomes[r] = static_cast<uint8_t>((a >> (n - 1 - r)) & 1);
            }
            out.push_back(std::move(e));
        }
        for (size_t r = n; r-- > 0;) {
            if (++x[r] < b.settings()[r]) {
                break;
            }
            x[r] = 0;
        }
    }
    return out;
}

size_t event_index(const BellScenario &b, const BellEvent &e) {
    size_t n = b.parties();
    if (e.outcomes.size() != n || e.settings.size() != n) {
        throw std::invalid_argument("event has the wrong number of parties");
    }
    size_t t = 0;
    size_t a = 0;
    for (size_t r = 0; r < n; r++) {
        if (e.settings[r] >= b.settings()[r] || e.outcomes[r] > 1) {
            throw std::invalid_argument("event lies outside the scenario");
        }
        t = t * b.settings()[r] + e.settings[r];
        a = 2 * a + e.outcomes[r];
    }
    return (t << n) + a;
}

std::string event_label(const BellEvent &e) {
    std::string out;
    for (uint8_t a : e.outcomes) {
        out.push_back(static_cast<char>('0' + a));
    }
    out.push_back('|');
    for (uint8_t x : e.settings) {
        out.push_back(static_cast<char>('0' + x));
    }
    return out;
}

BellEvent parse_event_label(const BellScenario &b, const std::string &label) {
    size_t n = b.parties();
    if (label.size() != 2 * n + 1 || label[n] != '|') {
        throw std::invalid_argument("malformed event label '" + label + "'");
    }
    BellEvent e;
    for (size_t r = 0; r < n; r++) {
        char a = label[r];
        char x = label[n + 1 + r];
        if (a < '0' || a > '1' || x < '0' || x > '9') {
            throw std::invalid_argument("malformed event label '" + label + "'");
        }
        e.outcomes.push_back(static_cast<uint8_t>(a - '0'));
        e.settings.push_back(static_cast<uint8_t>(x - '0'));
    }
    event_index(b, e);
    return e;
}

Behaviour::Behaviour(BellScenario scenario, std::vector<double> p) : scenario_(std::move(scenario)), p_(std::move(p)) {
    size_t n = scenario_.parties();
    size_t block = size_t{1} << n;
    if (p_.size() != scenario_.num_events()) {
        throw std::invalid_argument(
            "behaviour has " + std::to_string(p_.size()) + " entries, the scenario has " +
            std::to_string(scenario_.num_events()) + " events");
    }
    for (double v : p_) {
        if (!(v >= -kBehaviourTol && v <= 1 + kBehaviourTol)) {
            throw std::invalid_argument("behaviour entries must lie in [0, 1]");
        }
    }
    for (size_t t = 0; t < scenario_.num_setting_tuples(); t++) {
        double total = 0;
        for (size_t a = 0; a < block; a++) {
            total += p_[t * block + a];
        }
        if (std::abs(total - 1) > kBehaviourTol) {
            throw std::invalid_argument("probabilities for a setting tuple do not sum to one");
        }
    }
    // Marginal over party r must not depend on r's setting.
    auto events = bell_events(scenario_);
    for (size_t r = 0; r < n; r++) {
        std::map<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>, std::vector<double>> marginals;
        for (size_t k = 0; k < events.size(); k++) {
            BellEvent rest = events[k];
            uint8_t x = rest.settings[r];
            rest.settings.erase(rest.settings.begin() + static_cast<std::ptrdiff_t>(r));
            rest.outcomes.erase(rest.outcomes.begin() + static_cast<std::ptrdiff_t>(r));
            auto &slot = marginals[{rest.settings, rest.outcomes}];
            slot.resize(scenario_.settings()[r], 0.0);
            slot[x] += p_[k];
        }
        for (const auto &[key, per_setting] : marginals) {
            for (double v : per_setting) {
                if (std::abs(v - per_setting.front()) > kBehaviourTol) {
                    throw std::invalid_argument(
                        "behaviour is signalling: party " + std::to_string(r) + " changes the others' marginals");
                }
            }
        }
    }
}

double Behaviour::operator()(const BellEvent &e) const {
    return p_[event_index(scenario_, e)];
}

LocalMeasurementSet::LocalMeasurementSet(std::vector<std::vector<Ray>> zero_rays) : zero_(std::move(zero_rays)) {
    if (zero_.size() < 2) {
        throw std::invalid_argument("local measurements need at least two parties");
    }
    for (const auto &party : zero_) {
        if (party.empty()) {
            throw std::invalid_argument("every party needs at least one setting");
        }
        for (const Ray &r : party) {
            if (r.dim() != 2) {
                throw std::invalid_argument("local measurements act on qubits");
            }
        }
    }
}

BellScenario LocalMeasurementSet::scenario() const {
    std::vector<size_t> settings;
    for (const auto &party : zero_) {
        settings.push_back(party.size());
    }
    return BellScenario(settings);
}

Ray LocalMeasurementSet::ray(size_t party, size_t setting, uint8_t outcome) const {
    const Ray &r = zero_.at(party).at(setting);
    return outcome == 0 ? r : qubit_complement(r);
}

ProductRay LocalMeasurementSet::event_ray(const BellEvent &e) const {
    if (e.outcomes.size() != parties()) {
        throw std::invalid_argument("event has the wrong number of parties");
    }
    std::vector<Ray> factors;
    for (size_t r = 0; r < parties(); r++) {
        factors.push_back(ray(r, e.settings[r], e.outcomes[r]));
    }
    return ProductRay(std::move(factors));
}

LocalMeasurementSet zx_plane_measurements(const std::vector<std::vector<double>> &angles) {
    std::vector<std::vector<Ray>> rays;
    for (const auto &party : angles) {
        std::vector<Ray> settings;
        for (double t : party) {
            settings.emplace_back(std::vector<Complex>{std::cos(t / 2), std::sin(t / 2)});
        }
        rays.push_back(std::move(settings));
    }
    return LocalMeasurementSet(std::move(rays));
}

Ray singlet() {
    return Ray({0, 1, -1, 0});
}

LocalMeasurementSet chsh_optimal_measurements() {
    constexpr double pi = std::numbers::pi;
    return zx_plane_measurements({{0, pi / 2}, {pi / 4, 3 * pi / 4}});
}

Behaviour quantum_behaviour(const DensityOperator &rho, const LocalMeasurementSet &m) {
    BellScenario b = m.scenario();
    if (rho.dim() != (size_t{1} << b.parties())) {
        throw std::invalid_argument(
            "state has dimension " + std::to_string(rho.dim()) + " but there are " + std::to_string(b.parties()) +
            " qubit parties");
    }
    std::vector<double> p;
    for (const BellEvent &e : bell_events(b)) {
        p.push_back(std::clamp(rho.expectation(m.event_ray(e).flatten()), 0.0, 1.0));
    }
    return Behaviour(b, std::move(p));
}

std::vector<Behaviour> enumerate_local_deterministic(const BellScenario &b) {
    size_t bits = 0;
    for (size_t s : b.settings()) {
        bits += s;
    }
    if (bits >= 64 || (uint64_t{1} << bits) > kDeterministicGuard) {
        throw std::invalid_argument(
            "2^" + std::to_string(bits) + " deterministic behaviours exceed the enumeration guard");
    }
    auto events = bell_events(b);
    std::vector<Behaviour> out;
    size_t total = size_t{1} << bits;
    out.reserve(total);
    for (size_t k = 0; k < total; k++) {
        // outcome[r][x] for the assignment k.
        std::vector<std::vector<uint8_t>> outcome(b.parties());
        size_t pos = bits;
        for (size_t r = 0; r < b.parties(); r++) {
            for (size_t x = 0; x < b.settings()[r]; x++) {
                pos--;
                outcome[r].push_back(static_cast<uint8_t>((k >> pos) & 1));
            }
        }
        std::vector<double> p(events.size(), 0.0);
        for (size_t e = 0; e < events.size(); e++) {
            bool hit = true;
            for (size_t r = 0; r < b.parties() && hit; r++) {
                hit = outcome[r][events[e].settings[r]] == events[e].outcomes[r];
            }
            p[e] = hit ? 1.0 : 0.0;
        }
        out.emplace_back(b, std::move(p));
    }
    return out;
}

const char *to_string(Locality l) {
    return l == Locality::local ? "local" : "nonlocal";
}

LocalityResult is_local(const Behaviour &p) {
    auto det = enumerate_local_deterministic(p.scenario());
    std::vector<std::vector<double>> points;
    points.reserve(det.size());
    for (const Behaviour &d : det) {
        points.push_back(d.values());
    }
    LocalityResult out;
    out.lp = convex_hull_membership(points, p.values());
    out.verdict = out.lp.feasible ? Locality::local : Locality::nonlocal;
    if (!out.lp.feasible) {
        double lhs = 0;
        for (size_t k = 0; k < p.values().size(); k++) {
            lhs += out.lp.coefficients[k] * p.values()[k];
        }
        out.violation = lhs - out.lp.bound;
    }
    return out;
}

namespace {

// Leaf sets of every adaptive strategy from a partial history. state[r] is 0
// while party r has not acted, else 1 + 2 x + a.
class StrategyEnumerator {
   public:
    explicit StrategyEnumerator(const BellScenario &b) : b_(b) {
    }

    const std::vector<std::vector<size_t>> &leaf_sets(const std::vector<uint8_t> &state) {
        auto it = memo_.find(state);
        if (it != memo_.end()) {
            return it->second;
        }
        std::set<std::vector<size_t>> found;
        bool complete = true;
        for (size_t r = 0; r < state.size(); r++) {
            if (state[r] != 0) {
                continue;
            }
            complete = false;
            for (size_t x = 0; x < b_.settings()[r]; x++) {
                std::vector<uint8_t> s0 = state;
                std::vector<uint8_t> s1 = state;
                s0[r] = static_cast<uint8_t>(1 + 2 * x);
                s1[r] = static_cast<uint8_t>(2 + 2 * x);
                // Copies: the memo may rehash while the second list is built.
                std::vector<std::vector<size_t>> left = leaf_sets(s0);
                const std::vector<std::vector<size_t>> &right = leaf_sets(s1);
                for (const auto &l : left) {
                    for (const auto &rr : right) {
                        std::vector<size_t> merged;
                        merged.reserve(l.size() + rr.size());
                        std::merge(l.begin(), l.end(), rr.begin(), rr.end(), std::back_inserter(merged));
                        found.insert(std::move(merged));
                    }
                }
            }
        }
        if (complete) {
            BellEvent e;
            for (uint8_t v : state) {
                e.settings.push_back(static_cast<uint8_t>((v - 1) / 2));
                e.outcomes.push_back(static_cast<uint8_t>((v - 1) % 2));
            }
            found.insert({event_index(b_, e)});
        }
        auto [pos, inserted] = memo_.emplace(state, std::vector<std::vector<size_t>>(found.begin(), found.end()));
        return pos->second;
    }

   private:
    const BellScenario &b_;
    std::map<std::vector<uint8_t>, std::vector<std::vector<size_t>>> memo_;
};

std::vector<std::string> event_labels(const BellScenario &b) {
    std::vector<std::string> out;
    for (const BellEvent &e : bell_events(b)) {
        out.push_back(event_label(e));
    }
    return out;
}

}  // namespace

Scenario bell_hypergraph(const BellScenario &b) {
    if (b.parties() > kMaxBellParties) {
        throw std::invalid_argument("the bell hypergraph is limited to 3 parties");
    }
    for (size_t s : b.settings()) {
        if (s > kMaxBellSettings) {
            throw std::invalid_argument("the bell hypergraph is limited to 3 settings per party");
        }
    }
    StrategyEnumerator en(b);
    std::vector<std::vector<size_t>> edges = en.leaf_sets(std::vector<uint8_t>(b.parties(), 0));
    return Scenario(event_labels(b), std::move(edges));
}

ProbModel behaviours_as_models(const Behaviour &p, const Scenario &h) {
    const BellScenario &b = p.scenario();
    if (h.num_vertices() != b.num_events()) {
        throw std::invalid_argument("hypergraph does not carry the events of the behaviour's scenario");
    }
    ProbModel m;
    for (const std::string &id : h.vertex_ids()) {
        m.values.push_back(p(parse_event_label(b, id)));
    }
    try {
        validate_model(h, m);
    } catch (const std::invalid_argument &e) {
        throw std::invalid_argument(std::string("behaviour does not normalize on the hypergraph: ") + e.what());
    }
    return m;
}

Behaviour behaviour_from_colouring(const BellScenario &b, const Scenario &h, const Colouring &c) {
    if (!is_valid_colouring(h, c)) {
        throw std::invalid_argument("not a KS-colouring of the hypergraph");
    }
    std::vector<double> p(b.num_events(), 0.0);
    for (size_t v = 0; v < h.num_vertices(); v++) {
        p[event_index(b, parse_event_label(b, h.vertex_ids()[v]))] = c.values[v];
    }
    return Behaviour(b, std::move(p));
}

BellExtension extend_rays_to_bell(const std::vector<ProductRay> &s) {
    if (s.empty()) {
        throw std::invalid_argument("extend_rays_to_bell needs at least one ray");
    }
    size_t n = s.front().num_factors();
    if (n < 2) {
        throw std::invalid_argument("rays must have at least two qubit factors");
    }
    for (const ProductRay &p : s) {
        if (p.num_factors() != n) {
            throw std::invalid_argument("rays have different numbers of factors");
        }
        for (const Ray &f : p.factors()) {
            if (f.dim() != 2) {
                throw std::invalid_argument("rays must be products of qubit rays");
            }
        }
    }
    std::vector<std::vector<Ray>> zero(n);
    for (size_t r = 0; r < n; r++) {
        for (const ProductRay &p : s) {
            const Ray &f = p.factor(r);
            bool known = std::any_of(zero[r].begin(), zero[r].end(), [&](const Ray &z) {
                return z.same_ray(f) || is_orthogonal(z, f);
            });
            if (!known) {
                zero[r].push_back(f);
            }
        }
    }
    LocalMeasurementSet m(std::move(zero));
    BellScenario b = m.scenario();
    std::vector<ProductRay> extended;
    for (const BellEvent &e : bell_events(b)) {
        extended.push_back(m.event_ray(e));
    }
    std::vector<BellEvent> sources;
    for (const ProductRay &p : s) {
        BellEvent e;
        for (size_t r = 0; r < n; r++) {
            for (size_t x = 0; x < b.settings()[r]; x++) {
                const Ray z = m.ray(r, x, 0);
                if (z.same_ray(p.factor(r)) || is_orthogonal(z, p.factor(r))) {
                    e.settings.push_back(static_cast<uint8_t>(x));
                    e.outcomes.push_back(z.same_ray(p.factor(r)) ? 0 : 1);
                    break;
                }
            }
        }
        sources.push_back(std::move(e));
    }
    return BellExtension{std::move(m), std::move(b), std::move(extended), std::move(sources)};
}

double chsh_value(const Behaviour &p) {
    const BellScenario &b = p.scenario();
    if (b.parties() != 2 || b.settings()[0] != 2 || b.settings()[1] != 2) {
        throw std::invalid_argument("CHSH needs two parties with two settings each");
    }
    double e[2][2];
    for (uint8_t x = 0; x < 2; x++) {
        for (uint8_t y = 0; y < 2; y++) {
            double acc = 0;
            for (uint8_t a = 0; a < 2; a++) {
                for (uint8_t c = 0; c < 2; c++) {
                    acc += (a == c ? 1.0 : -1.0) * p(BellEvent{{a, c}, {x, y}});
                }
            }
            e[x][y] = acc;
        }
    }
    double sum = e[0][0] + e[0][1] + e[1][0] + e[1][1];
    double best = 0;
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            best = std::max(best, std::abs(sum - 2 * e[x][y]));
        }
    }
    return best;
}

namespace {

bool locally_orthogonal(const BellEvent &a, const BellEvent &b) {
    for (size_t r = 0; r < a.settings.size(); r++) {
        if (a.settings[r] == b.settings[r] && a.outcomes[r] != b.outcomes[r]) {
            return true;
        }
    }
    return false;
}

std::vector<Ray> flatten_all(const std::vector<ProductRay> &rays) {
    std::vector<Ray> out;
    for (const ProductRay &p : rays) {
        out.push_back(p.flatten());
    }
    return out;
}

}  // namespace

Theorem4Report theorem4_pipeline(const std::vector<ProductRay> &s, const DensityOperator &rho) {
    Theorem4Report rep;
    ScenarioWithRays h = scenario_from_rays(flatten_all(s));
    ProbModel ph = quantum_model(h.scenario, h.assignment, rho);
    rep.h_vertices = h.scenario.num_vertices();
    rep.h_hyperedges = h.scenario.hyperedges().size();
    rep.h_verdict = is_classical_model(h.scenario, ph).verdict;

    BellExtension ext = extend_rays_to_bell(s);
    std::vector<BellEvent> events = bell_events(ext.scenario);
    ScenarioWithRays g = scenario_from_rays(flatten_all(ext.extended), event_labels(ext.scenario));
    Scenario hp = bell_hypergraph(ext.scenario);
    rep.g_vertices = g.scenario.num_vertices();
    rep.g_hyperedges = g.scenario.hyperedges().size();
    rep.bell_hyperedges = hp.hyperedges().size();

    std::set<std::vector<size_t>> g_edges(g.scenario.hyperedges().begin(), g.scenario.hyperedges().end());
    std::set<std::vector<size_t>> hp_edges(hp.hyperedges().begin(), hp.hyperedges().end());
    for (const auto &e : hp_edges) {
        rep.bell_hyperedges_missing_from_g += g_edges.count(e) ? 0 : 1;
    }

    std::vector<Behaviour> det = enumerate_local_deterministic(ext.scenario);
    rep.deterministic_behaviours = det.size();
    for (const auto &edge : g.scenario.hyperedges()) {
        if (hp_edges.count(edge)) {
            continue;
        }
        ExtraHyperedgeCheck check;
        check.events = edge;
        check.locally_orthogonal = true;
        for (size_t i = 0; i < edge.size() && check.locally_orthogonal; i++) {
            for (size_t j = i + 1; j < edge.size(); j++) {
                if (!locally_orthogonal(events[edge[i]], events[edge[j]])) {
                    check.locally_orthogonal = false;
                    break;
                }
            }
        }
        check.min_sum = INFINITY;
        check.max_sum = -INFINITY;
        for (const Behaviour &d : det) {
            double sum = 0;
            for (size_t v : edge) {
                sum += d.values()[v];
            }
            check.min_sum = std::min(check.min_sum, sum);
            check.max_sum = std::max(check.max_sum, sum);
        }
        check.saturated = std::abs(check.min_sum - 1) <= kBehaviourTol && std::abs(check.max_sum - 1) <= kBehaviourTol;
        rep.extra.push_back(std::move(check));
    }
    for (const Behaviour &d : det) {
        Colouring c;
        for (double v : d.values()) {
            c.values.push_back(v > 0.5 ? 1 : 0);
        }
        rep.colourings_invalid_on_g += is_valid_colouring(g.scenario, c) ? 0 : 1;
    }

    Behaviour behaviour = quantum_behaviour(rho, ext.measurements);
    rep.locality = is_local(behaviour);
    rep.bell_verdict = is_classical_model(hp, behaviours_as_models(behaviour, hp)).verdict;
    if (ext.scenario.parties() == 2 && ext.scenario.settings()[0] == 2 && ext.scenario.settings()[1] == 2) {
        rep.chsh = chsh_value(behaviour);
    }
    rep.behaviour = std::move(behaviour);
    rep.implication_holds = rep.h_verdict != Classicality::non_classical || rep.locality.verdict == Locality::nonlocal;
    bool extras_ok = std::all_of(rep.extra.begin(), rep.extra.end(), [](const ExtraHyperedgeCheck &c) {
        return c.locally_orthogonal && c.saturated;
    });
    rep.all_checks_pass = extras_ok && rep.bell_hyperedges_missing_from_g == 0 && rep.colourings_invalid_on_g == 0 &&
                          rep.implication_holds;
    return rep;
}

std::vector<ProductRay> chsh_rays() {
    LocalMeasurementSet m = chsh_optimal_measurements();
    std::vector<ProductRay> out;
    for (const BellEvent &e : bell_events(m.scenario())) {
        out.push_back(m.event_ray(e));
    }
    return out;
}

}  // namespace ksforge
