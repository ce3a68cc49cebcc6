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

#ifndef KSFORGE_BELL_H
#define KSFORGE_BELL_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksforge/lp.h"
#include "ksforge/rays.h"
#include "ksforge/scenario.h"

namespace ksforge {

/// n parties, each with its own number of two-outcome settings.
class BellScenario {
   public:
    /// Throws std::invalid_argument for fewer than two parties or a setting
    /// count outside [1, 10].
    explicit BellScenario(std::vector<size_t> settings);

    size_t parties() const {
        return settings_.size();
    }
    const std::vector<size_t> &settings() const {
        return settings_;
    }
    size_t num_setting_tuples() const;
    /// 2^parties * num_setting_tuples().
    size_t num_events() const;

    bool operator==(const BellScenario &) const = default;

   private:
    std::vector<size_t> settings_;
};

/// An outcome tuple a given a setting tuple x.
struct BellEvent {
    std::vector<uint8_t> outcomes;
    std::vector<uint8_t> settings;
    bool operator==(const BellEvent &) const = default;
};

/// Events ordered by setting tuple, then outcome tuple (both lexicographic,
/// first party most significant).
std::vector<BellEvent> bell_events(const BellScenario &b);
size_t event_index(const BellScenario &b, const BellEvent &e);

/// "a|x" with one digit per party, e.g. "01|10".
std::string event_label(const BellEvent &e);
/// Inverse of event_label. Throws std::invalid_argument on malformed labels
/// or events outside the scenario.
BellEvent parse_event_label(const BellScenario &b, const std::string &label);

inline constexpr double kBehaviourTol = 1e-9;

/// p(a|x), stored in bell_events order.
class Behaviour {
   public:
    /// Throws std::invalid_argument on a size mismatch, entries outside
    /// [-tol, 1 + tol], a setting tuple whose probabilities do not sum to one,
    /// or a violated no-signalling marginal (all within kBehaviourTol).
    Behaviour(BellScenario scenario, std::vector<double> p);

    const BellScenario &scenario() const {
        return scenario_;
    }
    const std::vector<double> &values() const {
        return p_;
    }
    double operator()(const BellEvent &e) const;

   private:
    BellScenario scenario_;
    std::vector<double> p_;
};

/// Per party and setting, the ray of outcome 0; outcome 1 is its complement.
class LocalMeasurementSet {
   public:
    /// Throws std::invalid_argument unless there are at least two parties,
    /// every party has a setting, and every ray is a qubit ray.
    explicit LocalMeasurementSet(std::vector<std::vector<Ray>> zero_rays);

    size_t parties() const {
        return zero_.size();
    }
    BellScenario scenario() const;
    /// The ray for outcome a of setting x of party r.
    Ray ray(size_t party, size_t setting, uint8_t outcome) const;
    /// Product ray of an event.
    ProductRay event_ray(const BellEvent &e) const;

   private:
    std::vector<std::vector<Ray>> zero_;
};

/// Measurements in the Z-X plane: cos(t/2)|0> + sin(t/2)|1> is outcome 0.
LocalMeasurementSet zx_plane_measurements(const std::vector<std::vector<double>> &angles);

/// (|01> - |10>) / sqrt 2.
Ray singlet();

/// Alice at 0 and pi/2, Bob at pi/4 and 3 pi/4.
LocalMeasurementSet chsh_optimal_measurements();

/// p(a|x) = Tr(prod_r Pi^{r,x_r}_{a_r} rho). Throws std::invalid_argument when
/// rho.dim() != 2^parties.
Behaviour quantum_behaviour(const DensityOperator &rho, const LocalMeasurementSet &m);

inline constexpr size_t kDeterministicGuard = 1000000;

/// One behaviour per outcome assignment to every (party, setting). Assignment
/// k gives (party r, setting x) the bit of k at position counted from the most
/// significant end in (r, x) order. Throws std::invalid_argument if there are
/// more than kDeterministicGuard of them.
std::vector<Behaviour> enumerate_local_deterministic(const BellScenario &b);

enum class Locality { local, nonlocal };
const char *to_string(Locality l);

struct LocalityResult {
    Locality verdict = Locality::local;
    /// Hull weights over the deterministic behaviours or, when nonlocal, a Bell
    /// inequality sum_e coefficients[e] p(e) <= bound violated by the input.
    HullMembership lp;
    double violation = 0;
};

/// Membership in the local polytope by LP at tolerance 1e-7.
LocalityResult is_local(const Behaviour &p);

inline constexpr size_t kMaxBellParties = 3;
inline constexpr size_t kMaxBellSettings = 3;

/// Vertices are the events (ids from event_label, bell_events order);
/// hyperedges are the leaf sets of every adaptive strategy. A strategy picks a
/// party and its setting, and then for each outcome continues with a strategy
/// for the remaining parties. Throws std::invalid_argument beyond 3 parties or
/// 3 settings per party.
Scenario bell_hypergraph(const BellScenario &b);

/// The model p(a|x) on the bell hypergraph. Throws std::invalid_argument when h
/// does not carry the events of p's scenario or an adaptive hyperedge does not
/// sum to one.
ProbModel behaviours_as_models(const Behaviour &p, const Scenario &h);

/// Deterministic behaviour read off a colouring of the bell hypergraph.
/// Throws std::invalid_argument unless the colouring is valid.
Behaviour behaviour_from_colouring(const BellScenario &b, const Scenario &h, const Colouring &c);

struct BellExtension {
    LocalMeasurementSet measurements;
    BellScenario scenario;
    /// One product ray per event, in bell_events order.
    std::vector<ProductRay> extended;
    /// For each input ray the event it equals.
    std::vector<BellEvent> source_events;
};

/// Settings per party from the local factors of S: a factor starts a new
/// setting unless it equals or is orthogonal to the outcome-0 ray of an
/// earlier setting. Throws std::invalid_argument on an empty input, a factor
/// that is not a qubit, or rays with different numbers of factors (fewer than
/// two).
BellExtension extend_rays_to_bell(const std::vector<ProductRay> &s);

/// |E00 + E01 + E10 + E11 - 2 E_xy| maximised over (x, y).
/// Throws std::invalid_argument unless the scenario is 2 parties x 2 settings.
double chsh_value(const Behaviour &p);

struct ExtraHyperedgeCheck {
    std::vector<size_t> events;
    bool locally_orthogonal = false;
    /// Min and max of the event sum over deterministic behaviours.
    double min_sum = 0;
    double max_sum = 0;
    bool saturated = false;
};

struct Theorem4Report {
    size_t h_vertices = 0;
    size_t h_hyperedges = 0;
    Classicality h_verdict = Classicality::inconclusive;
    size_t g_vertices = 0;
    size_t g_hyperedges = 0;
    size_t bell_hyperedges = 0;
    /// Bell hyperedges that are not hyperedges of G (expected none).
    size_t bell_hyperedges_missing_from_g = 0;
    std::vector<ExtraHyperedgeCheck> extra;
    size_t deterministic_behaviours = 0;
    /// Deterministic behaviours whose colouring violates some G hyperedge.
    size_t colourings_invalid_on_g = 0;
    std::optional<Behaviour> behaviour;
    LocalityResult locality;
    Classicality bell_verdict = Classicality::inconclusive;
    std::optional<double> chsh;
    /// Non-classical on H implies a nonlocal behaviour.
    bool implication_holds = false;
    bool all_checks_pass = false;
};

/// Builds H (all bases over S), G (all bases over the extended set) and the bell
/// hypergraph, checks the extra hyperedges of G and the induced behaviour.
/// Guards of the pieces propagate as std::invalid_argument.
Theorem4Report theorem4_pipeline(const std::vector<ProductRay> &s, const DensityOperator &rho);

/// The 16 product rays of the optimal CHSH measurements, in event order.
std::vector<ProductRay> chsh_rays();

}  // namespace ksforge

#endif
