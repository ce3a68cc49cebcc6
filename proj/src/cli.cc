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

#include "ksforge/cli.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ksforge/bell.h"
#include "ksforge/catalog.h"
#include "ksforge/colouring.h"
#include "ksforge/json_io.h"
#include "ksforge/ontmodel.h"

namespace ksforge {

uint64_t fnv1a64(std::string_view data, uint64_t h) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

constexpr double kMaxAbsZ = 4.0;

// Thrown for bad input that should end the run with exit code 2.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct Context {
    std::ostream &out;
    std::ostream &err;
    std::string command;
    uint64_t digest = fnv1a64("");
    std::optional<uint64_t> seed;
    Json results = Json::object();
    Json checks = Json::array();

    void absorb(std::string_view s) {
        digest = fnv1a64(s, digest);
        digest = fnv1a64(std::string_view("\0", 1), digest);
    }

    void check(const std::string &name, const Json &expected, const Json &observed, bool pass) {
        checks.push_back(Json{{"name", name}, {"expected", expected}, {"observed", observed}, {"pass", pass}});
    }

    bool all_pass() const {
        for (const Json &c : checks) {
            if (!c.at("pass").get<bool>()) {
                return false;
            }
        }
        return true;
    }
};

std::string read_file(Context &ctx, const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    ctx.absorb(text);
    return text;
}

Json read_json(Context &ctx, const std::string &path) {
    std::string text = read_file(ctx, path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json(const std::string &path, const Json &j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    out << j.dump(2) << "\n";
}

// Labels such as "+0-" unless the argument names an existing file.
ProductRay product_ray_arg(Context &ctx, const std::string &arg) {
    if (std::filesystem::exists(arg)) {
        return product_ray_from_json(read_json(ctx, arg));
    }
    return product_ray_from_label(arg);
}

EpistemicState preparation_arg(Context &ctx, const std::string &arg) {
    if (std::filesystem::exists(arg)) {
        return epistemic_from_json(read_json(ctx, arg));
    }
    return EpistemicState::pure(product_ray_from_label(arg));
}

DensityOperator state_arg(Context &ctx, const std::string &arg, size_t qubits) {
    size_t d = size_t{1} << qubits;
    if (arg == "singlet") {
        if (qubits != 2) {
            throw UsageError("the singlet is a two-qubit state");
        }
        return DensityOperator::pure(singlet());
    }
    if (arg == "maximally-mixed") {
        return DensityOperator::maximally_mixed(d);
    }
    if (arg == "ghz") {
        std::vector<Complex> amps(d, 0.0);
        amps.front() = 1;
        amps.back() = 1;
        return DensityOperator::pure(Ray(std::move(amps)));
    }
    if (!std::filesystem::exists(arg)) {
        throw UsageError("unknown state '" + arg + "' (use singlet, maximally-mixed, ghz or a JSON file)");
    }
    DensityOperator rho = density_from_json(read_json(ctx, arg));
    if (rho.dim() != d) {
        throw UsageError("state has dimension " + std::to_string(rho.dim()) + ", expected " + std::to_string(d));
    }
    return rho;
}

unsigned resolve_jobs(std::optional<unsigned> flag) {
    if (flag) {
        if (*flag == 0) {
            throw UsageError("--jobs must be positive");
        }
        return *flag;
    }
    if (const char *env = std::getenv("KSFORGE_JOBS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0 || v > 4096) {
            throw UsageError(std::string("KSFORGE_JOBS must be a positive integer, got '") + env + "'");
        }
        return static_cast<unsigned>(v);
    }
    return 1;
}

Json checks_json(const std::vector<CatalogCheck> &checks, const std::string &entry) {
    Json out = Json::array();
    for (const CatalogCheck &c : checks) {
        out.push_back(
            Json{{"entry", entry}, {"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
    }
    return out;
}

// ---- catalog ----

int cmd_catalog_list(Context &ctx) {
    ctx.results["entries"] = catalog_names();
    return kExitOk;
}

CatalogEntry entry_arg(const std::string &name) {
    try {
        return build_catalog_entry(name);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

int cmd_catalog_build(Context &ctx, const std::string &name, const std::string &out_path) {
    CatalogEntry e = entry_arg(name);
    Json scenario = scenario_to_json(e.scenario, &e.assignment);
    ctx.results["name"] = e.name;
    ctx.results["description"] = e.description;
    ctx.results["vertex_count"] = e.expected.vertex_count;
    ctx.results["hyperedge_count"] = e.expected.hyperedge_count;
    ctx.results["colourable"] = e.expected.colourable;
    if (out_path.empty()) {
        ctx.results["scenario"] = scenario;
    } else {
        write_json(out_path, scenario);
        ctx.results["written"] = out_path;
    }
    return kExitOk;
}

int cmd_catalog_verify(Context &ctx, const std::string &name) {
    std::vector<std::string> names = name == "all" ? catalog_names() : std::vector<std::string>{name};
    Json entries = Json::array();
    for (const std::string &n : names) {
        CatalogEntry e = entry_arg(n);
        for (Json &c : checks_json(verify_catalog_entry(e), n)) {
            ctx.checks.push_back(std::move(c));
        }
        entries.push_back(
            Json{{"name", n},
                 {"vertex_count", e.expected.vertex_count},
                 {"hyperedge_count", e.expected.hyperedge_count},
                 {"colourable", e.expected.colourable}});
    }
    ctx.results["entries"] = entries;
    return ctx.all_pass() ? kExitOk : kExitFailed;
}

// ---- colour ----

int cmd_colour(Context &ctx, const std::string &path, bool north, bool enumerate, size_t cap) {
    LoadedScenario in = scenario_from_json(read_json(ctx, path));
    const Scenario &s = in.scenario;
    ctx.results["vertex_count"] = s.num_vertices();
    ctx.results["hyperedge_count"] = s.hyperedges().size();
    if (north) {
        if (!in.assignment) {
            throw UsageError("--north needs a scenario whose vertices carry rays");
        }
        Colouring c;
        try {
            c = all_north_colouring(s, *in.assignment);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        bool valid = is_valid_colouring(s, c);
        ctx.results["verdict"] = "COLOURABLE";
        ctx.results["method"] = "all_north";
        ctx.results["colouring"] = colouring_to_json(s, c);
        ctx.check("all_north_colouring_valid", true, valid, valid);
        return valid ? kExitOk : kExitFailed;
    }
    ctx.results["method"] = "search";
    if (enumerate) {
        if (cap == 0) {
            throw UsageError("--cap must be positive");
        }
        ColouringEnumeration en = enumerate_ks_colourings(s, cap);
        Json list = Json::array();
        for (const Colouring &c : en.colourings) {
            list.push_back(colouring_to_json(s, c));
        }
        ctx.results["verdict"] = en.colourings.empty() ? "UNCOLOURABLE" : "COLOURABLE";
        ctx.results["count"] = en.colourings.size();
        ctx.results["truncated"] = en.truncated;
        ctx.results["colourings"] = list;
        return kExitOk;
    }
    std::optional<Colouring> c = find_ks_colouring(s);
    if (!c) {
        ctx.results["verdict"] = "UNCOLOURABLE";
        return kExitOk;
    }
    ctx.results["verdict"] = "COLOURABLE";
    ctx.results["colouring"] = colouring_to_json(s, *c);
    return kExitOk;
}

// Compares the verdict with --expect when given.
int check_expected_verdict(Context &ctx, const std::string &expect, int code) {
    if (expect.empty() || code != kExitOk) {
        return code;
    }
    std::string verdict = ctx.results.at("verdict").get<std::string>();
    std::string wanted = expect == "colourable" ? "COLOURABLE" : "UNCOLOURABLE";
    ctx.check("expected_verdict", wanted, verdict, verdict == wanted);
    return verdict == wanted ? kExitOk : kExitFailed;
}

// ---- northcheck ----

int cmd_northcheck(Context &ctx, size_t n, uint64_t trials, uint64_t seed) {
    if (n < 1 || n > 16) {
        throw UsageError("--n must lie in [1, 16]");
    }
    uint64_t failures = 0;
    Json first_failure;
    for (uint64_t t = 0; t < trials; t++) {
        CounterRng rng(seed, t);
        ProductBasis b = random_product_basis(n, rng);
        if (!verify_exactly_one_north(b)) {
            if (failures == 0) {
                first_failure = product_rays_to_json(b.rays());
            }
            failures++;
        }
    }
    ctx.results["qubits"] = n;
    ctx.results["trials"] = trials;
    ctx.results["failures"] = failures;
    if (failures != 0) {
        ctx.results["first_failure"] = first_failure;
    }
    ctx.check("exactly_one_all_north", 0, failures, failures == 0);
    return failures == 0 ? kExitOk : kExitFailed;
}

// ---- simulate ----

Json estimate_json(const Estimate &e, double born_value) {
    double sigma = std::sqrt(born_value * (1 - born_value) / static_cast<double>(e.samples));
    // A one-count floor keeps z finite when the Born value is 0 or 1.
    sigma = std::max(sigma, 1.0 / static_cast<double>(e.samples));
    double z = (e.estimate - born_value) / sigma;
    return Json{{"estimate", e.estimate}, {"std_error", e.std_error}, {"hits", e.hits},
                {"samples", e.samples},   {"born_value", born_value}, {"z_score", z}};
}

ProductBasis basis_arg(Context &ctx, const std::string &arg) {
    if (arg == "eq1") {
        return nonlocal_basis_eq1();
    }
    if (!std::filesystem::exists(arg)) {
        throw UsageError("unknown basis '" + arg + "' (use eq1 or a JSON file)");
    }
    try {
        return ProductBasis(product_rays_from_json(read_json(ctx, arg)));
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

int cmd_simulate(
    Context &ctx, const std::string &psi_arg, const std::string &basis, const std::string &chi_arg,
    uint64_t samples, uint64_t seed, std::optional<unsigned> jobs_flag) {
    if (samples == 0) {
        throw UsageError("--samples must be at least 1");
    }
    if (psi_arg.empty() == basis.empty()) {
        throw UsageError("give exactly one of --psi and --basis");
    }
    EpistemicState chi = preparation_arg(ctx, chi_arg);
    SimConfig cfg{samples, seed, resolve_jobs(jobs_flag)};
    DensityOperator rho = chi.density();
    double worst = 0;
    if (!psi_arg.empty()) {
        ProductRay psi = product_ray_arg(ctx, psi_arg);
        if (psi.num_factors() != chi.num_qubits()) {
            throw UsageError(
                "psi has " + std::to_string(psi.num_factors()) + " qubits, the preparation " +
                std::to_string(chi.num_qubits()));
        }
        Json r = estimate_json(simulate_probability(psi, chi, cfg), born(psi.flatten(), rho));
        worst = std::abs(r.at("z_score").get<double>());
        ctx.results["outcome"] = r;
    } else {
        ProductBasis b = basis_arg(ctx, basis);
        if (b.num_qubits() != chi.num_qubits()) {
            throw UsageError("basis and preparation have different qubit counts");
        }
        std::vector<Estimate> est;
        try {
            est = simulate_basis_measurement(b, chi, cfg);
        } catch (const std::runtime_error &e) {
            ctx.err << e.what() << "\n";
            ctx.check("exactly_one_outcome", true, false, false);
            return kExitFailed;
        }
        Json members = Json::array();
        for (size_t k = 0; k < est.size(); k++) {
            Json r = estimate_json(est[k], born(b.rays()[k].flatten(), rho));
            worst = std::max(worst, std::abs(r.at("z_score").get<double>()));
            members.push_back(std::move(r));
        }
        ctx.results["members"] = members;
    }
    ctx.results["max_abs_z"] = worst;
    ctx.check("max_abs_z_within_bound", kMaxAbsZ, worst, worst <= kMaxAbsZ);
    return worst <= kMaxAbsZ ? kExitOk : kExitFailed;
}

// ---- bell ----

Json inequality_json(const BellScenario &b, const LocalityResult &r) {
    Json coeffs = Json::object();
    auto events = bell_events(b);
    for (size_t k = 0; k < events.size(); k++) {
        if (std::abs(r.lp.coefficients[k]) > 1e-12) {
            coeffs[event_label(events[k])] = r.lp.coefficients[k];
        }
    }
    return Json{{"coefficients", coeffs}, {"bound", r.lp.bound}, {"violation", r.violation}};
}

Json locality_json(const BellScenario &b, const LocalityResult &r) {
    Json out{{"verdict", to_string(r.verdict)}, {"residual", r.lp.residual}};
    if (r.verdict == Locality::nonlocal) {
        out["violated_inequality"] = inequality_json(b, r);
    }
    return out;
}

int cmd_bell_chsh(Context &ctx, const std::string &state) {
    DensityOperator rho = state_arg(ctx, state, 2);
    LocalMeasurementSet m = chsh_optimal_measurements();
    Behaviour p = quantum_behaviour(rho, m);
    double value = chsh_value(p);
    LocalityResult loc = is_local(p);
    ctx.results["chsh"] = value;
    ctx.results["local_bound"] = 2;
    ctx.results["behaviour"] = behaviour_to_json(p);
    ctx.results["locality"] = locality_json(p.scenario(), loc);
    bool consistent = value <= 2 + 1e-9 || loc.verdict == Locality::nonlocal;
    ctx.check("chsh_violation_implies_nonlocal", true, consistent, consistent);
    return consistent ? kExitOk : kExitFailed;
}

int cmd_bell_pipeline(Context &ctx, const std::string &demo, const std::string &rays_path, const std::string &state) {
    std::vector<ProductRay> rays;
    std::string state_name = state;
    if (!demo.empty()) {
        if (!rays_path.empty()) {
            throw UsageError("give either --demo or --rays");
        }
        if (demo == "chsh") {
            rays = chsh_rays();
            if (state_name.empty()) {
                state_name = "singlet";
            }
        } else if (demo == "nlbasis") {
            rays = nonlocal_basis_eq1().rays();
            if (state_name.empty()) {
                state_name = "ghz";
            }
        } else {
            throw UsageError("unknown demo '" + demo + "' (use chsh or nlbasis)");
        }
    } else {
        if (rays_path.empty() || state_name.empty()) {
            throw UsageError("bell pipeline needs --demo, or --rays together with --state");
        }
        rays = product_rays_from_json(read_json(ctx, rays_path));
    }
    if (rays.empty()) {
        throw UsageError("the ray list is empty");
    }
    DensityOperator rho = state_arg(ctx, state_name, rays.front().num_factors());
    Theorem4Report rep;
    try {
        rep = theorem4_pipeline(rays, rho);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    size_t saturated = 0;
    size_t orthogonal = 0;
    for (const ExtraHyperedgeCheck &c : rep.extra) {
        saturated += c.saturated ? 1 : 0;
        orthogonal += c.locally_orthogonal ? 1 : 0;
    }
    const BellScenario &b = rep.behaviour->scenario();
    ctx.results["state"] = state_name;
    ctx.results["h"] = Json{{"vertices", rep.h_vertices}, {"hyperedges", rep.h_hyperedges},
                            {"quantum_model", to_string(rep.h_verdict)}};
    ctx.results["g"] = Json{{"vertices", rep.g_vertices}, {"hyperedges", rep.g_hyperedges}};
    ctx.results["bell_hypergraph"] = Json{{"hyperedges", rep.bell_hyperedges},
                                          {"behaviour_model", to_string(rep.bell_verdict)}};
    ctx.results["settings"] = b.settings();
    ctx.results["extra_hyperedges"] = rep.extra.size();
    ctx.results["deterministic_behaviours"] = rep.deterministic_behaviours;
    ctx.results["behaviour"] = behaviour_to_json(*rep.behaviour);
    ctx.results["locality"] = locality_json(b, rep.locality);
    if (rep.chsh) {
        ctx.results["chsh"] = *rep.chsh;
    }
    ctx.check("bell_hyperedges_in_g", 0, rep.bell_hyperedges_missing_from_g, rep.bell_hyperedges_missing_from_g == 0);
    ctx.check("extra_hyperedges_locally_orthogonal", rep.extra.size(), orthogonal, orthogonal == rep.extra.size());
    ctx.check("extra_hyperedges_saturated", rep.extra.size(), saturated, saturated == rep.extra.size());
    ctx.check("deterministic_colourings_valid_on_g", 0, rep.colourings_invalid_on_g, rep.colourings_invalid_on_g == 0);
    ctx.check("non_classical_implies_nonlocal", true, rep.implication_holds, rep.implication_holds);
    return rep.all_checks_pass ? kExitOk : kExitFailed;
}

std::vector<size_t> parse_settings(const std::string &text) {
    std::vector<size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size() || v < 1) {
                throw std::invalid_argument(item);
            }
            out.push_back(static_cast<size_t>(v));
        } catch (const std::exception &) {
            throw UsageError("--settings takes positive integers separated by commas");
        }
    }
    return out;
}

int cmd_bell_hypergraph(Context &ctx, const std::string &settings, const std::string &out_path) {
    Scenario h;
    BellScenario b({1, 1});
    try {
        b = BellScenario(parse_settings(settings));
        h = bell_hypergraph(b);
    } catch (const UsageError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    ColouringEnumeration en = enumerate_ks_colourings(h);
    size_t det = enumerate_local_deterministic(b).size();
    ctx.results["settings"] = b.settings();
    ctx.results["vertex_count"] = h.num_vertices();
    ctx.results["hyperedge_count"] = h.hyperedges().size();
    ctx.results["colourings"] = en.colourings.size();
    ctx.results["deterministic_behaviours"] = det;
    if (out_path.empty()) {
        ctx.results["scenario"] = scenario_to_json(h);
    } else {
        write_json(out_path, scenario_to_json(h));
        ctx.results["written"] = out_path;
    }
    bool match = !en.truncated && en.colourings.size() == det;
    ctx.check("colourings_match_deterministic_behaviours", det, en.colourings.size(), match);
    return match ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    auto started = std::chrono::steady_clock::now();
    CLI::App app{"ksforge: Kochen-Specker sets, product-state models and Bell scenarios"};
    app.require_subcommand(1);

    Context ctx{out, err, {}, fnv1a64(""), std::nullopt, Json::object(), Json::array()};
    std::function<int()> action;

    // catalog
    auto *catalog = app.add_subcommand("catalog", "Build and verify catalog scenarios");
    catalog->require_subcommand(1);
    auto *cat_list = catalog->add_subcommand("list", "List catalog entries");
    cat_list->callback([&] { action = [&] { return cmd_catalog_list(ctx); }; });
    std::string cat_name;
    std::string cat_out;
    auto *cat_build = catalog->add_subcommand("build", "Write an entry as scenario JSON");
    cat_build->add_option("name", cat_name, "Entry name")->required();
    cat_build->add_option("--out", cat_out, "Output file");
    cat_build->callback([&] { action = [&] { return cmd_catalog_build(ctx, cat_name, cat_out); }; });
    auto *cat_verify = catalog->add_subcommand("verify", "Rebuild an entry (or all) and check it");
    cat_verify->add_option("name", cat_name, "Entry name or 'all'")->required();
    cat_verify->callback([&] { action = [&] { return cmd_catalog_verify(ctx, cat_name); }; });

    // colour
    std::string colour_file;
    bool colour_north = false;
    bool colour_all = false;
    size_t colour_cap = kDefaultColouringCap;
    std::string colour_expect;
    auto *colour = app.add_subcommand("colour", "Find a KS-colouring of a scenario file");
    colour->add_option("scenario", colour_file, "Scenario JSON")->required();
    colour->add_flag("--north", colour_north, "Use the all-north colouring (product rays only)");
    colour->add_flag("--all", colour_all, "Enumerate all colourings");
    colour->add_option("--cap", colour_cap, "Enumeration cap");
    colour->add_option("--expect", colour_expect, "Fail unless the verdict is this")
        ->check(CLI::IsMember({"colourable", "uncolourable"}));
    colour->callback([&] {
        action = [&] {
            int code = cmd_colour(ctx, colour_file, colour_north, colour_all, colour_cap);
            return check_expected_verdict(ctx, colour_expect, code);
        };
    });

    // northcheck
    size_t nc_n = 0;
    uint64_t nc_trials = 0;
    uint64_t seed = 0;
    auto *northcheck = app.add_subcommand("northcheck", "Count all-north members of random product bases");
    northcheck->add_option("--n", nc_n, "Number of qubits")->required();
    northcheck->add_option("--trials", nc_trials, "Number of random bases")->required();
    northcheck->add_option("--seed", seed, "RNG seed")->required();
    northcheck->callback([&] {
        ctx.seed = seed;
        action = [&] { return cmd_northcheck(ctx, nc_n, nc_trials, seed); };
    });

    // simulate
    std::string sim_psi;
    std::string sim_basis;
    std::string sim_chi;
    std::string sim_out;
    uint64_t sim_samples = 1000000;
    std::optional<unsigned> jobs;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo of the product-state ontological model");
    simulate->add_option("--psi", sim_psi, "Measured product ray: label like +0- or JSON file");
    simulate->add_option("--basis", sim_basis, "Product basis: eq1 or JSON file {\"rays\": [...]}");
    simulate->add_option("--chi", sim_chi, "Preparation: label or JSON file")->required();
    simulate->add_option("--samples", sim_samples, "Number of samples");
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--out", sim_out, "Also write the report to this file");
    simulate->add_option("--jobs", jobs, "Worker threads");
    simulate->callback([&] {
        ctx.seed = seed;
        action = [&] {
            return cmd_simulate(ctx, sim_psi, sim_basis, sim_chi, sim_samples, seed, jobs);
        };
    });

    // bell
    auto *bell = app.add_subcommand("bell", "Bell scenarios and the contextuality correspondence");
    bell->require_subcommand(1);
    std::string bell_state;
    std::string bell_demo;
    std::string bell_rays;
    std::string bell_settings = "2,2";
    std::string bell_out;
    auto *chsh = bell->add_subcommand("chsh", "CHSH value and locality at the optimal angles");
    chsh->add_option("--state", bell_state, "singlet, maximally-mixed or a state JSON file")->required();
    chsh->callback([&] { action = [&] { return cmd_bell_chsh(ctx, bell_state); }; });
    auto *pipeline = bell->add_subcommand("pipeline", "Product rays to Bell scenario, with all checks");
    pipeline->add_option("--demo", bell_demo, "chsh or nlbasis");
    pipeline->add_option("--rays", bell_rays, "Ray list JSON");
    pipeline->add_option("--state", bell_state, "singlet, maximally-mixed, ghz or a state JSON file");
    pipeline->callback([&] { action = [&] { return cmd_bell_pipeline(ctx, bell_demo, bell_rays, bell_state); }; });
    auto *hyper = bell->add_subcommand("hypergraph", "Adaptive-strategy hypergraph of a Bell scenario");
    hyper->add_option("--settings", bell_settings, "Setting counts per party, e.g. 2,2");
    hyper->add_option("--out", bell_out, "Output file");
    hyper->callback([&] { action = [&] { return cmd_bell_hypergraph(ctx, bell_settings, bell_out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (const std::string &a : args) {
        if (!ctx.command.empty()) {
            ctx.command += ' ';
        }
        ctx.command += a;
        ctx.absorb(a);
    }

    int code = kExitOk;
    try {
        code = action();
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }

    char digest[32];
    std::snprintf(digest, sizeof digest, "fnv1a64:%016llx", static_cast<unsigned long long>(ctx.digest));
    Json report;
    report["command"] = ctx.command;
    report["inputs_digest"] = digest;
    report["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
    report["results"] = ctx.results;
    report["checks"] = ctx.checks;
    report["pass"] = code == kExitOk;
    report["exit_code"] = code;
    report["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::string text = report.dump(2);
    out << text << "\n";
    if (!sim_out.empty()) {
        try {
            write_json(sim_out, report);
        } catch (const UsageError &e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace ksforge
