#include "oslash/pipeline.hpp"

#include "oslash/isoperimetry.hpp"
#include "oslash/spectral.hpp"
#include "oslash/transport.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace oslash {

namespace {

unsigned parse_unsigned(std::string_view text, const std::string& what) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        fail_input("malformed " + what + ": '" + std::string(text) + "'");
    }
    return value;
}

// Shortest directed s-t path, counted in edges.
unsigned hop_depth(const StGraph& g) {
    std::vector<int> level(g.vertex_count(), -1);
    std::vector<VertexId> queue{g.source()};
    level[g.source()] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (EdgeId e : g.out_edges(queue[i])) {
            VertexId w = g.edge(e).dst;
            if (level[w] < 0) {
                level[w] = level[queue[i]] + 1;
                queue.push_back(w);
            }
        }
    }
    if (level[g.sink()] <= 0) fail_input("no directed path from source to sink");
    return static_cast<unsigned>(level[g.sink()]);
}

Json vertex_list(const StGraph& g, const std::vector<VertexId>& vs) {
    Json ids = Json::array(), labels = Json::array();
    for (VertexId v : vs) {
        ids.push_back(v);
        labels.push_back(g.vertex_label(v));
    }
    return Json{{"ids", ids}, {"labels", labels}};
}

unsigned option_power(const Json& options) {
    unsigned n = options.value("power", 1u);
    if (n == 0) fail_input("power must be at least 1");
    return n;
}

std::optional<double> option_real(const Json& options, const char* key) {
    if (!options.contains(key) || options[key].is_null()) return std::nullopt;
    const Json& v = options[key];
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    fail_input(std::string("option ") + key + " must be a number");
}

GraphPtr power_of(const Gadget& g, unsigned n, const Caps& caps) { return oslash_power(g.graph, n, caps); }

}  // namespace

Gadget make_gadget(const std::string& spec, const std::string& measure, StCheck st_check) {
    Gadget g;
    g.spec = spec;
    g.measure = measure;
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "diamond") {
        const auto comma = tail.find(',');
        if (comma == std::string::npos) fail_input("diamond spec must be diamond:k,m");
        g.family = "diamond";
        g.k = parse_unsigned(std::string_view(tail).substr(0, comma), "diamond k");
        g.m = parse_unsigned(std::string_view(tail).substr(comma + 1), "diamond m");
        g.graph = make_diamond(g.k, g.m);
        g.lengths = constant_lengths(*g.graph, Rational(1, g.k));
    } else if (head == "laakso") {
        if (!tail.empty()) fail_input("laakso takes no parameters");
        g.family = "laakso";
        g.k = 4;
        g.graph = make_laakso();
        g.lengths = constant_lengths(*g.graph, Rational(1, 4));
    } else if (head == "path") {
        g.family = "path";
        g.k = parse_unsigned(tail, "path length");
        g.graph = make_path(g.k);
        g.lengths = constant_lengths(*g.graph, Rational(1, g.k));
    } else {
        std::ifstream in(spec);
        if (!in) fail_input("unknown graph spec '" + spec + "' (expected diamond:k,m, laakso, path:k or a JSON file)");
        Json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            fail_input("cannot parse graph file " + spec + ": " + e.what());
        }
        GraphFile file = graph_from_json(j, st_check);
        g.family = "file";
        g.graph = file.graph;
        if (!g.graph->has_terminals()) fail_input("graph file must name a source and a sink");
        g.lengths = file.lengths ? *file.lengths : constant_lengths(*g.graph, Rational(1, hop_depth(*g.graph)));
        if (file.nu && measure != "uniform") {
            g.nu = *file.nu;
            g.measure = "file";
        }
    }
    if (g.nu.mass.empty()) {
        if (measure == "uniform") {
            g.nu = uniform_edge_measure(*g.graph);
        } else if (measure == "weighted") {
            if (g.family != "laakso") fail_input("the weighted measure is defined for laakso only");
            const Rational q(1, 4), e(1, 8);
            g.nu = EdgeMeasure{{q, e, e, e, e, q}};
        } else if (measure == "file") {
            fail_input("measure 'file' needs a graph file with a \"measure\" array");
        } else {
            fail_input("unknown measure '" + measure + "' (uniform | weighted | file)");
        }
    }
    if (!g.nu.is_probability() || !g.nu.fully_supported()) fail_input("edge measure must be a fully supported probability");
    geodesic_metric(*g.graph, g.lengths);  // rejects non-geodesic lengths
    return g;
}

Caps caps_from_json(const Json& options) {
    Caps caps;
    const Json c = options.value("caps", Json::object());
    auto read = [&](const char* key, auto& field) {
        if (!c.contains(key)) return;
        if (!c[key].is_number_unsigned() || c[key].get<long long>() <= 0) fail_input(std::string("cap ") + key + " must be a positive integer");
        field = c[key].get<std::remove_reference_t<decltype(field)>>();
    };
    read("exhaustive_vertex_cap", caps.exhaustive_vertex_cap);
    read("power_edge_cap", caps.power_edge_cap);
    read("connected_subset_cap", caps.connected_subset_cap);
    read("jobs", caps.jobs);
    if (options.contains("jobs")) caps.jobs = std::max(1u, options["jobs"].get<unsigned>());
    return caps;
}

Json build_graph_json(const Gadget& gadget, unsigned power, const Caps& caps) {
    auto p = power_of(gadget, power, caps);
    Json j;
    j["spec"] = gadget.spec;
    j["power"] = power;
    j["measure_name"] = gadget.measure;
    j.update(graph_to_json(*p, power_edge_measure(*p, gadget.nu), power_edge_lengths(*p, gadget.lengths)));
    return j;
}

std::string build_graph_dot(const Gadget& gadget, unsigned power, const Caps& caps) {
    auto p = power_of(gadget, power, caps);
    return graph_to_dot(*p, power_edge_measure(*p, gadget.nu), power_edge_lengths(*p, gadget.lengths));
}

namespace {

const char* mode_name(IsoMode m) {
    switch (m) {
        case IsoMode::Exhaustive: return "exhaustive";
        case IsoMode::Connected: return "connected";
        case IsoMode::Frontier: return "frontier";
    }
    return "?";
}

const char* case_name(WitnessCase c) {
    switch (c) {
        case WitnessCase::ShortEdge: return "short-edge";
        case WitnessCase::SingletonMinimizer: return "singleton";
        case WitnessCase::RecursiveMinimizer: return "recursive";
    }
    return "?";
}

AlphaWeights random_alpha(std::size_t edges, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> pick(1, 63);
    AlphaWeights a;
    for (std::size_t e = 0; e < edges; ++e) a.alpha.push_back(make_rational(pick(rng), 64));
    return a;
}

}  // namespace

PipelineResult run_iso(const Gadget& gadget, const Json& options) {
    const Caps caps = caps_from_json(options);
    const unsigned n = option_power(options);
    const StGraph& base = *gadget.graph;
    auto power = power_of(gadget, n, caps);
    auto nu_n = power_edge_measure(*power, gadget.nu);
    auto len_n = power_edge_lengths(*power, gadget.lengths);

    Json report;
    report["command"] = "iso";
    report["spec"] = gadget.spec;
    report["measure_name"] = gadget.measure;
    report["power"] = n;
    report["vertices"] = power->vertex_count();
    report["edges"] = power->edge_count();

    std::optional<Dimension> dim;
    try {
        dim = iso_dimension(base, gadget.nu, gadget.lengths);
    } catch (const Error&) {
        if (!options.contains("delta")) throw;
    }
    const double delta = option_real(options, "delta").value_or(dim ? dim->value : 0.0);
    if (!(delta >= 1)) fail_input("delta must be at least 1");
    report["delta"] = real_to_json(delta);
    report["delta_source"] = options.contains("delta") ? "option" : "iso_dimension";
    if (dim) {
        report["iso_dimension"] = real_to_json(dim->value);
        if (dim->exact) report["iso_dimension_exact"] = rational_to_json(*dim->exact);
    }

    auto pc = power_conditions(base, delta, gadget.nu, gadget.lengths, caps);
    report["rho"] = real_to_json(pc.rho);
    report["rho_edge"] = base.edge_label(pc.rho_edge);
    report["p"] = rational_to_json(pc.p);
    report["p_witness"] = vertex_list(base, pc.p_witness);
    report["c"] = rational_to_json(pc.c);
    report["c_witness"] = vertex_list(base, pc.c_witness);

    std::string mode_opt = options.value("mode", std::string("auto"));
    std::string alpha_opt = options.value("alpha", std::string("1/2"));
    report["alpha"] = alpha_opt;
    const bool small = power->vertex_count() <= caps.exhaustive_vertex_cap;
    const bool constant_alpha = alpha_opt != "inf" && alpha_opt != "grid" && alpha_opt != "random";
    IsoMode mode;
    if (mode_opt == "auto") {
        mode = small ? IsoMode::Exhaustive : (constant_alpha ? IsoMode::Frontier : IsoMode::Connected);
    } else if (mode_opt == "exhaustive") {
        mode = IsoMode::Exhaustive;
    } else if (mode_opt == "connected") {
        mode = IsoMode::Connected;
    } else if (mode_opt == "frontier") {
        mode = IsoMode::Frontier;
    } else {
        fail_input("unknown mode '" + mode_opt + "' (auto | exhaustive | connected | frontier)");
    }
    if (mode == IsoMode::Frontier && !constant_alpha) fail_input("frontier mode needs a constant alpha");

    auto solve_constant = [&](const Rational& a) {
        if (mode == IsoMode::Frontier) {
            return min_iso_ratio_frontier(base, *power, n, delta, gadget.nu, gadget.lengths, a, caps);
        }
        return min_iso_ratio(*power, delta, nu_n, len_n, AlphaWeights::constant(power->edge_count(), a), mode, caps);
    };

    MinRatio best;
    if (alpha_opt == "inf") {
        best = min_iso_ratio_alpha_inf(*power, delta, nu_n, len_n, mode, caps);
    } else if (alpha_opt == "grid") {
        Json table = Json::array();
        for (long i = 1; i <= 7; ++i) {
            auto r = min_iso_ratio(*power, delta, nu_n, len_n, AlphaWeights::constant(power->edge_count(), make_rational(i, 8)), mode, caps);
            table.push_back(Json{{"alpha", to_string(make_rational(i, 8))}, {"min_ratio", real_to_json(r.ratio)}});
            if (i == 1 || r.ratio < best.ratio) best = r;
        }
        report["alpha_samples"] = table;
    } else if (alpha_opt == "random") {
        const unsigned samples = options.value("samples", 16u);
        if (samples == 0) fail_input("samples must be positive");
        std::mt19937_64 rng(options.value("seed", std::uint64_t{0}));
        for (unsigned i = 0; i < samples; ++i) {
            auto r = min_iso_ratio(*power, delta, nu_n, len_n, random_alpha(power->edge_count(), rng), mode, caps);
            if (i == 0 || r.ratio < best.ratio) best = r;
        }
        report["alpha_sample_count"] = samples;
    } else {
        Rational a;
        try {
            a = parse_rational(alpha_opt);
        } catch (const std::invalid_argument&) {
            fail_input("alpha must be a rational, grid, random or inf; got '" + alpha_opt + "'");
        }
        best = solve_constant(a);
    }
    report["mode"] = mode_name(mode);
    report["min_ratio"] = real_to_json(best.ratio);
    report["witness"] = vertex_list(*power, best.witness);
    report["witness_perimeter"] = rational_to_json(best.per);
    report["witness_mass"] = rational_to_json(best.mass);
    report["subsets_examined"] = best.subsets;

    const bool rho_ok = pc.rho >= 1 - 1e-12;
    const bool p_ok = pc.p >= 1;
    const bool ratio_ok = pc.c > 0 && best.ratio >= to_double(pc.c) - 1e-12;
    Json reasons = Json::array();
    if (!rho_ok) reasons.push_back("rho_G < 1 at edge " + base.edge_label(pc.rho_edge));
    if (!p_ok) reasons.push_back("p_G = " + to_string(pc.p) + " < 1");
    if (!ratio_ok) reasons.push_back("minimum ratio below c");
    const bool certified = rho_ok && p_ok && ratio_ok;
    report["certified"] = certified;
    if (certified) {
        report["constant_bound"] = real_to_json(1.0 / to_double(pc.c));
        report["constant_bound_exact"] = rational_to_json(1 / pc.c);
    } else {
        report["failure_reasons"] = reasons;
        if (!p_ok || !rho_ok) {
            report["failure_witness"] = !rho_ok ? Json{{"edge", base.edge_label(pc.rho_edge)}} : vertex_list(base, pc.p_witness);
            if (base.vertex_count() > 2) {
                auto plan = plan_witness_family(base, delta, gadget.nu, gadget.lengths, caps);
                report["collapse_family"] = Json{{"case", case_name(plan.kind)},
                                                 {"base_set", vertex_list(base, plan.base_set)},
                                                 {"edge", base.edge_label(plan.edge)},
                                                 {"base_perimeter", rational_to_json(plan.base_perimeter)},
                                                 {"leading_factor", rational_to_json(plan.leading_factor)}};
            }
        }
    }
    return PipelineResult{report, certified ? 0 : 1};
}

namespace {

struct SpectralSetup {
    SpectralInputs inputs;
    unsigned k = 0;
};

SpectralSetup spectral_setup(const Gadget& gadget) {
    SpectralSetup s;
    s.inputs.base = gadget.graph;
    s.inputs.nu = gadget.nu;
    s.inputs.lengths = gadget.lengths;
    if (gadget.family == "diamond") {
        s.inputs.pi = collapsing_map_diamond(gadget.graph, make_path(gadget.k), gadget.k, gadget.m);
        s.inputs.phi = base_function_diamond(gadget.k, gadget.m);
    } else {
        auto bf = find_base_function(gadget.graph);
        s.inputs.pi = bf.pi;
        s.inputs.phi = bf.phi;
    }
    s.k = static_cast<unsigned>(s.inputs.pi.codomain->edge_count());
    return s;
}

// Constants the construction guarantees, computed from the base data.
struct ProofConstants {
    Rational c_l1;      // 2‖φ‖∞ / ‖φ‖₁
    Rational c_linf;    // 1
    Rational c_gamma;   // 2|E|²
    double delta = 0;   // log|E| / log k
};

ProofConstants proof_constants(const SpectralSetup& s) {
    const StGraph& g = *s.inputs.base;
    auto mu = induced_vertex_measure(g, s.inputs.nu);
    ProofConstants pc;
    pc.c_l1 = 2 * linf_norm(s.inputs.phi, mu) / l1_norm(s.inputs.phi, mu);
    pc.c_linf = 1;
    const long e = static_cast<long>(g.edge_count());
    pc.c_gamma = make_rational(2 * e * e);
    pc.delta = std::log(static_cast<double>(e)) / std::log(static_cast<double>(s.k));
    return pc;
}

struct SpectralCheck {
    Json report;
    bool certified = false;
    SpectralReport profile;
    ProofConstants constants;
};

SpectralCheck spectral_check(const Gadget& gadget, unsigned n, std::optional<double> delta_opt,
                             std::optional<double> beta_opt, bool include_functions, const Caps& caps) {
    SpectralSetup setup = spectral_setup(gadget);
    ProofConstants pc = proof_constants(setup);
    const double delta = delta_opt.value_or(pc.delta);
    const double beta = beta_opt.value_or(std::pow(static_cast<double>(setup.k), n));
    auto tower = build_spectral_tower(setup.inputs, n, caps);
    const SpectralFamily& top = tower.back();
    SpectralReport prof = profile_report(top, delta, beta, setup.k);

    Json r;
    r["command"] = "spec";
    r["spec"] = gadget.spec;
    r["power"] = n;
    r["vertices"] = top.graph->vertex_count();
    r["k"] = setup.k;
    r["delta"] = real_to_json(delta);
    r["delta_source"] = delta_opt ? "option" : "log|E|/log k";
    r["beta"] = real_to_json(beta);
    r["family_size"] = prof.family_size;
    r["C_inf"] = rational_to_json(prof.c_linf);
    r["inf_l1"] = rational_to_json(prof.inf_l1);
    r["C_1"] = prof.inf_l1 > 0 ? rational_to_json(prof.c_l1) : Json("inf");
    r["C_gamma"] = real_to_json(prof.c_gamma);
    r["C_gamma_continuum"] = real_to_json(prof.c_gamma_continuum);
    r["gap_below_k"] = prof.gap_below_k;
    Json phi = Json::array();
    for (const auto& v : setup.inputs.phi.values) phi.push_back(rational_to_json(v));
    r["base_function"] = phi;

    Json levels = Json::array();
    bool all_strong = true, all_sign = true;
    for (const auto& fam : tower) {
        Rational max_lip = 0;
        for (const auto& m : fam.members) max_lip = std::max(max_lip, m.lipschitz);
        Json lv{{"level", fam.level},
                {"size", fam.members.size()},
                {"strongly_orthogonal", fam.strong.orthogonal},
                {"pairs_checked", fam.strong.pairs_checked},
                {"edge_sign", fam.edge_sign},
                {"max_lipschitz", rational_to_json(max_lip)}};
        if (fam.strong.witness) lv["failing_pair"] = Json::array({fam.strong.witness->first, fam.strong.witness->second});
        levels.push_back(lv);
        all_strong = all_strong && fam.strong.orthogonal;
        all_sign = all_sign && fam.edge_sign;
    }
    r["levels"] = levels;

    auto samples = [](const std::vector<GrowthSample>& xs) {
        Json out = Json::array();
        for (const auto& x : xs) {
            out.push_back(Json{{"s", real_to_json(x.s)}, {"gamma", x.at_most}, {"gamma_strict", x.below}, {"ratio", real_to_json(x.ratio)}});
        }
        return out;
    };
    r["lattice"] = samples(prof.lattice);
    r["jump_points"] = samples(prof.jumps);
    r["grid"] = samples(prof.grid);

    // Run values against the guarantees of the construction.
    const double cg_bound = to_double(pc.c_gamma);
    Json checks = Json::object();
    checks["strong_orthogonality"] = all_strong;
    checks["edge_sign"] = all_sign;
    checks["sup_linf_le_1"] = prof.c_linf <= pc.c_linf;
    checks["C_1_le_2phi_ratio"] = prof.inf_l1 > 0 && prof.c_l1 <= pc.c_l1;
    checks["C_gamma_le_2E"] = prof.c_gamma <= 2.0 * static_cast<double>(setup.inputs.base->edge_count()) * (1 + 1e-12);
    checks["C_gamma_continuum_le_2E2"] = prof.c_gamma_continuum <= cg_bound * (1 + 1e-12);
    checks["profile"] = prof.certified;
    bool ok = true;
    for (auto it = checks.begin(); it != checks.end(); ++it) ok = ok && it.value().get<bool>();
    r["checks"] = checks;
    r["proof_constants"] = Json{{"C_1", rational_to_json(pc.c_l1)},
                                {"C_inf", rational_to_json(pc.c_linf)},
                                {"C_gamma", rational_to_json(pc.c_gamma)},
                                {"delta", real_to_json(pc.delta)}};
    r["envelope_constants"] = Json{{"C_1", 6}, {"C_inf", 1},
                                   {"C_gamma", gadget.family == "diamond" ? Json(2 * gadget.k * gadget.k * gadget.m * gadget.m) : Json(nullptr)}};
    r["certified"] = ok;
    Json notes = Json::array();
    for (const auto& s : prof.notes) notes.push_back(s);
    r["notes"] = notes;
    if (include_functions) {
        Json fs = Json::array();
        for (const auto& m : top.members) {
            Json vals = Json::array();
            for (const auto& v : m.f.values) vals.push_back(to_string(v));
            fs.push_back(Json{{"provenance", m.provenance}, {"lipschitz", to_string(m.lipschitz)},
                              {"l1", to_string(m.l1)}, {"linf", to_string(m.linf)}, {"values", vals}});
        }
        r["functions"] = fs;
    }
    return SpectralCheck{r, ok, prof, pc};
}

}  // namespace

PipelineResult run_spectral(const Gadget& gadget, const Json& options) {
    const Caps caps = caps_from_json(options);
    auto beta = option_real(options, "beta");
    if (beta && !(*beta >= 1)) fail_input("bandwidth must be at least 1");
    auto check = spectral_check(gadget, option_power(options), option_real(options, "delta"), beta,
                                options.value("include_functions", false), caps);
    return PipelineResult{check.report, check.certified ? 0 : 1};
}

namespace {

VertexMeasure measure_from_json(const Json& j, const std::vector<std::string>& points, const char* name) {
    if (j.is_object()) {
        VertexMeasure m{std::vector<Rational>(points.size(), Rational(0))};
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto pos = std::find(points.begin(), points.end(), it.key());
            if (pos == points.end()) fail_input(std::string(name) + " names an unknown point '" + it.key() + "'");
            m.mass[pos - points.begin()] = rational_from_json(it.value());
        }
        return m;
    }
    VertexMeasure m{rationals_from_json(j)};
    if (m.mass.size() != points.size()) {
        fail_input(std::string(name) + " has " + std::to_string(m.mass.size()) + " entries for " + std::to_string(points.size()) + " points");
    }
    return m;
}

}  // namespace

PipelineResult run_w1(const Json& instance, const Json& options) {
    const Caps caps = caps_from_json(options);
    const std::string method = options.value("method", std::string("all"));
    if (method != "coupling" && method != "flow" && method != "tree" && method != "all") {
        fail_input("unknown method '" + method + "' (coupling | flow | tree | all)");
    }
    if (!instance.contains("mu") || !instance.contains("nu")) fail_input("instance needs \"mu\" and \"nu\"");
    GraphPtr graph;
    std::vector<Rational> lengths;
    std::vector<std::string> points;
    std::vector<Rational> dist;
    if (instance.contains("graph_ref") || instance.contains("graph")) {
        unsigned n = instance.value("power", 1u);
        if (instance.contains("graph_ref")) {
            Gadget g = make_gadget(instance["graph_ref"].get<std::string>());
            graph = n == 1 ? g.graph : oslash_power(g.graph, n, caps);
            lengths = power_edge_lengths(*graph, g.lengths);
        } else {
            GraphFile f = graph_from_json(instance["graph"], StCheck::Warn);
            graph = f.graph;
            if (!f.lengths) fail_input("inline graph needs \"lengths\"");
            lengths = *f.lengths;
        }
        auto metric = geodesic_metric(*graph, lengths);
        for (VertexId v = 0; v < graph->vertex_count(); ++v) points.push_back(graph->vertex_label(v));
        for (VertexId v = 0; v < graph->vertex_count(); ++v) {
            for (VertexId w = 0; w < graph->vertex_count(); ++w) dist.push_back(metric.dist(v, w));
        }
    } else {
        if (!instance.contains("points") || !instance.contains("dist")) fail_input("instance needs points and dist, or a graph");
        for (const auto& p : instance["points"]) points.push_back(p.is_string() ? p.get<std::string>() : p.dump());
        for (const auto& row : instance["dist"]) {
            if (!row.is_array() || row.size() != points.size()) fail_input("each dist row must have one entry per point");
            for (const auto& x : row) dist.push_back(rational_from_json(x));
        }
    }
    auto mu = measure_from_json(instance["mu"], points, "mu");
    auto nu = measure_from_json(instance["nu"], points, "nu");
    auto inst = make_transport_instance(points, dist, mu, nu);

    Json r;
    r["command"] = "w1";
    r["method"] = method;
    r["points"] = points.size();
    if (!inst.warnings.empty()) r["warnings"] = inst.warnings;
    std::vector<Rational> values;
    if (method == "coupling" || method == "all") {
        auto c = w1_coupling(inst);
        r["coupling"] = rational_to_json(c.cost);
        r["coupling_decimal"] = real_to_json(to_double(c.cost));
        Json plan = Json::array();
        for (const auto& [a, b, q] : c.plan) plan.push_back(Json{{"from", points[a]}, {"to", points[b]}, {"mass", rational_to_json(q)}});
        r["coupling_plan"] = plan;
        values.push_back(c.cost);
    }
    if (method == "flow" || method == "all") {
        if (!graph) {
            if (method == "flow") fail_input("flow method needs a graph");
        } else {
            auto f = w1_beckmann(*graph, lengths, mu, nu);
            r["flow"] = rational_to_json(f.cost);
            r["flow_decimal"] = real_to_json(to_double(f.cost));
            values.push_back(f.cost);
        }
    }
    if (method == "tree" || method == "all") {
        const bool is_tree = graph && graph->edge_count() + 1 == graph->vertex_count();
        if (!is_tree) {
            if (method == "tree") fail_input("tree method needs a tree graph");
        } else {
            auto t = w1_tree(*graph, lengths, mu, nu);
            r["tree"] = rational_to_json(t);
            r["tree_decimal"] = real_to_json(to_double(t));
            values.push_back(t);
        }
    }
    bool agree = true;
    for (const auto& v : values) agree = agree && v == values.front();
    r["agree"] = agree;
    r["value"] = rational_to_json(values.front());
    return PipelineResult{r, agree ? 0 : 1};
}

PipelineResult run_bound(const Gadget& gadget, const Json& options) {
    if (gadget.family != "diamond") fail_input("bound needs a diamond spec diamond:k,m");
    if (gadget.measure != "uniform") fail_input("bound uses the uniform measure");
    const Caps caps = caps_from_json(options);
    const unsigned n = option_power(options);
    const std::string which = options.value("constants", std::string("certified"));
    BoundConstants constants;
    bool certified = true;
    Json verification = Json::object();
    if (which == "paper") {
        constants = diamond_envelope_constants(gadget.k, gadget.m);
    } else if (which == "certified") {
        const double delta = 1 + std::log(static_cast<double>(gadget.m)) / std::log(static_cast<double>(gadget.k));
        auto pc = power_conditions(*gadget.graph, delta, gadget.nu, gadget.lengths, caps);
        const bool iso_ok = pc.rho >= 1 - 1e-12 && pc.p >= 1 && pc.c > 0;
        const unsigned verify = std::min(n, options.value("verify_power", 4u));
        auto spec = spectral_check(gadget, verify, std::nullopt, std::pow(static_cast<double>(gadget.k), verify), false, caps);
        constants.source = ConstantSource::Certified;
        constants.c_iso = 1 / to_double(pc.c);
        constants.c_l1 = to_double(spec.constants.c_l1);
        constants.c_linf = to_double(spec.constants.c_linf);
        constants.c_gamma = to_double(spec.constants.c_gamma);
        constants.provenance = {"C_iso = 1/c with c = " + to_string(pc.c) + " (power conditions " + (iso_ok ? "hold" : "fail") + ")",
                                "C_1 = 2|phi|_inf/|phi|_1 = " + to_string(spec.constants.c_l1),
                                "C_inf = 1",
                                "C_gamma = 2|E|^2 = " + to_string(spec.constants.c_gamma),
                                "spectral family verified on powers 1.." + std::to_string(verify)};
        verification["iso"] = iso_ok;
        verification["spectral"] = spec.certified;
        verification["verified_power"] = verify;
        certified = iso_ok && spec.certified;
    } else {
        fail_input("constants must be paper or certified");
    }
    auto b = diamond_bound(gadget.k, gadget.m, n, constants);
    Json r;
    r["command"] = "bound";
    r["spec"] = gadget.spec;
    r["power"] = n;
    r["constants"] = which;
    r["C_iso"] = real_to_json(b.inputs.c_iso);
    r["C_1"] = real_to_json(b.inputs.c_l1);
    r["C_inf"] = real_to_json(b.inputs.c_linf);
    r["C_gamma"] = real_to_json(b.inputs.c_gamma);
    r["delta_iso"] = real_to_json(b.inputs.delta_iso);
    r["delta_spec"] = real_to_json(b.inputs.delta_spec);
    r["beta"] = real_to_json(b.inputs.beta);
    r["D_min"] = real_to_json(b.value);
    r["vertices"] = b.vertices;
    r["log_size_term"] = real_to_json(b.log_size_term);
    r["provenance"] = Json{{"source", which == "paper" ? "published envelope" : "certified by this run"}, {"constants", constants.provenance}};
    if (!verification.empty()) r["verification"] = verification;
    r["certified"] = certified;
    return PipelineResult{r, certified ? 0 : 1};
}

PipelineResult run_selftest(const Json& options) {
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back(Json{{"check", name}, {"pass", ok}, {"detail", detail}});
        all = all && ok;
    };
    const Caps caps = caps_from_json(options);
    {
        Gadget d = make_gadget("diamond:2,2");
        auto r = run_iso(d, Json{{"power", 1}, {"delta", 2}});
        const double q = std::stod(r.report["min_ratio"].get<std::string>());
        record("D22 minimum ratio is sqrt 2", std::fabs(q - std::sqrt(2.0)) < 1e-12 && r.status == 0, r.report["min_ratio"].get<std::string>());
    }
    {
        Gadget la = make_gadget("laakso");
        SubsetView s(*la.graph, {la.graph->source()});
        auto per = perimeter(s, la.nu, la.lengths);
        record("Laakso Per({s}) = 2/3", per == make_rational(2, 3), to_string(per));
        Gadget lw = make_gadget("laakso", "weighted");
        auto dim = iso_dimension(*lw.graph, lw.nu, lw.lengths);
        record("weighted Laakso dimension 3/2", dim.exact && *dim.exact == make_rational(3, 2), std::to_string(dim.value));
    }
    {
        Json inst{{"graph_ref", "path:2"}, {"mu", {1, 0, 0}}, {"nu", {0, "1/2", "1/2"}}};
        auto r = run_w1(inst, Json{{"method", "all"}});
        record("P2 transport = 3/4 by all methods", r.status == 0 && r.report["value"] == rational_to_json(make_rational(3, 4)),
               r.report["value"].dump());
    }
    {
        Gadget d = make_gadget("diamond:2,2");
        auto r = run_spectral(d, Json{{"power", 3}, {"caps", Json{{"jobs", caps.jobs}}}});
        record("D22 family of size 11 at power 3", r.status == 0 && r.report["family_size"] == 11, r.report["family_size"].dump());
    }
    {
        BoundConstants c;
        c.c_iso = 1;
        c.c_l1 = 4;
        c.c_linf = 1;
        c.c_gamma = 32;
        auto b = diamond_bound(2, 2, 4, c);
        record("D22 power 4 bound", std::fabs(b.value - std::sqrt(4 * std::log(2.0)) / 128) < 1e-12, std::to_string(b.value));
    }
    Json r{{"command", "selftest"}, {"checks", checks}, {"pass", all}};
    return PipelineResult{r, all ? 0 : 1};
}

}  // namespace oslash
