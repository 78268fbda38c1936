#include "oslash/isoperimetry.hpp"

#include "scaled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace oslash {

namespace {

void require_sizes(const StGraph& g, const VertexFunction& f) {
    if (f.values.size() != g.vertex_count()) fail_input("function size does not match the vertex count");
}

void require_sizes(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    if (nu.mass.size() != g.edge_count()) fail_input("edge measure size does not match the edge count");
    if (lengths.size() != g.edge_count()) fail_input("length count does not match the edge count");
}

double exponent_of(double delta) {
    if (!(delta >= 1)) fail_input("dimension must be at least 1");
    if (std::isinf(delta)) return 1.0;
    return (delta - 1) / delta;
}

}  // namespace

EdgeFunction gradient(const StGraph& g, const VertexFunction& f, const std::vector<Rational>& lengths) {
    require_sizes(g, f);
    if (lengths.size() != g.edge_count()) fail_input("length count does not match the edge count");
    EdgeFunction grad{std::vector<Rational>(g.edge_count())};
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        grad.values[e] = (f.values[g.edge(e).dst] - f.values[g.edge(e).src]) / lengths[e];
    }
    return grad;
}

Rational sobolev_w11(const StGraph& g, const VertexFunction& f, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    require_sizes(g, nu, lengths);
    auto grad = gradient(g, f, lengths);
    Rational total = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) total += abs(grad.values[e]) * nu.mass[e];
    return total;
}

double sobolev_seminorm(const StGraph& g, const VertexFunction& f, double p, const EdgeMeasure& nu,
                        const std::vector<Rational>& lengths) {
    if (!(p >= 1)) fail_input("Sobolev exponent must be at least 1");
    require_sizes(g, nu, lengths);
    auto grad = gradient(g, f, lengths);
    if (std::isinf(p)) {
        Rational best = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (nu.mass[e] > 0) best = std::max(best, Rational(abs(grad.values[e])));
        }
        return to_double(best);
    }
    if (p == 1) return to_double(sobolev_w11(g, f, nu, lengths));
    double total = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        total += std::pow(std::fabs(to_double(grad.values[e])), p) * to_double(nu.mass[e]);
    }
    return std::pow(total, 1.0 / p);
}

Rational lipschitz_constant(const StGraph& g, const VertexFunction& f, const std::vector<Rational>& lengths) {
    auto grad = gradient(g, f, lengths);
    Rational best = 0;
    for (const auto& v : grad.values) best = std::max(best, Rational(abs(v)));
    return best;
}

VertexFunction positive_part(const VertexFunction& f) {
    VertexFunction out = f;
    for (auto& v : out.values) {
        if (v < 0) v = 0;
    }
    return out;
}

VertexFunction negative_part(const VertexFunction& f) {
    VertexFunction out = f;
    for (auto& v : out.values) v = v < 0 ? Rational(-v) : Rational(0);
    return out;
}

Rational perimeter(const SubsetView& s, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    require_sizes(s.graph(), nu, lengths);
    Rational per = 0;
    for (EdgeId e : s.boundary()) per += nu.mass[e] / lengths[e];
    return per;
}

Rational subset_mass(const SubsetView& s, const VertexMeasure& mu) {
    if (mu.mass.size() != s.graph().vertex_count()) fail_input("vertex measure size does not match the graph");
    Rational m = 0;
    for (VertexId v : s.members()) m += mu.mass[v];
    return m;
}

double ratio_value(const Rational& per, const Rational& mass, double delta) {
    const double r = exponent_of(delta);
    if (r == 0) return to_double(per);
    if (mass <= 0) return std::numeric_limits<double>::infinity();
    return to_double(per) / std::pow(to_double(mass), r);
}

double iso_ratio(const SubsetView& s, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                 const AlphaWeights& alpha) {
    if (!s.proper()) fail_input("isoperimetric ratio needs a proper nonempty subset");
    auto mu = induced_vertex_measure(s.graph(), nu, alpha);
    Rational inside = subset_mass(s, mu);
    Rational outside = mu.total() - inside;
    return ratio_value(perimeter(s, nu, lengths), std::min(inside, outside), delta);
}

double tilde_iso_ratio(const SubsetView& s, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                       const AlphaWeights& alpha) {
    if (!s.proper()) fail_input("isoperimetric ratio needs a proper nonempty subset");
    auto mu = induced_vertex_measure(s.graph(), nu, alpha);
    return ratio_value(perimeter(s, nu, lengths), subset_mass(s, mu), delta);
}

AlphaMassRange alpha_mass_range(const SubsetView& s, const EdgeMeasure& nu) {
    AlphaMassRange range{Rational(0), Rational(0)};
    const StGraph& g = s.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        bool a = s.contains(g.edge(e).src);
        bool b = s.contains(g.edge(e).dst);
        if (a && b) range.inside += nu.mass[e];
        if (a || b) range.touching += nu.mass[e];
    }
    return range;
}

namespace {

// sup over x in (lo, hi) of min{x, total - x}.
Rational best_balanced_mass(const Rational& lo, const Rational& hi, const Rational& total) {
    Rational half = total / 2;
    if (lo < half && half < hi) return half;
    if (hi <= half) return hi;
    return total - lo;
}

}  // namespace

double iso_ratio_alpha_inf(const SubsetView& s, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    if (!s.proper()) fail_input("isoperimetric ratio needs a proper nonempty subset");
    auto range = alpha_mass_range(s, nu);
    return ratio_value(perimeter(s, nu, lengths), best_balanced_mass(range.inside, range.touching, nu.total()), delta);
}

double tilde_iso_ratio_alpha_inf(const SubsetView& s, double delta, const EdgeMeasure& nu,
                                 const std::vector<Rational>& lengths) {
    if (!s.proper()) fail_input("isoperimetric ratio needs a proper nonempty subset");
    auto range = alpha_mass_range(s, nu);
    return ratio_value(perimeter(s, nu, lengths), range.touching, delta);
}

namespace {

struct Candidate {
    double q = std::numeric_limits<double>::infinity();
    std::uint64_t mask = 0;
    std::int64_t per = 0;
    std::int64_t mass = 0;  // doubled when the α-infimum is in play
    std::uint64_t visited = 0;
};

bool better(const Candidate& a, const Candidate& b) { return a.q < b.q || (a.q == b.q && a.mask < b.mask); }

// Integer form of one search problem: perimeters over a common denominator,
// masses over another, so that subset scans never touch GMP.
struct ScanProblem {
    std::size_t n = 0;
    std::vector<Edge> edges;
    std::vector<std::int64_t> weight;   // ν/d
    std::vector<std::int64_t> vmass;    // μ_α per vertex (constant α mode)
    std::vector<std::int64_t> emass;    // ν per edge (α-infimum mode)
    Rational per_unit, mass_unit;
    std::int64_t total = 0;             // total of vmass or emass
    bool alpha_inf = false;
    double r = 0;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> incident;

    double ratio(std::int64_t per, std::int64_t balanced_mass2) const {
        // balanced_mass2 is twice the balanced mass in mass units.
        if (r == 0) return static_cast<double>(per) * per_unit.get_d();
        if (balanced_mass2 <= 0) return std::numeric_limits<double>::infinity();
        double m = static_cast<double>(balanced_mass2) * 0.5 * mass_unit.get_d();
        return static_cast<double>(per) * per_unit.get_d() / std::pow(m, r);
    }

    std::int64_t balanced2(std::int64_t inside_mass, std::int64_t touching_mass) const {
        if (!alpha_inf) {
            std::int64_t other = total - inside_mass;
            return 2 * std::min(inside_mass, other);
        }
        // α-infimum: inside_mass and touching_mass bound the open interval.
        if (2 * inside_mass < total && total < 2 * touching_mass) return total;
        if (2 * touching_mass <= total) return 2 * touching_mass;
        return 2 * (total - inside_mass);
    }
};

ScanProblem make_scan_problem(const StGraph& g, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                              const AlphaWeights* alpha) {
    require_sizes(g, nu, lengths);
    ScanProblem p;
    p.n = g.vertex_count();
    p.edges = g.edges();
    p.r = exponent_of(delta);
    p.alpha_inf = alpha == nullptr;
    std::vector<Rational> w(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) w[e] = nu.mass[e] / lengths[e];
    ScaledVector ws = scale_to_integers(w);
    p.weight = ws.numerators;
    p.per_unit = ws.unit;
    if (alpha) {
        auto mu = induced_vertex_measure(g, nu, *alpha);
        ScaledVector ms = scale_to_integers(mu.mass);
        p.vmass = ms.numerators;
        p.mass_unit = ms.unit;
        p.total = checked_sum(p.vmass);
    } else {
        ScaledVector ms = scale_to_integers(nu.mass);
        p.emass = ms.numerators;
        p.mass_unit = ms.unit;
        p.total = checked_sum(p.emass);
    }
    checked_sum(p.weight);
    p.incident.assign(p.n, {});
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        p.incident[g.edge(e).src].push_back({g.edge(e).dst, e});
        p.incident[g.edge(e).dst].push_back({g.edge(e).src, e});
    }
    return p;
}

// Evaluates one mask from scratch.
Candidate evaluate_mask(const ScanProblem& p, std::uint64_t mask) {
    std::int64_t per = 0, inside = 0, touching = 0;
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        bool a = mask >> p.edges[e].src & 1u;
        bool b = mask >> p.edges[e].dst & 1u;
        if (a != b) per += p.weight[e];
        if (p.alpha_inf) {
            if (a && b) inside += p.emass[e];
            if (a || b) touching += p.emass[e];
        }
    }
    if (!p.alpha_inf) {
        for (std::size_t v = 0; v < p.n; ++v) {
            if (mask >> v & 1u) inside += p.vmass[v];
        }
    }
    Candidate c;
    c.mask = mask;
    c.per = per;
    c.mass = p.balanced2(inside, touching);
    c.q = p.ratio(per, c.mass);
    return c;
}

Candidate scan_chunk(const ScanProblem& p, std::uint64_t high, unsigned low_bits) {
    const std::uint64_t full = (std::uint64_t{1} << p.n) - 1;
    std::uint64_t mask = high << low_bits;
    // Initial state from scratch, then Gray-code updates.
    std::int64_t per = 0, inside = 0, touching = 0;
    std::vector<std::uint8_t> count(p.edges.size(), 0);
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        bool a = mask >> p.edges[e].src & 1u;
        bool b = mask >> p.edges[e].dst & 1u;
        count[e] = static_cast<std::uint8_t>(a + b);
        if (a != b) per += p.weight[e];
        if (p.alpha_inf) {
            if (a && b) inside += p.emass[e];
            if (a || b) touching += p.emass[e];
        }
    }
    if (!p.alpha_inf) {
        for (std::size_t v = 0; v < p.n; ++v) {
            if (mask >> v & 1u) inside += p.vmass[v];
        }
    }
    Candidate best;
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 0;; ++i) {
        if (mask != 0 && mask != full) {
            ++best.visited;
            std::int64_t bal = p.balanced2(inside, touching);
            double q = p.ratio(per, bal);
            if (q < best.q || (q == best.q && mask < best.mask)) {
                best.q = q;
                best.mask = mask;
                best.per = per;
                best.mass = bal;
            }
        }
        if (i + 1 == steps) break;
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(i + 1));
        std::uint64_t flag = std::uint64_t{1} << bit;
        bool adding = !(mask & flag);
        mask ^= flag;
        for (auto [w, e] : p.incident[bit]) {
            bool other_in = mask >> w & 1u;
            per += (other_in == adding) ? -p.weight[e] : p.weight[e];
            if (p.alpha_inf) {
                if (adding) {
                    ++count[e];
                    if (count[e] == 1) touching += p.emass[e];
                    if (count[e] == 2) inside += p.emass[e];
                } else {
                    if (count[e] == 1) touching -= p.emass[e];
                    if (count[e] == 2) inside -= p.emass[e];
                    --count[e];
                }
            }
        }
        if (!p.alpha_inf) inside += adding ? p.vmass[bit] : -p.vmass[bit];
    }
    return best;
}

Candidate scan_exhaustive(const ScanProblem& p, const Caps& caps) {
    if (p.n > caps.exhaustive_vertex_cap || p.n > 62) {
        fail_resource("exhaustive search over " + std::to_string(p.n) + " vertices exceeds the cap of " +
                      std::to_string(caps.exhaustive_vertex_cap));
    }
    unsigned jobs = std::max(1u, caps.jobs);
    unsigned high_bits = 0;
    while ((1u << high_bits) < jobs * 4 && high_bits + 4 < p.n) ++high_bits;
    const unsigned low_bits = static_cast<unsigned>(p.n) - high_bits;
    const std::uint64_t chunks = std::uint64_t{1} << high_bits;
    std::vector<Candidate> partial(jobs);
    auto work = [&](unsigned id) {
        for (std::uint64_t c = id; c < chunks; c += jobs) {
            Candidate got = scan_chunk(p, c, low_bits);
            partial[id].visited += got.visited;
            std::uint64_t visited = partial[id].visited;
            if (better(got, partial[id])) {
                partial[id] = got;
                partial[id].visited = visited;
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(work, id);
        for (auto& t : threads) t.join();
    }
    Candidate best;
    std::uint64_t visited = 0;
    for (const auto& c : partial) {
        visited += c.visited;
        if (better(c, best)) best = c;
    }
    best.visited = visited;
    return best;
}

Candidate scan_connected(const ScanProblem& p, const StGraph& g, const Caps& caps) {
    Candidate best;
    std::uint64_t visited = 0;
    enumerate_subsets(g, SubsetMode::Connected, caps, [&](std::uint64_t mask) {
        ++visited;
        Candidate c = evaluate_mask(p, mask);
        if (better(c, best)) best = c;
    });
    best.visited = visited;
    return best;
}

MinRatio to_result(const ScanProblem& p, const StGraph& g, const Candidate& c, IsoMode mode) {
    MinRatio r;
    r.ratio = c.q;
    r.witness = SubsetView::from_mask(g, c.mask).members();
    r.per = p.per_unit * c.per;
    r.mass = p.mass_unit * c.mass / 2;
    r.subsets = c.visited;
    r.mode = mode;
    return r;
}

MinRatio run_scan(const StGraph& g, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                  const AlphaWeights* alpha, IsoMode mode, const Caps& caps) {
    if (mode == IsoMode::Frontier) fail_input("frontier mode needs the power structure; use min_iso_ratio_frontier");
    ScanProblem p = make_scan_problem(g, delta, nu, lengths, alpha);
    Candidate best = mode == IsoMode::Exhaustive ? scan_exhaustive(p, caps) : scan_connected(p, g, caps);
    if (best.visited == 0) fail_input("graph has no proper nonempty subsets");
    return to_result(p, g, best, mode);
}

}  // namespace

MinRatio min_iso_ratio(const StGraph& g, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                       const AlphaWeights& alpha, IsoMode mode, const Caps& caps) {
    return run_scan(g, delta, nu, lengths, &alpha, mode, caps);
}

MinRatio min_iso_ratio_alpha_inf(const StGraph& g, double delta, const EdgeMeasure& nu,
                                 const std::vector<Rational>& lengths, IsoMode mode, const Caps& caps) {
    return run_scan(g, delta, nu, lengths, nullptr, mode, caps);
}

PowerConditions power_conditions(const StGraph& g, double delta, const EdgeMeasure& nu,
                                 const std::vector<Rational>& lengths, const Caps& caps) {
    if (!g.has_terminals()) fail_input("power conditions need an s-t graph");
    require_sizes(g, nu, lengths);
    const double inv = 1.0 / delta;
    PowerConditions pc;
    pc.rho = std::numeric_limits<double>::infinity();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        double v = std::pow(to_double(nu.mass[e]), inv) / to_double(lengths[e]);
        if (v < pc.rho) {
            pc.rho = v;
            pc.rho_edge = e;
        }
    }
    ScanProblem p = make_scan_problem(g, delta, nu, lengths, nullptr);
    const std::uint64_t s_bit = std::uint64_t{1} << g.source();
    const std::uint64_t t_bit = std::uint64_t{1} << g.sink();
    std::int64_t best_p = std::numeric_limits<std::int64_t>::max(), best_c = best_p;
    std::uint64_t mask_p = 0, mask_c = 0;
    enumerate_subsets(g, SubsetMode::Exhaustive, caps, [&](std::uint64_t mask) {
        std::int64_t per = 0;
        for (std::size_t e = 0; e < p.edges.size(); ++e) {
            if ((mask >> p.edges[e].src & 1u) != (mask >> p.edges[e].dst & 1u)) per += p.weight[e];
        }
        if (per < best_c) {
            best_c = per;
            mask_c = mask;
        }
        bool has_s = mask & s_bit, has_t = mask & t_bit;
        if (has_s != has_t && per < best_p) {
            best_p = per;
            mask_p = mask;
        }
    });
    pc.p = p.per_unit * best_p;
    pc.c = p.per_unit * best_c;
    pc.p_witness = SubsetView::from_mask(g, mask_p).members();
    pc.c_witness = SubsetView::from_mask(g, mask_c).members();
    return pc;
}

namespace {

// Smallest p/q (q <= 64) with base_a^q == base_b^p, if any, near `approx`.
std::optional<Rational> exact_log_ratio(const Rational& num_base, const Rational& den_base, double approx) {
    for (unsigned q = 1; q <= 64; ++q) {
        double pd = std::round(approx * q);
        if (pd < 1 || std::fabs(pd / q - approx) > 1e-9) continue;
        unsigned pi = static_cast<unsigned>(pd);
        if (pow(num_base, q) == pow(den_base, pi)) return make_rational(static_cast<long>(pi), static_cast<long>(q));
    }
    return std::nullopt;
}

}  // namespace

Dimension iso_dimension(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths) {
    require_sizes(g, nu, lengths);
    Dimension dim;
    dim.value = -std::numeric_limits<double>::infinity();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (nu.mass[e] <= 0 || nu.mass[e] >= 1) fail_input("dimension needs 0 < ν(e) < 1 on every edge");
        if (lengths[e] >= 1) fail_input("dimension needs d(e) < 1 on every edge");
        double v = std::log(to_double(nu.mass[e])) / std::log(to_double(lengths[e]));
        if (v > dim.value) {
            dim.value = v;
            dim.attained_at = e;
        }
    }
    dim.exact = exact_log_ratio(nu.mass[dim.attained_at], lengths[dim.attained_at], dim.value);
    if (dim.exact) dim.value = to_double(*dim.exact);
    return dim;
}

namespace {

std::vector<Rational> levels_from_zero(const VertexFunction& f) {
    std::set<Rational> values(f.values.begin(), f.values.end());
    values.insert(Rational(0));
    return std::vector<Rational>(values.begin(), values.end());
}

}  // namespace

CoareaResult coarea_check(const StGraph& g, const VertexFunction& f, const EdgeMeasure& nu,
                          const std::vector<Rational>& lengths) {
    require_sizes(g, f);
    for (const auto& v : f.values) {
        if (v < 0) fail_input("coarea check needs a nonnegative function; split into positive and negative parts");
    }
    CoareaResult r;
    r.lhs = sobolev_w11(g, f, nu, lengths);
    r.rhs = 0;
    auto t = levels_from_zero(f);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        std::vector<VertexId> above;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (f.values[v] > t[i]) above.push_back(v);
        }
        r.rhs += (t[i + 1] - t[i]) * perimeter(SubsetView(g, std::move(above)), nu, lengths);
    }
    r.equal = r.lhs == r.rhs;
    return r;
}

bool layer_cake_check(const VertexFunction& f) {
    for (const auto& v : f.values) {
        if (v < 0) fail_input("layer-cake check needs a nonnegative function");
    }
    auto t = levels_from_zero(f);
    for (const auto& value : f.values) {
        Rational rebuilt = 0;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            if (value > t[i]) rebuilt += t[i + 1] - t[i];
        }
        if (rebuilt != value) return false;
    }
    return true;
}

SobolevResult sobolev_check(const StGraph& g, const VertexFunction& f, double delta, double constant,
                            const EdgeMeasure& nu, const std::vector<Rational>& lengths, const VertexMeasure& mu) {
    require_sizes(g, f);
    if (mu.mass.size() != g.vertex_count()) fail_input("vertex measure size does not match the graph");
    Rational mean = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) mean += f.values[v] * mu.mass[v];
    mean /= mu.total();
    SobolevResult r;
    if (delta == 1) {
        Rational worst = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (mu.mass[v] > 0) worst = std::max(worst, Rational(abs(f.values[v] - mean)));
        }
        r.lhs = to_double(worst);
    } else {
        const double dual = delta / (delta - 1);
        double total = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            total += std::pow(std::fabs(to_double(f.values[v] - mean)), dual) * to_double(mu.mass[v]);
        }
        r.lhs = std::pow(total, 1.0 / dual);
    }
    r.rhs = 2 * constant * to_double(sobolev_w11(g, f, nu, lengths));
    r.holds = r.lhs <= r.rhs + 1e-9;
    return r;
}

Rational median(const VertexFunction& f, const VertexMeasure& mu) {
    if (f.values.size() != mu.mass.size()) fail_input("function and measure sizes differ");
    std::set<Rational> values(f.values.begin(), f.values.end());
    const Rational half = mu.total() / 2;
    for (const auto& m : values) {
        Rational above = 0, below = 0;
        for (std::size_t v = 0; v < f.values.size(); ++v) {
            if (f.values[v] > m) above += mu.mass[v];
            if (f.values[v] < m) below += mu.mass[v];
        }
        if (above <= half && below <= half) return m;
    }
    fail_internal("no median found");
}

WitnessFamily plan_witness_family(const StGraph& g, double delta, const EdgeMeasure& nu,
                                  const std::vector<Rational>& lengths, const Caps& caps) {
    if (g.vertex_count() <= 2) fail_input("witness families need more than two vertices");
    auto pc = power_conditions(g, delta, nu, lengths, caps);
    WitnessFamily plan;
    const VertexId s = g.source(), t = g.sink();
    if (pc.rho < 1 - 1e-12) {
        plan.kind = WitnessCase::ShortEdge;
        plan.edge = pc.rho_edge;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (v != s && v != t) plan.base_set.push_back(v);
        }
        plan.base_perimeter = perimeter(SubsetView(g, plan.base_set), nu, lengths);
        return plan;
    }
    if (pc.p >= 1) fail_input("no collapsing family: ρ_G >= 1 and p_G >= 1");
    SubsetView best(g, pc.p_witness);
    plan.base_perimeter = pc.p;
    if (best.size() == 1 || best.size() + 1 == g.vertex_count()) {
        plan.kind = WitnessCase::SingletonMinimizer;
        VertexId x = best.size() == 1 ? best.members().front() : best.complement().members().front();
        plan.base_set = {x};
        const bool at_source = x == s;
        // An edge at x whose far endpoint continues into the graph.
        std::optional<EdgeId> chosen;
        for (EdgeId e = 0; e < g.edge_count() && !chosen; ++e) {
            const Edge& ed = g.edge(e);
            if (at_source && ed.src == s && !g.out_edges(ed.dst).empty()) chosen = e;
            if (!at_source && ed.dst == t && !g.in_edges(ed.src).empty()) chosen = e;
        }
        if (!chosen) fail_internal("no continuing edge at the singleton minimizer");
        plan.edge = *chosen;
        const Edge& e0 = g.edge(plan.edge);
        Rational a = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            if (at_source) {
                if (e != plan.edge && ed.src == s) a += nu.mass[e] / lengths[e];
                if (ed.src == e0.dst) a += nu.mass[e] / lengths[e];
            } else {
                if (e != plan.edge && ed.dst == t) a += nu.mass[e] / lengths[e];
                if (ed.dst == e0.src) a += nu.mass[e] / lengths[e];
            }
        }
        plan.leading_factor = a;
        return plan;
    }
    plan.kind = WitnessCase::RecursiveMinimizer;
    plan.base_set = best.contains(s) ? best.members() : best.complement().members();
    plan.leading_factor = 1;
    return plan;
}

namespace {

bool recursive_member(const std::vector<char>& in_base, const StGraph& base, const Word& address, std::size_t from,
                      unsigned n) {
    if (address.size() - from == 1) return in_base[address[from]] != 0;
    if (n < 2) fail_internal("address deeper than the power");
    const Edge& e = base.edge(address[from]);
    bool a = in_base[e.src], b = in_base[e.dst];
    if (a && b) return true;
    if (!a && !b) return false;
    bool inner = recursive_member(in_base, base, address, from + 1, n - 1);
    return a ? inner : !inner;
}

}  // namespace

std::vector<VertexId> witness_members(const WitnessFamily& plan, const StGraph& base, const StGraph& power, unsigned n) {
    std::vector<char> in_base(base.vertex_count(), 0);
    for (VertexId v : plan.base_set) in_base[v] = 1;
    const Edge& e0 = base.edge(plan.edge);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < power.vertex_count(); ++v) {
        const Word& a = power.vertex_address(v);
        bool member = false;
        switch (plan.kind) {
            case WitnessCase::ShortEdge:
                // e^{⊘n}⊘(V \ {s,t}) inside G^{⊘(n+1)}.
                member = a.size() == static_cast<std::size_t>(n) + 1 && in_base[a.back()];
                for (std::size_t i = 0; member && i + 1 < a.size(); ++i) member = a[i] == plan.edge;
                break;
            case WitnessCase::SingletonMinimizer:
                // The whole copy hanging off the chosen edge.
                member = a.size() == 1 ? (a[0] == e0.src || a[0] == e0.dst) : a[0] == plan.edge;
                break;
            case WitnessCase::RecursiveMinimizer:
                member = recursive_member(in_base, base, a, 0, n);
                break;
        }
        if (member) out.push_back(v);
    }
    return out;
}

}  // namespace oslash
