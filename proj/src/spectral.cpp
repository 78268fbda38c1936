#include "oslash/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace oslash {

namespace {

// Position of each path vertex along the chain from the source.
std::vector<unsigned> path_positions(const StGraph& path) {
    if (!is_path_graph(path)) fail_input("inner factor is not a path graph");
    std::vector<unsigned> pos(path.vertex_count(), 0);
    VertexId v = path.source();
    unsigned i = 0;
    while (v != path.sink()) {
        v = path.edge(path.out_edges(v).front()).dst;
        pos[v] = ++i;
    }
    return pos;
}

}  // namespace

VertexFunction lin_extension(const StGraph& extended, const VertexFunction& f) {
    const ProductStructure* ps = extended.product();
    if (!ps) fail_input("barycentric extension needs a product H⊘P_k");
    const StGraph& h = *ps->outer;
    if (f.values.size() != h.vertex_count()) fail_input("function does not live on the outer factor");
    auto pos = path_positions(*ps->inner);
    const Rational k = static_cast<long>(ps->inner->edge_count());
    VertexFunction out{std::vector<Rational>(extended.vertex_count())};
    for (VertexId v = 0; v < extended.vertex_count(); ++v) {
        auto [e, u] = ps->representative[v];
        Rational t = Rational(static_cast<long>(pos[u])) / k;
        out.values[v] = (1 - t) * f.values[h.edge(e).src] + t * f.values[h.edge(e).dst];
    }
    return out;
}

VertexFunction pullback(const Morphism& theta, const VertexFunction& f) {
    if (f.values.size() != theta.codomain->vertex_count()) fail_input("function does not live on the codomain");
    VertexFunction out{std::vector<Rational>(theta.domain->vertex_count())};
    for (VertexId v = 0; v < out.values.size(); ++v) out.values[v] = f.values[theta.vertex_map[v]];
    return out;
}

EdgeFunction pullback(const Morphism& theta, const EdgeFunction& f) {
    if (f.values.size() != theta.codomain->edge_count()) fail_input("function does not live on the codomain");
    if (theta.edge_map.size() != theta.domain->edge_count()) fail_input("morphism has no edge map");
    EdgeFunction out{std::vector<Rational>(theta.domain->edge_count())};
    for (EdgeId e = 0; e < out.values.size(); ++e) out.values[e] = f.values[theta.edge_map[e]];
    return out;
}

EdgeFunction conditional_expectation(const EdgeFunction& g, const Morphism& theta, const EdgeMeasure& nu) {
    const std::size_t n = theta.domain->edge_count();
    if (g.values.size() != n || nu.mass.size() != n) fail_input("function or measure does not match the morphism domain");
    if (theta.edge_map.size() != n) fail_input("morphism has no edge map");
    std::vector<Rational> mass(theta.codomain->edge_count(), Rational(0));
    std::vector<Rational> weighted(theta.codomain->edge_count(), Rational(0));
    for (EdgeId e = 0; e < n; ++e) {
        mass[theta.edge_map[e]] += nu.mass[e];
        weighted[theta.edge_map[e]] += nu.mass[e] * g.values[e];
    }
    EdgeFunction out{std::vector<Rational>(n)};
    for (EdgeId e = 0; e < n; ++e) {
        const Rational& m = mass[theta.edge_map[e]];
        if (m == 0) fail_input("conditional expectation over a fiber of zero mass (edge " + theta.domain->edge_label(e) + ")");
        out.values[e] = weighted[theta.edge_map[e]] / m;
    }
    return out;
}

VertexFunction oslash_function(const StGraph& product, const EdgeFunction& h, const VertexFunction& g) {
    const ProductStructure* ps = product.product();
    if (!ps) fail_input("graph is not a product");
    const StGraph& inner = *ps->inner;
    if (h.values.size() != ps->outer->edge_count() || g.values.size() != inner.vertex_count()) {
        fail_input("function sizes do not match the product factors");
    }
    if (g.values[inner.source()] != 0 || g.values[inner.sink()] != 0) {
        fail_input("right factor must vanish at the source and the sink");
    }
    VertexFunction out{std::vector<Rational>(product.vertex_count())};
    for (VertexId v = 0; v < product.vertex_count(); ++v) {
        auto [e, u] = ps->representative[v];
        out.values[v] = h.values[e] * g.values[u];
    }
    return out;
}

EdgeFunction oslash_function(const StGraph& product, const EdgeFunction& h, const EdgeFunction& g) {
    const ProductStructure* ps = product.product();
    if (!ps) fail_input("graph is not a product");
    if (h.values.size() != ps->outer->edge_count() || g.values.size() != ps->inner->edge_count()) {
        fail_input("function sizes do not match the product factors");
    }
    EdgeFunction out{std::vector<Rational>(product.edge_count())};
    for (EdgeId e = 0; e < h.values.size(); ++e) {
        for (EdgeId f = 0; f < g.values.size(); ++f) out.values[ps->edge(e, f)] = h.values[e] * g.values[f];
    }
    return out;
}

InducedEdgeFunctions induced_edge_functions(const StGraph& g, const VertexFunction& f) {
    if (f.values.size() != g.vertex_count()) fail_input("function size does not match the vertex count");
    InducedEdgeFunctions out{EdgeFunction{std::vector<Rational>(g.edge_count())},
                             EdgeFunction{std::vector<Rational>(g.edge_count())}};
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out.minus.values[e] = f.values[g.edge(e).src];
        out.plus.values[e] = f.values[g.edge(e).dst];
    }
    return out;
}

Rational inner_product(const EdgeFunction& a, const EdgeFunction& b, const EdgeMeasure& nu) {
    if (a.values.size() != b.values.size() || a.values.size() != nu.mass.size()) fail_input("size mismatch in inner product");
    Rational total = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) total += a.values[i] * b.values[i] * nu.mass[i];
    return total;
}

Rational inner_product(const VertexFunction& a, const VertexFunction& b, const VertexMeasure& mu) {
    if (a.values.size() != b.values.size() || a.values.size() != mu.mass.size()) fail_input("size mismatch in inner product");
    Rational total = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) total += a.values[i] * b.values[i] * mu.mass[i];
    return total;
}

Rational l1_norm(const VertexFunction& f, const VertexMeasure& mu) {
    if (f.values.size() != mu.mass.size()) fail_input("size mismatch in norm");
    Rational total = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) total += abs(f.values[i]) * mu.mass[i];
    return total;
}

Rational l1_norm(const EdgeFunction& f, const EdgeMeasure& nu) {
    if (f.values.size() != nu.mass.size()) fail_input("size mismatch in norm");
    Rational total = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) total += abs(f.values[i]) * nu.mass[i];
    return total;
}

namespace {

Rational ess_sup(const std::vector<Rational>& values, const std::vector<Rational>& mass) {
    if (values.size() != mass.size()) fail_input("size mismatch in norm");
    Rational best = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (mass[i] > 0) best = std::max(best, abs(values[i]));
    }
    return best;
}

}  // namespace

Rational linf_norm(const VertexFunction& f, const VertexMeasure& mu) { return ess_sup(f.values, mu.mass); }
Rational linf_norm(const EdgeFunction& f, const EdgeMeasure& nu) { return ess_sup(f.values, nu.mass); }

OrthogonalityCheck is_strongly_orthogonal(const StGraph& g, const std::vector<VertexFunction>& family,
                                          const EdgeMeasure& nu, unsigned jobs) {
    const std::size_t n = family.size();
    std::vector<InducedEdgeFunctions> ind;
    ind.reserve(n);
    for (const auto& f : family) ind.push_back(induced_edge_functions(g, f));
    // Weighting one side by ν once saves a multiplication per term.
    std::vector<InducedEdgeFunctions> weighted = ind;
    for (auto& w : weighted) {
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            w.minus.values[e] *= nu.mass[e];
            w.plus.values[e] *= nu.mass[e];
        }
    }
    auto dot = [](const EdgeFunction& a, const EdgeFunction& b) {
        Rational total = 0;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (a.values[i] != 0 && b.values[i] != 0) total += a.values[i] * b.values[i];
        }
        return total;
    };
    // first_bad[i] = least j > i failing with i, or n.
    std::vector<std::size_t> first_bad(n, n);
    jobs = std::max(1u, jobs);
    auto work = [&](unsigned id) {
        for (std::size_t i = id; i < n; i += jobs) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto& a = weighted[i];
                const auto& b = ind[j];
                if (dot(a.minus, b.minus) != 0 || dot(a.minus, b.plus) != 0 || dot(a.plus, b.minus) != 0 ||
                    dot(a.plus, b.plus) != 0) {
                    first_bad[i] = j;
                    break;
                }
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
    OrthogonalityCheck check;
    check.pairs_checked = n * (n > 0 ? n - 1 : 0) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        if (first_bad[i] < n) {
            check.orthogonal = false;
            check.witness = std::make_pair(i, first_bad[i]);
            break;
        }
    }
    return check;
}

OrthogonalityCheck is_orthogonal(const std::vector<VertexFunction>& family, const VertexMeasure& mu) {
    OrthogonalityCheck check;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            ++check.pairs_checked;
            if (check.orthogonal && inner_product(family[i], family[j], mu) != 0) {
                check.orthogonal = false;
                check.witness = std::make_pair(i, j);
            }
        }
    }
    return check;
}

bool has_edge_sign(const StGraph& g, const VertexFunction& f) {
    if (f.values.size() != g.vertex_count()) fail_input("function size does not match the vertex count");
    for (const Edge& e : g.edges()) {
        if (sgn(f.values[e.src]) * sgn(f.values[e.dst]) < 0) return false;
    }
    return true;
}

VertexFunction base_function_diamond(unsigned k, unsigned m) {
    if (k < 2 || m < 2) fail_input("diamond needs k, m >= 2");
    VertexFunction phi{std::vector<Rational>((k - 1) * m + 2, Rational(0))};
    for (unsigned branch = 1; branch <= m; ++branch) {
        Rational value = 0;
        if (branch % 2 == 1 && branch < m) value = 1;
        if (branch % 2 == 0) value = -1;
        for (unsigned i = 1; i < k; ++i) phi.values[diamond_vertex(k, m, i, branch)] = value;
    }
    return phi;
}

bool is_base_function(const VertexFunction& phi, const Morphism& pi, const EdgeMeasure& nu) {
    const StGraph& g = *pi.domain;
    if (!has_edge_sign(g, phi)) return false;
    auto ind = induced_edge_functions(g, phi);
    for (const auto* side : {&ind.minus, &ind.plus}) {
        auto ce = conditional_expectation(*side, pi, nu);
        for (const auto& v : ce.values) {
            if (v != 0) return false;
        }
    }
    return true;
}

namespace {

// Basis of the null space of `rows` (each of width n), exact.
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> rows, std::size_t n) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational factor = rows[i][c];
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= factor * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<char> is_pivot(n, 0);
    for (auto c : pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

VertexFunction normalized(std::vector<Rational> v) {
    Rational top = 0;
    Rational first = 0;
    for (const auto& x : v) {
        top = std::max(top, abs(x));
        if (first == 0 && x != 0) first = x;
    }
    if (top == 0) return VertexFunction{std::move(v)};
    Rational scale = (first > 0 ? Rational(1) : Rational(-1)) / top;
    for (auto& x : v) x *= scale;
    return VertexFunction{std::move(v)};
}

}  // namespace

BaseFunction find_base_function(const GraphPtr& g) {
    auto pi = graded_collapsing_map(g);
    if (!pi) fail_input("graph has no collapsing map onto a path (vertices are not graded by directed distance)");
    const std::size_t n = g->vertex_count();
    // Zero fiber sums of φ(e⁻) and of φ(e⁺); ν is uniform so weights cancel.
    std::vector<std::vector<Rational>> rows;
    for (EdgeId target = 0; target < pi->codomain->edge_count(); ++target) {
        std::vector<Rational> minus(n, Rational(0)), plus(n, Rational(0));
        for (EdgeId e = 0; e < g->edge_count(); ++e) {
            if (pi->edge_map[e] != target) continue;
            minus[g->edge(e).src] += 1;
            plus[g->edge(e).dst] += 1;
        }
        rows.push_back(std::move(minus));
        rows.push_back(std::move(plus));
    }
    auto basis = null_space(std::move(rows), n);
    std::vector<std::vector<Rational>> candidates = basis;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            std::vector<Rational> sum(n), diff(n);
            for (std::size_t v = 0; v < n; ++v) {
                sum[v] = basis[i][v] + basis[j][v];
                diff[v] = basis[i][v] - basis[j][v];
            }
            candidates.push_back(std::move(sum));
            candidates.push_back(std::move(diff));
        }
    }
    for (auto& c : candidates) {
        VertexFunction phi = normalized(c);
        if (linf_norm(phi, VertexMeasure{std::vector<Rational>(n, Rational(1))}) == 0) continue;
        if (has_edge_sign(*g, phi)) return BaseFunction{*pi, std::move(phi)};
    }
    if (basis.empty()) fail_input("graph admits no nonzero base function: the fiber constraints force zero");
    fail_input("no base function with the edge-sign property found among kernel vectors and their pairwise sums");
}

std::vector<std::vector<Rational>> hadamard_family(std::size_t size) {
    if (size == 0) fail_input("Hadamard family needs a nonempty set");
    std::size_t block = 1;
    while (block * 2 <= size) block *= 2;
    std::vector<std::vector<Rational>> columns(block, std::vector<Rational>(size, Rational(0)));
    for (std::size_t j = 0; j < block; ++j) {
        for (std::size_t i = 0; i < block; ++i) columns[j][i] = (__builtin_popcountll(i & j) % 2) ? -1 : 1;
    }
    return columns;
}

namespace {

void describe(SpectralFamily& fam, FamilyMember& m) {
    m.lipschitz = lipschitz_constant(*fam.graph, m.f, fam.lengths);
    m.l1 = l1_norm(m.f, fam.mu);
    m.linf = linf_norm(m.f, fam.mu);
}

void check_hypotheses(const SpectralInputs& in) {
    if (!in.base || in.pi.domain != in.base) fail_input("collapsing map must be defined on the base graph");
    const StGraph& g = *in.base;
    if (in.nu.mass.size() != g.edge_count() || in.lengths.size() != g.edge_count()) {
        fail_input("measure or lengths do not match the base graph");
    }
    for (const auto& m : in.nu.mass) {
        if (m != in.nu.mass.front()) fail_input("hypothesis failed: the edge measure must be uniform");
    }
    if (in.nu.total() != 1) fail_input("hypothesis failed: the edge measure must be a probability measure");
    if (!is_reflection_invariant(*in.pi.codomain, pushforward_measure(in.pi, in.nu))) {
        fail_input("hypothesis failed: the pushforward of ν onto the path is not reflection invariant");
    }
    if (linf_norm(in.phi, VertexMeasure{std::vector<Rational>(g.vertex_count(), Rational(1))}) == 0) {
        fail_input("hypothesis failed: the base function is zero");
    }
    if (!is_base_function(in.phi, in.pi, in.nu)) fail_input("hypothesis failed: φ is not a base function");
    const Rational step = Rational(1, static_cast<unsigned long>(in.pi.codomain->edge_count()));
    for (const auto& l : in.lengths) {
        if (l != step) fail_input("hypothesis failed: every edge length must equal 1/k = " + to_string(step));
    }
}

}  // namespace

std::vector<SpectralFamily> build_spectral_tower(const SpectralInputs& in, unsigned n, const Caps& caps) {
    check_hypotheses(in);
    auto graphs = oslash_power_tower(in.base, n, caps);
    const Rational top = linf_norm(in.phi, VertexMeasure{std::vector<Rational>(in.base->vertex_count(), Rational(1))});
    VertexFunction phi = in.phi;
    for (auto& v : phi.values) v /= top;

    std::vector<SpectralFamily> tower;
    for (unsigned j = 1; j <= n; ++j) {
        SpectralFamily fam;
        fam.graph = graphs[j - 1];
        fam.level = j;
        fam.nu = power_edge_measure(*fam.graph, in.nu);
        fam.mu = induced_vertex_measure(*fam.graph, fam.nu);
        fam.lengths = power_edge_lengths(*fam.graph, in.lengths);
        if (j == 1) {
            fam.members.push_back(FamilyMember{phi, MemberKind::Base, "phi", {}, {}, {}});
        } else {
            const SpectralFamily& prev = tower.back();
            const GraphPtr& outer = prev.graph;
            auto extended = oslash_product(outer, in.pi.codomain);
            Morphism lift = oslash_morphism(identity_morphism(outer), in.pi, fam.graph, extended);
            for (std::size_t i = 0; i < prev.members.size(); ++i) {
                fam.members.push_back(FamilyMember{pullback(lift, lin_extension(*extended, prev.members[i].f)),
                                                   MemberKind::Lifted,
                                                   "lift(level " + std::to_string(j - 1) + " #" + std::to_string(i) + ")",
                                                   {}, {}, {}});
            }
            auto columns = hadamard_family(outer->edge_count());
            const std::size_t take = (outer->edge_count() + 1) / 2;
            for (std::size_t c = 0; c < take; ++c) {
                fam.members.push_back(FamilyMember{oslash_function(*fam.graph, EdgeFunction{columns[c]}, phi),
                                                   MemberKind::Product,
                                                   "hadamard(" + std::to_string(c) + ")⊘phi", {}, {}, {}});
            }
        }
        for (auto& m : fam.members) {
            describe(fam, m);
            fam.edge_sign = fam.edge_sign && has_edge_sign(*fam.graph, m.f);
        }
        std::vector<VertexFunction> fs;
        for (const auto& m : fam.members) fs.push_back(m.f);
        fam.strong = is_strongly_orthogonal(*fam.graph, fs, fam.nu, caps.jobs);
        tower.push_back(std::move(fam));
    }
    return tower;
}

SpectralFamily build_spectral_family(const SpectralInputs& in, unsigned n, const Caps& caps) {
    return build_spectral_tower(in, n, caps).back();
}

std::size_t growth(const SpectralFamily& family, const Rational& s, bool strict) {
    std::size_t count = 0;
    for (const auto& m : family.members) {
        if (strict ? m.lipschitz < s : m.lipschitz <= s) ++count;
    }
    return count;
}

std::size_t growth(const SpectralFamily& family, double s, bool strict) {
    std::size_t count = 0;
    for (const auto& m : family.members) {
        double l = to_double(m.lipschitz);
        if (strict ? l < s : l <= s) ++count;
    }
    return count;
}

namespace {

GrowthSample sample(const SpectralFamily& fam, double s, double delta) {
    GrowthSample g;
    g.s = s;
    g.at_most = growth(fam, s, false);
    g.below = growth(fam, s, true);
    g.ratio = g.at_most == 0 ? std::numeric_limits<double>::infinity() : std::pow(s, delta) / g.at_most;
    return g;
}

}  // namespace

SpectralReport profile_report(const SpectralFamily& family, double delta, double beta, unsigned k) {
    if (!(beta >= 1)) fail_input("bandwidth must be at least 1");
    if (!(delta >= 1)) fail_input("spectral dimension must be at least 1");
    if (k < 2) fail_input("path length k must be at least 2");
    if (family.members.empty()) fail_input("empty family");
    SpectralReport r;
    r.delta = delta;
    r.beta = beta;
    r.k = k;
    r.family_size = family.members.size();
    std::vector<VertexFunction> fs;
    for (const auto& m : family.members) fs.push_back(m.f);
    auto orth = is_orthogonal(fs, family.mu);
    r.orthogonal = orth.orthogonal;
    if (!orth.orthogonal) {
        fail_input("family is not orthogonal in L2(μ): members " + std::to_string(orth.witness->first) + " and " +
                   std::to_string(orth.witness->second));
    }
    r.c_linf = 0;
    r.inf_l1 = family.members.front().l1;
    for (const auto& m : family.members) {
        r.c_linf = std::max(r.c_linf, m.linf);
        r.inf_l1 = std::min(r.inf_l1, m.l1);
    }
    if (r.inf_l1 == 0) {
        r.notes.push_back("a member has zero L1 norm");
    } else {
        r.c_l1 = 1 / r.inf_l1;
    }

    // Lattice points k^m, m >= 1.
    r.c_gamma = 0;
    for (double s = k; s <= beta * (1 + 1e-12); s *= k) {
        r.lattice.push_back(sample(family, s, delta));
        r.c_gamma = std::max(r.c_gamma, r.lattice.back().ratio);
    }
    if (r.lattice.empty()) r.notes.push_back("bandwidth below k: no lattice points");

    // γ is a right-continuous step function; on [L_i, L_{i+1}) the ratio
    // s^δ/γ(s) climbs toward L_{i+1}^δ/γ(L_i).
    std::set<double> jumps;
    for (const auto& m : family.members) {
        double l = to_double(m.lipschitz);
        if (l >= k && l <= beta) jumps.insert(l);
    }
    jumps.insert(static_cast<double>(k));
    std::vector<double> points(jumps.begin(), jumps.end());
    r.c_gamma_continuum = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        GrowthSample at = sample(family, points[i], delta);
        r.jumps.push_back(at);
        double right = i + 1 < points.size() ? points[i + 1] : beta;
        double sup = at.at_most == 0 ? std::numeric_limits<double>::infinity() : std::pow(right, delta) / at.at_most;
        r.c_gamma_continuum = std::max(r.c_gamma_continuum, std::max(sup, at.ratio));
    }

    for (int i = 0; i < 64; ++i) {
        double s = std::exp(std::log(beta) * i / 63.0);
        if (beta == 1) s = 1;
        r.grid.push_back(sample(family, s, delta));
    }
    // γ is nondecreasing, so a zero anywhere in [1, k) shows up at s = 1.
    r.gap_below_k = growth(family, 1.0, false) == 0;
    if (r.gap_below_k) {
        r.notes.push_back("γ(s) = 0 for some s in [1, k): no finite constant covers that range");
    }
    r.certified = r.orthogonal && r.inf_l1 > 0 && std::isfinite(r.c_gamma) && !r.lattice.empty();
    return r;
}

}  // namespace oslash
