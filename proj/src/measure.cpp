#include "oslash/measure.hpp"

#include <queue>

namespace oslash {

bool EdgeMeasure::is_probability() const {
    for (const auto& m : mass) {
        if (m < 0) return false;
    }
    return total() == 1;
}

bool EdgeMeasure::fully_supported() const {
    for (const auto& m : mass) {
        if (m <= 0) return false;
    }
    return true;
}

bool VertexMeasure::is_probability() const {
    for (const auto& m : mass) {
        if (m < 0) return false;
    }
    return total() == 1;
}

AlphaWeights AlphaWeights::constant(std::size_t edges, const Rational& a) {
    if (a <= 0 || a >= 1) fail_input("alpha must lie strictly between 0 and 1");
    return AlphaWeights{std::vector<Rational>(edges, a)};
}

EdgeMeasure uniform_edge_measure(const StGraph& g) {
    return EdgeMeasure{std::vector<Rational>(g.edge_count(), Rational(1, static_cast<unsigned long>(g.edge_count())))};
}

VertexMeasure induced_vertex_measure(const StGraph& g, const EdgeMeasure& nu, const AlphaWeights& alpha) {
    if (nu.mass.size() != g.edge_count() || alpha.alpha.size() != g.edge_count()) {
        fail_input("measure or alpha size does not match the graph");
    }
    VertexMeasure mu{std::vector<Rational>(g.vertex_count(), Rational(0))};
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Rational& a = alpha.alpha[e];
        if (a <= 0 || a >= 1) fail_input("alpha must lie strictly between 0 and 1");
        mu.mass[g.edge(e).dst] += nu.mass[e] * a;
        mu.mass[g.edge(e).src] += nu.mass[e] * (1 - a);
    }
    return mu;
}

VertexMeasure induced_vertex_measure(const StGraph& g, const EdgeMeasure& nu) {
    return induced_vertex_measure(g, nu, AlphaWeights::half(g.edge_count()));
}

EdgeMeasure oslash_edge_measure(const StGraph& product, const EdgeMeasure& nu_outer, const EdgeMeasure& nu_inner) {
    const ProductStructure* ps = product.product();
    if (!ps) fail_input("graph is not a product");
    if (nu_outer.mass.size() != ps->outer->edge_count() || nu_inner.mass.size() != ps->inner->edge_count()) {
        fail_input("measure sizes do not match the product factors");
    }
    EdgeMeasure nu{std::vector<Rational>(product.edge_count())};
    for (EdgeId e = 0; e < ps->outer->edge_count(); ++e) {
        for (EdgeId f = 0; f < ps->inner->edge_count(); ++f) {
            nu.mass[ps->edge(e, f)] = nu_outer.mass[e] * nu_inner.mass[f];
        }
    }
    return nu;
}

VertexMeasure oslash_vertex_measure(const StGraph& product, const EdgeMeasure& nu_outer, const VertexMeasure& mu_inner) {
    const ProductStructure* ps = product.product();
    if (!ps) fail_input("graph is not a product");
    if (nu_outer.mass.size() != ps->outer->edge_count() || mu_inner.mass.size() != ps->inner->vertex_count()) {
        fail_input("measure sizes do not match the product factors");
    }
    VertexMeasure mu{std::vector<Rational>(product.vertex_count(), Rational(0))};
    for (EdgeId e = 0; e < ps->outer->edge_count(); ++e) {
        for (VertexId u = 0; u < ps->inner->vertex_count(); ++u) {
            mu.mass[ps->at(e, u)] += nu_outer.mass[e] * mu_inner.mass[u];
        }
    }
    return mu;
}

EdgeMeasure power_edge_measure(const StGraph& power, const EdgeMeasure& nu_base) {
    EdgeMeasure nu{power_edge_lengths(power, nu_base.mass)};
    return nu;
}

std::vector<Rational> power_edge_lengths(const StGraph& power, const std::vector<Rational>& base_lengths) {
    std::vector<Rational> out(power.edge_count());
    for (EdgeId e = 0; e < power.edge_count(); ++e) {
        Rational p = 1;
        for (std::uint32_t letter : power.edge_word(e)) p *= base_lengths.at(letter);
        out[e] = p;
    }
    return out;
}

std::vector<Rational> constant_lengths(const StGraph& g, const Rational& len) {
    return std::vector<Rational>(g.edge_count(), len);
}

namespace {

std::vector<Rational> shortest_from(const StGraph& g, const std::vector<Rational>& lengths, VertexId src) {
    const std::size_t n = g.vertex_count();
    std::vector<Rational> dist(n, Rational(-1));
    std::vector<char> done(n, 0);
    using Item = std::pair<Rational, VertexId>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
    dist[src] = 0;
    queue.push({Rational(0), src});
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (done[v]) continue;
        done[v] = 1;
        auto relax = [&](EdgeId e, VertexId w) {
            Rational nd = d + lengths[e];
            if (dist[w] < 0 || nd < dist[w]) {
                dist[w] = nd;
                queue.push({nd, w});
            }
        };
        for (EdgeId e : g.out_edges(v)) relax(e, g.edge(e).dst);
        for (EdgeId e : g.in_edges(v)) relax(e, g.edge(e).src);
    }
    return dist;
}

void check_lengths(const StGraph& g, const std::vector<Rational>& lengths) {
    if (lengths.size() != g.edge_count()) fail_input("length count does not match edge count");
    for (const auto& l : lengths) {
        if (l <= 0) fail_input("edge lengths must be positive");
    }
}

}  // namespace

GeodesicCheck check_geodesic(const StGraph& g, const std::vector<Rational>& lengths) {
    check_lengths(g, lengths);
    GeodesicCheck result;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.out_edges(v).empty()) continue;
        auto dist = shortest_from(g, lengths, v);
        for (EdgeId e : g.out_edges(v)) {
            if (dist[g.edge(e).dst] != lengths[e]) {
                result.geodesic = false;
                result.witness = e;
                return result;
            }
        }
    }
    return result;
}

GeodesicMetric geodesic_metric(const StGraph& g, const std::vector<Rational>& lengths) {
    check_lengths(g, lengths);
    const std::size_t n = g.vertex_count();
    std::vector<Rational> all(n * n);
    for (VertexId v = 0; v < n; ++v) {
        auto dist = shortest_from(g, lengths, v);
        for (VertexId w = 0; w < n; ++w) all[static_cast<std::size_t>(v) * n + w] = dist[w];
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (all[static_cast<std::size_t>(g.edge(e).src) * n + g.edge(e).dst] != lengths[e]) {
            fail_input("non-geodesic edge lengths: edge " + g.edge_label(e) + " is longer than the distance between its endpoints");
        }
    }
    return GeodesicMetric(lengths, std::move(all), n);
}

bool is_normalized(const StGraph& g, const GeodesicMetric& d) {
    return g.has_terminals() && d.dist(g.source(), g.sink()) == 1;
}

GeodesicMetric oslash_metric(const StGraph& product, const GeodesicMetric& d_outer, const GeodesicMetric& d_inner) {
    const ProductStructure* ps = product.product();
    if (!ps) fail_input("graph is not a product");
    if (!is_normalized(*ps->inner, d_inner)) fail_input("inner metric must be normalized: d(s,t) = 1");
    std::vector<Rational> lengths(product.edge_count());
    for (EdgeId e = 0; e < ps->outer->edge_count(); ++e) {
        for (EdgeId f = 0; f < ps->inner->edge_count(); ++f) {
            lengths[ps->edge(e, f)] = d_outer.edge_length(e) * d_inner.edge_length(f);
        }
    }
    return geodesic_metric(product, lengths);
}

EdgeMeasure pushforward_measure(const Morphism& theta, const EdgeMeasure& nu) {
    if (theta.edge_map.size() != theta.domain->edge_count()) fail_input("morphism has no edge map");
    if (nu.mass.size() != theta.domain->edge_count()) fail_input("measure does not match the morphism domain");
    EdgeMeasure out{std::vector<Rational>(theta.codomain->edge_count(), Rational(0))};
    for (EdgeId e = 0; e < nu.mass.size(); ++e) out.mass[theta.edge_map[e]] += nu.mass[e];
    return out;
}

bool is_path_graph(const StGraph& g) {
    if (!g.has_terminals() || g.edge_count() + 1 != g.vertex_count()) return false;
    VertexId v = g.source();
    for (std::size_t step = 0; step < g.edge_count(); ++step) {
        if (g.out_edges(v).size() != 1) return false;
        v = g.edge(g.out_edges(v).front()).dst;
    }
    return v == g.sink();
}

bool is_reflection_invariant(const StGraph& path, const EdgeMeasure& nu) {
    if (!is_path_graph(path)) fail_input("reflection invariance needs a path graph");
    if (nu.mass.size() != path.edge_count()) fail_input("measure does not match the path");
    // Walk the chain to list edges in order.
    std::vector<EdgeId> order;
    VertexId v = path.source();
    while (v != path.sink()) {
        EdgeId e = path.out_edges(v).front();
        order.push_back(e);
        v = path.edge(e).dst;
    }
    for (std::size_t j = 0; j < order.size(); ++j) {
        if (nu.mass[order[j]] != nu.mass[order[order.size() - 1 - j]]) return false;
    }
    return true;
}

}  // namespace oslash
