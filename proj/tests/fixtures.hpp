#pragma once
// Weighted gadgets, spectral building blocks and exact reference checks
// shared by the unit tests and the acceptance run.

#include "oslash/graph.hpp"
#include "oslash/measure.hpp"
#include "oslash/spectral.hpp"
#include "support.hpp"

#include <vector>

namespace fixtures {

using namespace oslash;

inline Rational R(long n, long d = 1) { return make_rational(n, d); }

inline Rational abs_r(const Rational& x) { return x < 0 ? Rational(-x) : x; }

struct Weighted {
    GraphPtr g;
    EdgeMeasure nu;
    std::vector<Rational> len;
};

inline Weighted uniform(GraphPtr g, const Rational& len) {
    auto nu = uniform_edge_measure(*g);
    auto l = constant_lengths(*g, len);
    return {std::move(g), std::move(nu), std::move(l)};
}

inline Weighted diamond(unsigned k, unsigned m) { return uniform(make_diamond(k, m), R(1, k)); }
inline Weighted d22() { return diamond(2, 2); }
inline Weighted p2() { return uniform(make_path(2), R(1, 2)); }
inline Weighted laakso() { return uniform(make_laakso(), R(1, 4)); }

inline Weighted laakso_weighted() {
    auto w = laakso();
    w.nu.mass = {R(1, 4), R(1, 8), R(1, 8), R(1, 8), R(1, 8), R(1, 4)};
    return w;
}

// D22 with the two crossing edges light, so that the p-minimizer is {s, a1}.
inline Weighted d22_skewed() {
    auto w = d22();
    w.nu.mass = {R(3, 8), R(1, 8), R(1, 8), R(3, 8)};
    return w;
}

inline Weighted power_of(const Weighted& base, unsigned n) {
    auto g = oslash_power(base.g, n);
    auto nu = power_edge_measure(*g, base.nu);
    auto len = power_edge_lengths(*g, base.len);
    return {g, std::move(nu), std::move(len)};
}

inline Weighted product_of(const Weighted& h, const Weighted& g) {
    auto prod = oslash_product(h.g, g.g);
    auto nu = oslash_edge_measure(*prod, h.nu, g.nu);
    auto len = oslash_metric(*prod, geodesic_metric(*h.g, h.len), geodesic_metric(*g.g, g.len)).lengths();
    return {prod, std::move(nu), std::move(len)};
}

inline VertexFunction random_vertex(std::mt19937_64& g, std::size_t n) { return {support::random_values(g, n, -3, 3)}; }
inline EdgeFunction random_edge(std::mt19937_64& g, std::size_t n) { return {support::random_values(g, n, -3, 3)}; }

// Random function vanishing at both terminals.
inline VertexFunction random_interior(std::mt19937_64& g, const StGraph& graph) {
    auto f = random_vertex(g, graph.vertex_count());
    f.values[graph.source()] = 0;
    f.values[graph.sink()] = 0;
    return f;
}

inline Rational lip_of(const StGraph& g, const VertexFunction& f, const std::vector<Rational>& len) {
    Rational best = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        Rational slope = abs_r(f.values[g.edge(e).dst] - f.values[g.edge(e).src]) / len[e];
        if (slope > best) best = slope;
    }
    return best;
}

inline Rational sup_abs(const std::vector<Rational>& v) {
    Rational best = 0;
    for (const auto& x : v) best = abs_r(x) > best ? abs_r(x) : best;
    return best;
}

inline Rational weighted_l1(const std::vector<Rational>& v, const std::vector<Rational>& w) {
    Rational total = 0;
    for (std::size_t i = 0; i < v.size(); ++i) total += abs_r(v[i]) * w[i];
    return total;
}

inline bool strongly_orthogonal_oracle(const StGraph& g, const std::vector<VertexFunction>& fs, const EdgeMeasure& nu) {
    for (std::size_t a = 0; a < fs.size(); ++a) {
        for (std::size_t b = a + 1; b < fs.size(); ++b) {
            for (bool ea : {false, true}) {
                for (bool eb : {false, true}) {
                    Rational total = 0;
                    for (EdgeId e = 0; e < g.edge_count(); ++e) {
                        const Edge& ed = g.edge(e);
                        total += nu.mass[e] * fs[a].values[ea ? ed.dst : ed.src] * fs[b].values[eb ? ed.dst : ed.src];
                    }
                    if (total != 0) return false;
                }
            }
        }
    }
    return true;
}

// The family (id⊘π)^*Lin(F1) ∪ F2⊘F3 on H⊘G, with the product measures and metric.
struct Assembled {
    GraphPtr product;
    GraphPtr through_path;  // H⊘P_k
    Morphism theta;         // id⊘π : H⊘G → H⊘P_k
    EdgeMeasure nu;
    VertexMeasure mu;
    std::vector<Rational> len;
    std::vector<VertexFunction> lifted;
    std::vector<VertexFunction> products;

    std::vector<VertexFunction> all() const {
        auto out = lifted;
        out.insert(out.end(), products.begin(), products.end());
        return out;
    }
};

inline Assembled assemble(const Weighted& h, const Weighted& g, const Morphism& pi, const std::vector<VertexFunction>& f1,
                          const std::vector<EdgeFunction>& f2, const std::vector<VertexFunction>& f3) {
    Assembled a;
    a.product = oslash_product(h.g, g.g);
    a.through_path = oslash_product(h.g, pi.codomain);
    a.theta = oslash_morphism(identity_morphism(h.g), pi, a.product, a.through_path);
    a.nu = oslash_edge_measure(*a.product, h.nu, g.nu);
    a.mu = oslash_vertex_measure(*a.product, h.nu, induced_vertex_measure(*g.g, g.nu));
    a.len = oslash_metric(*a.product, geodesic_metric(*h.g, h.len), geodesic_metric(*g.g, g.len)).lengths();
    for (const auto& f : f1) a.lifted.push_back(pullback(a.theta, lin_extension(*a.through_path, f)));
    for (const auto& x : f2) {
        for (const auto& y : f3) a.products.push_back(oslash_function(*a.product, x, y));
    }
    return a;
}

inline SpectralInputs diamond_inputs(unsigned k, unsigned m) {
    SpectralInputs in;
    in.base = make_diamond(k, m);
    in.pi = collapsing_map_diamond(in.base, make_path(k), k, m);
    in.phi = base_function_diamond(k, m);
    in.nu = uniform_edge_measure(*in.base);
    in.lengths = constant_lengths(*in.base, R(1, k));
    return in;
}

}  // namespace fixtures
