#pragma once
// Shared helpers for the test binaries: seeded random inputs and
// independent reference computations that do not call the library code
// they check.

#include "oslash/graph.hpp"
#include "oslash/measure.hpp"
#include "oslash/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace support {

using oslash::EdgeId;
using oslash::Rational;
using oslash::StGraph;
using oslash::VertexId;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

// Rational in [lo, hi] with denominator at most max_den.
inline Rational random_rational(std::mt19937_64& g, long lo, long hi, long max_den = 8) {
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(g);
    std::uniform_int_distribution<long> num(lo * d, hi * d);
    return oslash::make_rational(num(g), d);
}

inline std::vector<Rational> random_values(std::mt19937_64& g, std::size_t n, long lo, long hi, long max_den = 8) {
    std::vector<Rational> v(n);
    for (auto& x : v) x = random_rational(g, lo, hi, max_den);
    return v;
}

// Random probability vector with some zero entries allowed.
inline std::vector<Rational> random_probability(std::mt19937_64& g, std::size_t n, bool allow_zero = true) {
    std::uniform_int_distribution<long> w(allow_zero ? 0 : 1, 6);
    std::vector<Rational> v(n);
    Rational total = 0;
    while (total == 0) {
        total = 0;
        for (auto& x : v) {
            x = w(g);
            total += x;
        }
    }
    for (auto& x : v) x /= total;
    return v;
}

// Vertex counts of G^{⊘n} by the recurrence V_{j+1} = V_j + E_j·(V_G − 2),
// E_{j+1} = E_j·E_G.
inline std::pair<std::uint64_t, std::uint64_t> power_counts(std::uint64_t v, std::uint64_t e, unsigned n) {
    std::uint64_t vn = v, en = e;
    for (unsigned j = 1; j < n; ++j) {
        vn = vn + en * (v - 2);
        en *= e;
    }
    return {vn, en};
}

// μ(x) = Σ_{e∋x} ν(e)/2 straight from the edge list.
inline std::vector<Rational> degree_measure(const StGraph& g, const std::vector<Rational>& nu) {
    std::vector<Rational> mu(g.vertex_count(), Rational(0));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        mu[g.edge(e).src] += nu[e] / 2;
        mu[g.edge(e).dst] += nu[e] / 2;
    }
    return mu;
}

// Perimeter and mass of a vertex subset given as flags.
struct Cut {
    Rational per = 0;
    Rational mass = 0;
};

inline Cut cut_of(const StGraph& g, const std::vector<char>& in, const std::vector<Rational>& nu,
                  const std::vector<Rational>& len, const std::vector<Rational>& mu) {
    Cut c;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (in[g.edge(e).src] != in[g.edge(e).dst]) c.per += nu[e] / len[e];
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (in[v]) c.mass += mu[v];
    }
    return c;
}

// min over proper nonempty S of Per(S) / min{μ(S), μ(S^c)}^{(δ−1)/δ} by
// brute force over bitmasks.
inline double brute_min_ratio(const StGraph& g, double delta, const std::vector<Rational>& nu,
                              const std::vector<Rational>& len, const std::vector<Rational>& mu) {
    const std::size_t n = g.vertex_count();
    const Rational total = [&] {
        Rational t = 0;
        for (const auto& m : mu) t += m;
        return t;
    }();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
        std::vector<char> in(n);
        for (std::size_t v = 0; v < n; ++v) in[v] = (mask >> v) & 1;
        Cut c = cut_of(g, in, nu, len, mu);
        Rational rest = total - c.mass;
        Rational m = c.mass < rest ? c.mass : rest;
        double q = m == 0 ? std::numeric_limits<double>::infinity()
                          : c.per.get_d() / std::pow(m.get_d(), (delta - 1) / delta);
        best = std::min(best, q);
    }
    return best;
}

// Floyd-Warshall over the undirected support.
inline std::vector<Rational> all_pairs(const StGraph& g, const std::vector<Rational>& len) {
    const std::size_t n = g.vertex_count();
    std::vector<std::optional<Rational>> d(n * n);
    for (std::size_t v = 0; v < n; ++v) d[v * n + v] = Rational(0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.edge(e);
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            auto& cell = d[x * n + y];
            if (!cell || len[e] < *cell) cell = len[e];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!d[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!d[k * n + j]) continue;
                Rational via = *d[i * n + k] + *d[k * n + j];
                if (!d[i * n + j] || via < *d[i * n + j]) d[i * n + j] = via;
            }
        }
    }
    std::vector<Rational> out(n * n);
    for (std::size_t i = 0; i < n * n; ++i) out[i] = d[i].value_or(Rational(-1));
    return out;
}

// Random labelled tree on n vertices: vertex v > 0 hangs off a uniform
// earlier vertex, with a random edge direction.
inline oslash::GraphPtr random_tree(std::mt19937_64& g, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
    std::vector<oslash::Edge> edges;
    std::bernoulli_distribution flip(0.5);
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> parent(0, v - 1);
        auto p = static_cast<VertexId>(parent(g));
        auto c = static_cast<VertexId>(v);
        edges.push_back(flip(g) ? oslash::Edge{p, c} : oslash::Edge{c, p});
    }
    return std::make_shared<StGraph>(std::move(labels), std::move(edges), std::nullopt, std::nullopt);
}

// The distortion lower bound in 50-digit binary floating point.
inline double high_precision_bound(double c_iso, double c_l1, double c_linf, double c_gamma, double delta_iso,
                                   double delta_spec, double beta) {
    using F = boost::multiprecision::cpp_bin_float_50;
    const F di = delta_iso, ds = delta_spec, b = beta;
    const F a = ds - di;
    F integral = a == 0 ? F(log(b)) : F((pow(b, a) - 1) / a);
    F lead = F(1) / (F(2) * F(c_iso) * F(c_l1) * F(c_l1) * F(c_linf));
    F value = lead * pow(di / F(c_gamma), 1 / di) * pow(integral, 1 / di);
    return value.convert_to<double>();
}

}  // namespace support
