#pragma once

#include "oslash/graph.hpp"
#include "oslash/rational.hpp"

#include <vector>

namespace oslash {

struct EdgeMeasure {
    std::vector<Rational> mass;

    Rational total() const { return sum(mass); }
    bool is_probability() const;
    bool fully_supported() const;
};

struct VertexMeasure {
    std::vector<Rational> mass;

    Rational total() const { return sum(mass); }
    bool is_probability() const;
};

struct AlphaWeights {
    std::vector<Rational> alpha;

    static AlphaWeights constant(std::size_t edges, const Rational& a);
    static AlphaWeights half(std::size_t edges) { return constant(edges, Rational(1, 2)); }
};

// Edge lengths plus all-pairs shortest-path distances over the undirected support.
class GeodesicMetric {
public:
    GeodesicMetric(std::vector<Rational> lengths, std::vector<Rational> dist, std::size_t n)
        : lengths_(std::move(lengths)), dist_(std::move(dist)), n_(n) {}

    const Rational& edge_length(EdgeId e) const { return lengths_.at(e); }
    const std::vector<Rational>& lengths() const { return lengths_; }
    const Rational& dist(VertexId u, VertexId v) const { return dist_.at(static_cast<std::size_t>(u) * n_ + v); }
    std::size_t vertex_count() const { return n_; }

private:
    std::vector<Rational> lengths_;
    std::vector<Rational> dist_;
    std::size_t n_;
};

EdgeMeasure uniform_edge_measure(const StGraph& g);

VertexMeasure induced_vertex_measure(const StGraph& g, const EdgeMeasure& nu, const AlphaWeights& alpha);
VertexMeasure induced_vertex_measure(const StGraph& g, const EdgeMeasure& nu);

// ν_H(e)·ν_G(f) on e⊘f; the graph must be the product built from H and G.
EdgeMeasure oslash_edge_measure(const StGraph& product, const EdgeMeasure& nu_outer, const EdgeMeasure& nu_inner);

// ν_H⊘μ_G: each class e⊘u collects ν_H(e)·μ_G(u) over its members.
VertexMeasure oslash_vertex_measure(const StGraph& product, const EdgeMeasure& nu_outer, const VertexMeasure& mu_inner);

// Product of base masses along each edge word of a power of the base graph.
EdgeMeasure power_edge_measure(const StGraph& power, const EdgeMeasure& nu_base);
std::vector<Rational> power_edge_lengths(const StGraph& power, const std::vector<Rational>& base_lengths);

std::vector<Rational> constant_lengths(const StGraph& g, const Rational& len);

// Throws an input error naming an edge that is longer than the distance
// between its endpoints.
GeodesicMetric geodesic_metric(const StGraph& g, const std::vector<Rational>& lengths);

struct GeodesicCheck {
    bool geodesic = true;
    std::optional<EdgeId> witness;
};
GeodesicCheck check_geodesic(const StGraph& g, const std::vector<Rational>& lengths);

bool is_normalized(const StGraph& g, const GeodesicMetric& d);

// Lengths d_H(e)·d_G(f) on e⊘f, with all-pairs distances.
GeodesicMetric oslash_metric(const StGraph& product, const GeodesicMetric& d_outer, const GeodesicMetric& d_inner);

EdgeMeasure pushforward_measure(const Morphism& theta, const EdgeMeasure& nu);

bool is_path_graph(const StGraph& g);
bool is_reflection_invariant(const StGraph& path, const EdgeMeasure& nu);

}  // namespace oslash
