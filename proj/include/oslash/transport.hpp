#pragma once

#include "oslash/graph.hpp"
#include "oslash/measure.hpp"
#include "oslash/rational.hpp"

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace oslash {

struct TransportInstance {
    std::vector<std::string> points;
    std::vector<Rational> dist;  // row-major |points| x |points|
    VertexMeasure mu;
    VertexMeasure nu;
    std::vector<std::string> warnings;

    std::size_t size() const { return points.size(); }
    const Rational& d(std::size_t i, std::size_t j) const { return dist[i * points.size() + j]; }
};

// Validates sizes, nonnegativity and equal unit totals (input error
// otherwise). Metric axioms are checked and failures recorded as warnings.
TransportInstance make_transport_instance(std::vector<std::string> points, std::vector<Rational> dist, VertexMeasure mu,
                                          VertexMeasure nu);
TransportInstance make_transport_instance(const StGraph& g, const GeodesicMetric& d, VertexMeasure mu, VertexMeasure nu);

struct Coupling {
    Rational cost;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> plan;  // (from, to, mass), mass > 0
    std::size_t pivots = 0;
};

// Transportation simplex over the supports, exact pivoting.
Coupling w1_coupling(const TransportInstance& instance);

struct Flow {
    Rational cost;
    std::vector<Rational> edge_flow;  // net flow along src -> dst
    std::size_t augmentations = 0;
};

// Min-cost flow on the graph's edges (both directions, cost = length) with
// supply μ and demand ν, successive shortest paths.
Flow w1_beckmann(const StGraph& g, const std::vector<Rational>& lengths, const VertexMeasure& mu, const VertexMeasure& nu);

// Σ_e len(e)·|μ(side) − ν(side)| over a tree; rejects graphs with cycles.
Rational w1_tree(const StGraph& tree, const std::vector<Rational>& lengths, const VertexMeasure& mu,
                 const VertexMeasure& nu);

struct BoundInputs {
    double c_iso = 0;
    double c_l1 = 0;
    double c_linf = 0;
    double c_gamma = 0;
    double delta_iso = 0;
    double delta_spec = 0;
    double beta = 1;
};

void validate_bound_inputs(const BoundInputs& b);

// ∫_1^β s^{δ_spec − δ_iso − 1} ds in closed form.
double growth_integral(double delta_spec, double delta_iso, double beta);

double distortion_bound(const BoundInputs& b);

enum class ConstantSource { Paper, Certified };

struct BoundConstants {
    double c_iso = 0;
    double c_l1 = 0;
    double c_linf = 0;
    double c_gamma = 0;
    ConstantSource source = ConstantSource::Paper;
    std::vector<std::string> provenance;  // one line per constant
};

// Published envelopes for D_{k,m}: C_iso = m/2, C_L1 = 6, C_Linf = 1, C_γ = 2k²m².
BoundConstants diamond_envelope_constants(unsigned k, unsigned m);

struct BoundReport {
    unsigned k = 0, m = 0, n = 0;
    BoundInputs inputs;
    BoundConstants constants;
    double value = 0;
    std::uint64_t vertices = 0;
    double log_size_term = 0;  // (log |V|)^{1/δ}
};

BoundReport diamond_bound(unsigned k, unsigned m, unsigned n, const BoundConstants& constants);

}  // namespace oslash
