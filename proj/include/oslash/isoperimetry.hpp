#pragma once

#include "oslash/graph.hpp"
#include "oslash/measure.hpp"
#include "oslash/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oslash {

struct VertexFunction {
    std::vector<Rational> values;
};

struct EdgeFunction {
    std::vector<Rational> values;
};

EdgeFunction gradient(const StGraph& g, const VertexFunction& f, const std::vector<Rational>& lengths);

// ‖∇f‖_{L1(ν)}, exact.
Rational sobolev_w11(const StGraph& g, const VertexFunction& f, const EdgeMeasure& nu, const std::vector<Rational>& lengths);

// ‖∇f‖_{Lp(ν)} for p >= 1; p = +inf gives the weighted sup over the support of ν.
double sobolev_seminorm(const StGraph& g, const VertexFunction& f, double p, const EdgeMeasure& nu,
                        const std::vector<Rational>& lengths);

// max_e |∇f(e)|; the Lipschitz constant when the lengths are geodesic.
Rational lipschitz_constant(const StGraph& g, const VertexFunction& f, const std::vector<Rational>& lengths);

VertexFunction positive_part(const VertexFunction& f);
VertexFunction negative_part(const VertexFunction& f);

Rational perimeter(const SubsetView& s, const EdgeMeasure& nu, const std::vector<Rational>& lengths);
Rational subset_mass(const SubsetView& s, const VertexMeasure& mu);

// Per / m^{(δ-1)/δ}; m = 0 gives +inf.
double ratio_value(const Rational& per, const Rational& mass, double delta);

double iso_ratio(const SubsetView& s, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                 const AlphaWeights& alpha);
double tilde_iso_ratio(const SubsetView& s, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                       const AlphaWeights& alpha);

// As α ranges over (0,1)^E, μ_α(S) sweeps the open interval between the
// mass of edges inside S and the mass of edges touching S.
struct AlphaMassRange {
    Rational inside;
    Rational touching;
};
AlphaMassRange alpha_mass_range(const SubsetView& s, const EdgeMeasure& nu);

// inf over α of q(S) and of q̃(S), in closed form.
double iso_ratio_alpha_inf(const SubsetView& s, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths);
double tilde_iso_ratio_alpha_inf(const SubsetView& s, double delta, const EdgeMeasure& nu,
                                 const std::vector<Rational>& lengths);

enum class IsoMode { Exhaustive, Connected, Frontier };

struct MinRatio {
    double ratio = 0;
    std::vector<VertexId> witness;
    Rational per;
    Rational mass;  // min{μ(S), μ(S^c)} at the witness (or its α-infimum surrogate)
    std::uint64_t subsets = 0;
    IsoMode mode = IsoMode::Exhaustive;
};

MinRatio min_iso_ratio(const StGraph& g, double delta, const EdgeMeasure& nu, const std::vector<Rational>& lengths,
                       const AlphaWeights& alpha, IsoMode mode, const Caps& caps = {});

// Minimum over S of the exact α-infimum of q(S).
MinRatio min_iso_ratio_alpha_inf(const StGraph& g, double delta, const EdgeMeasure& nu,
                                 const std::vector<Rational>& lengths, IsoMode mode, const Caps& caps = {});

// Exact minimum over subsets of powers via a Pareto frontier over
// (mass, perimeter) in the decomposition G⊘G^{⊘(n-1)}. The witness is given
// as vertex ids of `power`, which must be oslash_power(base, n).
MinRatio min_iso_ratio_frontier(const StGraph& base, const StGraph& power, unsigned n, double delta,
                                const EdgeMeasure& nu_base, const std::vector<Rational>& base_lengths,
                                const Rational& alpha, const Caps& caps = {});

struct PowerConditions {
    double rho = 0;
    EdgeId rho_edge = 0;
    Rational p;
    std::vector<VertexId> p_witness;
    Rational c;
    std::vector<VertexId> c_witness;
};

PowerConditions power_conditions(const StGraph& g, double delta, const EdgeMeasure& nu,
                                 const std::vector<Rational>& lengths, const Caps& caps = {});

struct Dimension {
    double value = 0;
    std::optional<Rational> exact;  // set when log ν / log d is provably rational
    EdgeId attained_at = 0;
};

Dimension iso_dimension(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths);

struct CoareaResult {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

CoareaResult coarea_check(const StGraph& g, const VertexFunction& f, const EdgeMeasure& nu,
                          const std::vector<Rational>& lengths);

// f = Σ (t_{i+1} - t_i)·1{f > t_i} pointwise, exactly.
bool layer_cake_check(const VertexFunction& f);

struct SobolevResult {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

SobolevResult sobolev_check(const StGraph& g, const VertexFunction& f, double delta, double constant,
                            const EdgeMeasure& nu, const std::vector<Rational>& lengths, const VertexMeasure& mu);

// Least value m in the range of f with μ(f > m) <= 1/2 and μ(f < m) <= 1/2.
Rational median(const VertexFunction& f, const VertexMeasure& mu);

enum class WitnessCase { ShortEdge, SingletonMinimizer, RecursiveMinimizer };

// Subsets S_n of G^{⊘n} along which the ratio collapses when ρ_G < 1 or p_G < 1.
struct WitnessFamily {
    WitnessCase kind;
    std::vector<VertexId> base_set;  // the p_G minimizer (or V \ {s,t})
    EdgeId edge = 0;                 // the edge used by the short-edge and singleton cases
    Rational base_perimeter;
    Rational leading_factor;         // A in Per(S_n) = A·Per_G(S)^{n-1} for the singleton case
};

WitnessFamily plan_witness_family(const StGraph& g, double delta, const EdgeMeasure& nu,
                                  const std::vector<Rational>& lengths, const Caps& caps = {});

// Members of S_n inside `power` = G^{⊘n} (or G^{⊘n+1} for the short-edge case).
std::vector<VertexId> witness_members(const WitnessFamily& plan, const StGraph& base, const StGraph& power, unsigned n);

}  // namespace oslash
