#pragma once

#include "oslash/graph.hpp"
#include "oslash/isoperimetry.hpp"
#include "oslash/measure.hpp"
#include "oslash/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oslash {

// Barycentric extension onto H⊘P_k; `extended` must be a product whose inner
// factor is a path.
VertexFunction lin_extension(const StGraph& extended, const VertexFunction& f);

VertexFunction pullback(const Morphism& theta, const VertexFunction& f);
EdgeFunction pullback(const Morphism& theta, const EdgeFunction& f);

// ν-weighted average of g over each fiber θ^{-1}(e').
EdgeFunction conditional_expectation(const EdgeFunction& g, const Morphism& theta, const EdgeMeasure& nu);

// (h⊘g)(e⊘u) = h(e)·g(u); g must vanish at both terminals.
VertexFunction oslash_function(const StGraph& product, const EdgeFunction& h, const VertexFunction& g);
// (h⊘g)(e⊘f) = h(e)·g(f).
EdgeFunction oslash_function(const StGraph& product, const EdgeFunction& h, const EdgeFunction& g);

struct InducedEdgeFunctions {
    EdgeFunction minus;  // f(e⁻)
    EdgeFunction plus;   // f(e⁺)
};
InducedEdgeFunctions induced_edge_functions(const StGraph& g, const VertexFunction& f);

Rational inner_product(const EdgeFunction& a, const EdgeFunction& b, const EdgeMeasure& nu);
Rational inner_product(const VertexFunction& a, const VertexFunction& b, const VertexMeasure& mu);

Rational l1_norm(const VertexFunction& f, const VertexMeasure& mu);
Rational l1_norm(const EdgeFunction& f, const EdgeMeasure& nu);
// Essential sup: only points of positive mass count.
Rational linf_norm(const VertexFunction& f, const VertexMeasure& mu);
Rational linf_norm(const EdgeFunction& f, const EdgeMeasure& nu);

struct OrthogonalityCheck {
    bool orthogonal = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // first failing pair
    std::size_t pairs_checked = 0;
};

// All four pairings of induced edge functions vanish in L2(ν) for every pair.
OrthogonalityCheck is_strongly_orthogonal(const StGraph& g, const std::vector<VertexFunction>& family,
                                          const EdgeMeasure& nu, unsigned jobs = 1);
OrthogonalityCheck is_orthogonal(const std::vector<VertexFunction>& family, const VertexMeasure& mu);

bool has_edge_sign(const StGraph& g, const VertexFunction& f);

// The alternating ±1 function on interior diamond vertices.
VertexFunction base_function_diamond(unsigned k, unsigned m);

bool is_base_function(const VertexFunction& phi, const Morphism& pi, const EdgeMeasure& nu);

struct BaseFunction {
    Morphism pi;
    VertexFunction phi;  // normalized to sup norm 1
};

// Collapsing map by directed levels, then a kernel vector with the edge-sign
// property. Throws an input error when none is found.
BaseFunction find_base_function(const GraphPtr& g);

// Sylvester columns on the first 2^n points (2^n <= size < 2^{n+1}), zero
// elsewhere; values ±1.
std::vector<std::vector<Rational>> hadamard_family(std::size_t size);

enum class MemberKind { Base, Lifted, Product };

struct FamilyMember {
    VertexFunction f;
    MemberKind kind = MemberKind::Base;
    std::string provenance;
    Rational lipschitz;
    Rational l1;
    Rational linf;
};

struct SpectralFamily {
    GraphPtr graph;
    unsigned level = 0;
    std::vector<FamilyMember> members;
    EdgeMeasure nu;
    VertexMeasure mu;
    std::vector<Rational> lengths;
    OrthogonalityCheck strong;
    bool edge_sign = true;
};

struct SpectralInputs {
    GraphPtr base;
    Morphism pi;
    VertexFunction phi;       // raw base function; normalized inside
    EdgeMeasure nu;           // must be uniform
    std::vector<Rational> lengths;  // must all equal 1/k
};

// Levels 1..n; element j-1 lives on G^{⊘j}. Each level's strong
// orthogonality is checked exactly.
std::vector<SpectralFamily> build_spectral_tower(const SpectralInputs& in, unsigned n, const Caps& caps = {});
SpectralFamily build_spectral_family(const SpectralInputs& in, unsigned n, const Caps& caps = {});

// |{f : Lip(f) <= s}|, or with `strict` the count of Lip(f) < s.
std::size_t growth(const SpectralFamily& family, const Rational& s, bool strict = false);
std::size_t growth(const SpectralFamily& family, double s, bool strict = false);

struct GrowthSample {
    double s = 0;
    std::size_t at_most = 0;
    std::size_t below = 0;
    double ratio = 0;  // s^δ / γ(s), +inf when γ(s) = 0
};

struct SpectralReport {
    double delta = 0;
    double beta = 0;
    unsigned k = 0;
    std::size_t family_size = 0;
    Rational c_linf;    // sup ‖f‖_∞
    Rational inf_l1;    // inf ‖f‖₁
    Rational c_l1;      // 1 / inf ‖f‖₁
    double c_gamma = 0;            // max over s = k^m, 1 <= m, k^m <= β
    double c_gamma_continuum = 0;  // sup over s in [k, β], jump points included
    bool gap_below_k = false;      // γ(s) = 0 somewhere in [1, k)
    std::vector<GrowthSample> lattice;
    std::vector<GrowthSample> jumps;
    std::vector<GrowthSample> grid;
    bool orthogonal = false;
    bool certified = false;
    std::vector<std::string> notes;
};

SpectralReport profile_report(const SpectralFamily& family, double delta, double beta, unsigned k);

}  // namespace oslash
