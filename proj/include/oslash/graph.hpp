#pragma once

#include "oslash/error.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oslash {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Sequence of base-graph ids. Edges of a power carry their letter word,
// vertices carry the word of the copy they were created in plus one
// interior base vertex.
using Word = std::vector<std::uint32_t>;

struct Edge {
    VertexId src;
    VertexId dst;
};

// What to do when a vertex lies on no directed source->sink path.
enum class StCheck { Enforce, Warn };

class StGraph;
using GraphPtr = std::shared_ptr<const StGraph>;

// Bookkeeping kept on H⊘G so that functions and morphisms can address
// vertices as (outer edge, inner vertex) pairs.
struct ProductStructure {
    GraphPtr outer;
    GraphPtr inner;
    std::vector<VertexId> pair_class;                              // (e,u) at e*|V(G)|+u
    std::vector<std::pair<EdgeId, VertexId>> representative;       // least (e,u) per vertex
    std::vector<VertexId> injection;                               // V(H) -> V(H⊘G)

    VertexId at(EdgeId e, VertexId u) const;
    EdgeId edge(EdgeId e, EdgeId f) const;
};

class StGraph {
public:
    StGraph(std::vector<std::string> vertex_labels, std::vector<Edge> edges,
            std::optional<VertexId> source, std::optional<VertexId> sink,
            std::vector<std::string> edge_labels = {}, StCheck st_check = StCheck::Enforce);

    std::size_t vertex_count() const { return vertex_labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_terminals() const { return source_.has_value(); }
    VertexId source() const;
    VertexId sink() const;

    const std::string& vertex_label(VertexId v) const { return vertex_labels_.at(v); }
    const std::string& edge_label(EdgeId e) const { return edge_labels_.at(e); }

    const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
    const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }
    // Undirected neighbours, sorted.
    const std::vector<VertexId>& neighbors(VertexId v) const { return nbr_.at(v); }
    std::size_t degree(VertexId v) const { return out_[v].size() + in_[v].size(); }

    std::optional<EdgeId> find_edge(VertexId src, VertexId dst) const;

    const Word& edge_word(EdgeId e) const { return edge_words_.at(e); }
    const Word& vertex_address(VertexId v) const { return vertex_addresses_.at(v); }
    std::optional<VertexId> find_by_address(const Word& address) const;
    // Number of letters in every edge word (1 for base graphs).
    std::size_t depth() const { return edge_words_.empty() ? 0 : edge_words_.front().size(); }

    const ProductStructure* product() const { return product_.get(); }

    const std::vector<std::string>& warnings() const { return warnings_; }

    // Vertices on no directed source->sink path (empty for valid s-t graphs).
    std::vector<VertexId> off_path_vertices() const;

private:
    friend GraphPtr oslash_product(const GraphPtr& outer, const GraphPtr& inner, StCheck st_check);

    void build_indices();
    void set_provenance(std::vector<Word> edge_words, std::vector<Word> vertex_addresses);

    std::vector<std::string> vertex_labels_;
    std::vector<Edge> edges_;
    std::vector<std::string> edge_labels_;
    std::optional<VertexId> source_;
    std::optional<VertexId> sink_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::vector<std::vector<VertexId>> nbr_;
    std::vector<Word> edge_words_;
    std::vector<Word> vertex_addresses_;
    std::map<Word, VertexId> address_index_;
    std::shared_ptr<const ProductStructure> product_;
    std::vector<std::string> warnings_;
};

GraphPtr make_path(unsigned k);
GraphPtr make_diamond(unsigned k, unsigned m);
GraphPtr make_laakso();

// Vertex id of the interior vertex at position i (1..k-1) on branch j (1..m).
VertexId diamond_vertex(unsigned k, unsigned m, unsigned i, unsigned j);

// H⊘G. H may lack terminals; G must be an s-t graph.
GraphPtr oslash_product(const GraphPtr& outer, const GraphPtr& inner, StCheck st_check = StCheck::Enforce);

// G^{⊘n} as a left fold; the result of level j is G^{⊘j}.
GraphPtr oslash_power(const GraphPtr& g, unsigned n, const Caps& caps = {});
// All levels 1..n, element j-1 being G^{⊘j}.
std::vector<GraphPtr> oslash_power_tower(const GraphPtr& g, unsigned n, const Caps& caps = {});

// Vertex and edge counts of G^{⊘n} without building it.
std::pair<std::uint64_t, std::uint64_t> oslash_power_counts(std::uint64_t vertices, std::uint64_t edges, unsigned n);

struct Morphism {
    GraphPtr domain;
    GraphPtr codomain;
    std::vector<VertexId> vertex_map;
    std::vector<EdgeId> edge_map;  // filled by make_morphism
    bool st = false;
};

struct MorphismCheck {
    bool valid = true;
    std::vector<EdgeId> offending_edges;
    std::vector<std::string> diagnostics;
};

MorphismCheck validate_morphism(const Morphism& theta);

// Validates and fills edge_map; throws on an invalid map.
Morphism make_morphism(GraphPtr domain, GraphPtr codomain, std::vector<VertexId> vertex_map, bool st);

Morphism identity_morphism(const GraphPtr& g);

// [(u,i)] -> u from D_{k,m} onto P_k.
Morphism collapsing_map_diamond(unsigned k, unsigned m);
Morphism collapsing_map_diamond(const GraphPtr& diamond, const GraphPtr& path, unsigned k, unsigned m);

// Maps each vertex to its directed level from the source, onto P_k.
// Succeeds only when every edge climbs exactly one level and s, t are
// alone on levels 0 and k.
std::optional<Morphism> graded_collapsing_map(const GraphPtr& g);

// θ_H⊘θ_G; builds both products.
Morphism oslash_morphism(const Morphism& theta_outer, const Morphism& theta_inner);
// Same, reusing products already built from the same factors.
Morphism oslash_morphism(const Morphism& theta_outer, const Morphism& theta_inner,
                         GraphPtr domain_product, GraphPtr codomain_product);

class SubsetView {
public:
    SubsetView(const StGraph& g, std::vector<VertexId> members);
    static SubsetView from_mask(const StGraph& g, std::uint64_t mask);
    static SubsetView from_flags(const StGraph& g, const std::vector<char>& flags);

    const StGraph& graph() const { return *graph_; }
    bool contains(VertexId v) const { return flags_[v] != 0; }
    const std::vector<VertexId>& members() const { return members_; }
    const std::vector<char>& flags() const { return flags_; }
    const std::vector<EdgeId>& boundary() const { return boundary_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool proper() const { return !members_.empty() && members_.size() < graph_->vertex_count(); }
    SubsetView complement() const;
    std::uint64_t mask() const;  // requires |V| <= 64

private:
    const StGraph* graph_;
    std::vector<char> flags_;
    std::vector<VertexId> members_;
    std::vector<EdgeId> boundary_;
};

std::vector<SubsetView> connected_components(const StGraph& g, const SubsetView& s);

enum class SubsetMode { Exhaustive, Connected };

// Calls visit(mask) for every proper nonempty subset (exhaustive) or every
// connected proper nonempty subset (connected), deterministic order.
void enumerate_subsets(const StGraph& g, SubsetMode mode, const Caps& caps,
                       const std::function<void(std::uint64_t)>& visit);

std::vector<SubsetView> collect_subsets(const StGraph& g, SubsetMode mode, const Caps& caps = {});

}  // namespace oslash
