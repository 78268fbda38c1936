#include "oslash/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace oslash {

namespace {

std::string fraction_label(unsigned i, unsigned k) {
    if (i == 0) return "0";
    if (i == k) return "1";
    unsigned g = std::gcd(i, k);
    return std::to_string(i / g) + "/" + std::to_string(k / g);
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    // Keeps the smaller index as root so that roots are least members.
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

std::vector<char> reach(const StGraph& g, VertexId start, bool forward) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        const auto& list = forward ? g.out_edges(v) : g.in_edges(v);
        for (EdgeId e : list) {
            VertexId w = forward ? g.edge(e).dst : g.edge(e).src;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

VertexId ProductStructure::at(EdgeId e, VertexId u) const {
    return pair_class.at(static_cast<std::size_t>(e) * inner->vertex_count() + u);
}

EdgeId ProductStructure::edge(EdgeId e, EdgeId f) const {
    return static_cast<EdgeId>(static_cast<std::size_t>(e) * inner->edge_count() + f);
}

StGraph::StGraph(std::vector<std::string> vertex_labels, std::vector<Edge> edges,
                 std::optional<VertexId> source, std::optional<VertexId> sink,
                 std::vector<std::string> edge_labels, StCheck st_check)
    : vertex_labels_(std::move(vertex_labels)),
      edges_(std::move(edges)),
      edge_labels_(std::move(edge_labels)),
      source_(source),
      sink_(sink) {
    const std::size_t n = vertex_labels_.size();
    if (n == 0) fail_input("graph has no vertices");
    if (edges_.empty()) fail_input("graph has no edges");
    if (source_.has_value() != sink_.has_value()) fail_input("source and sink must be given together");
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.src >= n || e.dst >= n) fail_input("edge " + std::to_string(i) + " has an endpoint out of range");
        if (e.src == e.dst) fail_input("self-loop at vertex " + std::to_string(e.src));
        auto key = std::minmax(e.src, e.dst);
        if (!seen.insert({key.first, key.second}).second) {
            fail_input("parallel edges between " + std::to_string(key.first) + " and " + std::to_string(key.second));
        }
    }
    if (edge_labels_.empty()) {
        edge_labels_.reserve(edges_.size());
        for (const Edge& e : edges_) {
            edge_labels_.push_back("(" + vertex_labels_[e.src] + "," + vertex_labels_[e.dst] + ")");
        }
    } else if (edge_labels_.size() != edges_.size()) {
        fail_input("edge label count does not match edge count");
    }
    build_indices();

    // Undirected connectivity.
    std::vector<char> seen_v(n, 0);
    std::vector<VertexId> stack{0};
    seen_v[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : nbr_[v]) {
            if (!seen_v[w]) {
                seen_v[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != n) fail_input("graph is not connected");

    if (source_) {
        if (*source_ >= n || *sink_ >= n) fail_input("source or sink out of range");
        if (*source_ == *sink_) fail_input("source equals sink");
        auto off = off_path_vertices();
        if (!off.empty()) {
            std::string msg = "vertex " + vertex_labels_[off.front()] + " lies on no directed source-sink path";
            if (st_check == StCheck::Enforce) fail_input(msg);
            warnings_.push_back(msg);
        }
    }

    std::vector<Word> words(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) words[i] = {static_cast<std::uint32_t>(i)};
    std::vector<Word> addresses(n);
    for (std::size_t v = 0; v < n; ++v) addresses[v] = {static_cast<std::uint32_t>(v)};
    set_provenance(std::move(words), std::move(addresses));
}

void StGraph::build_indices() {
    const std::size_t n = vertex_labels_.size();
    out_.assign(n, {});
    in_.assign(n, {});
    nbr_.assign(n, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        out_[edges_[i].src].push_back(static_cast<EdgeId>(i));
        in_[edges_[i].dst].push_back(static_cast<EdgeId>(i));
        nbr_[edges_[i].src].push_back(edges_[i].dst);
        nbr_[edges_[i].dst].push_back(edges_[i].src);
    }
    for (auto& list : nbr_) std::sort(list.begin(), list.end());
}

void StGraph::set_provenance(std::vector<Word> edge_words, std::vector<Word> vertex_addresses) {
    edge_words_ = std::move(edge_words);
    vertex_addresses_ = std::move(vertex_addresses);
    address_index_.clear();
    for (std::size_t v = 0; v < vertex_addresses_.size(); ++v) {
        address_index_.emplace(vertex_addresses_[v], static_cast<VertexId>(v));
    }
}

VertexId StGraph::source() const {
    if (!source_) fail_input("graph has no source");
    return *source_;
}

VertexId StGraph::sink() const {
    if (!sink_) fail_input("graph has no sink");
    return *sink_;
}

std::optional<EdgeId> StGraph::find_edge(VertexId src, VertexId dst) const {
    for (EdgeId e : out_.at(src)) {
        if (edges_[e].dst == dst) return e;
    }
    return std::nullopt;
}

std::optional<VertexId> StGraph::find_by_address(const Word& address) const {
    auto it = address_index_.find(address);
    if (it == address_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<VertexId> StGraph::off_path_vertices() const {
    if (!source_) return {};
    auto from_s = reach(*this, *source_, true);
    auto to_t = reach(*this, *sink_, false);
    std::vector<VertexId> off;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (!from_s[v] || !to_t[v]) off.push_back(v);
    }
    return off;
}

GraphPtr make_path(unsigned k) {
    if (k < 2) fail_input("path length must be at least 2, got " + std::to_string(k));
    std::vector<std::string> labels;
    for (unsigned i = 0; i <= k; ++i) labels.push_back(fraction_label(i, k));
    std::vector<Edge> edges;
    for (unsigned i = 1; i <= k; ++i) edges.push_back({i - 1, i});
    return std::make_shared<StGraph>(std::move(labels), std::move(edges), 0u, k);
}

VertexId diamond_vertex(unsigned k, unsigned m, unsigned i, unsigned j) {
    if (i == 0) return 0;
    if (i == k) return (k - 1) * m + 1;
    return 1 + (j - 1) * (k - 1) + (i - 1);
}

GraphPtr make_diamond(unsigned k, unsigned m) {
    if (k < 2) fail_input("diamond depth k must be at least 2, got " + std::to_string(k));
    if (m < 2) fail_input("diamond branching m must be at least 2, got " + std::to_string(m));
    const unsigned n = (k - 1) * m + 2;
    std::vector<std::string> labels(n);
    labels[0] = "0";
    labels[n - 1] = "1";
    for (unsigned j = 1; j <= m; ++j) {
        for (unsigned i = 1; i < k; ++i) {
            labels[diamond_vertex(k, m, i, j)] = "(" + fraction_label(i, k) + "," + std::to_string(j) + ")";
        }
    }
    std::vector<Edge> edges;
    for (unsigned j = 1; j <= m; ++j) {
        for (unsigned i = 1; i <= k; ++i) {
            edges.push_back({diamond_vertex(k, m, i - 1, j), diamond_vertex(k, m, i, j)});
        }
    }
    return std::make_shared<StGraph>(std::move(labels), std::move(edges), 0u, n - 1);
}

GraphPtr make_laakso() {
    std::vector<std::string> labels{"u0", "u1/4", "u1/2+", "u1/2-", "u3/4", "u1"};
    std::vector<Edge> edges{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}};
    return std::make_shared<StGraph>(std::move(labels), std::move(edges), 0u, 5u);
}

GraphPtr oslash_product(const GraphPtr& outer, const GraphPtr& inner, StCheck st_check) {
    if (!outer || !inner) fail_input("null graph in product");
    if (!inner->has_terminals()) fail_input("right factor of a product must be an s-t graph");
    if (!inner->off_path_vertices().empty()) fail_input("right factor of a product is not a valid s-t graph");
    const StGraph& h = *outer;
    const StGraph& g = *inner;
    const std::size_t nv = g.vertex_count();
    const std::size_t ne = g.edge_count();
    const VertexId s = g.source();
    const VertexId t = g.sink();

    UnionFind uf(h.edge_count() * nv);
    for (VertexId x = 0; x < h.vertex_count(); ++x) {
        std::vector<std::size_t> members;
        for (EdgeId e : h.in_edges(x)) members.push_back(static_cast<std::size_t>(e) * nv + t);
        for (EdgeId e : h.out_edges(x)) members.push_back(static_cast<std::size_t>(e) * nv + s);
        for (std::size_t i = 1; i < members.size(); ++i) uf.unite(members[0], members[i]);
    }

    auto ps = std::make_shared<ProductStructure>();
    ps->outer = outer;
    ps->inner = inner;
    const std::size_t pairs = h.edge_count() * nv;
    ps->pair_class.assign(pairs, 0);
    std::vector<std::size_t> root_to_vertex(pairs, SIZE_MAX);
    // Roots are least members, so scanning pairs in order numbers classes
    // by their representative.
    for (std::size_t p = 0; p < pairs; ++p) {
        std::size_t r = uf.find(p);
        if (root_to_vertex[r] == SIZE_MAX) {
            root_to_vertex[r] = ps->representative.size();
            ps->representative.push_back({static_cast<EdgeId>(p / nv), static_cast<VertexId>(p % nv)});
        }
        ps->pair_class[p] = static_cast<VertexId>(root_to_vertex[r]);
    }

    ps->injection.assign(h.vertex_count(), 0);
    for (VertexId x = 0; x < h.vertex_count(); ++x) {
        if (!h.out_edges(x).empty()) {
            ps->injection[x] = ps->at(h.out_edges(x).front(), s);
        } else {
            ps->injection[x] = ps->at(h.in_edges(x).front(), t);
        }
    }

    const std::size_t n_new = ps->representative.size();
    std::vector<std::string> vlabels(n_new);
    std::vector<Word> addresses(n_new);
    std::vector<char> from_outer(n_new, 0);
    for (VertexId x = 0; x < h.vertex_count(); ++x) {
        VertexId v = ps->injection[x];
        from_outer[v] = 1;
        vlabels[v] = h.vertex_label(x);
        addresses[v] = h.vertex_address(x);
    }
    for (VertexId v = 0; v < n_new; ++v) {
        if (from_outer[v]) continue;
        auto [e, u] = ps->representative[v];
        vlabels[v] = h.edge_label(e) + "⊘" + g.vertex_label(u);
        Word a = h.edge_word(e);
        const Word& tail = g.vertex_address(u);
        a.insert(a.end(), tail.begin(), tail.end());
        addresses[v] = std::move(a);
    }

    std::vector<Edge> edges;
    std::vector<std::string> elabels;
    std::vector<Word> words;
    edges.reserve(h.edge_count() * ne);
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        for (EdgeId f = 0; f < ne; ++f) {
            edges.push_back({ps->at(e, g.edge(f).src), ps->at(e, g.edge(f).dst)});
            elabels.push_back(h.edge_label(e) + "⊘" + g.edge_label(f));
            Word w = h.edge_word(e);
            const Word& tail = g.edge_word(f);
            w.insert(w.end(), tail.begin(), tail.end());
            words.push_back(std::move(w));
        }
    }

    std::optional<VertexId> src, dst;
    if (h.has_terminals()) {
        src = ps->injection[h.source()];
        dst = ps->injection[h.sink()];
    }
    auto result = std::make_shared<StGraph>(std::move(vlabels), std::move(edges), src, dst, std::move(elabels), st_check);
    result->set_provenance(std::move(words), std::move(addresses));
    result->product_ = std::move(ps);
    return result;
}

std::pair<std::uint64_t, std::uint64_t> oslash_power_counts(std::uint64_t vertices, std::uint64_t edges, unsigned n) {
    if (n == 0) fail_input("power must be at least 1");
    std::uint64_t v = vertices, e = edges;
    for (unsigned j = 1; j < n; ++j) {
        v = v + e * (vertices - 2);
        e = e * edges;
    }
    return {v, e};
}

std::vector<GraphPtr> oslash_power_tower(const GraphPtr& g, unsigned n, const Caps& caps) {
    if (n == 0) fail_input("power must be at least 1");
    long double edges = 1;
    for (unsigned j = 0; j < n; ++j) {
        edges *= static_cast<long double>(g->edge_count());
        if (edges > static_cast<long double>(caps.power_edge_cap)) {
            fail_resource("power " + std::to_string(n) + " exceeds the edge cap of " + std::to_string(caps.power_edge_cap));
        }
    }
    std::vector<GraphPtr> tower{g};
    for (unsigned j = 2; j <= n; ++j) tower.push_back(oslash_product(tower.back(), g));
    return tower;
}

GraphPtr oslash_power(const GraphPtr& g, unsigned n, const Caps& caps) {
    return oslash_power_tower(g, n, caps).back();
}

MorphismCheck validate_morphism(const Morphism& theta) {
    MorphismCheck check;
    if (!theta.domain || !theta.codomain) {
        check.valid = false;
        check.diagnostics.push_back("missing domain or codomain");
        return check;
    }
    const StGraph& a = *theta.domain;
    const StGraph& b = *theta.codomain;
    if (theta.vertex_map.size() != a.vertex_count()) {
        check.valid = false;
        check.diagnostics.push_back("vertex map size does not match the domain");
        return check;
    }
    for (VertexId v = 0; v < a.vertex_count(); ++v) {
        if (theta.vertex_map[v] >= b.vertex_count()) {
            check.valid = false;
            check.diagnostics.push_back("vertex " + a.vertex_label(v) + " maps outside the codomain");
            return check;
        }
    }
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        VertexId x = theta.vertex_map[a.edge(e).src];
        VertexId y = theta.vertex_map[a.edge(e).dst];
        if (!b.find_edge(x, y)) {
            check.valid = false;
            check.offending_edges.push_back(e);
            check.diagnostics.push_back("edge " + a.edge_label(e) + " maps to non-edge (" + b.vertex_label(x) + "," +
                                        b.vertex_label(y) + ")");
        }
    }
    if (theta.st) {
        if (!a.has_terminals() || !b.has_terminals()) {
            check.valid = false;
            check.diagnostics.push_back("s-t morphism between graphs without terminals");
        } else {
            if (theta.vertex_map[a.source()] != b.source()) {
                check.valid = false;
                check.diagnostics.push_back("source not mapped to source");
            }
            if (theta.vertex_map[a.sink()] != b.sink()) {
                check.valid = false;
                check.diagnostics.push_back("sink not mapped to sink");
            }
        }
    }
    return check;
}

Morphism make_morphism(GraphPtr domain, GraphPtr codomain, std::vector<VertexId> vertex_map, bool st) {
    Morphism theta{std::move(domain), std::move(codomain), std::move(vertex_map), {}, st};
    auto check = validate_morphism(theta);
    if (!check.valid) fail_input("invalid morphism: " + check.diagnostics.front());
    const StGraph& a = *theta.domain;
    theta.edge_map.resize(a.edge_count());
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        theta.edge_map[e] = *theta.codomain->find_edge(theta.vertex_map[a.edge(e).src], theta.vertex_map[a.edge(e).dst]);
    }
    return theta;
}

Morphism identity_morphism(const GraphPtr& g) {
    std::vector<VertexId> map(g->vertex_count());
    std::iota(map.begin(), map.end(), 0);
    return make_morphism(g, g, std::move(map), g->has_terminals());
}

Morphism collapsing_map_diamond(const GraphPtr& diamond, const GraphPtr& path, unsigned k, unsigned m) {
    if (diamond->vertex_count() != (k - 1) * m + 2 || path->vertex_count() != k + 1) {
        fail_input("graphs do not match D_{k,m} and P_k");
    }
    std::vector<VertexId> map(diamond->vertex_count());
    map[diamond_vertex(k, m, 0, 1)] = 0;
    map[diamond_vertex(k, m, k, 1)] = k;
    for (unsigned j = 1; j <= m; ++j) {
        for (unsigned i = 1; i < k; ++i) map[diamond_vertex(k, m, i, j)] = i;
    }
    return make_morphism(diamond, path, std::move(map), true);
}

Morphism collapsing_map_diamond(unsigned k, unsigned m) {
    return collapsing_map_diamond(make_diamond(k, m), make_path(k), k, m);
}

std::optional<Morphism> graded_collapsing_map(const GraphPtr& g) {
    if (!g->has_terminals()) return std::nullopt;
    const std::size_t n = g->vertex_count();
    std::vector<long> level(n, -1);
    level[g->source()] = 0;
    std::queue<VertexId> queue;
    queue.push(g->source());
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop();
        for (EdgeId e : g->out_edges(v)) {
            VertexId w = g->edge(e).dst;
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                queue.push(w);
            }
        }
    }
    for (const Edge& e : g->edges()) {
        if (level[e.src] < 0 || level[e.dst] != level[e.src] + 1) return std::nullopt;
    }
    const long k = level[g->sink()];
    if (k < 2) return std::nullopt;
    for (VertexId v = 0; v < n; ++v) {
        if (level[v] == 0 && v != g->source()) return std::nullopt;
        if (level[v] == k && v != g->sink()) return std::nullopt;
        if (level[v] > k) return std::nullopt;
    }
    std::vector<VertexId> map(n);
    for (VertexId v = 0; v < n; ++v) map[v] = static_cast<VertexId>(level[v]);
    return make_morphism(g, make_path(static_cast<unsigned>(k)), std::move(map), true);
}

Morphism oslash_morphism(const Morphism& theta_outer, const Morphism& theta_inner, GraphPtr domain_product,
                         GraphPtr codomain_product) {
    if (!theta_inner.st) fail_input("right factor of a morphism product must be an s-t morphism");
    if (theta_outer.edge_map.size() != theta_outer.domain->edge_count()) {
        fail_input("left morphism has no edge map; build it with make_morphism");
    }
    const ProductStructure* dp = domain_product->product();
    const ProductStructure* cp = codomain_product->product();
    if (!dp || !cp || dp->outer != theta_outer.domain || dp->inner != theta_inner.domain ||
        cp->outer != theta_outer.codomain || cp->inner != theta_inner.codomain) {
        fail_input("product graphs were not built from the morphisms' domains and codomains");
    }
    std::vector<VertexId> map(domain_product->vertex_count());
    for (VertexId v = 0; v < map.size(); ++v) {
        auto [e, u] = dp->representative[v];
        map[v] = cp->at(theta_outer.edge_map[e], theta_inner.vertex_map[u]);
    }
    // Well-definedness: every member of a class must land on the same vertex.
    const std::size_t nv = theta_inner.domain->vertex_count();
    for (std::size_t p = 0; p < dp->pair_class.size(); ++p) {
        EdgeId e = static_cast<EdgeId>(p / nv);
        VertexId u = static_cast<VertexId>(p % nv);
        if (cp->at(theta_outer.edge_map[e], theta_inner.vertex_map[u]) != map[dp->pair_class[p]]) {
            fail_internal("morphism product is not well defined");
        }
    }
    return make_morphism(std::move(domain_product), std::move(codomain_product), std::move(map), theta_outer.st);
}

Morphism oslash_morphism(const Morphism& theta_outer, const Morphism& theta_inner) {
    if (!theta_inner.st) fail_input("right factor of a morphism product must be an s-t morphism");
    auto dom = oslash_product(theta_outer.domain, theta_inner.domain);
    auto cod = oslash_product(theta_outer.codomain, theta_inner.codomain);
    return oslash_morphism(theta_outer, theta_inner, std::move(dom), std::move(cod));
}

SubsetView::SubsetView(const StGraph& g, std::vector<VertexId> members) : graph_(&g), flags_(g.vertex_count(), 0) {
    for (VertexId v : members) {
        if (v >= g.vertex_count()) fail_input("subset member out of range");
        flags_[v] = 1;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (flags_[v]) members_.push_back(v);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (flags_[g.edge(e).src] != flags_[g.edge(e).dst]) boundary_.push_back(e);
    }
}

SubsetView SubsetView::from_mask(const StGraph& g, std::uint64_t mask) {
    std::vector<VertexId> members;
    for (VertexId v = 0; v < g.vertex_count() && v < 64; ++v) {
        if (mask >> v & 1u) members.push_back(v);
    }
    return SubsetView(g, std::move(members));
}

SubsetView SubsetView::from_flags(const StGraph& g, const std::vector<char>& flags) {
    std::vector<VertexId> members;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (flags.at(v)) members.push_back(v);
    }
    return SubsetView(g, std::move(members));
}

SubsetView SubsetView::complement() const {
    std::vector<VertexId> rest;
    for (VertexId v = 0; v < graph_->vertex_count(); ++v) {
        if (!flags_[v]) rest.push_back(v);
    }
    return SubsetView(*graph_, std::move(rest));
}

std::uint64_t SubsetView::mask() const {
    if (graph_->vertex_count() > 64) fail_input("subset masks need at most 64 vertices");
    std::uint64_t m = 0;
    for (VertexId v : members_) m |= std::uint64_t{1} << v;
    return m;
}

std::vector<SubsetView> connected_components(const StGraph& g, const SubsetView& s) {
    std::vector<SubsetView> parts;
    std::vector<char> done(g.vertex_count(), 0);
    for (VertexId start : s.members()) {
        if (done[start]) continue;
        std::vector<VertexId> comp{start};
        done[start] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (VertexId w : g.neighbors(comp[i])) {
                if (s.contains(w) && !done[w]) {
                    done[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        parts.emplace_back(g, std::move(comp));
    }
    return parts;
}

namespace {

struct ConnectedWalker {
    const std::vector<std::uint64_t>& nbr;
    std::uint64_t full;
    std::size_t cap;
    std::size_t count = 0;
    const std::function<void(std::uint64_t)>& visit;

    void grow(std::uint64_t set, std::uint64_t ext, std::uint64_t excluded) {
        if (set != full) {
            if (++count > cap) fail_resource("connected subset count exceeds the cap of " + std::to_string(cap));
            visit(set);
        }
        while (ext) {
            std::uint64_t w = ext & (~ext + 1);
            ext ^= w;
            unsigned idx = static_cast<unsigned>(__builtin_ctzll(w));
            std::uint64_t fresh = nbr[idx] & ~excluded;
            grow(set | w, ext | fresh, excluded | fresh);
        }
    }
};

}  // namespace

void enumerate_subsets(const StGraph& g, SubsetMode mode, const Caps& caps,
                       const std::function<void(std::uint64_t)>& visit) {
    const std::size_t n = g.vertex_count();
    if (mode == SubsetMode::Exhaustive) {
        if (n > caps.exhaustive_vertex_cap || n > 62) {
            fail_resource("exhaustive enumeration over " + std::to_string(n) + " vertices exceeds the cap of " +
                          std::to_string(caps.exhaustive_vertex_cap));
        }
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t mask = 1; mask < full; ++mask) visit(mask);
        return;
    }
    if (n > 64) fail_resource("connected enumeration supports at most 64 vertices");
    std::vector<std::uint64_t> nbr(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId w : g.neighbors(v)) nbr[v] |= std::uint64_t{1} << w;
    }
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    ConnectedWalker walker{nbr, full, caps.connected_subset_cap, 0, visit};
    for (VertexId v = 0; v < n; ++v) {
        std::uint64_t below = (std::uint64_t{1} << v) | ((std::uint64_t{1} << v) - 1);
        std::uint64_t self = std::uint64_t{1} << v;
        std::uint64_t ext = nbr[v] & ~below;
        walker.grow(self, ext, below | ext);
    }
}

std::vector<SubsetView> collect_subsets(const StGraph& g, SubsetMode mode, const Caps& caps) {
    std::vector<SubsetView> out;
    enumerate_subsets(g, mode, caps, [&](std::uint64_t mask) { out.push_back(SubsetView::from_mask(g, mask)); });
    return out;
}

}  // namespace oslash
