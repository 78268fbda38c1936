#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oslash/graph.hpp"
#include "support.hpp"

#include <map>
#include <set>

using namespace oslash;

namespace {

std::set<std::string> labels_of(const StGraph& g, const std::vector<VertexId>& vs) {
    std::set<std::string> out;
    for (VertexId v : vs) out.insert(g.vertex_label(v));
    return out;
}

// Every vertex is reachable from s and reaches t along directed edges.
bool all_on_st_paths(const StGraph& g) {
    auto sweep = [&](VertexId start, bool forward) {
        std::vector<char> seen(g.vertex_count(), 0);
        std::vector<VertexId> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId e : forward ? g.out_edges(v) : g.in_edges(v)) {
                VertexId w = forward ? g.edge(e).dst : g.edge(e).src;
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    };
    auto a = sweep(g.source(), true), b = sweep(g.sink(), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!a[v] || !b[v]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("paths") {
    auto p2 = make_path(2);
    CHECK(p2->vertex_count() == 3);
    CHECK(p2->edge_count() == 2);
    CHECK(p2->vertex_label(p2->source()) == "0");
    CHECK(p2->vertex_label(p2->sink()) == "1");
    auto p3 = make_path(3);
    CHECK(p3->vertex_count() == 4);
    CHECK(p3->edge_count() == 3);
    auto p5 = make_path(5);
    CHECK(p5->off_path_vertices().empty());
    CHECK(all_on_st_paths(*p5));
    CHECK_THROWS_AS(make_path(1), Error);
}

TEST_CASE("diamond counts follow (k-1)m+2 and km") {
    for (auto [k, m] : {std::pair{2u, 2u}, {3u, 4u}, {2u, 3u}, {3u, 3u}, {4u, 2u}}) {
        auto d = make_diamond(k, m);
        CHECK(d->vertex_count() == (k - 1) * m + 2);
        CHECK(d->edge_count() == k * m);
        CHECK(all_on_st_paths(*d));
    }
    CHECK_THROWS_AS(make_diamond(1, 2), Error);
    CHECK_THROWS_AS(make_diamond(2, 1), Error);
}

TEST_CASE("laakso graph") {
    auto la = make_laakso();
    CHECK(la->vertex_count() == 6);
    CHECK(la->edge_count() == 6);
    VertexId quarter = 1;
    CHECK(la->vertex_label(quarter) == "u1/4");
    CHECK(la->out_edges(quarter).size() == 2);
    // Both directed s-t paths have four edges.
    std::function<void(VertexId, unsigned, std::vector<unsigned>&)> walk = [&](VertexId v, unsigned len,
                                                                               std::vector<unsigned>& out) {
        if (v == la->sink()) {
            out.push_back(len);
            return;
        }
        for (EdgeId e : la->out_edges(v)) walk(la->edge(e).dst, len + 1, out);
    };
    std::vector<unsigned> lengths;
    walk(la->source(), 0, lengths);
    CHECK(lengths == std::vector<unsigned>{4, 4});
}

TEST_CASE("products and powers match the count recurrence") {
    auto d = make_diamond(2, 2);
    auto dd = oslash_product(d, d);
    CHECK(dd->vertex_count() == 12);
    CHECK(dd->edge_count() == 16);

    auto p2 = make_path(2);
    auto pp = oslash_product(p2, p2);
    CHECK(pp->vertex_count() == 5);
    CHECK(pp->edge_count() == 4);
    CHECK(is_path_graph(*pp));

    CHECK(oslash_power(d, 1) == d);
    CHECK(oslash_power(d, 3)->vertex_count() == 44);
    CHECK(oslash_power(d, 3)->edge_count() == 64);
    auto d4 = oslash_power(d, 4);
    CHECK(d4->vertex_count() == 172);
    CHECK(d4->edge_count() == 256);

    for (auto g : {make_diamond(2, 3), make_diamond(3, 2), make_laakso(), make_path(3)}) {
        for (unsigned n = 1; n <= 3; ++n) {
            auto expect = support::power_counts(g->vertex_count(), g->edge_count(), n);
            auto p = oslash_power(g, n);
            CHECK(p->vertex_count() == expect.first);
            CHECK(p->edge_count() == expect.second);
            CHECK(oslash_power_counts(g->vertex_count(), g->edge_count(), n) == expect);
            CHECK(p->off_path_vertices().empty());
        }
    }
}

TEST_CASE("edge bijection and canonical injection") {
    auto h = make_laakso();
    auto g = make_diamond(2, 3);
    auto p = oslash_product(h, g);
    const ProductStructure* ps = p->product();
    REQUIRE(ps);
    CHECK(p->edge_count() == h->edge_count() * g->edge_count());
    std::set<EdgeId> seen;
    for (EdgeId e = 0; e < h->edge_count(); ++e) {
        for (EdgeId f = 0; f < g->edge_count(); ++f) {
            EdgeId ef = ps->edge(e, f);
            seen.insert(ef);
            // Endpoints of e⊘f are the classes of (e, f⁻) and (e, f⁺).
            CHECK(p->edge(ef).src == ps->at(e, g->edge(f).src));
            CHECK(p->edge(ef).dst == ps->at(e, g->edge(f).dst));
        }
    }
    CHECK(seen.size() == p->edge_count());
    // e⁻ ↦ e⊘s and e⁺ ↦ e⊘t, consistently across shared endpoints.
    std::set<VertexId> image;
    for (EdgeId e = 0; e < h->edge_count(); ++e) {
        CHECK(ps->injection[h->edge(e).src] == ps->at(e, g->source()));
        CHECK(ps->injection[h->edge(e).dst] == ps->at(e, g->sink()));
    }
    for (VertexId v = 0; v < h->vertex_count(); ++v) image.insert(ps->injection[v]);
    CHECK(image.size() == h->vertex_count());
    CHECK(p->source() == ps->injection[h->source()]);
    CHECK(p->sink() == ps->injection[h->sink()]);
}

TEST_CASE("power levels are products with the base") {
    auto g = make_diamond(2, 2);
    auto tower = oslash_power_tower(g, 3);
    REQUIRE(tower.size() == 3);
    for (unsigned j = 1; j < 3; ++j) {
        const ProductStructure* ps = tower[j]->product();
        REQUIRE(ps);
        CHECK(ps->outer == tower[j - 1]);
        CHECK(ps->inner == g);
        auto fresh = oslash_product(tower[j - 1], g);
        CHECK(fresh->vertex_count() == tower[j]->vertex_count());
        for (VertexId v = 0; v < fresh->vertex_count(); ++v) CHECK(fresh->vertex_label(v) == tower[j]->vertex_label(v));
        for (EdgeId e = 0; e < fresh->edge_count(); ++e) {
            CHECK(fresh->edge(e).src == tower[j]->edge(e).src);
            CHECK(fresh->edge(e).dst == tower[j]->edge(e).dst);
        }
    }
    // Addresses index every vertex.
    for (VertexId v = 0; v < tower[2]->vertex_count(); ++v) {
        CHECK(tower[2]->find_by_address(tower[2]->vertex_address(v)) == v);
    }
}

TEST_CASE("power edge cap") {
    Caps caps;
    caps.power_edge_cap = 100;
    CHECK_NOTHROW(oslash_power(make_diamond(2, 2), 3, caps));
    try {
        oslash_power(make_diamond(2, 2), 4, caps);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}

TEST_CASE("collapsing maps") {
    auto pi = collapsing_map_diamond(2, 2);
    CHECK(validate_morphism(pi).valid);
    const VertexId a1 = diamond_vertex(2, 2, 1, 1), a2 = diamond_vertex(2, 2, 1, 2);
    CHECK(pi.codomain->vertex_label(pi.vertex_map[a1]) == "1/2");
    CHECK(pi.codomain->vertex_label(pi.vertex_map[a2]) == "1/2");

    auto pi34 = collapsing_map_diamond(3, 4);
    CHECK(validate_morphism(pi34).valid);
    std::map<VertexId, int> fiber;
    for (VertexId v : pi34.vertex_map) ++fiber[v];
    CHECK(fiber[0] == 1);
    CHECK(fiber[3] == 1);
    CHECK(fiber[1] == 4);
    CHECK(fiber[2] == 4);

    auto graded = graded_collapsing_map(make_diamond(3, 2));
    REQUIRE(graded);
    CHECK(validate_morphism(*graded).valid);
    CHECK_FALSE(graded_collapsing_map(make_laakso()) == std::nullopt);
}

TEST_CASE("morphism validation") {
    auto d = make_diamond(2, 2);
    CHECK(validate_morphism(identity_morphism(d)).valid);
    auto p2 = make_path(2);
    // s and t both sent to the same vertex of P_2.
    Morphism bad{d, p2, {0, 1, 1, 0}, {}, false};
    auto check = validate_morphism(bad);
    CHECK_FALSE(check.valid);
    CHECK_FALSE(check.offending_edges.empty());
    CHECK_FALSE(check.diagnostics.empty());
    CHECK_THROWS_AS(make_morphism(d, p2, {0, 1, 1, 0}, false), Error);
}

TEST_CASE("morphism products") {
    auto d = make_diamond(2, 2);
    auto pi = collapsing_map_diamond(d, make_path(2), 2, 2);
    auto id = identity_morphism(d);
    auto lifted = oslash_morphism(id, pi);
    CHECK(validate_morphism(lifted).valid);
    CHECK(lifted.domain->vertex_count() == 12);
    CHECK(lifted.codomain->vertex_count() == 8);  // D_{2,2}⊘P_2
    std::map<VertexId, int> fiber;
    for (VertexId v : lifted.vertex_map) ++fiber[v];
    const ProductStructure* cs = lifted.codomain->product();
    REQUIRE(cs);
    for (EdgeId e = 0; e < d->edge_count(); ++e) CHECK(fiber[cs->at(e, 1)] == 2);

    auto idid = oslash_morphism(id, id);
    CHECK(idid.domain->vertex_count() == idid.codomain->vertex_count());
    for (VertexId v = 0; v < idid.vertex_map.size(); ++v) CHECK(idid.vertex_map[v] == v);
}

TEST_CASE("connected components") {
    auto d = make_diamond(2, 2);
    const VertexId s = d->source(), t = d->sink(), a1 = diamond_vertex(2, 2, 1, 1);
    CHECK(connected_components(*d, SubsetView(*d, {s, t})).size() == 2);
    CHECK(connected_components(*d, SubsetView(*d, {s, a1})).size() == 1);
    CHECK(connected_components(*d, SubsetView(*d, {0, 1, 2, 3})).size() == 1);
}

TEST_CASE("subset enumeration") {
    auto d = make_diamond(2, 2);
    CHECK(collect_subsets(*d, SubsetMode::Exhaustive).size() == 14);
    auto p2 = make_path(2);
    auto conn = collect_subsets(*p2, SubsetMode::Connected);
    std::set<std::set<std::string>> got;
    for (const auto& s : conn) got.insert(labels_of(*p2, s.members()));
    CHECK(conn.size() == 5);
    CHECK(got == std::set<std::set<std::string>>{{"0"}, {"1/2"}, {"1"}, {"0", "1/2"}, {"1/2", "1"}});
    CHECK(collect_subsets(*oslash_power(d, 2), SubsetMode::Exhaustive).size() == 4094);
}

TEST_CASE("boundary symmetry and connected stream against filtering") {
    for (auto g : {make_diamond(2, 2), oslash_power(make_diamond(2, 2), 2), make_laakso(), make_diamond(3, 3),
                   make_diamond(2, 3)}) {
        if (g->vertex_count() > 12) continue;
        std::set<std::uint64_t> exhaustive_connected;
        enumerate_subsets(*g, SubsetMode::Exhaustive, {}, [&](std::uint64_t mask) {
            auto s = SubsetView::from_mask(*g, mask);
            auto c = s.complement();
            CHECK(s.boundary() == c.boundary());
            if (connected_components(*g, s).size() == 1) exhaustive_connected.insert(mask);
        });
        std::vector<std::uint64_t> stream;
        enumerate_subsets(*g, SubsetMode::Connected, {}, [&](std::uint64_t mask) { stream.push_back(mask); });
        std::set<std::uint64_t> unique(stream.begin(), stream.end());
        CHECK(unique.size() == stream.size());
        CHECK(unique == exhaustive_connected);
    }
}

TEST_CASE("exhaustive cap") {
    auto big = oslash_power(make_diamond(2, 3), 2);  // 23 vertices
    Caps caps;
    caps.exhaustive_vertex_cap = 20;
    try {
        enumerate_subsets(*big, SubsetMode::Exhaustive, caps, [](std::uint64_t) {});
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}

TEST_CASE("s-t validity is enforced with a warn override") {
    // Vertex 3 hangs off vertex 1 and reaches no sink.
    std::vector<Edge> edges{{0, 1}, {1, 2}, {1, 3}};
    CHECK_THROWS_AS(StGraph({"s", "a", "t", "x"}, edges, 0u, 2u), Error);
    StGraph relaxed({"s", "a", "t", "x"}, edges, 0u, 2u, {}, StCheck::Warn);
    CHECK(relaxed.off_path_vertices() == std::vector<VertexId>{3});
    CHECK_FALSE(relaxed.warnings().empty());
}

TEST_CASE("malformed graphs are rejected") {
    CHECK_THROWS_AS(StGraph({"a", "b"}, {{0, 0}}, std::nullopt, std::nullopt), Error);
    CHECK_THROWS_AS(StGraph({"a", "b"}, {{0, 1}, {0, 1}}, std::nullopt, std::nullopt), Error);
    CHECK_THROWS_AS(StGraph({"a", "b", "c"}, {{0, 1}}, std::nullopt, std::nullopt), Error);
    CHECK_THROWS_AS(StGraph({"a", "b"}, {{0, 1}}, 0u, 0u), Error);
}
