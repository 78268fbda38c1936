#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oslash/graph.hpp"
#include "oslash/isoperimetry.hpp"
#include "oslash/measure.hpp"
#include "oslash/spectral.hpp"
#include "fixtures.hpp"

#include <cmath>

using namespace oslash;
using namespace fixtures;

TEST_CASE("barycentric extension") {
    auto rng = support::rng(1);
    for (unsigned k : {2u, 3u, 4u}) {
        for (const auto& h : {d22(), laakso(), p2()}) {
            auto ext = oslash_product(h.g, make_path(k));
            const auto* ps = ext->product();
            for (int trial = 0; trial < 30; ++trial) {
                auto f = random_vertex(rng, h.g->vertex_count());
                auto lin = lin_extension(*ext, f);
                for (EdgeId e = 0; e < h.g->edge_count(); ++e) {
                    for (unsigned i = 0; i <= k; ++i) {
                        Rational t = R(i, k);
                        Rational want = (1 - t) * f.values[h.g->edge(e).src] + t * f.values[h.g->edge(e).dst];
                        CHECK(lin.values[ps->at(e, i)] == want);
                    }
                }
                for (VertexId x = 0; x < h.g->vertex_count(); ++x) CHECK(lin.values[ps->injection[x]] == f.values[x]);
            }
        }
    }
    CHECK_THROWS_AS(lin_extension(*make_diamond(2, 2), VertexFunction{{0, 0, 0, 0}}), Error);
}

TEST_CASE("pullbacks commute with induced edge functions and gradients") {
    auto rng = support::rng(2);
    for (auto [k, m] : {std::pair{2u, 2u}, {3u, 2u}, {3u, 4u}}) {
        auto pi = collapsing_map_diamond(k, m);
        auto lengths_dom = constant_lengths(*pi.domain, R(1, k));
        auto lengths_cod = constant_lengths(*pi.codomain, R(1, k));
        for (int trial = 0; trial < 50; ++trial) {
            auto f = random_vertex(rng, pi.codomain->vertex_count());
            auto pulled = pullback(pi, f);
            for (VertexId v = 0; v < pi.domain->vertex_count(); ++v) {
                CHECK(pulled.values[v] == f.values[pi.vertex_map[v]]);
            }
            auto lhs = induced_edge_functions(*pi.domain, pulled);
            auto rhs = induced_edge_functions(*pi.codomain, f);
            CHECK(lhs.minus.values == pullback(pi, rhs.minus).values);
            CHECK(lhs.plus.values == pullback(pi, rhs.plus).values);
            CHECK(gradient(*pi.domain, pulled, lengths_dom).values ==
                  pullback(pi, gradient(*pi.codomain, f, lengths_cod)).values);
            CHECK(lip_of(*pi.domain, pulled, lengths_dom) == lip_of(*pi.codomain, f, lengths_cod));
        }
    }
}

TEST_CASE("induced edge functions of the diamond base function") {
    auto g = make_diamond(2, 2);
    auto phi = base_function_diamond(2, 2);
    CHECK(phi.values == std::vector<Rational>{0, 1, -1, 0});
    auto ind = induced_edge_functions(*g, phi);
    CHECK(ind.minus.values == std::vector<Rational>{0, 1, 0, -1});
    CHECK(ind.plus.values == std::vector<Rational>{1, 0, -1, 0});
    CHECK(lipschitz_constant(*g, phi, constant_lengths(*g, R(1, 2))) == 2);
    CHECK(has_edge_sign(*g, phi));
    CHECK(!has_edge_sign(*make_path(2), VertexFunction{{1, -1, 0}}));
}

TEST_CASE("conditional expectation") {
    auto rng = support::rng(3);
    for (auto [k, m] : {std::pair{2u, 2u}, {3u, 4u}}) {
        auto pi = collapsing_map_diamond(k, m);
        for (int trial = 0; trial < 50; ++trial) {
            EdgeMeasure nu{support::random_probability(rng, pi.domain->edge_count(), false)};
            auto g = random_edge(rng, pi.domain->edge_count());
            auto ce = conditional_expectation(g, pi, nu);
            // Constant on fibers.
            for (EdgeId a = 0; a < pi.domain->edge_count(); ++a) {
                for (EdgeId b = 0; b < pi.domain->edge_count(); ++b) {
                    if (pi.edge_map[a] == pi.edge_map[b]) CHECK(ce.values[a] == ce.values[b]);
                }
            }
            // Same integral against every fiber-measurable test function.
            auto test = pullback(pi, random_edge(rng, pi.codomain->edge_count()));
            CHECK(inner_product(test, ce, nu) == inner_product(test, g, nu));
        }
    }
}

TEST_CASE("conditional expectation commutes with the left factor") {
    auto rng = support::rng(4);
    const std::vector<Weighted> outers{d22(), p2(), laakso()};
    for (const auto& h : outers) {
        auto pi = collapsing_map_diamond(2, 2);
        auto theta = oslash_morphism(identity_morphism(h.g), pi);
        for (int trial = 0; trial < 40; ++trial) {
            EdgeMeasure nu_h{support::random_probability(rng, h.g->edge_count(), false)};
            EdgeMeasure nu_g{support::random_probability(rng, pi.domain->edge_count(), false)};
            auto nu = oslash_edge_measure(*theta.domain, nu_h, nu_g);
            auto hf = random_edge(rng, h.g->edge_count());
            auto gf = random_edge(rng, pi.domain->edge_count());
            auto lhs = conditional_expectation(oslash_function(*theta.domain, hf, gf), theta, nu);
            auto rhs = oslash_function(*theta.domain, hf, conditional_expectation(gf, pi, nu_g));
            CHECK(lhs.values == rhs.values);
        }
    }
}

TEST_CASE("Hadamard columns") {
    for (auto [size, count] : {std::pair{std::size_t{4}, std::size_t{4}}, {3, 2}, {1, 1}, {16, 16}, {6, 4}}) {
        auto cols = hadamard_family(size);
        REQUIRE(cols.size() == count);
        for (std::size_t a = 0; a < cols.size(); ++a) {
            REQUIRE(cols[a].size() == size);
            for (std::size_t i = 0; i < size; ++i) {
                if (i < count) CHECK(abs_r(cols[a][i]) == 1);
                else CHECK(cols[a][i] == 0);
            }
            for (std::size_t b = a + 1; b < cols.size(); ++b) {
                Rational dot = 0;
                for (std::size_t i = 0; i < size; ++i) dot += cols[a][i] * cols[b][i];
                CHECK(dot == 0);
            }
        }
    }
    CHECK_THROWS_AS(hadamard_family(0), Error);
}

TEST_CASE("base functions of diamonds") {
    for (auto [k, m] : {std::pair{2u, 2u}, {3u, 4u}, {2u, 3u}, {4u, 2u}, {3u, 5u}}) {
        auto in = diamond_inputs(k, m);
        CHECK(is_base_function(in.phi, in.pi, in.nu));
        auto mu = induced_vertex_measure(*in.base, in.nu);
        Rational expected = R(2 * (k - 1) * 2 * (m / 2), 2 * k * m);
        CHECK(l1_norm(in.phi, mu) == expected);
        CHECK(l1_norm(in.phi, mu) >= R(1, 3));
        CHECK(linf_norm(in.phi, mu) == 1);
        CHECK(lipschitz_constant(*in.base, in.phi, in.lengths) == static_cast<long>(k));
        auto found = find_base_function(in.base);
        CHECK(is_base_function(found.phi, found.pi, in.nu));
        CHECK(linf_norm(found.phi, mu) == 1);
    }
    CHECK(l1_norm(base_function_diamond(2, 2), induced_vertex_measure(*make_diamond(2, 2),
                                                                      uniform_edge_measure(*make_diamond(2, 2)))) ==
          R(1, 2));
    auto in = diamond_inputs(2, 2);
    CHECK(!is_base_function(VertexFunction{{0, 1, 0, 0}}, in.pi, in.nu));
    CHECK(!is_base_function(VertexFunction{{0, 1, 1, 0}}, in.pi, in.nu));
    CHECK_THROWS_AS(find_base_function(make_path(2)), Error);
}

TEST_CASE("oslash functions: induced edges, norms and Lipschitz constants") {
    auto rng = support::rng(5);
    const std::vector<std::pair<Weighted, Weighted>> pairs{{d22(), d22()}, {d22(), p2()}, {laakso(), d22()}};
    for (const auto& [h, g] : pairs) {
        auto prod = oslash_product(h.g, g.g);
        const auto* ps = prod->product();
        auto len = oslash_metric(*prod, geodesic_metric(*h.g, h.len), geodesic_metric(*g.g, g.len)).lengths();
        for (int trial = 0; trial < 100; ++trial) {
            EdgeMeasure nu_h{support::random_probability(rng, h.g->edge_count(), false)};
            EdgeMeasure nu_g{support::random_probability(rng, g.g->edge_count(), false)};
            auto mu_g = induced_vertex_measure(*g.g, nu_g);
            auto mu = oslash_vertex_measure(*prod, nu_h, mu_g);
            auto hf = random_edge(rng, h.g->edge_count());
            auto gf = random_interior(rng, *g.g);
            auto hg = oslash_function(*prod, hf, gf);
            for (EdgeId e = 0; e < h.g->edge_count(); ++e) {
                for (VertexId u = 0; u < g.g->vertex_count(); ++u) {
                    CHECK(hg.values[ps->at(e, u)] == hf.values[e] * gf.values[u]);
                }
            }
            auto ind = induced_edge_functions(*prod, hg);
            auto ind_g = induced_edge_functions(*g.g, gf);
            CHECK(ind.minus.values == oslash_function(*prod, hf, ind_g.minus).values);
            CHECK(ind.plus.values == oslash_function(*prod, hf, ind_g.plus).values);

            CHECK(sup_abs(hg.values) == sup_abs(hf.values) * sup_abs(gf.values));
            Rational slope = 0;
            for (EdgeId e = 0; e < h.g->edge_count(); ++e) {
                Rational s = abs_r(hf.values[e]) / h.len[e];
                if (s > slope) slope = s;
            }
            CHECK(lip_of(*prod, hg, len) == slope * lip_of(*g.g, gf, g.len));
            CHECK(lipschitz_constant(*prod, hg, len) == lip_of(*prod, hg, len));
            CHECK(weighted_l1(hg.values, mu.mass) == weighted_l1(hf.values, nu_h.mass) * weighted_l1(gf.values, mu_g.mass));
            CHECK(l1_norm(hg, mu) == weighted_l1(hg.values, mu.mass));
        }
    }
}

TEST_CASE("integral of products of extensions is a four-term combination") {
    auto rng = support::rng(6);
    for (unsigned k : {2u, 3u, 5u}) {
        auto path = make_path(k);
        for (const auto& h : {d22(), laakso()}) {
            auto ext = oslash_product(h.g, path);
            const auto* ps = ext->product();
            for (int trial = 0; trial < 30; ++trial) {
                EdgeMeasure nu_p{support::random_probability(rng, k, true)};
                auto f = random_vertex(rng, h.g->vertex_count());
                auto fp = random_vertex(rng, h.g->vertex_count());
                auto lf = induced_edge_functions(*ext, lin_extension(*ext, f));
                auto lfp = induced_edge_functions(*ext, lin_extension(*ext, fp));
                for (bool eps : {false, true}) {
                    for (bool epsp : {false, true}) {
                        // Weights of f(e⁻) and f(e⁺) on the i-th path edge.
                        auto wt = [&](bool plus_side, unsigned i, bool tail_end) {
                            Rational t = R(plus_side ? i : i - 1, k);
                            return tail_end ? Rational(1 - t) : t;
                        };
                        Rational c[2][2];
                        for (int a = 0; a < 2; ++a) {
                            for (int b = 0; b < 2; ++b) {
                                c[a][b] = 0;
                                for (unsigned i = 1; i <= k; ++i) {
                                    c[a][b] += wt(eps, i, a == 0) * wt(epsp, i, b == 0) * nu_p.mass[i - 1];
                                }
                            }
                        }
                        for (EdgeId e1 = 0; e1 < h.g->edge_count(); ++e1) {
                            const auto& lhs_a = eps ? lf.plus : lf.minus;
                            const auto& lhs_b = epsp ? lfp.plus : lfp.minus;
                            Rational integral = 0;
                            for (EdgeId e2 = 0; e2 < k; ++e2) {
                                EdgeId pe = ps->edge(e1, e2);
                                integral += lhs_a.values[pe] * lhs_b.values[pe] * nu_p.mass[e2];
                            }
                            const Edge& ed = h.g->edge(e1);
                            Rational fm = f.values[ed.src], fpl = f.values[ed.dst];
                            Rational gm = fp.values[ed.src], gpl = fp.values[ed.dst];
                            CHECK(integral == c[0][0] * fm * gm + c[0][1] * fm * gpl + c[1][0] * fpl * gm +
                                                  c[1][1] * fpl * gpl);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("extensions keep integrals and norms") {
    auto rng = support::rng(7);
    for (unsigned k : {2u, 3u, 4u}) {
        auto path = make_path(k);
        for (const auto& h : {d22(), laakso()}) {
            auto ext = oslash_product(h.g, path);
            auto len = oslash_metric(*ext, geodesic_metric(*h.g, h.len),
                                     geodesic_metric(*path, constant_lengths(*path, R(1, k))))
                           .lengths();
            for (int trial = 0; trial < 40; ++trial) {
                EdgeMeasure nu_h{support::random_probability(rng, h.g->edge_count(), false)};
                // Reflection-invariant path measure.
                std::vector<Rational> half = support::random_probability(rng, (k + 1) / 2, false);
                EdgeMeasure nu_p{std::vector<Rational>(k)};
                for (unsigned i = 0; i < k; ++i) nu_p.mass[i] = half[std::min(i, k - 1 - i)];
                Rational total = nu_p.total();
                for (auto& x : nu_p.mass) x /= total;
                REQUIRE(is_reflection_invariant(*path, nu_p));
                auto mu_p = induced_vertex_measure(*path, nu_p);
                auto mu_ext = oslash_vertex_measure(*ext, nu_h, mu_p);
                auto mu_h = induced_vertex_measure(*h.g, nu_h);

                auto f = random_vertex(rng, h.g->vertex_count());
                auto lin = lin_extension(*ext, f);
                CHECK(inner_product(lin, VertexFunction{std::vector<Rational>(lin.values.size(), Rational(1))},
                                    mu_ext) ==
                      inner_product(f, VertexFunction{std::vector<Rational>(f.values.size(), Rational(1))}, mu_h));
                CHECK(sup_abs(lin.values) == sup_abs(f.values));
                CHECK(lip_of(*ext, lin, len) == lip_of(*h.g, f, h.len));

                auto g = random_interior(rng, *h.g);
                if (has_edge_sign(*h.g, g)) {
                    CHECK(l1_norm(lin_extension(*ext, g), mu_ext) == l1_norm(g, mu_h));
                }
                VertexFunction pos{support::random_values(rng, h.g->vertex_count(), 0, 3)};
                CHECK(l1_norm(lin_extension(*ext, pos), mu_ext) == l1_norm(pos, mu_h));
            }
        }
    }
}

TEST_CASE("assembled families: sup, edge sign and L1 identities") {
    auto rng = support::rng(8);
    for (auto [k, m] : {std::pair{2u, 2u}, {3u, 4u}}) {
        auto in = diamond_inputs(k, m);
        Weighted g{in.base, in.nu, in.lengths};
        for (const auto& h : {d22(), laakso()}) {
            for (int trial = 0; trial < 25; ++trial) {
                Weighted hw = h;
                hw.nu.mass = support::random_probability(rng, h.g->edge_count(), false);
                auto mu_h = induced_vertex_measure(*h.g, hw.nu);
                auto mu_g = induced_vertex_measure(*g.g, g.nu);
                std::vector<VertexFunction> f1;
                std::vector<EdgeFunction> f2;
                std::vector<VertexFunction> f3;
                for (int i = 0; i < 3; ++i) {
                    // Nonnegative or nonpositive functions have the edge-sign property.
                    VertexFunction f{support::random_values(rng, h.g->vertex_count(), 0, 3)};
                    if (i == 1) {
                        for (auto& x : f.values) x = -x;
                    }
                    f1.push_back(f);
                    f2.push_back(random_edge(rng, h.g->edge_count()));
                }
                f3.push_back(in.phi);
                VertexFunction scaled = in.phi;
                for (auto& x : scaled.values) x *= R(3, 2);
                f3.push_back(scaled);

                auto a = assemble(hw, g, in.pi, f1, f2, f3);
                auto fam = a.all();
                REQUIRE(fam.size() == f1.size() + f2.size() * f3.size());

                Rational sup_f = 0, sup1 = 0, sup2 = 0, sup3 = 0;
                for (const auto& f : fam) sup_f = std::max<Rational>(sup_f, linf_norm(f, a.mu));
                for (const auto& f : f1) sup1 = std::max<Rational>(sup1, linf_norm(f, mu_h));
                for (const auto& f : f2) sup2 = std::max<Rational>(sup2, linf_norm(f, hw.nu));
                for (const auto& f : f3) sup3 = std::max<Rational>(sup3, linf_norm(f, mu_g));
                CHECK(sup_f == std::max<Rational>(sup1, sup2 * sup3));

                for (const auto& f : fam) CHECK(has_edge_sign(*a.product, f));

                auto inf_of = [](const auto& fs, const auto& measure) {
                    Rational best = -1;
                    for (const auto& f : fs) {
                        Rational v = l1_norm(f, measure);
                        if (best < 0 || v < best) best = v;
                    }
                    return best;
                };
                CHECK(inf_of(fam, a.mu) == std::min<Rational>(inf_of(f1, mu_h), inf_of(f2, hw.nu) * inf_of(f3, mu_g)));
                for (std::size_t i = 0; i < f1.size(); ++i) CHECK(l1_norm(a.lifted[i], a.mu) == l1_norm(f1[i], mu_h));
            }
        }
    }
}

TEST_CASE("assembled families stay strongly orthogonal") {
    auto rng = support::rng(9);
    auto in = diamond_inputs(2, 2);
    Weighted g{in.base, in.nu, in.lengths};
    auto tower = build_spectral_tower(in, 2);
    for (const auto& level : tower) {
        Weighted h{level.graph, level.nu, level.lengths};
        std::vector<VertexFunction> f1;
        for (const auto& m : level.members) f1.push_back(m.f);
        std::vector<EdgeFunction> f2;
        for (const auto& col : hadamard_family(h.g->edge_count())) f2.push_back(EdgeFunction{col});
        auto a = assemble(h, g, in.pi, f1, f2, {in.phi});
        auto fam = a.all();
        CHECK(strongly_orthogonal_oracle(*a.product, fam, a.nu));
        CHECK(is_strongly_orthogonal(*a.product, fam, a.nu).orthogonal);
        CHECK(is_orthogonal(fam, a.mu).orthogonal);
    }
    // Library and oracle agree on arbitrary small families, orthogonal or not.
    auto d = d22();
    int agree = 0, positives = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<VertexFunction> fs;
        std::uniform_int_distribution<int> val(-1, 1);
        for (int i = 0; i < 3; ++i) {
            VertexFunction f{std::vector<Rational>(4)};
            for (auto& x : f.values) x = val(rng);
            fs.push_back(f);
        }
        bool want = strongly_orthogonal_oracle(*d.g, fs, d.nu);
        auto got = is_strongly_orthogonal(*d.g, fs, d.nu);
        agree += want == got.orthogonal;
        positives += want;
        if (!got.orthogonal) CHECK(got.witness.has_value());
    }
    CHECK(agree == 300);
    CHECK(positives > 0);
}

TEST_CASE("Lipschitz growth of assembled families") {
    auto rng = support::rng(10);
    auto in = diamond_inputs(2, 2);
    Weighted g{in.base, in.nu, in.lengths};
    for (const auto& h : {d22(), laakso(), p2()}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<VertexFunction> f1, f3;
            std::vector<EdgeFunction> f2;
            for (int i = 0; i < 4; ++i) f1.push_back(random_vertex(rng, h.g->vertex_count()));
            for (int i = 0; i < 3; ++i) f2.push_back(random_edge(rng, h.g->edge_count()));
            for (int i = 0; i < 3; ++i) f3.push_back(random_interior(rng, *g.g));
            auto a = assemble(h, g, in.pi, f1, f2, f3);
            Rational scale = 0;
            for (const auto& f : f2) {
                for (EdgeId e = 0; e < h.g->edge_count(); ++e) {
                    Rational s = abs_r(f.values[e]) / h.len[e];
                    if (s > scale) scale = s;
                }
            }
            auto count = [](const std::vector<Rational>& lips, const Rational& s) {
                return static_cast<long>(std::count_if(lips.begin(), lips.end(), [&](const Rational& l) { return l <= s; }));
            };
            std::vector<Rational> lf, l1, l3;
            for (const auto& f : a.all()) lf.push_back(lip_of(*a.product, f, a.len));
            for (const auto& f : f1) l1.push_back(lip_of(*h.g, f, h.len));
            for (const auto& f : f3) l3.push_back(lip_of(*g.g, f, g.len));
            std::vector<Rational> probes{0, R(1, 2), 1, 2, 5, 10, 40};
            probes.insert(probes.end(), lf.begin(), lf.end());
            for (const auto& s : probes) {
                long lhs = count(lf, s);
                long rhs = count(l1, s) + static_cast<long>(f2.size()) * (scale == 0 ? 0 : count(l3, s / scale));
                CHECK(lhs >= rhs);
            }
        }
    }
}

TEST_CASE("diamond spectral tower") {
    auto in = diamond_inputs(2, 2);
    auto tower = build_spectral_tower(in, 4);
    REQUIRE(tower.size() == 4);
    const std::vector<std::size_t> sizes{1, 3, 11, 43};
    for (std::size_t j = 0; j < tower.size(); ++j) {
        const auto& fam = tower[j];
        CHECK(fam.members.size() == sizes[j]);
        auto counts = support::power_counts(4, 4, static_cast<unsigned>(j + 1));
        CHECK(fam.graph->vertex_count() == counts.first);
        CHECK(fam.strong.orthogonal);
        CHECK(fam.edge_sign);
        std::vector<VertexFunction> fs;
        for (const auto& m : fam.members) fs.push_back(m.f);
        if (j < 3) CHECK(strongly_orthogonal_oracle(*fam.graph, fs, fam.nu));
        for (const auto& m : fam.members) {
            CHECK(m.linf <= 1);
            CHECK(m.l1 >= R(1, 4));
            CHECK(m.lipschitz == lip_of(*fam.graph, m.f, fam.lengths));
            CHECK(has_edge_sign(*fam.graph, m.f));
        }
        // γ(k^m) >= |E|^m / (2|E|) for m <= level.
        for (unsigned p = 1; p <= j + 1; ++p) {
            long s = 1L << p;
            std::size_t want = static_cast<std::size_t>(std::pow(4.0, p) / 8);
            CHECK(growth(fam, Rational(s)) >= want);
            std::size_t manual = 0;
            for (const auto& m : fam.members) manual += m.lipschitz <= s;
            CHECK(growth(fam, Rational(s)) == manual);
        }
    }
    CHECK(growth(tower[3], Rational(16)) == 43);
    CHECK(growth(tower[3], 16.0) == 43);
    CHECK(growth(tower[3], Rational(2), true) == 0);
    CHECK(growth(tower[3], Rational(2)) == 1);

    auto report = profile_report(tower[3], 2, 16, 2);
    CHECK(report.family_size == 43);
    CHECK(report.c_linf == 1);
    CHECK(report.inf_l1 == R(1, 2));
    CHECK(report.c_l1 == 2);
    CHECK(report.orthogonal);
    CHECK(report.c_gamma <= 32);
    CHECK(report.c_gamma_continuum <= 32);
}

TEST_CASE("spectral tower of a deeper diamond") {
    auto in = diamond_inputs(3, 4);
    auto tower = build_spectral_tower(in, 2);
    REQUIRE(tower.size() == 2);
    CHECK(tower[0].members.size() == 1);
    CHECK(tower[1].members.size() == 1 + 6);
    for (const auto& fam : tower) {
        CHECK(fam.strong.orthogonal);
        CHECK(fam.edge_sign);
        std::vector<VertexFunction> fs;
        for (const auto& m : fam.members) fs.push_back(m.f);
        CHECK(strongly_orthogonal_oracle(*fam.graph, fs, fam.nu));
        for (const auto& m : fam.members) {
            CHECK(m.linf <= 1);
            CHECK(m.l1 >= R(1, 3));
        }
    }
    auto report = profile_report(tower[1], 1 + std::log(4.0) / std::log(3.0), 9, 3);
    // Columns on 12 edges vanish on 4 of them: inf ‖h⊘φ‖₁ = 2/3 · 2/3.
    CHECK(report.inf_l1 == R(4, 9));
    CHECK(report.c_l1 == R(9, 4));
    CHECK(report.c_l1 <= 2 / l1_norm(in.phi, induced_vertex_measure(*in.base, in.nu)));
    CHECK(report.c_gamma_continuum <= 2 * 144);
}

TEST_CASE("spectral inputs are validated") {
    auto in = diamond_inputs(2, 2);
    auto bad = in;
    bad.nu.mass = {R(1, 2), R(1, 4), R(1, 8), R(1, 8)};
    CHECK_THROWS_AS(build_spectral_family(bad, 2), Error);
    bad = in;
    bad.lengths = {R(1, 2), R(1, 2), R(1, 3), R(2, 3)};
    CHECK_THROWS_AS(build_spectral_family(bad, 2), Error);
    bad = in;
    bad.phi = VertexFunction{{0, 1, 0, 0}};
    CHECK_THROWS_AS(build_spectral_family(bad, 2), Error);
}
