#include "oslash/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>

namespace oslash {

namespace {

void check_probability(const VertexMeasure& m, std::size_t n, const char* name) {
    if (m.mass.size() != n) fail_input(std::string(name) + " has " + std::to_string(m.mass.size()) + " entries, expected " + std::to_string(n));
    for (const auto& x : m.mass) {
        if (x < 0) fail_input(std::string(name) + " has a negative mass");
    }
}

}  // namespace

TransportInstance make_transport_instance(std::vector<std::string> points, std::vector<Rational> dist, VertexMeasure mu,
                                          VertexMeasure nu) {
    const std::size_t n = points.size();
    if (n == 0) fail_input("transport instance has no points");
    if (dist.size() != n * n) fail_input("distance matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    check_probability(mu, n, "mu");
    check_probability(nu, n, "nu");
    if (mu.total() != 1 || nu.total() != 1) {
        fail_input("masses must both total 1 (mu: " + to_string(mu.total()) + ", nu: " + to_string(nu.total()) + ")");
    }
    TransportInstance inst{std::move(points), std::move(dist), std::move(mu), std::move(nu), {}};
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.d(i, i) != 0) inst.warnings.push_back("nonzero self-distance at " + inst.points[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (inst.d(i, j) < 0) fail_input("negative distance between " + inst.points[i] + " and " + inst.points[j]);
            if (i != j && inst.d(i, j) == 0) inst.warnings.push_back("zero distance between distinct points " + inst.points[i] + ", " + inst.points[j]);
            if (inst.d(i, j) != inst.d(j, i)) inst.warnings.push_back("asymmetric distance between " + inst.points[i] + " and " + inst.points[j]);
        }
    }
    // Triangle inequality: all triples for small spaces, a fixed stride otherwise.
    const std::size_t stride = n <= 64 ? 1 : n / 32;
    for (std::size_t i = 0; i < n; i += stride) {
        for (std::size_t j = 0; j < n; j += stride) {
            for (std::size_t k = 0; k < n; k += stride) {
                if (inst.d(i, k) > inst.d(i, j) + inst.d(j, k)) {
                    inst.warnings.push_back("triangle inequality fails at " + inst.points[i] + ", " + inst.points[j] + ", " + inst.points[k]);
                    return inst;
                }
            }
        }
    }
    return inst;
}

TransportInstance make_transport_instance(const StGraph& g, const GeodesicMetric& d, VertexMeasure mu, VertexMeasure nu) {
    const std::size_t n = g.vertex_count();
    if (d.vertex_count() != n) fail_input("metric does not match the graph");
    std::vector<std::string> points;
    std::vector<Rational> dist(n * n);
    for (VertexId v = 0; v < n; ++v) {
        points.push_back(g.vertex_label(v));
        for (VertexId w = 0; w < n; ++w) dist[v * n + w] = d.dist(v, w);
    }
    return make_transport_instance(std::move(points), std::move(dist), std::move(mu), std::move(nu));
}

Coupling w1_coupling(const TransportInstance& inst) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (inst.mu.mass[i] > 0) rows.push_back(i);
        if (inst.nu.mass[i] > 0) cols.push_back(i);
    }
    const std::size_t m = rows.size(), n = cols.size();
    std::vector<Rational> x(m * n, Rational(0));
    std::vector<char> basic(m * n, 0);
    auto at = [n](std::size_t r, std::size_t c) { return r * n + c; };
    auto cost = [&](std::size_t r, std::size_t c) -> const Rational& { return inst.d(rows[r], cols[c]); };

    // North-west corner start; ties advance the row and leave a zero basic cell.
    {
        std::size_t r = 0, c = 0;
        Rational supply = inst.mu.mass[rows[0]], demand = inst.nu.mass[cols[0]];
        while (true) {
            Rational q = std::min(supply, demand);
            basic[at(r, c)] = 1;
            x[at(r, c)] = q;
            supply -= q;
            demand -= q;
            if (r + 1 == m && c + 1 == n) break;
            if ((supply == 0 && r + 1 < m) || c + 1 == n) {
                ++r;
                supply = inst.mu.mass[rows[r]];
            } else {
                ++c;
                demand = inst.nu.mass[cols[c]];
            }
        }
    }

    Coupling out;
    std::vector<Rational> u(m), v(n);
    while (true) {
        // Potentials from the basis tree: u_r + v_c = cost on basic cells.
        std::vector<char> has_u(m, 0), has_v(n, 0);
        u[0] = 0;
        has_u[0] = 1;
        std::queue<std::pair<bool, std::size_t>> queue;  // (is_row, index)
        queue.push({true, 0});
        while (!queue.empty()) {
            auto [is_row, i] = queue.front();
            queue.pop();
            if (is_row) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (basic[at(i, c)] && !has_v[c]) {
                        v[c] = cost(i, c) - u[i];
                        has_v[c] = 1;
                        queue.push({false, c});
                    }
                }
            } else {
                for (std::size_t r = 0; r < m; ++r) {
                    if (basic[at(r, i)] && !has_u[r]) {
                        u[r] = cost(r, i) - v[i];
                        has_u[r] = 1;
                        queue.push({true, r});
                    }
                }
            }
        }
        // Bland's rule: first cell with negative reduced cost.
        std::optional<std::pair<std::size_t, std::size_t>> entering;
        for (std::size_t r = 0; r < m && !entering; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!basic[at(r, c)] && cost(r, c) - u[r] - v[c] < 0) {
                    entering = std::make_pair(r, c);
                    break;
                }
            }
        }
        if (!entering) break;
        if (++out.pivots > 1000000) fail_internal("transportation simplex did not terminate");
        auto [er, ec] = *entering;
        // Tree path from row er to column ec.
        const std::size_t nodes = m + n;  // rows 0..m-1, columns m..m+n-1
        std::vector<std::size_t> parent(nodes, SIZE_MAX);
        std::queue<std::size_t> bfs;
        parent[er] = er;
        bfs.push(er);
        while (!bfs.empty() && parent[m + ec] == SIZE_MAX) {
            std::size_t node = bfs.front();
            bfs.pop();
            if (node < m) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (basic[at(node, c)] && parent[m + c] == SIZE_MAX) {
                        parent[m + c] = node;
                        bfs.push(m + c);
                    }
                }
            } else {
                for (std::size_t r = 0; r < m; ++r) {
                    if (basic[at(r, node - m)] && parent[r] == SIZE_MAX) {
                        parent[r] = node;
                        bfs.push(r);
                    }
                }
            }
        }
        // Cells along the path from the column back to the row alternate -, +, -, ...
        std::vector<std::size_t> minus, plus;
        std::size_t node = m + ec;
        bool sign_minus = true;
        while (node != er) {
            std::size_t p = parent[node];
            std::size_t cell = node < m ? at(node, p - m) : at(p, node - m);
            (sign_minus ? minus : plus).push_back(cell);
            sign_minus = !sign_minus;
            node = p;
        }
        Rational theta = x[minus.front()];
        for (auto cell : minus) theta = std::min(theta, x[cell]);
        std::size_t leaving = SIZE_MAX;
        for (auto cell : minus) {
            if (x[cell] == theta && cell < leaving) leaving = cell;
        }
        for (auto cell : minus) x[cell] -= theta;
        for (auto cell : plus) x[cell] += theta;
        x[at(er, ec)] = theta;
        basic[at(er, ec)] = 1;
        basic[leaving] = 0;
    }
    out.cost = 0;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (basic[at(r, c)] && x[at(r, c)] > 0) {
                out.cost += x[at(r, c)] * cost(r, c);
                out.plan.emplace_back(rows[r], cols[c], x[at(r, c)]);
            }
        }
    }
    return out;
}

namespace {

struct Arc {
    std::size_t to;
    Rational cap;
    Rational cost;
    std::size_t rev;
    long edge = -1;  // graph edge carried, forward (>= 0) only
    bool forward = true;
};

}  // namespace

Flow w1_beckmann(const StGraph& g, const std::vector<Rational>& lengths, const VertexMeasure& mu, const VertexMeasure& nu) {
    const std::size_t n = g.vertex_count();
    if (lengths.size() != g.edge_count()) fail_input("length count does not match the edge count");
    check_probability(mu, n, "mu");
    check_probability(nu, n, "nu");
    if (mu.total() != nu.total()) fail_input("supply and demand totals differ");
    for (const auto& l : lengths) {
        if (l <= 0) fail_input("edge lengths must be positive");
    }
    const Rational total = mu.total();
    const std::size_t source = n, sink = n + 1;
    std::vector<std::vector<Arc>> adj(n + 2);
    auto add = [&](std::size_t a, std::size_t b, const Rational& cap, const Rational& cost, long edge, bool forward) {
        adj[a].push_back(Arc{b, cap, cost, adj[b].size(), edge, forward});
        adj[b].push_back(Arc{a, Rational(0), Rational(-cost), adj[a].size() - 1, -1, true});
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        add(g.edge(e).src, g.edge(e).dst, total, lengths[e], static_cast<long>(e), true);
        add(g.edge(e).dst, g.edge(e).src, total, lengths[e], static_cast<long>(e), false);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (mu.mass[v] > 0) add(source, v, mu.mass[v], Rational(0), -1, true);
        if (nu.mass[v] > 0) add(v, sink, nu.mass[v], Rational(0), -1, true);
    }
    Flow out;
    Rational sent = 0;
    while (sent < total) {
        // Bellman-Ford on the residual graph (costs may be negative, no negative cycles).
        std::vector<std::optional<Rational>> dist(n + 2);
        std::vector<std::pair<std::size_t, std::size_t>> prev(n + 2, {SIZE_MAX, SIZE_MAX});
        dist[source] = Rational(0);
        for (std::size_t round = 0; round < n + 2; ++round) {
            bool changed = false;
            for (std::size_t a = 0; a < n + 2; ++a) {
                if (!dist[a]) continue;
                for (std::size_t i = 0; i < adj[a].size(); ++i) {
                    const Arc& arc = adj[a][i];
                    if (arc.cap <= 0) continue;
                    Rational nd = *dist[a] + arc.cost;
                    if (!dist[arc.to] || nd < *dist[arc.to]) {
                        dist[arc.to] = nd;
                        prev[arc.to] = {a, i};
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (!dist[sink]) fail_internal("flow network disconnected before all mass was routed");
        Rational push = total - sent;
        for (std::size_t v = sink; v != source; v = prev[v].first) {
            push = std::min(push, adj[prev[v].first][prev[v].second].cap);
        }
        for (std::size_t v = sink; v != source; v = prev[v].first) {
            Arc& arc = adj[prev[v].first][prev[v].second];
            arc.cap -= push;
            adj[arc.to][arc.rev].cap += push;
        }
        sent += push;
        ++out.augmentations;
    }
    out.edge_flow.assign(g.edge_count(), Rational(0));
    out.cost = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (const Arc& arc : adj[a]) {
            if (arc.edge < 0) continue;
            Rational used = total - arc.cap;
            out.cost += used * arc.cost;
            out.edge_flow[arc.edge] += arc.forward ? used : Rational(-used);
        }
    }
    return out;
}

Rational w1_tree(const StGraph& tree, const std::vector<Rational>& lengths, const VertexMeasure& mu,
                 const VertexMeasure& nu) {
    const std::size_t n = tree.vertex_count();
    if (tree.edge_count() + 1 != n) fail_input("graph is not a tree: it has a cycle");
    if (lengths.size() != tree.edge_count()) fail_input("length count does not match the edge count");
    check_probability(mu, n, "mu");
    check_probability(nu, n, "nu");
    if (mu.total() != nu.total()) fail_input("masses differ in total");
    // Orient from vertex 0; accumulate μ−ν bottom up.
    std::vector<long> parent_edge(n, -1);
    std::vector<VertexId> order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        VertexId v = order[i];
        auto visit = [&](EdgeId e, VertexId w) {
            if (seen[w]) return;
            seen[w] = 1;
            parent_edge[w] = static_cast<long>(e);
            order.push_back(w);
        };
        for (EdgeId e : tree.out_edges(v)) visit(e, tree.edge(e).dst);
        for (EdgeId e : tree.in_edges(v)) visit(e, tree.edge(e).src);
    }
    if (order.size() != n) fail_input("graph is not connected");
    std::vector<Rational> excess(n);
    for (VertexId v = 0; v < n; ++v) excess[v] = mu.mass[v] - nu.mass[v];
    Rational cost = 0;
    for (std::size_t i = order.size(); i-- > 1;) {
        VertexId v = order[i];
        EdgeId e = static_cast<EdgeId>(parent_edge[v]);
        cost += lengths[e] * abs(excess[v]);
        VertexId up = tree.edge(e).src == v ? tree.edge(e).dst : tree.edge(e).src;
        excess[up] += excess[v];
    }
    return cost;
}

void validate_bound_inputs(const BoundInputs& b) {
    auto positive = [](double x, const char* name) {
        if (!(x > 0) || !std::isfinite(x)) fail_input(std::string(name) + " must be a positive finite constant");
    };
    positive(b.c_iso, "C_iso");
    positive(b.c_l1, "C_1");
    positive(b.c_linf, "C_inf");
    positive(b.c_gamma, "C_gamma");
    if (!(b.delta_iso >= 2) || !std::isfinite(b.delta_iso)) fail_input("isoperimetric dimension must lie in [2, inf)");
    if (!(b.delta_spec >= 1) || !std::isfinite(b.delta_spec)) fail_input("spectral dimension must lie in [1, inf)");
    if (!(b.beta >= 1) || !std::isfinite(b.beta)) fail_input("bandwidth must be at least 1");
}

double growth_integral(double delta_spec, double delta_iso, double beta) {
    if (beta == 1) return 0;
    const double a = delta_spec - delta_iso;
    const double lb = std::log(beta);
    if (a == 0) return lb;
    return std::expm1(a * lb) / a;
}

double distortion_bound(const BoundInputs& b) {
    validate_bound_inputs(b);
    const double lead = 1.0 / (2 * b.c_iso * b.c_l1 * b.c_l1 * b.c_linf);
    const double inv = 1.0 / b.delta_iso;
    return lead * std::pow(b.delta_iso / b.c_gamma, inv) * std::pow(growth_integral(b.delta_spec, b.delta_iso, b.beta), inv);
}

BoundConstants diamond_envelope_constants(unsigned k, unsigned m) {
    if (k < 2 || m < 2) fail_input("diamond needs k, m >= 2");
    BoundConstants c;
    c.c_iso = m / 2.0;
    c.c_l1 = 6;
    c.c_linf = 1;
    c.c_gamma = 2.0 * k * k * m * m;
    c.source = ConstantSource::Paper;
    c.provenance = {"C_iso = m/2 (published envelope)", "C_1 = 6 (published envelope)", "C_inf = 1 (published envelope)",
                    "C_gamma = 2k^2m^2 (published envelope)"};
    return c;
}

BoundReport diamond_bound(unsigned k, unsigned m, unsigned n, const BoundConstants& constants) {
    if (k < 2 || m < 2) fail_input("diamond needs k, m >= 2");
    if (n == 0) fail_input("power must be at least 1");
    BoundReport r;
    r.k = k;
    r.m = m;
    r.n = n;
    r.constants = constants;
    const double delta = 1 + std::log(static_cast<double>(m)) / std::log(static_cast<double>(k));
    if (delta < 2 - 1e-12) {
        fail_input("dimension 1 + log m / log k = " + std::to_string(delta) + " is below 2; the bound needs m >= k");
    }
    r.inputs = BoundInputs{constants.c_iso, constants.c_l1, constants.c_linf, constants.c_gamma,
                           std::max(delta, 2.0), std::max(delta, 2.0), std::pow(static_cast<double>(k), static_cast<double>(n))};
    r.value = distortion_bound(r.inputs);
    auto counts = oslash_power_counts((k - 1) * static_cast<std::uint64_t>(m) + 2, static_cast<std::uint64_t>(k) * m, n);
    r.vertices = counts.first;
    r.log_size_term = std::pow(std::log(static_cast<double>(r.vertices)), 1.0 / r.inputs.delta_iso);
    return r;
}

}  // namespace oslash
