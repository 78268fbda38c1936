// Exact minimum of the isoperimetric ratio over all subsets of G^{⊘n}.
//
// Write G^{⊘j} = G⊘G^{⊘(j-1)}. A subset S of G^{⊘j} is a subset S0 of V(G)
// plus, for every edge e of G, a subset of the copy of G^{⊘(j-1)} over e whose
// terminal membership is fixed by S0. Mass and perimeter are both additive
// over copies with weights ν(e) and ν(e)/d(e), so for each terminal status
// it is enough to keep the least perimeter for every reachable mass.

#include "oslash/isoperimetry.hpp"

#include "scaled.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace oslash {

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

struct Entry {
    std::int64_t mass;
    std::int64_t per;
    std::int64_t prev_mass;   // mass before the current edge
    std::int64_t child_mass;  // mass contributed by the copy over the current edge
};

// frontier[status][m] = least perimeter at mass m; status = 2*[s in S] + [t in S].
struct Level {
    std::int64_t total = 0;
    std::array<std::vector<std::int64_t>, 4> frontier;
};

struct FrontierSolver {
    const StGraph& g;
    std::vector<std::int64_t> mass_coef;  // ν(e) in units of 1/B_μ
    std::vector<std::int64_t> per_coef;   // ν(e)/d(e) in units of 1/B_P
    std::vector<VertexId> interior;
    std::vector<Level> levels;
    std::size_t cap;

    static int status(bool s_in, bool t_in) { return (s_in ? 2 : 0) + (t_in ? 1 : 0); }

    std::vector<char> pattern_flags(std::uint64_t pattern, int st) const {
        std::vector<char> in(g.vertex_count(), 0);
        in[g.source()] = (st & 2) != 0;
        in[g.sink()] = (st & 1) != 0;
        for (std::size_t i = 0; i < interior.size(); ++i) in[interior[i]] = (pattern >> i & 1u) != 0;
        return in;
    }

    // Sparse frontier of one child copy.
    static std::vector<std::pair<std::int64_t, std::int64_t>> sparse(const std::vector<std::int64_t>& f) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (std::size_t m = 0; m < f.size(); ++m) {
            if (f[m] != kUnreached) out.push_back({static_cast<std::int64_t>(m), f[m]});
        }
        return out;
    }

    // Runs the edge-by-edge Minkowski sum for one pattern at level j.
    // When `stages` is given, every intermediate frontier is kept for backtracking.
    std::vector<Entry> chain(unsigned j, const std::vector<char>& in, std::vector<std::int64_t>& scratch,
                             std::vector<std::vector<Entry>>* stages) const {
        const Level& child = levels[j - 1];
        std::vector<Entry> cur{{0, 0, 0, 0}};
        std::vector<std::size_t> slot(scratch.size(), SIZE_MAX);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto& f = child.frontier[status(in[g.edge(e).src], in[g.edge(e).dst])];
            std::vector<Entry> next;
            for (const auto& c : cur) {
                for (std::size_t cm = 0; cm < f.size(); ++cm) {
                    if (f[cm] == kUnreached) continue;
                    std::int64_t m = c.mass + mass_coef[e] * static_cast<std::int64_t>(cm);
                    std::int64_t p = c.per + per_coef[e] * f[cm];
                    std::size_t& at = slot[static_cast<std::size_t>(m)];
                    if (at == SIZE_MAX) {
                        at = next.size();
                        next.push_back({m, p, c.mass, static_cast<std::int64_t>(cm)});
                    } else if (p < next[at].per) {
                        next[at] = {m, p, c.mass, static_cast<std::int64_t>(cm)};
                    }
                }
            }
            for (const auto& n : next) slot[static_cast<std::size_t>(n.mass)] = SIZE_MAX;
            if (stages) stages->push_back(next);
            cur = std::move(next);
        }
        return cur;
    }

    void build(unsigned n, const Rational& alpha) {
        Level base;
        const mpz_class& den = alpha.get_den();
        if (!den.fits_slong_p()) fail_resource("alpha denominator too large");
        base.total = den.get_si();
        const std::int64_t a = alpha.get_num().get_si();
        for (auto& f : base.frontier) f.assign(static_cast<std::size_t>(base.total) + 1, kUnreached);
        // G^{⊘0} is a single edge s -> t.
        base.frontier[status(false, false)][0] = 0;
        base.frontier[status(true, false)][static_cast<std::size_t>(base.total - a)] = 1;
        base.frontier[status(false, true)][static_cast<std::size_t>(a)] = 1;
        base.frontier[status(true, true)][static_cast<std::size_t>(base.total)] = 0;
        levels.push_back(std::move(base));

        const std::int64_t coef_total = checked_sum(mass_coef);
        for (unsigned j = 1; j <= n; ++j) {
            Level level;
            __int128 total = static_cast<__int128>(levels.back().total) * coef_total;
            if (total > static_cast<__int128>(cap)) {
                fail_resource("frontier mass range " + std::to_string(static_cast<long long>(total)) + " exceeds the cap");
            }
            level.total = static_cast<std::int64_t>(total);
            std::int64_t max_per = 0;
            for (const auto& f : levels.back().frontier) {
                for (auto p : f) {
                    if (p != kUnreached) max_per = std::max(max_per, p);
                }
            }
            if (static_cast<__int128>(max_per) * checked_sum(per_coef) > (static_cast<__int128>(1) << 61)) {
                fail_resource("frontier perimeters overflow 64-bit arithmetic");
            }
            std::vector<std::int64_t> scratch(static_cast<std::size_t>(level.total) + 1);
            for (int st = 0; st < 4; ++st) {
                auto& out = level.frontier[st];
                out.assign(static_cast<std::size_t>(level.total) + 1, kUnreached);
                for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << interior.size()); ++pattern) {
                    for (const auto& e : chain(j, pattern_flags(pattern, st), scratch, nullptr)) {
                        auto& slot = out[static_cast<std::size_t>(e.mass)];
                        slot = std::min(slot, e.per);
                    }
                }
            }
            levels.push_back(std::move(level));
        }
    }

    // Interior addresses of a subset of G^{⊘j} with the given status, mass and perimeter.
    void recover(unsigned j, int st, std::int64_t mass, std::int64_t per, Word& prefix, std::vector<Word>& out) const {
        if (j == 0) return;
        std::vector<std::int64_t> scratch(static_cast<std::size_t>(levels[j].total) + 1);
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << interior.size()); ++pattern) {
            auto in = pattern_flags(pattern, st);
            std::vector<std::vector<Entry>> stages;
            auto last = chain(j, in, scratch, &stages);
            auto hit = std::find_if(last.begin(), last.end(), [&](const Entry& e) { return e.mass == mass && e.per == per; });
            if (hit == last.end()) continue;
            for (VertexId v : interior) {
                if (in[v]) {
                    prefix.push_back(v);
                    out.push_back(prefix);
                    prefix.pop_back();
                }
            }
            std::int64_t m = mass;
            for (std::size_t e = g.edge_count(); e-- > 0;) {
                const auto& stage = stages[e];
                auto it = std::find_if(stage.begin(), stage.end(), [&](const Entry& x) { return x.mass == m; });
                if (it == stage.end()) fail_internal("frontier backtracking lost its path");
                int child_status = status(in[g.edge(static_cast<EdgeId>(e)).src], in[g.edge(static_cast<EdgeId>(e)).dst]);
                std::int64_t child_per = levels[j - 1].frontier[child_status][static_cast<std::size_t>(it->child_mass)];
                prefix.push_back(static_cast<std::uint32_t>(e));
                recover(j - 1, child_status, it->child_mass, child_per, prefix, out);
                prefix.pop_back();
                m = it->prev_mass;
            }
            return;
        }
        fail_internal("frontier entry has no realising pattern");
    }
};

}  // namespace

MinRatio min_iso_ratio_frontier(const StGraph& base, const StGraph& power, unsigned n, double delta,
                                const EdgeMeasure& nu_base, const std::vector<Rational>& base_lengths,
                                const Rational& alpha, const Caps& caps) {
    if (n == 0) fail_input("power must be at least 1");
    if (!base.has_terminals()) fail_input("frontier search needs an s-t graph");
    if (nu_base.mass.size() != base.edge_count() || base_lengths.size() != base.edge_count()) {
        fail_input("measure or length sizes do not match the base graph");
    }
    if (alpha <= 0 || alpha >= 1) fail_input("alpha must lie strictly between 0 and 1");
    if (power.depth() != n || power.edge_count() == 0) fail_input("graph is not the requested power of the base");
    if (!(delta >= 1)) fail_input("dimension must be at least 1");

    std::vector<Rational> ratios(base.edge_count());
    for (EdgeId e = 0; e < base.edge_count(); ++e) ratios[e] = nu_base.mass[e] / base_lengths[e];
    ScaledVector ms = scale_to_integers(nu_base.mass);
    ScaledVector ps = scale_to_integers(ratios);

    FrontierSolver solver{base, ms.numerators, ps.numerators, {}, {}, std::max<std::size_t>(caps.power_edge_cap, 1) * 64};
    for (VertexId v = 0; v < base.vertex_count(); ++v) {
        if (v != base.source() && v != base.sink()) solver.interior.push_back(v);
    }
    if (solver.interior.size() > 20) fail_resource("base graph too large for the frontier search");
    solver.build(n, alpha);

    const Level& top = solver.levels[n];
    const Rational mass_unit = Rational(1, alpha.get_den()) * pow(ms.unit, n);
    const Rational per_unit = pow(ps.unit, n);
    const double r = (delta - 1) / delta;
    const double mu_d = to_double(mass_unit), per_d = to_double(per_unit);

    MinRatio best;
    best.ratio = std::numeric_limits<double>::infinity();
    best.mode = IsoMode::Frontier;
    int best_status = -1;
    std::int64_t best_mass = 0, best_per = 0;
    for (int st = 0; st < 4; ++st) {
        const auto& f = top.frontier[st];
        for (std::size_t m = 1; m < f.size() - 1; ++m) {
            if (f[m] == kUnreached) continue;
            ++best.subsets;
            std::int64_t balanced = std::min<std::int64_t>(static_cast<std::int64_t>(m), top.total - static_cast<std::int64_t>(m));
            double q = r == 0 ? f[m] * per_d : f[m] * per_d / std::pow(balanced * mu_d, r);
            if (q < best.ratio) {
                best.ratio = q;
                best_status = st;
                best_mass = static_cast<std::int64_t>(m);
                best_per = f[m];
            }
        }
    }
    if (best_status < 0) fail_input("graph has no proper nonempty subsets");
    best.per = per_unit * best_per;
    best.mass = mass_unit * std::min(best_mass, top.total - best_mass);

    std::vector<Word> addresses;
    Word prefix;
    solver.recover(n, best_status, best_mass, best_per, prefix, addresses);
    if (best_status & 2) addresses.push_back({base.source()});
    if (best_status & 1) addresses.push_back({base.sink()});
    for (const auto& a : addresses) {
        auto v = power.find_by_address(a);
        if (!v) fail_internal("frontier witness address not present in the power");
        best.witness.push_back(*v);
    }
    std::sort(best.witness.begin(), best.witness.end());
    return best;
}

}  // namespace oslash
