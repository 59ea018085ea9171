#ifndef CHEBDYN_GRAPH_HPP
#define CHEBDYN_GRAPH_HPP

// The functional graph G(ell, p, n) of T_ell on F_{p^n}, built by enumeration.
// Orbit statistics come from in-degree peeling; the order formula is kept
// alongside so the two can be compared vertex by vertex.

#include <chebdyn/arith.hpp>
#include <chebdyn/cheb.hpp>
#include <chebdyn/ffield.hpp>
#include <chebdyn/predict.hpp>
#include <chebdyn/summary.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebdyn {

inline constexpr u64 k_default_enum_cap = u64(1) << 26;

struct FuncGraph {
    FieldCtx ctx;
    u32 ell = 0;
    std::vector<u32> succ;
    std::vector<u32> pper;
    std::vector<u32> per;
    std::vector<u32> weight;
    std::vector<u32> comp;        // smallest index on the component's cycle
    std::vector<u32> divisor_id;  // into `divisors`
    std::vector<FactoredInt> divisors;
    std::vector<Branch> branch;

    std::size_t size() const { return succ.size(); }
    const FactoredInt& divisor(std::size_t i) const { return divisors[divisor_id[i]]; }

    /// Predecessor lists in CSR form.
    std::pair<std::vector<u32>, std::vector<u32>> preds() const {
        std::vector<u32> start(size() + 1, 0);
        for (u32 s : succ) ++start[s + 1];
        std::partial_sum(start.begin(), start.end(), start.begin());
        std::vector<u32> fill(start.begin(), start.end() - 1);
        std::vector<u32> list(size());
        for (u32 i = 0; i < size(); ++i) list[fill[succ[i]]++] = i;
        return {std::move(start), std::move(list)};
    }
};

struct OrbitStats {
    unsigned rho = 0;
    u64 pi = 0;
    friend bool operator==(const OrbitStats&, const OrbitStats&) = default;
};

/// (preperiod, period) from the order ell^k d of alpha: (k, c(d)). No iteration.
inline OrbitStats orbit_stats_order(const FFElem& a, u32 ell, const FieldCtx& ctx) {
    if (ctx.p() == ell) throw RefusedError("orbit_stats_order: p = ell");
    const AlphaOrder ao = alpha_order(a, ctx);
    return {ao.order.exponent_of(ell), static_cast<u64>(c_of_d(ao.order.without(ell), ell))};
}

/// Brute-force (preperiod, period) of every index under succ: peel in-degree-0
/// vertices to expose the cycles, then measure heights backwards from them.
inline void brute_orbit_stats(const std::vector<u32>& succ, std::vector<u32>& pper, std::vector<u32>& per,
                              std::vector<u32>& comp) {
    const std::size_t N = succ.size();
    std::vector<u32> indeg(N, 0);
    for (u32 s : succ) ++indeg[s];
    std::vector<char> removed(N, 0);
    std::vector<u32> stack;
    for (u32 i = 0; i < N; ++i)
        if (indeg[i] == 0) stack.push_back(i);
    while (!stack.empty()) {
        const u32 v = stack.back();
        stack.pop_back();
        removed[v] = 1;
        if (--indeg[succ[v]] == 0) stack.push_back(succ[v]);
    }
    pper.assign(N, 0);
    per.assign(N, 0);
    comp.assign(N, 0);
    for (u32 i = 0; i < N; ++i) {
        if (removed[i] || per[i] != 0) continue;
        u32 len = 0, smallest = i;
        u32 v = i;
        do {
            ++len;
            smallest = std::min(smallest, v);
            v = succ[v];
        } while (v != i);
        do {
            per[v] = len;
            comp[v] = smallest;
            v = succ[v];
        } while (v != i);
    }
    // heights by BFS over predecessors from the periodic core
    std::vector<u32> start(N + 1, 0);
    for (u32 s : succ) ++start[s + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<u32> fill(start.begin(), start.end() - 1);
    std::vector<u32> pred(N);
    for (u32 i = 0; i < N; ++i) pred[fill[succ[i]]++] = i;
    std::deque<u32> queue;
    for (u32 i = 0; i < N; ++i)
        if (!removed[i]) queue.push_back(i);
    while (!queue.empty()) {
        const u32 v = queue.front();
        queue.pop_front();
        for (u32 k = start[v]; k < start[v + 1]; ++k) {
            const u32 u = pred[k];
            if (!removed[u]) continue;
            removed[u] = 0;
            pper[u] = pper[v] + 1;
            per[u] = per[v];
            comp[u] = comp[v];
            queue.push_back(u);
        }
    }
}

inline FuncGraph build_graph(u32 ell, const FieldCtx& ctx, u64 cap = k_default_enum_cap) {
    if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("build_graph: ell = " + std::to_string(ell) + " is not prime");
    if (ctx.p() == ell) throw RefusedError("build_graph: ell = p = " + std::to_string(ell));
    if (ctx.size() > cap) throw RefusedError("build_graph: p^n = " + to_string(ctx.size()) + " exceeds cap " + std::to_string(cap));
    if (ctx.size() > std::numeric_limits<u32>::max()) throw RefusedError("build_graph: p^n beyond 32-bit indices");
    FuncGraph g{ctx, ell, {}, {}, {}, {}, {}, {}, {}, {}};
    const auto N = static_cast<u32>(ctx.size());
    g.succ.resize(N);
    g.weight.resize(N);
    g.divisor_id.resize(N);
    g.branch.resize(N);
    std::map<FactoredInt, u32> ids;
    for (u32 i = 0; i < N; ++i) {
        const FFElem a = ctx.decode(i);
        g.succ[i] = static_cast<u32>(ctx.encode(cheb_eval(ell, a, ctx)));
        g.weight[i] = element_degree(a, ctx);
        AlphaOrder ao = alpha_order(a, ctx);
        auto [it, inserted] = ids.try_emplace(ao.order, static_cast<u32>(g.divisors.size()));
        if (inserted) g.divisors.push_back(ao.order);
        g.divisor_id[i] = it->second;
        g.branch[i] = ao.branch;
    }
    brute_orbit_stats(g.succ, g.pper, g.per, g.comp);
    return g;
}

/// Divisor-class table of a built graph; row values come from the brute-force
/// arrays (first member of each class), classes from the lifted orders.
inline GraphSummary summarize(const FuncGraph& g) {
    GraphSummary out{g.ell, g.ctx.p(), g.ctx.n(), {}};
    std::map<u32, std::size_t> row_of;
    std::map<u32, std::map<u32, bool>> cycle_seen;  // divisor id -> comp ids
    for (u32 i = 0; i < g.size(); ++i) {
        const u32 id = g.divisor_id[i];
        auto it = row_of.find(id);
        if (it == row_of.end()) {
            SummaryRow r;
            r.divisor = g.divisors[id];
            r.branch = g.branch[i];
            r.preperiod = g.pper[i];
            r.weight = g.weight[i];
            if (g.pper[i] == 0) r.period = g.per[i];
            it = row_of.emplace(id, out.rows.size()).first;
            out.rows.push_back(std::move(r));
        }
        ++out.rows[it->second].points;
    }
    for (auto& r : out.rows)
        if (r.period) r.cycles = r.points / *r.period;
    sort_rows(out.rows, g.ell);
    return out;
}

struct StructureReport {
    bool ok = true;
    std::size_t components = 0;
    std::size_t cycles = 0;
    std::vector<std::string> failures;  // first counterexample per check

    void fail(std::string msg) {
        ok = false;
        if (failures.size() < 16) failures.push_back(std::move(msg));
    }
};

namespace detail {

// True iff the predecessor tree hanging off `root` (excluding periodic
// vertices) is complete ell-ary of exactly `height`.
inline bool complete_tree(u32 root, unsigned height, u32 ell, const std::vector<u32>& start, const std::vector<u32>& pred,
                          const std::vector<u32>& pper) {
    std::vector<std::pair<u32, unsigned>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [v, depth] = stack.back();
        stack.pop_back();
        const u32 indeg = start[v + 1] - start[v];
        if (depth == height) {
            if (indeg != 0) return false;
            continue;
        }
        if (indeg != ell) return false;
        for (u32 k = start[v]; k < start[v + 1]; ++k) {
            if (pper[pred[k]] == 0) return false;
            stack.emplace_back(pred[k], depth + 1);
        }
    }
    return true;
}

}  // namespace detail

/// Checks one cycle per component and the complete ell-ary trees predicted
/// for ordinary cycle vertices and for the special vertices +-2 (and 0 when
/// ell = 2). Reports the first counterexamples.
inline StructureReport verify_structure(const FuncGraph& g) {
    StructureReport rep;
    const u32 ell = g.ell;
    const FieldCtx& F = g.ctx;
    const unsigned lam_minus = F.order_minus().exponent_of(ell);
    const unsigned lam_plus = F.order_plus().exponent_of(ell);
    const unsigned lam_m = std::max(lam_minus, lam_plus);
    const auto N = static_cast<u32>(g.size());
    const auto [start, pred] = g.preds();

    // weakly connected components by union-find, independent of comp[]
    std::vector<u32> parent(N);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](u32 x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (u32 i = 0; i < N; ++i) parent[find(i)] = find(g.succ[i]);
    std::map<u32, std::size_t> cycles_in;
    std::vector<char> seen(N, 0);
    for (u32 i = 0; i < N; ++i) {
        if (g.pper[i] != 0 || seen[i]) continue;
        u32 v = i;
        do {
            seen[v] = 1;
            v = g.succ[v];
        } while (v != i);
        ++cycles_in[find(i)];
        ++rep.cycles;
    }
    std::size_t roots = 0;
    for (u32 i = 0; i < N; ++i)
        if (find(i) == i) {
            ++roots;
            if (cycles_in[i] != 1) rep.fail("component of vertex " + std::to_string(i) + " has " + std::to_string(cycles_in[i]) + " cycles");
        }
    rep.components = roots;

    const u32 two = static_cast<u32>(F.encode(F.from_int(2)));
    const u32 minus_two = static_cast<u32>(F.encode(F.from_int(-2)));
    const u32 zero = 0;

    auto check_trees = [&](u32 v, std::size_t expected_roots, unsigned height, const std::string& what) {
        std::size_t found = 0;
        for (u32 k = start[v]; k < start[v + 1]; ++k) {
            const u32 u = pred[k];
            if (g.pper[u] == 0) continue;
            ++found;
            if (!detail::complete_tree(u, height, ell, start, pred, g.pper))
                rep.fail(what + ": vertex " + std::to_string(u) + " does not root a complete " + std::to_string(ell) +
                         "-ary tree of height " + std::to_string(height));
        }
        if (found != expected_roots)
            rep.fail(what + ": vertex " + std::to_string(v) + " has " + std::to_string(found) + " strictly preperiodic predecessors, expected " +
                     std::to_string(expected_roots));
    };

    if (ell == 2) {
        if (g.succ[two] != two) rep.fail("edge (2,2) missing");
        if (g.succ[minus_two] != two) rep.fail("edge (-2,2) missing");
        if (g.succ[zero] != minus_two) rep.fail("edge (0,-2) missing");
        if (lam_m >= 2 && !detail::complete_tree(zero, lam_m - 2, 2, start, pred, g.pper))
            rep.fail("0 does not root a complete binary tree of height " + std::to_string(lam_m - 2));
        // -2 hangs off 2 through the single edge (-2, 2); its only predecessor is 0
        if (start[minus_two + 1] - start[minus_two] != 1) rep.fail("-2 should have in-degree 1");
    } else {
        for (u32 s : {two, minus_two}) {
            if (g.succ[s] != s) rep.fail("vertex " + std::to_string(s) + " (+-2) is not fixed");
            check_trees(s, lam_m >= 1 ? (ell - 1) / 2 : 0, lam_m >= 1 ? lam_m - 1 : 0, "special vertex");
        }
    }

    for (u32 v = 0; v < N; ++v) {
        if (g.pper[v] != 0 || v == two || v == minus_two) continue;
        const unsigned lam = g.branch[v] == Branch::minus ? lam_minus : lam_plus;
        check_trees(v, lam >= 1 ? ell - 1 : 0, lam >= 1 ? lam - 1 : 0, "cycle vertex");
        if (!rep.ok && rep.failures.size() >= 16) break;
    }
    return rep;
}

/// Graphviz digraph, nodes in index order, colored by weight class.
/// With a divisor, only components whose cycle has that divisor are kept.
inline std::string export_dot(const FuncGraph& g, const std::optional<FactoredInt>& cycle_divisor = std::nullopt) {
    static constexpr const char* palette[] = {"green", "red", "blue", "brown", "violet", "navy", "orange", "gray"};
    std::vector<char> keep(g.size(), 1);
    if (cycle_divisor) {
        std::vector<char> comp_ok(g.size(), 0);
        bool any = false;
        for (u32 i = 0; i < g.size(); ++i)
            if (g.pper[i] == 0 && g.divisor(i) == *cycle_divisor) {
                comp_ok[g.comp[i]] = 1;
                any = true;
            }
        if (!any) throw std::invalid_argument("export_dot: no cycle with divisor " + cycle_divisor->str());
        for (u32 i = 0; i < g.size(); ++i) keep[i] = comp_ok[g.comp[i]];
    }
    // palette index floor(log_ell(weight / mu))
    const u32 mu = mu_of(g.ell, g.ctx.p());
    auto color_key = [&](u32 w) {
        unsigned k = 0;
        for (u64 r = std::max<u32>(1, w / mu); r >= g.ell; r /= g.ell) ++k;
        return k;
    };
    std::ostringstream os;
    os << "digraph G_" << g.ell << "_" << g.ctx.p() << "_" << g.ctx.n() << " {\n";
    for (u32 i = 0; i < g.size(); ++i) {
        if (!keep[i]) continue;
        const unsigned key = std::min<unsigned>(color_key(g.weight[i]), std::size(palette) - 1);
        os << "  " << i << " [label=\"" << i << "\", style=filled, fillcolor=" << palette[key] << "];\n";
    }
    for (u32 i = 0; i < g.size(); ++i)
        if (keep[i]) os << "  " << i << " -> " << g.succ[i] << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace chebdyn

#endif  // CHEBDYN_GRAPH_HPP
