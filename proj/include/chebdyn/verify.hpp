#ifndef CHEBDYN_VERIFY_HPP
#define CHEBDYN_VERIFY_HPP

// Brute force against closed forms for one instance (ell, p, n).

#include <chebdyn/factor.hpp>
#include <chebdyn/figures.hpp>
#include <chebdyn/graph.hpp>
#include <chebdyn/predict.hpp>

#include <string>
#include <vector>

namespace chebdyn {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;  // first failure, or a short summary
};

struct VerifyReport {
    u32 ell = 0, p = 0;
    unsigned n = 0;
    u128 periodic = 0;
    u128 size = 0;
    std::vector<CheckResult> checks;
    std::vector<FigureCellDiff> figure_diffs;  // informational
    std::vector<std::string> notes;            // informational

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    std::string headline() const {
        std::string s = to_string(periodic) + " periodic / " + to_string(size) + "; ";
        if (ok()) return s + "all rows match";
        for (const auto& c : checks)
            if (!c.ok) return s + "mismatch in " + c.name + ": " + c.detail;
        return s;
    }
};

inline CheckResult check_summary(const GraphSummary& brute, const GraphSummary& pred) {
    CheckResult c{"summary", true, std::to_string(brute.rows.size()) + " rows"};
    const std::size_t m = std::max(brute.rows.size(), pred.rows.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (i >= brute.rows.size() || i >= pred.rows.size() || !(brute.rows[i] == pred.rows[i])) {
            c.ok = false;
            const std::string d = i < pred.rows.size() ? pred.rows[i].divisor.str() : brute.rows[i].divisor.str();
            c.detail = "row " + std::to_string(i) + " (d = " + d + ") differs";
            break;
        }
    }
    return c;
}

/// Per-vertex (preperiod, period) and weight against the order formula.
inline CheckResult check_oracle(const FuncGraph& g) {
    CheckResult c{"oracle", true, std::to_string(g.size()) + " vertices"};
    for (u32 i = 0; i < g.size(); ++i) {
        const FFElem a = g.ctx.decode(i);
        const OrbitStats os = orbit_stats_order(a, g.ell, g.ctx);
        const unsigned w = weight_of_divisor(g.divisor(i).value(), g.ctx.p(), g.ctx.n());
        if (os.rho != g.pper[i] || os.pi != g.per[i] || w != g.weight[i]) {
            c.ok = false;
            c.detail = "vertex " + std::to_string(i) + ": brute (" + std::to_string(g.pper[i]) + "," + std::to_string(g.per[i]) + ") weight " +
                       std::to_string(g.weight[i]) + ", formula (" + std::to_string(os.rho) + "," + std::to_string(os.pi) + ") weight " +
                       std::to_string(w);
            break;
        }
    }
    return c;
}

/// In-degree law over F_{p^n}. A strictly preperiodic vertex has 0 or ell
/// preimages. A periodic vertex has ell when its branch carries an ell-part
/// (lambda >= 1) and 1 otherwise. For odd ell, +-2 have (ell+1)/2 when
/// lambda_m >= 1 and 1 otherwise. For ell = 2, -2 has the single preimage 0.
inline CheckResult check_indegree(const FuncGraph& g) {
    CheckResult c{"indegree", true, ""};
    std::vector<u32> indeg(g.size(), 0);
    for (u32 s : g.succ) ++indeg[s];
    const StructureParams sp = structure_params(g.ell, g.ctx.p(), g.ctx.n());
    const auto two = static_cast<u32>(g.ctx.encode(g.ctx.from_int(2)));
    const auto minus_two = static_cast<u32>(g.ctx.encode(g.ctx.from_int(-2)));
    std::size_t singles = 0;
    for (u32 i = 0; i < g.size(); ++i) {
        bool good = false;
        if (g.ell == 2 && i == minus_two) {
            good = indeg[i] == 1;
        } else if (g.ell != 2 && (i == two || i == minus_two)) {
            good = indeg[i] == (sp.lambda_m >= 1 ? (g.ell + 1) / 2 : 1);
        } else if (g.pper[i] > 0) {
            good = indeg[i] == 0 || indeg[i] == g.ell;
        } else {
            const unsigned lam = g.branch[i] == Branch::minus ? sp.lambda_minus : sp.lambda_plus;
            good = indeg[i] == (lam >= 1 ? g.ell : 1);
        }
        singles += indeg[i] == 1;
        if (!good) {
            c.ok = false;
            c.detail = "vertex " + std::to_string(i) + " (preperiod " + std::to_string(g.pper[i]) + ", " + to_string(g.branch[i]) +
                       ") has in-degree " + std::to_string(indeg[i]);
            return c;
        }
    }
    c.detail = std::to_string(singles) + " vertices of in-degree 1";
    return c;
}

inline CheckResult check_point_counts(const GraphSummary& brute, u32 ell, u32 p, unsigned n) {
    CheckResult c{"point counts", true, ""};
    const auto got = brute.preperiod_totals();
    const auto want = predicted_point_counts(ell, p, n);
    auto join = [](const std::vector<u128>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
        return s;
    };
    c.detail = "(" + join(got) + ")";
    if (got != want) {
        c.ok = false;
        c.detail = "by preperiod: graph (" + join(got) + "), formula (" + join(want) + ")";
    }
    return c;
}

/// Predicted against computed factor patterns of T_ell^L - t for every
/// t in [0, p) and every L <= n with ell^L <= degree_limit.
inline CheckResult check_patterns(u32 ell, u32 p, unsigned n, u128 degree_limit) {
    CheckResult c{"factor patterns", true, ""};
    std::size_t cases = 0;
    for (unsigned L = 1; L <= n && ipow(ell, L) <= degree_limit; ++L) {
        for (u32 t = 0; t < p; ++t) {
            ++cases;
            const FactorPattern pred = factor_pattern_predicted(ell, p, L, t);
            const FactorPattern act = factor_pattern_actual(ell, p, L, t);
            if (!(pred == act)) {
                c.ok = false;
                c.detail = "n = " + std::to_string(L) + ", t = " + std::to_string(t) + ": predicted " + pred.str() + ", actual " + act.str();
                return c;
            }
        }
    }
    c.detail = std::to_string(cases) + " polynomials";
    return c;
}

inline VerifyReport verify_instance(u32 ell, u32 p, unsigned n, u64 cap = k_default_enum_cap, u128 pattern_degree_limit = 243) {
    check_pair(ell, p);
    const FieldCtx F = make_field(p, n);
    const FuncGraph g = build_graph(ell, F, cap);
    VerifyReport rep;
    rep.ell = ell;
    rep.p = p;
    rep.n = n;
    rep.size = F.size();
    for (u32 i = 0; i < g.size(); ++i) rep.periodic += g.pper[i] == 0;

    const GraphSummary brute = summarize(g);
    rep.checks.push_back(check_summary(brute, predict_summary(ell, p, n)));
    rep.checks.push_back(check_oracle(g));
    const StructureReport st = verify_structure(g);
    rep.checks.push_back({"structure", st.ok,
                          st.ok ? std::to_string(st.components) + " components, one cycle each" : st.failures.front()});
    rep.checks.push_back(check_indegree(g));
    rep.checks.push_back(check_point_counts(brute, ell, p, n));

    const StructureParams sp = structure_params(ell, p, n);
    const u128 periodic_formula = (sp.omega_minus + sp.omega_plus) / 2;
    rep.checks.push_back({"periodic count", rep.periodic == periodic_formula,
                          to_string(rep.periodic) + " vs (w- + w+)/2 = " + to_string(periodic_formula)});
    rep.checks.push_back(check_patterns(ell, p, n, pattern_degree_limit));

    if (const PrintedTable* fig = find_printed_table(ell, p, n)) rep.figure_diffs = compare_to_printed(brute, *fig);

    const Rational dens = periodic_density(ell, p, n);
    const Rational form = density_formula(ell, p, n);
    if (dens != form)
        rep.notes.push_back("density " + dens.str() + " differs from 1/(2 l^lambda-) + 1/(2 l^lambda+) = " + form.str() +
                            " by a term of order 1/p^n");
    return rep;
}

}  // namespace chebdyn

#endif  // CHEBDYN_VERIFY_HPP
