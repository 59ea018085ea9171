#include <chebdyn/graph.hpp>
#include <chebdyn/verify.hpp>

#include <gtest/gtest.h>

#include <regex>

#include "oracles.hpp"

using namespace chebdyn;
using oracle::walk;

namespace {

FactoredInt fi(std::vector<FactoredInt::Term> t) { return FactoredInt(std::move(t)); }

const SummaryRow* row_of(const GraphSummary& s, u128 d) {
    for (const auto& r : s.rows)
        if (r.divisor.value() == d) return &r;
    return nullptr;
}

}  // namespace

TEST(BuildGraph, SpecExamples) {
    const FieldCtx F53 = make_field(53, 1);
    const FuncGraph g = build_graph(3, F53);
    EXPECT_EQ(g.succ[2], 2u);
    EXPECT_EQ(g.pper[2], 0u);
    EXPECT_EQ(g.per[2], 1u);
    std::array<unsigned, 4> by_height{};
    for (u32 i = 0; i < g.size(); ++i)
        if (g.comp[i] == 2) ++by_height[g.pper[i]];
    EXPECT_EQ(by_height, (std::array<unsigned, 4>{1, 1, 3, 9}));

    const FieldCtx F3 = make_field(3, 1);
    const FuncGraph h = build_graph(2, F3);
    EXPECT_EQ(h.succ, (std::vector<u32>{1, 2, 2}));
    EXPECT_EQ(h.pper[0], 2u);
}

TEST(BuildGraph, Rejects) {
    const FieldCtx F = make_field(5, 2);
    EXPECT_THROW(build_graph(5, F), RefusedError);
    EXPECT_THROW(build_graph(4, F), std::invalid_argument);
    EXPECT_THROW(build_graph(3, F, 10), RefusedError);
}

TEST(OrbitStatsOrder, SpecExamples) {
    const FieldCtx F53 = make_field(53, 1);
    EXPECT_EQ(orbit_stats_order(F53.from_int(2), 3, F53), (OrbitStats{0, 1}));
    const FieldCtx F3 = make_field(3, 1);
    EXPECT_EQ(orbit_stats_order(F3.zero(), 2, F3), (OrbitStats{2, 1}));
    const FuncGraph g = build_graph(3, F53);
    bool seen = false;
    for (u32 i = 0; i < g.size(); ++i)
        if (g.divisor(i).value() == 52) {
            EXPECT_EQ(orbit_stats_order(F53.decode(i), 3, F53), (OrbitStats{0, 6}));
            seen = true;
        }
    EXPECT_TRUE(seen);
}

TEST(OrbitStats, PeelingMatchesWalkAndFormula) {
    for (u32 ell : {2u, 3u, 5u, 7u})
        for (auto [p, n] : std::vector<std::pair<u32, unsigned>>{{3, 5}, {5, 4}, {7, 3}, {11, 2}, {29, 2}, {31, 1}}) {
            if (p == ell) continue;
            const FieldCtx F = make_field(p, n);
            const FuncGraph g = build_graph(ell, F);
            for (u32 i = 0; i < g.size(); ++i) {
                const OrbitStats w = walk(g.succ, i);
                ASSERT_EQ(w.rho, g.pper[i]);
                ASSERT_EQ(w.pi, g.per[i]);
                ASSERT_EQ(orbit_stats_order(F.decode(i), ell, F), w) << "ell=" << ell << " p=" << p << " n=" << n << " a=" << i;
            }
        }
}

TEST(Summarize, SpecExamples) {
    const GraphSummary s = summarize(build_graph(3, make_field(53, 1)));
    const SummaryRow* r13 = row_of(s, 13);
    ASSERT_TRUE(r13);
    EXPECT_EQ(r13->points, 6u);
    EXPECT_EQ(r13->period, 3u);
    EXPECT_EQ(r13->cycles, 2u);

    const GraphSummary t = summarize(build_graph(2, make_field(3, 4)));
    const SummaryRow* r80 = row_of(t, 80);
    ASSERT_TRUE(r80);
    EXPECT_EQ(r80->points, 16u);
    EXPECT_EQ(r80->preperiod, 4u);
    EXPECT_EQ(r80->weight, 4u);
    EXPECT_FALSE(r80->period);
    const SummaryRow* r41 = row_of(t, 41);
    ASSERT_TRUE(r41);
    EXPECT_EQ(r41->points, 20u);
    EXPECT_EQ(r41->period, 10u);
    EXPECT_EQ(r41->cycles, 2u);
}

TEST(Summarize, PointsSumToField) {
    for (auto [ell, p, n] : std::vector<std::tuple<u32, u32, unsigned>>{{2, 3, 4}, {3, 53, 1}, {5, 11, 2}, {7, 3, 6}}) {
        const GraphSummary s = summarize(build_graph(ell, make_field(p, n)));
        EXPECT_EQ(s.total_points(), ipow(p, n));
    }
}

TEST(VerifyStructure, SpecInstances) {
    const StructureReport a = verify_structure(build_graph(3, make_field(53, 1)));
    EXPECT_TRUE(a.ok) << (a.failures.empty() ? "" : a.failures.front());
    EXPECT_EQ(a.components, 9u);
    const StructureReport b = verify_structure(build_graph(2, make_field(3, 4)));
    EXPECT_TRUE(b.ok) << (b.failures.empty() ? "" : b.failures.front());
}

TEST(VerifyStructure, DivisorsOf52HaveNoTrees) {
    const FuncGraph g = build_graph(3, make_field(53, 1));
    for (u32 i = 0; i < g.size(); ++i) {
        if (g.branch[i] == Branch::minus) {
            EXPECT_EQ(g.pper[i], 0u) << i;
        }
    }
}

TEST(VerifyStructure, DetectsTampering) {
    FuncGraph g = build_graph(3, make_field(53, 1));
    // reroute one leaf of the tree over 2 to a different component
    for (u32 i = 0; i < g.size(); ++i)
        if (g.pper[i] == 3 && g.comp[i] == 2) {
            g.succ[i] = 51;
            break;
        }
    brute_orbit_stats(g.succ, g.pper, g.per, g.comp);
    EXPECT_FALSE(verify_structure(g).ok);
}

TEST(VerifyStructure, Sweep) {
    for (u32 ell : {2u, 3u, 5u, 7u})
        for (u32 p : {3u, 5u, 7u, 11u, 13u, 17u})
            for (unsigned n = 1; ipow(p, n) <= 5000; ++n) {
                if (p == ell) continue;
                const StructureReport r = verify_structure(build_graph(ell, make_field(p, n)));
                EXPECT_TRUE(r.ok) << ell << "," << p << "," << n << ": " << (r.failures.empty() ? "" : r.failures.front());
            }
}

TEST(InDegree, TreelessCyclesHaveSinglePreimages) {
    // lambda- = 0 for (3, 53, 1): every minus-branch vertex has in-degree 1
    const FuncGraph g = build_graph(3, make_field(53, 1));
    std::vector<u32> indeg(g.size(), 0);
    for (u32 s : g.succ) ++indeg[s];
    for (u32 i = 0; i < g.size(); ++i)
        if (g.branch[i] == Branch::minus && g.divisor(i).value() > 2) {
            EXPECT_EQ(indeg[i], 1u) << i;
        }
}

TEST(InDegree, Sweep) {
    for (u32 ell : {2u, 3u, 5u, 7u})
        for (u32 p : {3u, 5u, 7u, 11u, 13u, 29u, 53u})
            for (unsigned n = 1; ipow(p, n) <= 5000; ++n) {
                if (p == ell) continue;
                const CheckResult r = check_indegree(build_graph(ell, make_field(p, n)));
                EXPECT_TRUE(r.ok) << ell << "," << p << "," << n << ": " << r.detail;
            }
}

TEST(ExportDot, SpecExamples) {
    const FuncGraph g = build_graph(2, make_field(3, 1));
    const std::string dot = export_dot(g);
    EXPECT_NE(dot.find("digraph G_2_3_1 {"), std::string::npos);
    EXPECT_NE(dot.find("  0 -> 1;"), std::string::npos);
    EXPECT_NE(dot.find("  1 -> 2;"), std::string::npos);
    EXPECT_NE(dot.find("  2 -> 2;"), std::string::npos);
}

TEST(ExportDot, NodeCountAndFilter) {
    const FuncGraph g = build_graph(3, make_field(53, 1));
    const std::regex node(R"(^  \d+ \[label)");
    auto count_nodes = [&](const std::string& text) {
        std::size_t c = 0;
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);) c += std::regex_search(line, node);
        return c;
    };
    EXPECT_EQ(count_nodes(export_dot(g)), 53u);
    // the two 6-cycles of divisor 52
    EXPECT_EQ(count_nodes(export_dot(g, fi({{2, 2}, {13, 1}}))), 12u);
    // 2 and -2 with their trees
    EXPECT_EQ(count_nodes(export_dot(g, FactoredInt())), 14u);
    EXPECT_THROW(export_dot(g, fi({{5, 1}})), std::invalid_argument);
}

TEST(ExportDot, F29ColorsByWeight) {
    // every vertex of G(2,29,1) lies in F_29: weight 1, one color
    const std::string dot = export_dot(build_graph(2, make_field(29, 1)));
    EXPECT_EQ(dot.find("fillcolor=red"), std::string::npos);
    // the component of 2 over F_29^2 carries both base-field and quadratic points
    const FuncGraph g2 = build_graph(2, make_field(29, 2));
    const std::string d2 = export_dot(g2, FactoredInt());
    EXPECT_NE(d2.find("fillcolor=green"), std::string::npos);
    EXPECT_NE(d2.find("fillcolor=red"), std::string::npos);
}

TEST(ExportDot, Deterministic) {
    const FuncGraph g = build_graph(5, make_field(11, 2));
    EXPECT_EQ(export_dot(g), export_dot(g));
}
