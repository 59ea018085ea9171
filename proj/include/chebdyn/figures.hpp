#ifndef CHEBDYN_FIGURES_HPP
#define CHEBDYN_FIGURES_HPP

// Published divisor-class tables for G(3,53,1) and G(2,3,4), transcribed
// cell for cell, and a comparison against a computed summary. A family's
// cycle count is printed once, on its periodic row.

#include <chebdyn/arith.hpp>
#include <chebdyn/summary.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chebdyn {

struct PrintedRow {
    u64 divisor;
    u64 points;
    std::optional<u64> period;
    unsigned preperiod;
    std::optional<unsigned> weight;
    std::optional<u64> cycles;
};

struct PrintedTable {
    u32 ell;
    u32 p;
    unsigned n;
    std::vector<PrintedRow> rows;
};

inline const std::vector<PrintedTable>& printed_tables() {
    static const std::vector<PrintedTable> tables = {
        {3, 53, 1,
         {
             {4, 1, 1, 0, std::nullopt, 1},
             {13, 6, 3, 0, std::nullopt, 2},
             {26, 6, 3, 0, std::nullopt, 2},
             {52, 12, 6, 0, std::nullopt, 2},
             {1, 1, 1, 0, std::nullopt, 1},
             {3, 1, std::nullopt, 1, std::nullopt, std::nullopt},
             {9, 3, std::nullopt, 2, std::nullopt, std::nullopt},
             {27, 9, std::nullopt, 3, std::nullopt, std::nullopt},
             {2, 1, 1, 0, std::nullopt, 1},
             {6, 1, std::nullopt, 1, std::nullopt, std::nullopt},
             {18, 3, std::nullopt, 2, std::nullopt, std::nullopt},
             {54, 9, std::nullopt, 3, std::nullopt, std::nullopt},
         }},
        {2, 3, 4,
         {
             {1, 1, 1, 0, 1, 1},
             {2, 1, std::nullopt, 1, 1, std::nullopt},
             {4, 1, std::nullopt, 2, 1, std::nullopt},
             {8, 2, std::nullopt, 3, 2, std::nullopt},
             {16, 4, std::nullopt, 4, 4, std::nullopt},
             {5, 2, 2, 0, 2, 1},
             {10, 2, std::nullopt, 1, 2, std::nullopt},
             {20, 4, std::nullopt, 2, 4, std::nullopt},
             {40, 8, std::nullopt, 3, 4, std::nullopt},
             {80, 16, std::nullopt, 4, 4, std::nullopt},
             {41, 20, 20, 0, 4, 1},
             {82, 20, std::nullopt, 1, 4, std::nullopt},
         }},
    };
    return tables;
}

inline const PrintedTable* find_printed_table(u32 ell, u32 p, unsigned n) {
    for (const auto& t : printed_tables())
        if (t.ell == ell && t.p == p && t.n == n) return &t;
    return nullptr;
}

struct FigureCellDiff {
    u64 divisor;
    std::string column;
    std::string printed;
    std::string computed;

    std::string str() const { return "d = " + std::to_string(divisor) + ": " + column + " printed " + printed + ", computed " + computed; }
};

/// Cell-level differences between a computed summary and the printed table,
/// in printed row order. Missing or extra rows are reported as such.
inline std::vector<FigureCellDiff> compare_to_printed(const GraphSummary& s, const PrintedTable& fig) {
    std::vector<FigureCellDiff> out;
    auto opt_str = [](const auto& o) { return o ? std::to_string(*o) : std::string("-"); };
    for (const auto& pr : fig.rows) {
        const SummaryRow* row = nullptr;
        for (const auto& r : s.rows)
            if (r.divisor.value() == pr.divisor) row = &r;
        if (!row) {
            out.push_back({pr.divisor, "row", "present", "absent"});
            continue;
        }
        if (row->points != pr.points) out.push_back({pr.divisor, "points", std::to_string(pr.points), to_string(row->points)});
        if (row->period != pr.period) out.push_back({pr.divisor, "period", opt_str(pr.period), opt_str(row->period)});
        if (row->preperiod != pr.preperiod) out.push_back({pr.divisor, "preperiod", std::to_string(pr.preperiod), std::to_string(row->preperiod)});
        if (pr.weight && row->weight != *pr.weight) out.push_back({pr.divisor, "weight", std::to_string(*pr.weight), std::to_string(row->weight)});
        if (pr.cycles) {
            const std::string got = row->cycles ? to_string(*row->cycles) : std::string("-");
            if (!row->cycles || *row->cycles != *pr.cycles) out.push_back({pr.divisor, "cycles", std::to_string(*pr.cycles), got});
        }
    }
    for (const auto& r : s.rows) {
        bool printed = false;
        for (const auto& pr : fig.rows) printed = printed || r.divisor.value() == pr.divisor;
        if (!printed) out.push_back({static_cast<u64>(r.divisor.value()), "row", "absent", "present"});
    }
    return out;
}

}  // namespace chebdyn

#endif  // CHEBDYN_FIGURES_HPP
