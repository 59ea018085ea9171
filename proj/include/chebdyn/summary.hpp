#ifndef CHEBDYN_SUMMARY_HPP
#define CHEBDYN_SUMMARY_HPP

#include <chebdyn/arith.hpp>
#include <chebdyn/ffield.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace chebdyn {

/// One divisor class of G(ell, p, n): every a whose lifted alpha has order
/// `divisor`. Periodic classes carry period and cycle count.
struct SummaryRow {
    FactoredInt divisor;
    Branch branch = Branch::minus;
    u128 points = 0;
    std::optional<u64> period;
    unsigned preperiod = 0;
    unsigned weight = 0;
    std::optional<u128> cycles;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct GraphSummary {
    u32 ell = 0;
    u32 p = 0;
    unsigned n = 0;
    std::vector<SummaryRow> rows;

    u128 total_points() const {
        u128 s = 0;
        for (const auto& r : rows) s += r.points;
        return s;
    }

    /// Number of points of each preperiod, indexed by preperiod.
    std::vector<u128> preperiod_totals() const {
        std::vector<u128> out;
        for (const auto& r : rows) {
            if (out.size() <= r.preperiod) out.resize(r.preperiod + 1, 0);
            out[r.preperiod] += r.points;
        }
        return out;
    }
};

/// Table order: rows are grouped into families sharing the prime-to-ell part
/// d of the divisor; a family belongs to the branch of its deepest member.
/// Minus families come first, then plus; within a family rows ascend in the
/// ell-power.
inline void sort_rows(std::vector<SummaryRow>& rows, u32 ell) {
    std::map<u128, std::pair<unsigned, Branch>> family_branch;  // d -> (max k, branch)
    for (const auto& r : rows) {
        const u128 d = r.divisor.without(ell).value();
        const unsigned k = r.divisor.exponent_of(ell);
        auto it = family_branch.find(d);
        if (it == family_branch.end() || k > it->second.first) family_branch[d] = {k, r.branch};
    }
    auto key = [&](const SummaryRow& r) {
        const u128 d = r.divisor.without(ell).value();
        return std::make_tuple(static_cast<int>(family_branch[d].second), d, r.divisor.exponent_of(ell));
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const SummaryRow& a, const SummaryRow& b) { return key(a) < key(b); });
}

}  // namespace chebdyn

#endif  // CHEBDYN_SUMMARY_HPP
