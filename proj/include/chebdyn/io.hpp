#ifndef CHEBDYN_IO_HPP
#define CHEBDYN_IO_HPP

// JSON and plain-table renderings. Integers beyond 64 bits are emitted as
// decimal strings.

#include <chebdyn/factor.hpp>
#include <chebdyn/predict.hpp>
#include <chebdyn/summary.hpp>
#include <chebdyn/verify.hpp>

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace chebdyn {

using json = nlohmann::ordered_json;

inline json json_u128(u128 v) {
    if (v <= std::numeric_limits<u64>::max()) return static_cast<u64>(v);
    return to_string(v);
}

inline json to_json(const GraphSummary& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        json o;
        o["divisor"] = r.divisor.str();
        o["branch"] = to_string(r.branch);
        o["points"] = json_u128(r.points);
        if (r.period) o["period"] = *r.period;
        o["preperiod"] = r.preperiod;
        o["weight"] = r.weight;
        if (r.cycles) o["cycles"] = json_u128(*r.cycles);
        rows.push_back(std::move(o));
    }
    return rows;
}

inline json to_json(const StructureParams& s) {
    json o;
    o["ell"] = s.ell;
    o["p"] = s.p;
    o["n"] = s.n;
    o["lambda_minus"] = s.lambda_minus;
    o["omega_minus"] = json_u128(s.omega_minus);
    o["lambda_plus"] = s.lambda_plus;
    o["omega_plus"] = json_u128(s.omega_plus);
    o["lambda_m"] = s.lambda_m;
    o["omega_m"] = json_u128(s.omega_m);
    o["mu"] = s.mu;
    o["D1"] = s.d1 ? json_u128(*s.d1) : json("p^" + std::to_string(s.mu) + (s.d1_sign < 0 ? "-1" : "+1"));
    o["D2"] = s.d2 ? json_u128(*s.d2) : json("p^" + std::to_string(s.mu) + (s.d1_sign < 0 ? "+1" : "-1"));
    o["v"] = s.v;
    return o;
}

inline json to_json(const FactorPattern& f) {
    json a = json::array();
    for (const auto& e : f.entries()) a.push_back({{"degree", json_u128(e.degree)}, {"multiplicity", e.multiplicity}, {"count", json_u128(e.count)}});
    return a;
}

inline json to_json(const DecompReport& r) {
    json a = json::array();
    for (const auto& lv : r.levels) {
        json primes = json::array();
        for (const auto& [deg, cnt] : lv.primes) primes.push_back({{"degree", json_u128(deg)}, {"count", json_u128(cnt)}});
        json flags = json::array();
        if (lv.splits_completely) flags.push_back("splits_completely");
        if (lv.inert) flags.push_back("inert");
        a.push_back({{"level", lv.level}, {"primes", std::move(primes)}, {"flags", std::move(flags)}});
    }
    return a;
}

inline json to_json(const std::vector<WeightRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) a.push_back({{"preperiod", r.preperiod}, {"D1", json_u128(r.d1)}, {"D2", json_u128(r.d2)}});
    return a;
}

inline json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json figs = json::array();
    for (const auto& d : r.figure_diffs)
        figs.push_back({{"divisor", d.divisor}, {"column", d.column}, {"printed", d.printed}, {"computed", d.computed}});
    json o;
    o["ell"] = r.ell;
    o["p"] = r.p;
    o["n"] = r.n;
    o["ok"] = r.ok();
    o["report"] = r.headline();
    o["checks"] = std::move(checks);
    o["figure_discrepancies"] = std::move(figs);
    o["notes"] = r.notes;
    return o;
}

/// Minimal fixed-width table writer.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void rule() { rules_.push_back(rows_.size()); }

    std::string str() const {
        std::vector<std::size_t> w;
        for (const auto& r : rows_) {
            if (w.size() < r.size()) w.resize(r.size(), 0);
            for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
        }
        std::size_t total = 0;
        for (auto x : w) total += x + 3;
        const std::string line(total > 3 ? total - 3 : 0, '-');
        std::ostringstream os;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (std::find(rules_.begin(), rules_.end(), k) != rules_.end()) os << line << "\n";
            const auto& r = rows_[k];
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << std::setw(static_cast<int>(w[i])) << r[i];
                if (i + 1 < r.size()) os << " | ";
            }
            os << "\n";
            if (k == 0) os << line << "\n";
        }
        return os.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> rules_;
};

/// Same columns as the published divisor tables, grouped minus then plus.
inline std::string render_table(const GraphSummary& s) {
    std::ostringstream os;
    os << "l = " << s.ell << ", p = " << s.p << ", n = " << s.n << "\n";
    TextTable t({"Divisor", "Branch", "Points", "Period", "Preperiod", "Weight", "Cycles"});
    std::optional<u128> prev_family;
    for (const auto& r : s.rows) {
        const u128 fam = r.divisor.without(s.ell).value();
        if (prev_family && fam != *prev_family) t.rule();
        prev_family = fam;
        t.add({r.divisor.str(), to_string(r.branch), to_string(r.points), r.period ? std::to_string(*r.period) : "-", std::to_string(r.preperiod),
               std::to_string(r.weight), r.cycles ? to_string(*r.cycles) : "-"});
    }
    os << t.str();
    return os.str();
}

inline std::string render_table(const StructureParams& s) {
    TextTable t({"Parameter", "Value"});
    const json j = to_json(s);
    for (auto it = j.begin(); it != j.end(); ++it) t.add({it.key(), it.value().is_string() ? it.value().get<std::string>() : it.value().dump()});
    return t.str();
}

inline std::string render_table(const FactorPattern& f) {
    TextTable t({"Degree", "Multiplicity", "Count"});
    for (const auto& e : f.entries()) t.add({to_string(e.degree), std::to_string(e.multiplicity), to_string(e.count)});
    return t.str();
}

inline std::string render_table(const DecompReport& r) {
    TextTable t({"Level", "Primes (degree x count)", "Flags"});
    for (const auto& lv : r.levels) {
        std::string primes;
        for (const auto& [deg, cnt] : lv.primes) primes += (primes.empty() ? "" : ", ") + to_string(deg) + " x " + to_string(cnt);
        std::string flags = lv.splits_completely ? "splits completely" : (lv.inert ? "inert" : "");
        t.add({std::to_string(lv.level), primes, flags});
    }
    return t.str();
}

inline std::string render_table(const std::vector<WeightRow>& rows) {
    TextTable t({"Preperiod", "Divisor of D1", "Divisor of D2"});
    for (const auto& r : rows) t.add({std::to_string(r.preperiod), to_string(r.d1), to_string(r.d2)});
    return t.str();
}

inline std::string render_table(const VerifyReport& r) {
    std::ostringstream os;
    os << r.headline() << "\n";
    TextTable t({"Check", "Result", "Detail"});
    for (const auto& c : r.checks) t.add({c.name, c.ok ? "ok" : "FAIL", c.detail});
    os << t.str();
    for (const auto& d : r.figure_diffs) os << "printed figure differs: " << d.str() << "\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace chebdyn

#endif  // CHEBDYN_IO_HPP
