#ifndef CHEBDYN_FACTOR_HPP
#define CHEBDYN_FACTOR_HPP

// Factorization patterns of T_ell^n(x) - t over F_p: computed (squarefree +
// distinct-degree), predicted from the orbit of t mod p, and the prime
// decomposition they imply in the radical tower.

#include <chebdyn/arith.hpp>
#include <chebdyn/cheb.hpp>
#include <chebdyn/ffield.hpp>
#include <chebdyn/poly.hpp>
#include <chebdyn/predict.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace chebdyn {

struct PatternEntry {
    u128 degree = 0;
    unsigned multiplicity = 1;
    u128 count = 0;
    friend bool operator==(const PatternEntry&, const PatternEntry&) = default;
};

/// Multiset of irreducible factors, stored as sorted (degree, multiplicity)
/// buckets with counts.
class FactorPattern {
public:
    FactorPattern() = default;
    explicit FactorPattern(std::vector<PatternEntry> entries) : e_(std::move(entries)) { normalize(); }

    void add(u128 degree, unsigned multiplicity, u128 count) {
        if (count == 0) return;
        e_.push_back({degree, multiplicity, count});
        normalize();
    }
    void add(const FactorPattern& o) {
        e_.insert(e_.end(), o.e_.begin(), o.e_.end());
        normalize();
    }

    const std::vector<PatternEntry>& entries() const { return e_; }

    /// Degree counted with multiplicity.
    u128 total() const {
        u128 s = 0;
        for (const auto& x : e_) s += x.degree * x.multiplicity * x.count;
        return s;
    }
    u128 factor_count() const {
        u128 s = 0;
        for (const auto& x : e_) s += x.count;
        return s;
    }
    bool all_linear() const {
        return std::all_of(e_.begin(), e_.end(), [](const PatternEntry& x) { return x.degree == 1; });
    }
    bool squarefree() const {
        return std::all_of(e_.begin(), e_.end(), [](const PatternEntry& x) { return x.multiplicity == 1; });
    }
    bool irreducible() const { return e_.size() == 1 && e_[0].count == 1 && e_[0].multiplicity == 1; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ", ";
            s += "(" + to_string(e_[i].degree) + "," + std::to_string(e_[i].multiplicity) + "," + to_string(e_[i].count) + ")";
        }
        return s + "}";
    }

    friend bool operator==(const FactorPattern&, const FactorPattern&) = default;

private:
    void normalize() {
        std::sort(e_.begin(), e_.end(), [](const PatternEntry& a, const PatternEntry& b) {
            return std::tie(a.degree, a.multiplicity) < std::tie(b.degree, b.multiplicity);
        });
        std::vector<PatternEntry> merged;
        for (const auto& x : e_) {
            if (x.count == 0) continue;
            if (!merged.empty() && merged.back().degree == x.degree && merged.back().multiplicity == x.multiplicity)
                merged.back().count += x.count;
            else
                merged.push_back(x);
        }
        e_ = std::move(merged);
    }

    std::vector<PatternEntry> e_;
};

namespace detail {

// p-th root of a polynomial whose derivative vanishes.
inline DensePoly poly_pth_root(const DensePoly& f) {
    const u32 p = f.modulus();
    std::vector<u32> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
    return DensePoly(p, std::move(c));
}

// Rows x^{ip} mod f for i < deg f, by repeated multiplication by x.
inline std::vector<std::vector<u32>> frobenius_matrix(const DensePoly& f) {
    const u32 p = f.modulus();
    const auto d = static_cast<std::size_t>(f.degree());
    const DensePoly fm = f.monic();
    std::vector<std::vector<u32>> rows(d, std::vector<u32>(d, 0));
    std::vector<u32> cur(d, 0);
    cur[0] = 1;
    rows[0] = cur;
    for (std::size_t i = 1; i < d; ++i) {
        for (u32 step = 0; step < p; ++step) {
            // cur <- x * cur mod fm
            const u64 top = cur[d - 1];
            for (std::size_t j = d - 1; j > 0; --j) cur[j] = static_cast<u32>((cur[j - 1] + u64(p - top) * fm[j] % p) % p);
            cur[0] = static_cast<u32>(u64(p - top) * fm[0] % p);
        }
        rows[i] = cur;
    }
    return rows;
}

// h^p mod f given the Frobenius rows of f.
inline DensePoly apply_frobenius(const std::vector<std::vector<u32>>& rows, const DensePoly& h, u32 p) {
    const std::size_t d = rows.size();
    std::vector<u64> acc(d, 0);
    const u64 sq = u64(p - 1) * (p - 1);
    const u64 batch = sq == 0 ? ~u64(0) : (~u64(0) - sq) / sq;
    u64 pending = 0;
    for (std::size_t i = 0; i < d && i < h.coeffs().size(); ++i) {
        const u64 hi = h.coeffs()[i];
        if (hi == 0) continue;
        const auto& row = rows[i];
        for (std::size_t j = 0; j < d; ++j) acc[j] += hi * row[j];
        if (++pending >= batch) {
            for (auto& a : acc) a %= p;
            pending = 0;
        }
    }
    std::vector<u32> out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<u32>(acc[j] % p);
    return DensePoly(p, std::move(out));
}

}  // namespace detail

/// f = prod g_i^i with g_i squarefree and pairwise coprime; returns (i, g_i)
/// for nonconstant g_i. Handles p-th powers in characteristic p.
inline std::vector<std::pair<unsigned, DensePoly>> squarefree_decomposition(const DensePoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    const u32 p = f.modulus();
    std::vector<std::pair<unsigned, DensePoly>> out;
    if (f.degree() <= 0) return out;
    const DensePoly fm = f.monic();
    DensePoly c = poly_gcd(fm, derivative(fm));
    DensePoly w = fm / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        DensePoly y = poly_gcd(w, c);
        DensePoly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(i, fac.monic());
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [j, g] : squarefree_decomposition(detail::poly_pth_root(c))) out.emplace_back(j * p, std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// (degree, number of irreducible factors of that degree) of a squarefree f.
inline std::vector<std::pair<u64, u64>> distinct_degree_counts(const DensePoly& f) {
    const u32 p = f.modulus();
    std::vector<std::pair<u64, u64>> out;
    if (f.degree() <= 0) return out;
    const auto rows = detail::frobenius_matrix(f);
    const DensePoly x = DensePoly::x(p);
    DensePoly rest = f.monic();
    DensePoly h = x % f;  // x^{p^k} mod f
    for (u64 k = 1; rest.degree() > 0; ++k) {
        if (2 * k > static_cast<u64>(rest.degree())) {
            out.emplace_back(static_cast<u64>(rest.degree()), 1);
            break;
        }
        h = detail::apply_frobenius(rows, h, p);
        DensePoly g = poly_gcd(rest, h - x);
        if (g.degree() > 0) {
            out.emplace_back(k, static_cast<u64>(g.degree()) / k);
            rest = rest / g;
            h = h % rest;
        }
    }
    return out;
}

/// Pattern of an arbitrary nonzero polynomial over F_p.
inline FactorPattern factor_pattern_of(const DensePoly& f) {
    FactorPattern pat;
    for (const auto& [mult, g] : squarefree_decomposition(f))
        for (const auto& [deg, cnt] : distinct_degree_counts(g)) pat.add(deg, mult, cnt);
    return pat;
}

inline FactorPattern factor_pattern_actual(u32 ell, u32 p, unsigned n, std::int64_t t, std::size_t cap = k_default_degree_cap) {
    check_pair(ell, p);
    if (n == 0) throw std::invalid_argument("factor_pattern_actual: n must be >= 1");
    return factor_pattern_of(cheb_iterate_minus_t(ell, n, t, p, cap));
}

struct TClass {
    unsigned rho = 0;           // preperiod of t mod p under T_ell
    CycleClass cls = CycleClass::d1;
    bool special = false;       // t = +-2 mod p
    FactoredInt order;          // order of the lifted alpha
};

/// Preperiod of t mod p and whether its eventual cycle belongs to D1 or D2.
inline TClass classify_t(u32 ell, u32 p, std::int64_t t) {
    check_pair(ell, p);
    const FieldCtx F = make_field(p, 1);
    const FFElem tb = F.from_int(t);
    const StructureParams sp = structure_params(ell, p, 1);
    TClass out;
    out.order = alpha_order(tb, F).order;
    out.rho = out.order.exponent_of(ell);
    const u128 d = out.order.without(ell).value();
    const u32 r = reduce_signed(t, p);
    out.special = r == 2 % p || r == p - 2;
    if (d > 2) {
        const u128 pm = powmod(p, sp.mu, d);  // p^mu mod d
        const bool divides_minus = pm == 1;
        const bool in_d1 = sp.d1_sign < 0 ? divides_minus : pm == d - 1;
        out.cls = in_d1 ? CycleClass::d1 : CycleClass::d2;
    }
    return out;
}

namespace detail {

inline u128 checked_pow(u128 base, u64 e) {
    try {
        return ipow(base, e);
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("pattern exponent too large");
    }
}

// Roots above a periodic t: (ell-1) ell^{k-1} at preperiod k, of weight
// deg_low for k <= v and deg_low ell^{k-v} beyond. count_unit is
// (ell-1)/(roots per factor) at the low weight.
inline void add_periodic_tail(FactorPattern& pat, u32 ell, unsigned n, unsigned v, u128 deg_low, u128 count_unit, unsigned mult) {
    const unsigned m = std::min(n, v);
    u128 roots = 0;
    for (unsigned k = 0; k < m; ++k) roots += checked_pow(ell, k);
    pat.add(deg_low, mult, roots * count_unit);
    for (unsigned k = 1; k + v <= n; ++k) {
        const u128 deg = deg_low * checked_pow(ell, k);
        pat.add(deg, mult, count_unit * checked_pow(ell, v - 1));
    }
}

}  // namespace detail

/// Pattern of T_ell^n(x) - t mod p read off from the orbit of t mod p and
/// the weights of its preimages. No polynomial arithmetic.
inline FactorPattern factor_pattern_predicted(u32 ell, u32 p, unsigned n, std::int64_t t) {
    using detail::checked_pow;
    check_pair(ell, p);
    if (n == 0) throw std::invalid_argument("factor_pattern_predicted: n must be >= 1");
    const StructureParams sp = structure_params(ell, p, 1);
    const TClass tc = classify_t(ell, p, t);
    const unsigned v = sp.v;
    const unsigned mu = sp.mu;
    const unsigned rho = tc.rho;
    FactorPattern pat;

    // rho > 0 off the critical values: ell^n roots at preperiod rho + n
    auto deep_tree = [&](unsigned rho_eff, u128 low_degree) {
        if (rho_eff + n <= v) {
            pat.add(low_degree, 1, checked_pow(ell, n) / low_degree);
        } else {
            pat.add(checked_pow(ell, n - v + rho_eff), 1, checked_pow(ell, v - rho_eff));
        }
    };

    if (ell != 2) {
        const u32 r = reduce_signed(t, p);
        const bool is_pm2 = r == 2 || r == p - 2;
        if (rho > 0) {
            deep_tree(rho, 1);
        } else if (is_pm2) {
            pat.add(1, 1, 1);
            detail::add_periodic_tail(pat, ell, n, v, mu, (ell - 1) / (2 * mu), 2);
        } else if (tc.cls == CycleClass::d1) {
            pat.add(1, 1, 1);
            detail::add_periodic_tail(pat, ell, n, v, mu, (ell - 1) / mu, 1);
        } else {
            pat.add(1, 1, 1);
            detail::add_periodic_tail(pat, ell, n, v, 2 * mu, (ell - 1) / (2 * mu), 1);
        }
        return pat;
    }

    const u32 r = reduce_signed(t, p);
    const bool is_minus2 = r == p - 2;
    const bool is_plus2 = r == 2;
    // T_2^j(x) + 2: the roots sit over 0 (preperiod 2, D1 class), each twice
    auto minus_two_level = [&](unsigned j) {
        FactorPattern q;
        if (j + 1 <= v)
            q.add(1, 2, checked_pow(2, j - 1));
        else
            q.add(checked_pow(2, j - v + 1), 2, checked_pow(2, v - 2));
        return q;
    };
    if (is_minus2) {
        pat.add(minus_two_level(n));
    } else if (is_plus2) {
        // T_2^n - 2 = (x - 2) prod_{j<n} (T_2^j + 2)
        pat.add(1, 1, 2);
        for (unsigned j = 1; j < n; ++j) pat.add(minus_two_level(j));
    } else if (rho > 0 && tc.cls == CycleClass::d1) {
        deep_tree(rho, 1);
    } else if (rho > 0) {
        // D2 trees: weight 2 up to preperiod v, then 2^{rho - v}
        if (rho + n <= v)
            pat.add(2, 1, checked_pow(2, n - 1));
        else
            pat.add(checked_pow(2, n - v + rho), 1, checked_pow(2, v - rho));
    } else if (tc.cls == CycleClass::d1) {
        pat.add(1, 1, 1);
        detail::add_periodic_tail(pat, 2, n, v, 1, 1, 1);
    } else {
        // preperiod 0 and 1 roots are linear, 2..v quadratic, v + k of degree 2^k
        pat.add(1, 1, 2);
        const unsigned m = std::min(n, v);
        if (m >= 2) pat.add(2, 1, checked_pow(2, m - 1) - 1);
        for (unsigned k = 1; k + v <= n; ++k) pat.add(checked_pow(2, k), 1, checked_pow(2, v - 1));
    }
    return pat;
}

/// Every iterate T_ell^n(x) - t is irreducible mod p (hence over Z) when
/// t mod p sits at the maximal height v of a D1 tree.
inline bool all_iterates_irreducible(u32 ell, u32 p, std::int64_t t) {
    check_pair(ell, p);
    const StructureParams sp = structure_params(ell, p, 1);
    const TClass tc = classify_t(ell, p, t);
    if (tc.special && ell != 2) return false;
    if (ell == 2 && (reduce_signed(t, p) == 2 || reduce_signed(t, p) == p - 2)) return false;
    return sp.v > 0 && tc.rho == sp.v && tc.cls == CycleClass::d1;
}

struct DecompLevel {
    unsigned level = 0;
    std::vector<std::pair<u128, u128>> primes;  // (residue degree, count)
    bool splits_completely = false;
    bool inert = false;
};

struct DecompReport {
    u32 ell = 0;
    std::int64_t t = 0;
    u32 p = 0;
    u32 certified_by = 0;  // auxiliary prime witnessing irreducibility of all iterates
    std::vector<DecompLevel> levels;
};

/// Smallest odd prime q <= bound (q != ell) at which all iterates are
/// irreducible mod q, or nullopt.
inline std::optional<u32> irreducibility_witness(u32 ell, std::int64_t t, u32 bound = 1000) {
    for (u32 q = 3; q <= bound; q += 2) {
        if (q == ell || !is_prime(q)) continue;
        if (all_iterates_irreducible(ell, q, t)) return q;
    }
    return std::nullopt;
}

/// Residue degrees of the primes over p in K_n = Q(theta), T_ell^n(theta) = t,
/// for n = 1..max_level.
inline DecompReport decompose_prime(u32 ell, std::int64_t t, u32 p, unsigned max_level) {
    check_pair(ell, p);
    if (max_level == 0) throw std::invalid_argument("decompose_prime: max level must be >= 1");
    if (t == 2 || t == -2) throw RefusedError("decompose_prime: t = +-2 gives reducible iterates");
    const auto ram = ramified_candidates(ell, t);
    if (ram.count(p)) throw RefusedError("decompose_prime: p = " + std::to_string(p) + " may ramify (divides ell(4 - t^2))");
    const auto witness = irreducibility_witness(ell, t);
    if (!witness) throw RefusedError("decompose_prime: irreducibility of all iterates not certified");
    DecompReport rep{ell, t, p, *witness, {}};
    for (unsigned n = 1; n <= max_level; ++n) {
        const FactorPattern pat = factor_pattern_predicted(ell, p, n, t);
        if (!pat.squarefree()) throw std::logic_error("decompose_prime: repeated factor at an unramified prime");
        DecompLevel lv;
        lv.level = n;
        for (const auto& e : pat.entries()) lv.primes.emplace_back(e.degree, e.count);
        lv.splits_completely = pat.all_linear();
        lv.inert = pat.irreducible();
        rep.levels.push_back(std::move(lv));
    }
    return rep;
}

/// T_ell^n - 2 splits into linear factors mod p exactly when p = +-1 mod ell^n.
/// Returns true when the computed factorization agrees with the congruence.
inline bool verify_reciprocity(u32 ell, unsigned n, u32 p, std::size_t cap = k_default_degree_cap) {
    const bool splits = factor_pattern_actual(ell, p, n, 2, cap).all_linear();
    const u128 m = detail::checked_pow(ell, n);
    const u128 r = p % m;
    return splits == (r == 1 % m || r == m - 1);
}

/// The ell = 2, t = 0 tower Q(zeta_{2^{n+2}})^+: splitting mod p against p = +-1 mod 2^{n+2}.
inline bool verify_reciprocity_z2(unsigned n, u32 p, std::size_t cap = k_default_degree_cap) {
    const bool splits = factor_pattern_actual(2, p, n, 0, cap).all_linear();
    const u128 m = detail::checked_pow(2, n + 2);
    const u128 r = p % m;
    return splits == (r == 1 || r == m - 1);
}

}  // namespace chebdyn

#endif  // CHEBDYN_FACTOR_HPP
