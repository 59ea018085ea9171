#ifndef CHEBDYN_PREDICT_HPP
#define CHEBDYN_PREDICT_HPP

// Closed-form structure of G(ell, p, n): cycle lengths c(d), the ell-adic
// split of p^n -/+ 1, predicted divisor-class tables, weights of preperiodic
// points, and the density of periodic points. Nothing here enumerates a field.

#include <chebdyn/arith.hpp>
#include <chebdyn/ffield.hpp>
#include <chebdyn/summary.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// c(d): least k >= 1 with ell^k = +-1 (mod d). Taken from the order of ell
/// in (Z/d)^x, halved when -1 lies in the subgroup generated by ell.
inline u128 c_of_d(const FactoredInt& d, u32 ell) {
    if (d.exponent_of(ell) != 0) throw std::invalid_argument("c_of_d: gcd(d, ell) != 1");
    const u128 dv = d.value();
    if (dv <= 2) return 1;
    const u128 ord = mult_order_mod(ell % dv, dv, factored_phi(d));
    if (ord % 2 == 0 && powmod(ell, ord / 2, dv) == dv - 1) return ord / 2;
    return ord;
}

/// nu_ell(p^e + sign) for sign in {-1, +1}, computed modulo growing powers of ell.
inline unsigned nu_pow_pm1(u32 p, u128 e, u32 ell, int sign) {
    unsigned v = 0;
    u128 mod = ell;
    for (;;) {
        const u128 r = powmod(p, e, mod);
        const u128 target = sign < 0 ? 1 % mod : mod - 1;
        if (r != target) return v;
        ++v;
        if (mod > k_factor_limit / ell) throw std::overflow_error("nu_pow_pm1: valuation beyond 96 bits");
        mod *= ell;
    }
}

/// mu: order of p in (Z/ell)^x / {+-1}; 1 for ell = 2.
inline unsigned mu_of(u32 ell, u32 p) {
    if (ell == 2) return 1;
    u64 x = p % ell;
    for (unsigned m = 1;; ++m) {
        if (x == 1 || x == ell - 1) return m;
        x = x * p % ell;
    }
}

struct StructureParams {
    u32 ell = 0;
    u32 p = 0;
    unsigned n = 0;
    unsigned lambda_minus = 0;
    u128 omega_minus = 0;
    unsigned lambda_plus = 0;
    u128 omega_plus = 0;
    unsigned lambda_m = 0;
    u128 omega_m = 0;  // 0 when lambda_m = 0 (no ell-part on either side)
    unsigned mu = 0;
    int d1_sign = 0;  // D1 = p^mu + d1_sign
    std::optional<u128> d1;
    std::optional<u128> d2;
    unsigned v = 0;  // nu_ell(D1)
};

inline void check_pair(u32 ell, u32 p) {
    if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("ell = " + std::to_string(ell) + " is not prime");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not an odd prime");
    if (p == ell) throw RefusedError("p = ell = " + std::to_string(p) + " is excluded");
}

inline StructureParams structure_params(u32 ell, u32 p, unsigned n) {
    check_pair(ell, p);
    if (n == 0) throw std::invalid_argument("structure_params: n must be >= 1");
    StructureParams s;
    s.ell = ell;
    s.p = p;
    s.n = n;
    u128 q = 0;
    try {
        q = ipow(p, n);
    } catch (const std::overflow_error&) {
        throw RefusedError("structure_params: p^n exceeds 2^96");
    }
    if (q + 1 >= k_factor_limit) throw RefusedError("structure_params: p^n exceeds 2^96");
    s.lambda_minus = valuation(q - 1, ell);
    s.omega_minus = (q - 1) / ipow(ell, s.lambda_minus);
    s.lambda_plus = valuation(q + 1, ell);
    s.omega_plus = (q + 1) / ipow(ell, s.lambda_plus);
    s.lambda_m = std::max(s.lambda_minus, s.lambda_plus);
    if (s.lambda_m > 0) s.omega_m = s.lambda_minus >= s.lambda_plus ? s.omega_minus : s.omega_plus;

    s.mu = mu_of(ell, p);
    const unsigned nu_minus = nu_pow_pm1(p, s.mu, ell, -1);
    const unsigned nu_plus = nu_pow_pm1(p, s.mu, ell, +1);
    s.d1_sign = nu_minus >= nu_plus ? -1 : +1;
    s.v = std::max(nu_minus, nu_plus);
    try {
        const u128 pm = ipow(p, s.mu);
        s.d1 = s.d1_sign < 0 ? pm - 1 : pm + 1;
        s.d2 = s.d1_sign < 0 ? pm + 1 : pm - 1;
    } catch (const std::overflow_error&) {
        // p^mu beyond 128 bits: D1, D2 are reported only through mu and v
    }
    return s;
}

/// nu_ell(p^{2n} - 1) = nu_ell(p^{2 mu} - 1) + nu_ell(n) when mu | n, else 0
inline unsigned nu_2n(u32 ell, u32 p, u64 n) {
    check_pair(ell, p);
    const unsigned mu = mu_of(ell, p);
    if (n % mu != 0) return 0;
    return nu_pow_pm1(p, 2 * mu, ell, -1) + valuation(n, ell);
}

/// Least m >= 1 with D | p^m - 1 or D | p^m + 1.
inline unsigned weight_of_divisor(u128 D, u32 p, unsigned limit) {
    if (D <= 2) return 1;
    for (unsigned m = 1; m <= limit; ++m) {
        const u128 r = powmod(p, m, D);
        if (r == 1 || r == D - 1) return m;
    }
    throw std::logic_error("weight_of_divisor: no m <= " + std::to_string(limit));
}

/// The divisor-class table of G(ell, p, n) predicted from p^n -/+ 1 alone.
inline GraphSummary predict_summary(u32 ell, u32 p, unsigned n) {
    structure_params(ell, p, n);  // validates (ell, p, n)
    const u128 q = ipow(p, n);
    GraphSummary out{ell, p, n, {}};
    auto add_row = [&](const FactoredInt& D, Branch br) {
        const u128 dv = D.value();
        SummaryRow r;
        r.divisor = D;
        r.branch = br;
        r.points = dv <= 2 ? 1 : euler_phi(D) / 2;
        r.preperiod = D.exponent_of(ell);
        r.weight = weight_of_divisor(dv, p, n);
        if (r.preperiod == 0) {
            const u128 c = c_of_d(D, ell);
            r.period = static_cast<u64>(c);
            if (dv <= 2) {
                r.cycles = 1;
            } else {
                const u128 phi = euler_phi(D);
                if (phi % (2 * c) != 0) throw std::logic_error("predict_summary: 2c(d) does not divide phi(d) for d = " + D.str());
                r.cycles = phi / (2 * c);
            }
        }
        out.rows.push_back(std::move(r));
    };
    const FactoredInt minus = factor_int(q - 1);
    const FactoredInt plus = factor_int(q + 1);
    for (const auto& D : factored_divisors(minus)) add_row(D, Branch::minus);
    for (const auto& D : factored_divisors(plus))
        if (D.value() > 2) add_row(D, Branch::plus);
    sort_rows(out.rows, ell);
    return out;
}

/// Points of each preperiod from the point-count closed form.
inline std::vector<u128> predicted_point_counts(u32 ell, u32 p, unsigned n) {
    const StructureParams s = structure_params(ell, p, n);
    std::vector<u128> out{(s.omega_minus + s.omega_plus) / 2};
    if (ell == 2) {
        out.push_back((s.omega_minus + s.omega_plus) / 2);
        for (unsigned k = 2; k <= s.lambda_m; ++k) out.push_back(ipow(2, k - 2) * s.omega_m);
    } else {
        for (unsigned k = 1; k <= s.lambda_m; ++k) out.push_back((ell - 1) * ipow(ell, k - 1) * s.omega_m / 2);
    }
    return out;
}

/// Which of D1, D2 the cycle under a preperiodic point corresponds to.
enum class CycleClass { d1, d2 };

inline const char* to_string(CycleClass c) { return c == CycleClass::d1 ? "D1" : "D2"; }

/// Weight of a strictly preperiodic point of preperiod rho in G(ell, p, 2 mu ell^n)
/// whose cycle lies in G(ell, p, 1), from (mu, v) alone.
inline u128 predict_weight(const StructureParams& s, CycleClass cls, unsigned rho, u32 ell, unsigned n) {
    if (rho == 0) throw std::invalid_argument("predict_weight: rho = 0 (periodic points are not covered)");
    const unsigned v = s.v;
    // over F_{p^{2 ell^n}} with ell = 2 the trees reach v + n + 1
    const unsigned top = v + n + (ell == 2 ? 1 : 0);
    if (rho > top) throw std::invalid_argument("predict_weight: rho exceeds " + std::to_string(top));
    const u128 mu = s.mu;
    if (ell != 2) {
        const u128 base = cls == CycleClass::d1 ? mu : 2 * mu;
        return rho <= v ? base : base * ipow(ell, rho - v);
    }
    if (cls == CycleClass::d2) {
        if (rho == 1) return 1;
        return rho <= v ? 2 : ipow(2, rho - v);
    }
    // ell = 2, D1: these points already lie in F_p up to height v
    return rho <= v ? 1 : ipow(2, rho - v);
}

struct WeightRow {
    unsigned preperiod = 0;
    u128 d1 = 0;
    u128 d2 = 0;
};

/// Weights by preperiod for components whose cycles lie in G(ell, p, 1),
/// over the field of degree 2 mu ell^n. Row 0 is the cycle itself (weight 1).
inline std::vector<WeightRow> weight_table(u32 ell, u32 p, unsigned n) {
    const StructureParams s = structure_params(ell, p, 1);
    std::vector<WeightRow> rows{{0, 1, 1}};
    for (unsigned rho = 1; rho <= s.v + n + (ell == 2 ? 1u : 0u); ++rho)
        rows.push_back({rho, predict_weight(s, CycleClass::d1, rho, ell, n), predict_weight(s, CycleClass::d2, rho, ell, n)});
    return rows;
}

inline Rational periodic_density(u32 ell, u32 p, unsigned n) {
    const StructureParams s = structure_params(ell, p, n);
    const BigInt num = BigInt(to_string(s.omega_minus + s.omega_plus));
    const BigInt den = 2 * BigInt(to_string(ipow(p, n)));
    return Rational(num, den);
}

/// 1/(2 ell^lambda-) + 1/(2 ell^lambda+): the large-field form of the density.
inline Rational density_formula(u32 ell, u32 p, unsigned n) {
    const StructureParams s = structure_params(ell, p, n);
    const BigInt a = 2 * boost::multiprecision::pow(BigInt(ell), s.lambda_minus);
    const BigInt b = 2 * boost::multiprecision::pow(BigInt(ell), s.lambda_plus);
    return Rational(1, a) + Rational(1, b);
}

inline Rational tower_limit(u32 ell) {
    if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("tower_limit: ell must be prime");
    return ell == 2 ? Rational(1, 4) : Rational(1, 2);
}

/// a_n = 2^n 3^{n-1} 5^{n-2} ... p_n.
inline BigInt tower_degree(unsigned n) {
    BigInt a = 1;
    unsigned found = 0;
    for (u32 q = 2; found < n; ++q) {
        if (!is_prime(q)) continue;
        a *= boost::multiprecision::pow(BigInt(q), n - found);
        ++found;
    }
    return a;
}

struct TowerLevel {
    unsigned level = 0;
    BigInt degree;          // a_n
    unsigned lambda_m = 0;  // max(lambda-, lambda+) over F_{p^{a_n}}
    Rational density;       // 1/(2 ell^lambda_m) + 1/2, or 1/2^{lambda_m + 1} + 1/4 for ell = 2
    std::string symbolic;
};

inline TowerLevel tower_level(u32 ell, u32 p, unsigned level) {
    check_pair(ell, p);
    TowerLevel t;
    t.level = level;
    t.degree = tower_degree(level);
    const unsigned mu = mu_of(ell, p);
    // nu_ell(a_n) and a_n mod mu without expanding p^{a_n}
    unsigned nu_a = 0;
    BigInt a = t.degree;
    while (a % ell == 0) {
        a /= ell;
        ++nu_a;
    }
    const bool mu_divides = (t.degree % mu) == 0;
    const unsigned nu_total = mu_divides ? nu_pow_pm1(p, 2 * mu, ell, -1) + nu_a : 0;
    t.lambda_m = ell == 2 ? nu_total - 1 : nu_total;
    const BigInt ell_pow = boost::multiprecision::pow(BigInt(ell), t.lambda_m);
    if (ell == 2) {
        t.density = Rational(1, 2 * ell_pow) + Rational(1, 4);
        t.symbolic = "1/2^(" + std::to_string(t.lambda_m) + "+1) + 1/4";
    } else {
        t.density = Rational(1, 2 * ell_pow) + Rational(1, 2);
        t.symbolic = "1/(2*" + std::to_string(ell) + "^" + std::to_string(t.lambda_m) + ") + 1/2";
    }
    return t;
}

}  // namespace chebdyn

#endif  // CHEBDYN_PREDICT_HPP
