#ifndef CHEBDYN_CHEB_HPP
#define CHEBDYN_CHEB_HPP

// Chebyshev polynomials T_d with T_d(z + 1/z) = z^d + z^-d: evaluation,
// coefficients mod p, the critical factorizations T_l -/+ 2, and discriminants
// of T_l^n(x) - t in factored form.

#include <chebdyn/arith.hpp>
#include <chebdyn/ffield.hpp>
#include <chebdyn/poly.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebdyn {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t k_default_degree_cap = std::size_t(1) << 16;

/// T_d(a) in O(log d) ring operations from the pair (T_k, T_{k+1}):
/// T_2k = T_k^2 - 2 and T_2k+1 = T_k T_k+1 - a.
inline FFElem cheb_eval(u128 d, const FFElem& a, const FieldCtx& ctx) {
    const FFElem two = ctx.from_int(2);
    FFElem lo = two;  // T_k
    FFElem hi = a;    // T_{k+1}
    int top = 127;
    while (top >= 0 && ((d >> top) & 1) == 0) --top;
    for (int bit = top; bit >= 0; --bit) {
        FFElem mid = ctx.sub(ctx.mul(lo, hi), a);
        if ((d >> bit) & 1) {
            hi = ctx.sub(ctx.mul(hi, hi), two);
            lo = std::move(mid);
        } else {
            lo = ctx.sub(ctx.mul(lo, lo), two);
            hi = std::move(mid);
        }
    }
    return lo;
}

/// Coefficients of T_d mod p from T_0 = 2, T_1 = x, T_{k+1} = x T_k - T_{k-1}.
inline DensePoly cheb_coeffs(std::size_t d, u32 p, std::size_t cap = k_default_degree_cap) {
    if (d > cap) throw RefusedError("cheb_coeffs: degree " + std::to_string(d) + " exceeds cap " + std::to_string(cap));
    std::vector<u32> prev{2 % p};  // T_0
    if (d == 0) return DensePoly(p, prev);
    std::vector<u32> cur{0, 1};  // T_1
    for (std::size_t k = 1; k < d; ++k) {
        std::vector<u32> next(k + 2, 0);
        for (std::size_t i = 0; i <= k; ++i) next[i + 1] = cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] = static_cast<u32>((u64(next[i]) + p - prev[i]) % p);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return DensePoly(p, std::move(cur));
}

/// T_ell^n(x) - t over F_p by n-fold composition of T_ell.
inline DensePoly cheb_iterate_minus_t(u32 ell, unsigned n, std::int64_t t, u32 p, std::size_t cap = k_default_degree_cap) {
    const u128 deg = ipow(ell, n);
    if (deg > cap) throw RefusedError("degree ell^n = " + to_string(deg) + " exceeds cap " + std::to_string(cap));
    const DensePoly base = cheb_coeffs(ell, p, cap);
    DensePoly f = DensePoly::x(p);
    for (unsigned i = 0; i < n; ++i) f = compose(base, f);
    return f - DensePoly::from_signed(p, {t});
}

namespace detail {

// Monic square root of a monic polynomial of even degree, top-down.
inline DensePoly poly_sqrt_monic(const DensePoly& f) {
    const u32 p = f.modulus();
    if (f.degree() < 0 || f.degree() % 2 != 0 || !f.is_monic()) throw std::logic_error("poly_sqrt_monic: not a monic square");
    const std::size_t m = static_cast<std::size_t>(f.degree() / 2);
    std::vector<u32> s(m + 1, 0);
    s[m] = 1;
    const u64 inv2 = (p + 1) / 2;
    for (std::size_t k = 1; k <= m; ++k) {
        // coefficient of x^{2m-k} in s^2 is 2 s_m s_{m-k} + sum of known terms
        u64 known = 0;
        for (std::size_t i = m - k + 1; i < m; ++i) {
            const std::size_t j = 2 * m - k - i;
            if (j >= m - k + 1 && j <= m - 1) known = (known + u64(s[i]) * s[j]) % p;
        }
        const u64 target = f[2 * m - k];
        s[m - k] = static_cast<u32>((target + p - known) % p * inv2 % p);
    }
    return DensePoly(p, std::move(s));
}

}  // namespace detail

struct CriticalFactorization {
    std::optional<DensePoly> g;  // T_l - 2 = (x - 2) g^2, absent for l = 2
    DensePoly h;                 // T_l + 2 = (x + 2) h^2, or T_2 + 2 = h^2
};

/// The square-part identities behind the critical values +-2. Throws
/// std::logic_error if an identity fails to hold.
inline CriticalFactorization critical_factorization(u32 ell, u32 p) {
    if (p == ell) throw RefusedError("critical_factorization: p = ell");
    if (p % 2 == 0) throw std::invalid_argument("critical_factorization: p must be odd");
    const DensePoly t = cheb_coeffs(ell, p);
    const DensePoly two = DensePoly::constant(p, 2);
    const DensePoly x = DensePoly::x(p);
    if (ell == 2) {
        CriticalFactorization cf{std::nullopt, x};
        if (!(t + two == x * x)) throw std::logic_error("critical_factorization: T_2 + 2 != x^2");
        if (!(t - two == (x - two) * (x + two))) throw std::logic_error("critical_factorization: T_2 - 2 != (x-2)(x+2)");
        return cf;
    }
    auto split = [&](const DensePoly& num, const DensePoly& lin) {
        auto [q, r] = divmod(num, lin);
        if (!r.is_zero()) throw std::logic_error("critical_factorization: linear factor missing");
        DensePoly s = detail::poly_sqrt_monic(q);
        if (!(lin * s * s == num)) throw std::logic_error("critical_factorization: square part identity fails");
        return s;
    };
    DensePoly g = split(t - two, x - two);
    DensePoly h = split(t + two, x + two);
    return {std::move(g), std::move(h)};
}

/// sign * ell^e_l * (2 - t)^e_m * (2 + t)^e_p, kept symbolic.
struct SignedFactoredInt {
    int sign = 1;
    u32 ell = 0;
    std::int64_t t = 0;
    u128 exp_ell = 0;
    u128 exp_two_minus_t = 0;
    u128 exp_two_plus_t = 0;

    bool degenerate() const { return sign == 0; }

    /// log2 upper bound of the magnitude, used to decide expansion.
    double log2_bound() const {
        auto lg = [](std::int64_t v) { return v == 0 ? 0.0 : std::log2(static_cast<double>(v < 0 ? -v : v)); };
        return static_cast<double>(exp_ell) * lg(ell) + static_cast<double>(exp_two_minus_t) * lg(2 - t) +
               static_cast<double>(exp_two_plus_t) * lg(2 + t);
    }

    /// Exact value when it fits below 2^limit_bits.
    std::optional<BigInt> expand(double limit_bits = 512) const {
        if (sign == 0) return BigInt(0);
        if (log2_bound() >= limit_bits) return std::nullopt;
        BigInt v = sign;
        v *= boost::multiprecision::pow(BigInt(ell), static_cast<unsigned>(exp_ell));
        v *= boost::multiprecision::pow(BigInt(2 - t), static_cast<unsigned>(exp_two_minus_t));
        v *= boost::multiprecision::pow(BigInt(2 + t), static_cast<unsigned>(exp_two_plus_t));
        return v;
    }

    /// Prime factorization of the magnitude (exponents may be large).
    std::vector<std::pair<u128, u128>> prime_powers() const {
        std::vector<std::pair<u128, u128>> out;
        auto add = [&](std::int64_t base, u128 e) {
            if (e == 0 || base == 0) return;
            const u128 mag = static_cast<u128>(base < 0 ? -static_cast<__int128>(base) : base);
            const FactoredInt fm = factor_int(mag);
            for (const auto& [q, k] : fm.terms()) out.emplace_back(q, e * k);
        };
        add(ell, exp_ell);
        add(2 - t, exp_two_minus_t);
        add(2 + t, exp_two_plus_t);
        std::sort(out.begin(), out.end());
        std::vector<std::pair<u128, u128>> merged;
        for (const auto& pe : out) {
            if (!merged.empty() && merged.back().first == pe.first)
                merged.back().second += pe.second;
            else
                merged.push_back(pe);
        }
        return merged;
    }

    std::string str() const {
        auto atom = [](const std::string& base, u128 e) { return e == 1 ? base : base + "^" + to_string(e); };
        std::string s = sign < 0 ? "-" : (sign == 0 ? "0*" : "");
        s += atom(std::to_string(ell), exp_ell);
        if (exp_two_minus_t > 0) s += "*" + atom("(" + std::to_string(2 - t) + ")", exp_two_minus_t);
        if (exp_two_plus_t > 0) s += "*" + atom("(" + std::to_string(2 + t) + ")", exp_two_plus_t);
        return s;
    }
};

/// disc_x(T_ell^n(x) - t) from the critical-value formula
/// (-1)^{(D-1)(D-2)/2} ell^{nD} prod_beta (t - beta)^{M_beta}, D = ell^n, with
/// M_2 = M_-2 = (D-1)/2 for odd ell and M_2 = D/2 - 1, M_-2 = D/2 for ell = 2.
/// Sign 0 flags a vanishing discriminant.
inline SignedFactoredInt disc_factored(u32 ell, unsigned n, std::int64_t t) {
    if (n == 0) throw std::invalid_argument("disc_factored: n must be >= 1");
    if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("disc_factored: ell must be prime");
    const u128 D = ipow(ell, n);
    u128 m_plus2 = 0, m_minus2 = 0;  // multiplicities of the critical values 2 and -2
    if (ell == 2) {
        m_plus2 = D / 2 - 1;
        m_minus2 = D / 2;
    } else {
        m_plus2 = m_minus2 = (D - 1) / 2;
    }
    SignedFactoredInt r;
    r.ell = ell;
    r.t = t;
    r.exp_ell = u128(n) * D;
    // (t - 2)^M2 (t + 2)^M-2 = (-1)^M2 (2 - t)^M2 (2 + t)^M-2
    r.exp_two_minus_t = m_plus2;
    r.exp_two_plus_t = m_minus2;
    const u128 sign_exp = (D - 1) * (D - 2) / 2 + m_plus2;
    r.sign = (sign_exp % 2 == 0) ? 1 : -1;
    if ((t == 2 && m_plus2 > 0) || (t == -2 && m_minus2 > 0)) r.sign = 0;
    return r;
}

/// Primes that can divide some disc_x(T_ell^n(x) - t): those of ell (4 - t^2).
inline std::set<u128> ramified_candidates(u32 ell, std::int64_t t) {
    if (t == 2 || t == -2) throw std::invalid_argument("ramified_candidates: t = +-2 makes every discriminant vanish");
    std::set<u128> out{ell};
    for (std::int64_t v : {2 - t, 2 + t}) {
        const u128 mag = static_cast<u128>(v < 0 ? -static_cast<__int128>(v) : v);
        const FactoredInt fm = factor_int(mag);
        for (const auto& [q, e] : fm.terms()) out.insert(q);
    }
    return out;
}

}  // namespace chebdyn

#endif  // CHEBDYN_CHEB_HPP
