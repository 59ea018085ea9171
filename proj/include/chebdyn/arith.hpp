#ifndef CHEBDYN_ARITH_HPP
#define CHEBDYN_ARITH_HPP

// Exact integer helpers: 128-bit modular arithmetic, primality, factorization
// of group orders, divisor enumeration.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebdyn {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown for inputs the library declines to process (p = ell, enumeration
/// cap, ramified primes, uncertified towers). Distinct from malformed input.
class RefusedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

inline constexpr u128 k_factor_limit = u128(1) << 96;

// a*b mod m for m < 2^96, without a wider type: b is consumed in 32-bit limbs.
inline u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if ((a >> 64) == 0 && (b >> 64) == 0) return (a * b) % m;
    u128 r = 0;
    for (int shift = 64; shift >= 0; shift -= 32) {
        const u128 limb = (b >> shift) & 0xffffffffu;
        r = (r << 32) % m;
        r = (r + (a * limb) % m) % m;
    }
    return r;
}

inline u128 powmod(u128 base, u128 e, u128 m) {
    if (m == 1) return 0;
    u128 r = 1;
    base %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

inline u64 powmod64(u64 base, u64 e, u64 m) {
    return static_cast<u64>(powmod(base, e, m));
}

/// Checked power; throws std::overflow_error if base^e does not fit in 128 bits.
inline u128 ipow(u128 base, u64 e) {
    u128 r = 1;
    for (u64 i = 0; i < e; ++i) {
        if (base != 0 && r > (~u128(0)) / base) throw std::overflow_error("ipow: overflow");
        r *= base;
    }
    return r;
}

inline u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// nu_q(x): exponent of the prime q in x (x > 0).
inline unsigned valuation(u128 x, u128 q) {
    unsigned v = 0;
    while (x != 0 && x % q == 0) {
        x /= q;
        ++v;
    }
    return v;
}

/// Miller-Rabin with the fixed witness set {2, ..., 71}. The first 13 of these
/// are a proven deterministic set below 3.3e24; the rest cover N < 2^96.
inline bool is_prime(u128 n) {
    if (n < 2) return false;
    static constexpr u32 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (u32 q : small) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u128 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u32 a : small) {
        u128 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Prime factorization kept as strictly increasing (prime, exponent) pairs.
class FactoredInt {
public:
    using Term = std::pair<u128, unsigned>;

    FactoredInt() = default;
    explicit FactoredInt(std::vector<Term> terms) : terms_(std::move(terms)) {
        std::sort(terms_.begin(), terms_.end());
        std::vector<Term> merged;
        for (const auto& [q, e] : terms_) {
            if (e == 0) continue;
            if (!merged.empty() && merged.back().first == q)
                merged.back().second += e;
            else
                merged.emplace_back(q, e);
        }
        terms_ = std::move(merged);
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_one() const { return terms_.empty(); }

    /// Throws std::overflow_error above 2^128.
    u128 value() const {
        u128 v = 1;
        for (const auto& [q, e] : terms_) {
            const u128 f = ipow(q, e);
            if (v > (~u128(0)) / f) throw std::overflow_error("FactoredInt::value overflow");
            v *= f;
        }
        return v;
    }

    unsigned exponent_of(u128 q) const {
        for (const auto& [r, e] : terms_)
            if (r == q) return e;
        return 0;
    }

    /// Part coprime to q.
    FactoredInt without(u128 q) const {
        std::vector<Term> t;
        for (const auto& term : terms_)
            if (term.first != q) t.push_back(term);
        return FactoredInt(std::move(t));
    }

    FactoredInt operator*(const FactoredInt& o) const {
        std::vector<Term> t = terms_;
        t.insert(t.end(), o.terms_.begin(), o.terms_.end());
        return FactoredInt(std::move(t));
    }

    bool divides(const FactoredInt& o) const {
        for (const auto& [q, e] : terms_)
            if (o.exponent_of(q) < e) return false;
        return true;
    }

    /// Rendered as "2^3*3"; the empty product is "1".
    std::string str() const {
        if (terms_.empty()) return "1";
        std::string s;
        for (const auto& [q, e] : terms_) {
            if (!s.empty()) s += '*';
            s += to_string(q);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    friend bool operator==(const FactoredInt&, const FactoredInt&) = default;
    friend auto operator<=>(const FactoredInt&, const FactoredInt&) = default;

private:
    std::vector<Term> terms_;
};

namespace detail {

inline u128 isqrt_floor(u128 n) {
    u128 lo = 0, hi = u128(1) << 64;
    while (hi - lo > 1) {
        const u128 mid = lo + (hi - lo) / 2;
        if (mid <= n / mid)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Brent's variant; the constant c walks a fixed schedule so runs are reproducible.
inline u128 pollard_brent(u128 n) {
    if (n % 2 == 0) return 2;
    for (u128 c = 1;; ++c) {
        u128 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u128 m = 128;
        u128 r = 1;
        auto f = [&](u128 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u128 i = 0; i < r; ++i) y = f(y);
            u128 k = 0;
            do {
                ys = y;
                for (u128 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd128(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd128(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_rec(u128 n, std::vector<FactoredInt::Term>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    const u128 r = isqrt_floor(n);
    if (r * r == n) {
        factor_rec(r, out);
        factor_rec(r, out);
        return;
    }
    const u128 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace detail

/// Complete factorization for 1 <= N < 2^96: trial division to 10^6, then
/// Miller-Rabin and Pollard-Brent.
inline FactoredInt factor_int(u128 n) {
    if (n == 0) throw std::invalid_argument("factor_int: N = 0");
    if (n >= k_factor_limit) throw std::invalid_argument("factor_int: N >= 2^96");
    std::vector<FactoredInt::Term> terms;
    auto strip = [&](u128 q) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e > 0) terms.emplace_back(q, e);
    };
    strip(2);
    for (u128 q = 3; q <= 1000000 && q * q <= n; q += 2) strip(q);
    if (n > 1) {
        if (n <= u128(1000000) * 1000000)
            terms.emplace_back(n, 1);  // no factor below 10^6 and n < 10^12
        else
            detail::factor_rec(n, terms);
    }
    return FactoredInt(std::move(terms));
}

/// All divisors, ascending.
inline std::vector<u128> divisors(const FactoredInt& f) {
    std::vector<u128> ds{1};
    for (const auto& [q, e] : f.terms()) {
        const std::size_t base = ds.size();
        u128 pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Divisors in factored form, ascending by value.
inline std::vector<FactoredInt> factored_divisors(const FactoredInt& f) {
    std::vector<std::vector<FactoredInt::Term>> acc{{}};
    for (const auto& [q, e] : f.terms()) {
        const std::size_t base = acc.size();
        for (unsigned i = 1; i <= e; ++i)
            for (std::size_t j = 0; j < base; ++j) {
                auto t = acc[j];
                t.emplace_back(q, i);
                acc.push_back(std::move(t));
            }
    }
    std::vector<FactoredInt> out;
    out.reserve(acc.size());
    for (auto& t : acc) out.emplace_back(std::move(t));
    std::sort(out.begin(), out.end(), [](const FactoredInt& a, const FactoredInt& b) { return a.value() < b.value(); });
    return out;
}

inline u128 euler_phi(const FactoredInt& f) {
    u128 r = 1;
    for (const auto& [q, e] : f.terms()) r *= (q - 1) * ipow(q, e - 1);
    return r;
}

inline FactoredInt factored_phi(const FactoredInt& f) {
    FactoredInt r;
    for (const auto& [q, e] : f.terms()) {
        if (e > 1) r = r * FactoredInt({{q, e - 1}});
        r = r * factor_int(q - 1);
    }
    return r;
}

/// Multiplicative order of x modulo m, given the factored order of the ambient group.
inline u128 mult_order_mod(u128 x, u128 m, const FactoredInt& group_order) {
    u128 ord = group_order.value();
    if (powmod(x, ord, m) != 1 % m) throw std::invalid_argument("mult_order_mod: x^N != 1");
    for (const auto& [q, e] : group_order.terms()) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(x, ord / q, m) == 1 % m)
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

}  // namespace chebdyn

#endif  // CHEBDYN_ARITH_HPP
