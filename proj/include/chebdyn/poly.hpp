#ifndef CHEBDYN_POLY_HPP
#define CHEBDYN_POLY_HPP

// Dense univariate polynomials over F_p, p an odd prime below 2^31.

#include <chebdyn/arith.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebdyn {

inline u32 inv_mod(u32 a, u32 p) {
    if (a % p == 0) throw std::domain_error("inv_mod: zero has no inverse");
    return static_cast<u32>(powmod64(a, p - 2, p));
}

inline u32 reduce_signed(std::int64_t v, u32 p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<u32>(r < 0 ? r + p : r);
}

/// Coefficients c[0] + c[1] x + ...; trailing zeros are always trimmed so the
/// zero polynomial has an empty coefficient vector.
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(u32 p) : p_(p) {}
    DensePoly(u32 p, std::vector<u32> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& v : c_) v %= p_;
        trim();
    }
    /// From signed integer coefficients, reduced mod p.
    static DensePoly from_signed(u32 p, const std::vector<std::int64_t>& coeffs) {
        std::vector<u32> c;
        c.reserve(coeffs.size());
        for (auto v : coeffs) c.push_back(reduce_signed(v, p));
        return DensePoly(p, std::move(c));
    }
    static DensePoly constant(u32 p, u32 v) { return DensePoly(p, {v}); }
    static DensePoly x(u32 p) { return DensePoly(p, {0, 1}); }
    static DensePoly monomial(u32 p, std::size_t deg) {
        std::vector<u32> c(deg + 1, 0);
        c[deg] = 1;
        return DensePoly(p, std::move(c));
    }

    u32 modulus() const { return p_; }
    const std::vector<u32>& coeffs() const { return c_; }
    std::vector<u32>& raw() { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    u32 lead() const { return c_.empty() ? 0 : c_.back(); }
    u32 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    DensePoly monic() const {
        if (is_zero()) return *this;
        const u64 inv = inv_mod(lead(), p_);
        std::vector<u32> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = static_cast<u32>(c_[i] * inv % p_);
        return DensePoly(p_, std::move(c));
    }

    u32 eval(u32 a) const {
        u64 r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = (r * a + *it) % p_;
        return static_cast<u32>(r);
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        std::vector<u32> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<u32>((u64(a[i]) + b[i]) % a.p_);
        return DensePoly(a.p_, std::move(c));
    }
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) {
        std::vector<u32> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<u32>((u64(a[i]) + a.p_ - b[i]) % a.p_);
        return DensePoly(a.p_, std::move(c));
    }
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return DensePoly(a.p_);
        const u64 p = a.p_;
        std::vector<u64> acc(a.c_.size() + b.c_.size() - 1, 0);
        // p < 2^31 keeps each product below 2^62; fold every few terms
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            const u64 ai = a.c_[i];
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                acc[i + j] += ai * b.c_[j];
                if (acc[i + j] >= (u64(1) << 62)) acc[i + j] %= p;
            }
        }
        std::vector<u32> c(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<u32>(acc[i] % p);
        return DensePoly(a.p_, std::move(c));
    }
    DensePoly scaled(u32 s) const {
        std::vector<u32> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = static_cast<u32>(u64(c_[i]) * s % p_);
        return DensePoly(p_, std::move(c));
    }

    std::string str(char var = 'x') const;

private:
    u32 p_ = 0;
    std::vector<u32> c_;
};

/// Quotient and remainder; throws on a zero divisor.
inline std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
    if (b.is_zero()) throw std::domain_error("divmod: zero modulus");
    const u32 p = a.modulus();
    if (a.degree() < b.degree()) return {DensePoly(p), a};
    std::vector<u32> r = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<u32> q(r.size() - db, 0);
    const u64 inv = inv_mod(b.lead(), p);
    const auto& bc = b.coeffs();
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        const u64 f = r[i] * inv % p;
        q[i - db] = static_cast<u32>(f);
        const u64 nf = p - f;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = static_cast<u32>((r[i - db + j] + nf * bc[j]) % p);
    }
    r.resize(db);
    return {DensePoly(p, std::move(q)), DensePoly(p, std::move(r))};
}

inline DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divmod(a, b).second; }
inline DensePoly operator/(const DensePoly& a, const DensePoly& b) { return divmod(a, b).first; }

inline DensePoly derivative(const DensePoly& f) {
    const u32 p = f.modulus();
    if (f.degree() < 1) return DensePoly(p);
    std::vector<u32> c(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) c[i - 1] = static_cast<u32>(u64(f.coeffs()[i]) * (i % p) % p);
    return DensePoly(p, std::move(c));
}

/// Monic gcd; gcd(0, 0) = 0.
inline DensePoly poly_gcd(DensePoly a, DensePoly b) {
    while (!b.is_zero()) {
        DensePoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod f by square-and-multiply.
inline DensePoly poly_powmod(const DensePoly& base, u128 e, const DensePoly& f) {
    if (f.is_zero()) throw std::domain_error("poly_powmod: zero modulus");
    DensePoly result = DensePoly::constant(f.modulus(), 1) % f;
    DensePoly b = base % f;
    while (e > 0) {
        if (e & 1) result = (result * b) % f;
        e >>= 1;
        if (e > 0) b = (b * b) % f;
    }
    return result;
}

/// f(g(x)) by Horner in g.
inline DensePoly compose(const DensePoly& f, const DensePoly& g) {
    DensePoly r(f.modulus());
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) r = r * g + DensePoly::constant(f.modulus(), *it);
    return r;
}

inline DensePoly poly_pow(const DensePoly& f, unsigned e) {
    DensePoly r = DensePoly::constant(f.modulus(), 1);
    for (unsigned i = 0; i < e; ++i) r = r * f;
    return r;
}

/// Rabin irreducibility test over F_p.
inline bool is_irreducible(const DensePoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const u32 p = f.modulus();
    const auto n = static_cast<u64>(f.degree());
    const DensePoly x = DensePoly::x(p);
    // x^{p^k} mod f for k = 1..n
    std::vector<DensePoly> frob{x % f};
    for (u64 k = 1; k <= n; ++k) frob.push_back(poly_powmod(frob.back(), p, f));
    if (!((frob[n] - x) % f).is_zero()) return false;
    const FactoredInt fn = factor_int(n);
    for (const auto& [r, e] : fn.terms()) {
        const auto k = static_cast<u64>(n / r);
        if (poly_gcd(f, frob[k] - x).degree() != 0) return false;
    }
    return true;
}

inline std::string DensePoly::str(char var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (c_[i] != 1 || i == 0) s += std::to_string(c_[i]);
        if (i >= 1) s += var;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const DensePoly& f) { return os << f.str(); }

}  // namespace chebdyn

#endif  // CHEBDYN_POLY_HPP
