#ifndef CHEBDYN_FFIELD_HPP
#define CHEBDYN_FFIELD_HPP

// Arithmetic in F_{p^n} = F_p[x]/(m(x)), the quadratic ring used to lift
// a = alpha + 1/alpha, multiplicative orders, and degrees over F_p.

#include <chebdyn/arith.hpp>
#include <chebdyn/poly.hpp>

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace chebdyn {

/// Element of F_{p^n}: n residues, canonical index sum c_i p^i.
struct FFElem {
    std::vector<u32> c;

    friend bool operator==(const FFElem&, const FFElem&) = default;
};

class FieldCtx {
public:
    using Elem = FFElem;

    /// Deterministic in (p, n): the modulus is the monic irreducible whose
    /// coefficient tuple (c_0, ..., c_{n-1}) is lexicographically smallest.
    static FieldCtx make(u32 p, unsigned n) {
        if (p == 2) throw std::invalid_argument("make_field: characteristic 2 is not supported");
        if (p < 2 || !is_prime(p)) throw std::invalid_argument("make_field: p = " + std::to_string(p) + " is not prime");
        if (p >= (u32(1) << 31)) throw std::invalid_argument("make_field: p must be below 2^31");
        if (n == 0) throw std::invalid_argument("make_field: n must be >= 1");
        FieldCtx ctx;
        ctx.p_ = p;
        ctx.n_ = n;
        u128 q = 0;
        try {
            q = ipow(p, n);
        } catch (const std::overflow_error&) {
            throw RefusedError("make_field: p^n exceeds 2^96");
        }
        if (q + 1 >= k_factor_limit) throw RefusedError("make_field: p^n exceeds 2^96");
        ctx.q_ = q;
        ctx.modulus_ = find_modulus(p, n);
        ctx.order_minus_ = factor_int(q - 1);
        ctx.order_plus_ = factor_int(q + 1);
        ctx.non_residue_ = ctx.find_non_residue();
        return ctx;
    }

    u32 p() const { return p_; }
    unsigned n() const { return n_; }
    u128 size() const { return q_; }
    const DensePoly& modulus() const { return modulus_; }
    const FactoredInt& order_minus() const { return order_minus_; }
    const FactoredInt& order_plus() const { return order_plus_; }

    FFElem zero() const { return FFElem{std::vector<u32>(n_, 0)}; }
    FFElem one() const { return from_int(1); }
    FFElem from_int(std::int64_t v) const {
        FFElem e = zero();
        e.c[0] = reduce_signed(v, p_);
        return e;
    }
    bool is_zero(const FFElem& x) const {
        for (u32 v : x.c)
            if (v != 0) return false;
        return true;
    }

    /// Requires p^n < 2^64.
    u64 encode(const FFElem& x) const {
        u64 idx = 0;
        for (std::size_t i = n_; i-- > 0;) idx = idx * p_ + x.c[i];
        return idx;
    }
    FFElem decode(u64 idx) const {
        FFElem e = zero();
        for (unsigned i = 0; i < n_; ++i) {
            e.c[i] = static_cast<u32>(idx % p_);
            idx /= p_;
        }
        return e;
    }

    FFElem add(const FFElem& a, const FFElem& b) const {
        FFElem r = zero();
        for (unsigned i = 0; i < n_; ++i) r.c[i] = static_cast<u32>((u64(a.c[i]) + b.c[i]) % p_);
        return r;
    }
    FFElem sub(const FFElem& a, const FFElem& b) const {
        FFElem r = zero();
        for (unsigned i = 0; i < n_; ++i) r.c[i] = static_cast<u32>((u64(a.c[i]) + p_ - b.c[i]) % p_);
        return r;
    }
    FFElem neg(const FFElem& a) const { return sub(zero(), a); }
    FFElem scale(const FFElem& a, u32 s) const {
        FFElem r = zero();
        for (unsigned i = 0; i < n_; ++i) r.c[i] = static_cast<u32>(u64(a.c[i]) * s % p_);
        return r;
    }

    FFElem mul(const FFElem& a, const FFElem& b) const {
        if (n_ == 1) return FFElem{{static_cast<u32>(u64(a.c[0]) * b.c[0] % p_)}};
        const u64 p = p_;
        std::vector<u64> acc(2 * n_ - 1, 0);
        for (unsigned i = 0; i < n_; ++i) {
            if (a.c[i] == 0) continue;
            for (unsigned j = 0; j < n_; ++j) acc[i + j] = (acc[i + j] + u64(a.c[i]) * b.c[j]) % p;
        }
        // reduce by the monic modulus: x^n = -sum m_j x^j
        const auto& m = modulus_.coeffs();
        for (std::size_t i = acc.size(); i-- > n_;) {
            const u64 f = acc[i];
            if (f == 0) continue;
            const u64 nf = p - f;
            for (unsigned j = 0; j < n_; ++j) acc[i - n_ + j] = (acc[i - n_ + j] + nf * m[j]) % p;
        }
        FFElem r = zero();
        for (unsigned i = 0; i < n_; ++i) r.c[i] = static_cast<u32>(acc[i]);
        return r;
    }

    FFElem pow(FFElem base, u128 e) const {
        FFElem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return r;
    }

    FFElem inv(const FFElem& a) const {
        if (is_zero(a)) throw std::domain_error("FieldCtx::inv: zero");
        return pow(a, q_ - 2);
    }

    FFElem frobenius(const FFElem& a) const { return pow(a, p_); }

    /// Square root by Tonelli-Shanks, if one exists.
    std::optional<FFElem> sqrt(const FFElem& a) const {
        if (is_zero(a)) return a;
        if (!(pow(a, (q_ - 1) / 2) == one())) return std::nullopt;
        u128 t = q_ - 1;
        unsigned s = 0;
        while ((t & 1) == 0) {
            t >>= 1;
            ++s;
        }
        FFElem c = pow(non_residue_, t);
        FFElem x = pow(a, (t + 1) / 2);
        FFElem b = pow(a, t);
        unsigned m = s;
        while (!(b == one())) {
            unsigned i = 0;
            FFElem b2 = b;
            while (!(b2 == one())) {
                b2 = mul(b2, b2);
                ++i;
            }
            FFElem w = c;
            for (unsigned k = 0; k + i + 1 < m; ++k) w = mul(w, w);
            x = mul(x, w);
            c = mul(w, w);
            b = mul(b, c);
            m = i;
        }
        return x;
    }

    std::string str(const FFElem& x) const {
        if (n_ == 1) return std::to_string(x.c[0]);
        return DensePoly(p_, x.c).str('g');
    }

private:
    static DensePoly find_modulus(u32 p, unsigned n) {
        if (n == 1) return DensePoly::x(p);
        // odometer over (c_0, ..., c_{n-1}) with c_{n-1} fastest; c_0 = 0 is never irreducible
        std::vector<u32> c(n + 1, 0);
        c[n] = 1;
        c[0] = 1;
        for (;;) {
            DensePoly f(p, c);
            if (is_irreducible(f)) return f;
            std::size_t i = n - 1;
            for (;;) {
                if (++c[i] < p) break;
                c[i] = 0;
                if (i == 0) throw std::logic_error("find_modulus: exhausted search space");
                --i;
            }
        }
    }

    FFElem find_non_residue() const {
        const u128 half = (q_ - 1) / 2;
        const FFElem minus_one = from_int(-1);
        for (u64 idx = 2;; ++idx) {
            FFElem z = decode(idx);
            if (pow(z, half) == minus_one) return z;
        }
    }

    u32 p_ = 0;
    unsigned n_ = 0;
    u128 q_ = 0;
    DensePoly modulus_;
    FactoredInt order_minus_;
    FactoredInt order_plus_;
    FFElem non_residue_;
};

inline FieldCtx make_field(u32 p, unsigned n) { return FieldCtx::make(p, n); }

/// u + v*y in F_{p^n}[y]/(y^2 - a*y + 1).
struct QuadElem {
    FFElem u;
    FFElem v;
    friend bool operator==(const QuadElem&, const QuadElem&) = default;
};

class QuadRing {
public:
    using Elem = QuadElem;

    QuadRing(const FieldCtx& ctx, FFElem a) : ctx_(&ctx), a_(std::move(a)) {}

    QuadElem one() const { return {ctx_->one(), ctx_->zero()}; }
    QuadElem y() const { return {ctx_->zero(), ctx_->one()}; }

    QuadElem mul(const QuadElem& x, const QuadElem& z) const {
        const auto& F = *ctx_;
        const FFElem vv = F.mul(x.v, z.v);
        // y^2 = a y - 1
        FFElem u = F.sub(F.mul(x.u, z.u), vv);
        FFElem v = F.add(F.add(F.mul(x.u, z.v), F.mul(x.v, z.u)), F.mul(a_, vv));
        return {std::move(u), std::move(v)};
    }

    QuadElem pow(QuadElem base, u128 e) const {
        QuadElem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return r;
    }

    const FieldCtx& field() const { return *ctx_; }
    const FFElem& trace() const { return a_; }

private:
    const FieldCtx* ctx_;
    FFElem a_;
};

/// Exact multiplicative order of x, given an N with x^N = 1.
template <class Ring>
FactoredInt mult_order(const Ring& ring, const typename Ring::Elem& x, const FactoredInt& group_order) {
    const auto one = ring.one();
    if (!(ring.pow(x, group_order.value()) == one))
        throw std::invalid_argument("mult_order: x^N != 1 for the supplied group order");
    std::vector<FactoredInt::Term> ord = group_order.terms();
    u128 value = group_order.value();
    for (auto& [q, e] : ord) {
        while (e > 0 && ring.pow(x, value / q) == one) {
            value /= q;
            --e;
        }
    }
    return FactoredInt(std::move(ord));
}

/// Which of p^n -/+ 1 the order of alpha divides.
enum class Branch { minus, plus };

inline const char* to_string(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

/// A root of y^2 - a y + 1: in F_{p^n} when it splits, else the class of y
/// in the quadratic ring.
struct Alpha {
    Branch branch;
    std::variant<FFElem, QuadElem> value;
};

inline Alpha lift_alpha(const FFElem& a, const FieldCtx& ctx) {
    const FFElem disc = ctx.sub(ctx.mul(a, a), ctx.from_int(4));
    const u64 half = (ctx.p() + 1) / 2;  // 1/2 mod p
    if (ctx.is_zero(disc)) return {Branch::minus, ctx.scale(a, static_cast<u32>(half))};
    if (auto s = ctx.sqrt(disc)) {
        FFElem r1 = ctx.scale(ctx.add(a, *s), static_cast<u32>(half));
        FFElem r2 = ctx.scale(ctx.sub(a, *s), static_cast<u32>(half));
        // smaller canonical index, compared from the most significant coefficient
        const bool first = std::lexicographical_compare(r1.c.rbegin(), r1.c.rend(), r2.c.rbegin(), r2.c.rend());
        return {Branch::minus, first ? std::move(r1) : std::move(r2)};
    }
    return {Branch::plus, QuadRing(ctx, a).y()};
}

/// Order of alpha with its branch; the group is p^n - 1 or p^n + 1 accordingly.
struct AlphaOrder {
    FactoredInt order;
    Branch branch;
};

inline AlphaOrder alpha_order(const FFElem& a, const FieldCtx& ctx) {
    Alpha al = lift_alpha(a, ctx);
    if (al.branch == Branch::minus) return {mult_order(ctx, std::get<FFElem>(al.value), ctx.order_minus()), Branch::minus};
    QuadRing ring(ctx, a);
    return {mult_order(ring, std::get<QuadElem>(al.value), ctx.order_plus()), Branch::plus};
}

/// [F_p(a) : F_p], the Frobenius orbit length of a.
inline unsigned element_degree(const FFElem& a, const FieldCtx& ctx) {
    FFElem x = a;
    for (unsigned m = 1; m <= ctx.n(); ++m) {
        x = ctx.frobenius(x);
        if (x == a) return m;
    }
    throw std::logic_error("element_degree: Frobenius orbit longer than n");
}

}  // namespace chebdyn

#endif  // CHEBDYN_FFIELD_HPP
