#include "covercert/poly.hpp"

#include "covercert/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace covercert {

namespace {

bool mul_fits(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
    return !__builtin_mul_overflow(a, b, &out);
}

// q^n, throwing CapExceeded against cap; the error carries the exact size
std::uint64_t checked_pow_capped(std::uint64_t q, int n, std::uint64_t cap, const char* what) {
    std::uint64_t size = 1;
    bool overflow = false;
    for (int i = 0; i < n; ++i) {
        if (!mul_fits(size, q, size)) {
            overflow = true;
            break;
        }
    }
    if (overflow || size > cap) {
        const BigInt exact = ipow(BigInt(q), static_cast<unsigned>(n));
        throw CapExceededError(std::string(what) + ": enumeration of " + exact.str() +
                                   " residues exceeds cap " + std::to_string(cap),
                               exact.str());
    }
    return size;
}

}  // namespace

Poly make_poly(std::vector<FieldElem> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    return Poly{std::move(coeffs)};
}

bool poly_value_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    }
    return false;
}

Poly poly_add(const FieldCtx& ctx, const Poly& a, const Poly& b) {
    std::vector<FieldElem> out(std::max(a.c.size(), b.c.size()), FieldElem(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return make_poly(std::move(out));
}

Poly poly_neg(const FieldCtx& ctx, const Poly& a) {
    std::vector<FieldElem> out(a.c.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.neg(a.c[i]);
    return Poly{std::move(out)};
}

Poly poly_sub(const FieldCtx& ctx, const Poly& a, const Poly& b) { return poly_add(ctx, a, poly_neg(ctx, b)); }

Poly poly_mul(const FieldCtx& ctx, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    std::vector<FieldElem> out(a.c.size() + b.c.size() - 1, FieldElem(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            out[i + j] = ctx.add(out[i + j], ctx.mul(a.c[i], b.c[j]));
        }
    }
    return make_poly(std::move(out));
}

Poly poly_mul_elem(const FieldCtx& ctx, const Poly& a, FieldElem s) {
    if (s.is_zero()) return Poly::zero();
    std::vector<FieldElem> out(a.c.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.mul(a.c[i], s);
    return make_poly(std::move(out));
}

std::pair<Poly, Poly> poly_divrem(const FieldCtx& ctx, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZeroError("poly: division by the zero polynomial");
    if (a.degree() < b.degree()) return {Poly::zero(), a};
    const FieldElem lead_inv = ctx.inv(b.leading());
    std::vector<FieldElem> rem = a.c;
    std::vector<FieldElem> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, FieldElem(0));
    int rd = a.degree();
    const int bd = b.degree();
    while (rd >= bd) {
        const FieldElem q = ctx.mul(rem[static_cast<std::size_t>(rd)], lead_inv);
        if (!q.is_zero()) {
            quot[static_cast<std::size_t>(rd - bd)] = q;
            for (int i = 0; i <= bd; ++i) {
                auto& r = rem[static_cast<std::size_t>(rd - bd + i)];
                r = ctx.sub(r, ctx.mul(q, b.c[static_cast<std::size_t>(i)]));
            }
        }
        --rd;
    }
    return {make_poly(std::move(quot)), make_poly(std::move(rem))};
}

Poly poly_mod(const FieldCtx& ctx, const Poly& a, const Poly& b) { return poly_divrem(ctx, a, b).second; }

Poly poly_pow(const FieldCtx& ctx, const Poly& a, unsigned e) {
    Poly r = Poly::one();
    Poly b = a;
    while (e) {
        if (e & 1u) r = poly_mul(ctx, r, b);
        b = poly_mul(ctx, b, b);
        e >>= 1u;
    }
    return r;
}

FieldElem poly_eval(const FieldCtx& ctx, const Poly& a, FieldElem at) {
    FieldElem acc(0);
    for (std::size_t i = a.c.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, at), a.c[i]);
    return acc;
}

Poly monic(const FieldCtx& ctx, const Poly& a) {
    if (a.is_zero()) throw InvalidInputError("poly: monic of the zero polynomial");
    if (a.leading() == ctx.one()) return a;
    return poly_mul_elem(ctx, a, ctx.inv(a.leading()));
}

Poly poly_gcd(const FieldCtx& ctx, const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw BothZeroError("poly: gcd(0, 0)");
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = poly_mod(ctx, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return monic(ctx, r0);
}

ExtGcd poly_ext_gcd(const FieldCtx& ctx, const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw BothZeroError("poly: ext_gcd(0, 0)");
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(), u1 = Poly::zero();
    Poly v0 = Poly::zero(), v1 = Poly::one();
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divrem(ctx, r0, r1);
        Poly u2 = poly_sub(ctx, u0, poly_mul(ctx, q, u1));
        Poly v2 = poly_sub(ctx, v0, poly_mul(ctx, q, v1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    const FieldElem s = ctx.inv(r0.leading());
    return ExtGcd{poly_mul_elem(ctx, r0, s), poly_mul_elem(ctx, u0, s), poly_mul_elem(ctx, v0, s)};
}

Poly poly_lcm(const FieldCtx& ctx, const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw BothZeroError("poly: lcm(0, 0)");
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    const Poly g = poly_gcd(ctx, a, b);
    const Poly q = poly_divrem(ctx, a, g).first;
    return monic(ctx, poly_mul(ctx, q, b));
}

BigInt poly_norm(const FieldCtx& ctx, const Poly& f) {
    if (f.is_zero()) throw InvalidInputError("poly: norm of the zero polynomial");
    return ipow(BigInt(ctx.q()), static_cast<unsigned>(f.degree()));
}

std::optional<std::pair<Poly, Poly>> crt_pair(const FieldCtx& ctx, const Poly& r1, const Poly& m1,
                                              const Poly& r2, const Poly& m2) {
    if (m1.is_zero() || m2.is_zero()) throw InvalidInputError("crt: zero modulus");
    const Poly mm1 = monic(ctx, m1), mm2 = monic(ctx, m2);
    const Poly a1 = poly_mod(ctx, r1, mm1), a2 = poly_mod(ctx, r2, mm2);
    const ExtGcd e = poly_ext_gcd(ctx, mm1, mm2);
    const Poly diff = poly_sub(ctx, a2, a1);
    auto [dq, drem] = poly_divrem(ctx, diff, e.g);
    if (!drem.is_zero()) return std::nullopt;
    const Poly l = poly_lcm(ctx, mm1, mm2);
    // r = a1 + m1 * u * (diff / g) mod l
    const Poly r = poly_mod(ctx, poly_add(ctx, a1, poly_mul(ctx, poly_mul(ctx, mm1, e.u), dq)), l);
    return std::make_pair(r, l);
}

ResidueSpace::ResidueSpace(const FieldCtx& ctx, Poly modulus, std::uint64_t cap)
    : ctx_(ctx), modulus_(std::move(modulus)) {
    if (modulus_.degree() < 1) throw InvalidInputError("residues: modulus must have degree >= 1");
    modulus_ = monic(ctx_, modulus_);
    size_ = checked_pow_capped(ctx_.q(), modulus_.degree(), cap, "residues");
}

Poly ResidueSpace::at(std::uint64_t index) const {
    std::vector<FieldElem> coeffs;
    coeffs.reserve(static_cast<std::size_t>(modulus_.degree()));
    std::uint64_t v = index;
    for (int i = 0; i < modulus_.degree(); ++i) {
        coeffs.push_back(FieldElem(static_cast<std::uint32_t>(v % ctx_.q())));
        v /= ctx_.q();
    }
    return make_poly(std::move(coeffs));
}

std::uint64_t ResidueSpace::index_of_reduced(const Poly& r) const {
    std::uint64_t v = 0;
    for (std::size_t i = r.c.size(); i-- > 0;) v = v * ctx_.q() + r.c[i].encoded();
    return v;
}

std::uint64_t ResidueSpace::index_of(const Poly& any) const {
    if (any.degree() < modulus_.degree()) return index_of_reduced(any);
    return index_of_reduced(poly_mod(ctx_, any, modulus_));
}

std::vector<Poly> residues_mod(const FieldCtx& ctx, const Poly& m, std::uint64_t cap) {
    const ResidueSpace space(ctx, m, cap);
    std::vector<Poly> out;
    out.reserve(static_cast<std::size_t>(space.size()));
    for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
    return out;
}

std::vector<Poly> monic_polys_of_degree(const FieldCtx& ctx, int n, std::uint64_t cap) {
    if (n < 0) throw InvalidInputError("monic enumeration: negative degree");
    const std::uint64_t count = checked_pow_capped(ctx.q(), n, cap, "monic enumeration");
    std::vector<Poly> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<FieldElem> coeffs(static_cast<std::size_t>(n) + 1, FieldElem(0));
        std::uint64_t v = idx;
        for (int i = 0; i < n; ++i) {
            coeffs[static_cast<std::size_t>(i)] = FieldElem(static_cast<std::uint32_t>(v % ctx.q()));
            v /= ctx.q();
        }
        coeffs[static_cast<std::size_t>(n)] = FieldElem(1);
        out.push_back(Poly{std::move(coeffs)});
    }
    return out;
}

bool is_irreducible(const FieldCtx& ctx, const Poly& f) {
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const Poly fm = monic(ctx, f);
    const auto powmod = [&](Poly base, std::uint64_t e) {
        Poly r = Poly::one();
        base = poly_mod(ctx, base, fm);
        while (e) {
            if (e & 1ull) r = poly_mod(ctx, poly_mul(ctx, r, base), fm);
            base = poly_mod(ctx, poly_mul(ctx, base, base), fm);
            e >>= 1ull;
        }
        return r;
    };
    // x^(q^d) mod f by iterating the q-power map
    const auto frob = [&](int d) {
        Poly cur = poly_mod(ctx, Poly::x(), fm);
        for (int i = 0; i < d; ++i) cur = powmod(cur, ctx.q());
        return cur;
    };
    const Poly xqn = frob(n);
    if (poly_sub(ctx, xqn, poly_mod(ctx, Poly::x(), fm)) != Poly::zero()) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool r_prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) r_prime = false;
        if (!r_prime) continue;
        const Poly xd = frob(n / r);
        const Poly diff = poly_sub(ctx, xd, poly_mod(ctx, Poly::x(), fm));
        if (diff.is_zero()) return false;
        if (poly_gcd(ctx, diff, fm).degree() != 0) return false;
    }
    return true;
}

namespace {

struct IrredCacheKey {
    std::uint32_t p, k;
    int n;
    auto operator<=>(const IrredCacheKey&) const = default;
};

const std::vector<Poly>& irreducibles_cached(const FieldCtx& ctx, int n, std::uint64_t cap) {
    static std::map<IrredCacheKey, std::vector<Poly>> cache;
    static std::mutex mu;
    const IrredCacheKey key{ctx.p(), ctx.k(), n};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) throw InvalidInputError("irreducibles: degree must be >= 1");
    // sieve: a monic polynomial of degree n is irreducible iff no irreducible
    // of degree <= n/2 divides it
    std::vector<Poly> found;
    for (const Poly& cand : monic_polys_of_degree(ctx, n, cap)) {
        bool divisible = false;
        for (int d = 1; !divisible && 2 * d <= n; ++d) {
            for (const Poly& p : irreducibles_cached(ctx, d, cap)) {
                if (poly_mod(ctx, cand, p).is_zero()) {
                    divisible = true;
                    break;
                }
            }
        }
        if (!divisible) {
            if (!is_irreducible(ctx, cand))
                throw Error("irreducibles: sieve and Rabin check disagree (internal bug)");
            found.push_back(cand);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(found));
    return it->second;
}

}  // namespace

std::vector<Poly> irreducibles_of_degree(const FieldCtx& ctx, int n, std::uint64_t cap) {
    return irreducibles_cached(ctx, n, cap);
}

BigInt count_irreducibles(std::uint64_t q, unsigned n) {
    if (n == 0) throw InvalidInputError("count_irreducibles: n must be >= 1");
    if (q < 2) throw InvalidInputError("count_irreducibles: q must be a prime power >= 2");
    // validate prime power
    std::uint64_t base = q;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= base; ++d) {
        if (base % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = base;  // q prime
    std::uint64_t rest = q;
    while (rest % p == 0) rest /= p;
    if (rest != 1) throw InvalidInputError("count_irreducibles: q = " + std::to_string(q) + " is not a prime power");

    const auto mobius = [](unsigned m) -> int {
        int mu = 1;
        for (unsigned d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                m /= d;
                if (m % d == 0) return 0;
                mu = -mu;
            }
        }
        if (m > 1) mu = -mu;
        return mu;
    };
    BigInt sum = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const int mu = mobius(d);
        if (mu == 0) continue;
        sum += BigInt(mu) * ipow(BigInt(q), n / d);
    }
    return sum / n;
}

Factorization factor(const FieldCtx& ctx, const Poly& m, std::uint64_t cap) {
    if (m.degree() < 1) throw InvalidInputError("factor: degree must be >= 1");
    Poly rem = monic(ctx, m);
    Factorization out;
    for (int d = 1; 2 * d <= rem.degree(); ++d) {
        for (const Poly& p : irreducibles_cached(ctx, d, cap)) {
            int e = 0;
            while (true) {
                auto [q, r] = poly_divrem(ctx, rem, p);
                if (!r.is_zero()) break;
                rem = std::move(q);
                ++e;
            }
            if (e > 0) out.factors.emplace_back(p, e);
            // no factors below degree d remain, so deg < 2d means rem is prime
            if (rem.degree() < 2 * d) break;
        }
    }
    if (rem.degree() >= 1) out.factors.emplace_back(rem, 1);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_value_less(a.first, b.first); });
    return out;
}

// ---------------------------------------------------------------------------
// text grammar
// ---------------------------------------------------------------------------

namespace {

struct PolyParser {
    const FieldCtx& ctx;
    std::string_view text;
    std::size_t i = 0;

    void skip_ws() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& why) const { throw ParseError("poly: " + why, i); }

    bool eat(char ch) {
        skip_ws();
        if (i < text.size() && text[i] == ch) {
            ++i;
            return true;
        }
        return false;
    }

    std::uint64_t parse_uint(const char* what) {
        skip_ws();
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail(std::string("expected ") + what);
        std::uint64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
            if (v > (std::uint64_t(1) << 40)) fail("number too large");
            ++i;
        }
        return v;
    }

    // a term: '*'-separated factors (decimal | t-atom | x-atom | '(' t-poly ')')
    // result: coefficient element and x-exponent
    std::pair<FieldElem, int> parse_term() {
        FieldElem coeff = ctx.one();
        long xexp = 0;
        bool any = false;
        while (true) {
            skip_ws();
            if (i >= text.size()) break;
            const char ch = text[i];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                const std::uint64_t v = parse_uint("decimal");
                coeff = ctx.mul(coeff, ctx.from_int(v));
            } else if (ch == 't') {
                if (ctx.k() == 1) fail("generator symbol 't' undefined in a prime field");
                ++i;
                std::uint64_t e = 1;
                if (eat('^')) e = parse_uint("exponent");
                FieldElem t = ctx.from_coeffs({0, 1});
                coeff = ctx.mul(coeff, ctx.pow(t, static_cast<long long>(e)));
            } else if (ch == 'x') {
                ++i;
                std::uint64_t e = 1;
                if (eat('^')) e = parse_uint("exponent");
                if (e > 100000) fail("x exponent too large");
                xexp += static_cast<long>(e);
            } else if (ch == '(') {
                ++i;
                const std::size_t start = i;
                std::size_t depth = 1;
                while (i < text.size() && depth > 0) {
                    if (text[i] == '(') ++depth;
                    if (text[i] == ')') --depth;
                    ++i;
                }
                if (depth != 0) fail("unbalanced parenthesis");
                const std::string_view inner = text.substr(start, i - 1 - start);
                if (ctx.k() == 1) fail("parenthesized coefficients require an extension field");
                try {
                    coeff = ctx.mul(coeff, ctx.parse(inner));
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), start + e.position);
                }
            } else {
                if (!any) fail("expected term");
                break;
            }
            any = true;
            skip_ws();
            if (!eat('*')) break;
        }
        if (!any) fail("expected term");
        if (xexp > 100000) fail("x exponent too large");
        return {coeff, static_cast<int>(xexp)};
    }

    Poly parse_sum() {
        std::vector<FieldElem> acc;
        bool first = true;
        while (true) {
            skip_ws();
            if (i >= text.size()) {
                if (first) fail("empty polynomial");
                break;
            }
            if (!first && !eat('+')) fail("expected '+'");
            auto [coeff, e] = parse_term();
            if (static_cast<std::size_t>(e) >= acc.size()) acc.resize(static_cast<std::size_t>(e) + 1, FieldElem(0));
            acc[static_cast<std::size_t>(e)] = ctx.add(acc[static_cast<std::size_t>(e)], coeff);
            first = false;
            skip_ws();
            if (i >= text.size()) break;
        }
        return make_poly(std::move(acc));
    }
};

}  // namespace

Poly parse_poly(const FieldCtx& ctx, std::string_view text) {
    PolyParser p{ctx, text};
    Poly out = p.parse_sum();
    p.skip_ws();
    if (p.i != text.size()) throw ParseError("poly: trailing input", p.i);
    return out;
}

std::string poly_to_string(const FieldCtx& ctx, const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        const FieldElem c = p.c[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += ctx.to_string(c);
            continue;
        }
        if (c != ctx.one()) {
            std::string cs = ctx.to_string(c);
            if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
            out += cs + "*";
        }
        out += 'x';
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace covercert
