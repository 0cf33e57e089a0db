#include "covercert/field.hpp"

#include "covercert/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace covercert {

namespace {

// --- polynomial helpers over GF(p), coefficients as uint32 digits, constant first ---

using PfPoly = std::vector<std::uint32_t>;

void pf_trim(PfPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int pf_deg(const PfPoly& f) { return static_cast<int>(f.size()) - 1; }

PfPoly pf_mul(const PfPoly& a, const PfPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PfPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = static_cast<std::uint32_t>(
                (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    pf_trim(out);
    return out;
}

// in-place remainder of f by monic m
void pf_mod(PfPoly& f, const PfPoly& m, std::uint64_t p) {
    const int dm = pf_deg(m);
    while (pf_deg(f) >= dm) {
        const std::uint64_t lead = f.back();
        const int shift = pf_deg(f) - dm;
        for (int i = 0; i <= dm; ++i) {
            const std::uint64_t sub = lead * m[static_cast<std::size_t>(i)] % p;
            std::uint32_t& ci = f[static_cast<std::size_t>(i + shift)];
            ci = static_cast<std::uint32_t>((ci + p - sub) % p);
        }
        pf_trim(f);
    }
}

PfPoly pf_mulmod(const PfPoly& a, const PfPoly& b, const PfPoly& m, std::uint64_t p) {
    PfPoly r = pf_mul(a, b, p);
    pf_mod(r, m, p);
    return r;
}

// base^e mod monic m; p^k exponents are reached by the callers via repeated
// p-th powers, this helper handles plain 64-bit exponents.
PfPoly pf_powmod_u64(PfPoly base, std::uint64_t e, const PfPoly& m, std::uint64_t p) {
    PfPoly r{1};
    pf_mod(base, m, p);
    while (e) {
        if (e & 1u) r = pf_mulmod(r, base, m, p);
        base = pf_mulmod(base, base, m, p);
        e >>= 1u;
    }
    return r;
}

std::uint32_t pf_inv_scalar(std::uint32_t a, std::uint64_t p);
void pf_make_monic(PfPoly& f, std::uint64_t p);

PfPoly pf_gcd(PfPoly a, PfPoly b, std::uint64_t p) {
    pf_trim(a);
    pf_trim(b);
    while (!b.empty()) {
        pf_make_monic(b, p);  // pf_mod requires a monic divisor
        pf_mod(a, b, p);
        std::swap(a, b);
    }
    return a;
}

std::uint32_t pf_inv_scalar(std::uint32_t a, std::uint64_t p) {
    // extended euclid on integers
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        const std::int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    if (r != 1) throw DivisionByZeroError("field: inverse of non-unit");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(t);
}

void pf_make_monic(PfPoly& f, std::uint64_t p) {
    pf_trim(f);
    if (f.empty()) return;
    if (f.back() == 1) return;
    const std::uint64_t s = pf_inv_scalar(f.back(), p);
    for (auto& c : f) c = static_cast<std::uint32_t>(c * s % p);
}

// x^(p^reps) mod m via repeated p-th powers
PfPoly pf_frobenius_iterate(const PfPoly& m, std::uint64_t p, std::uint32_t reps) {
    PfPoly x{0, 1};
    pf_mod(x, m, p);
    PfPoly cur = x;
    for (std::uint32_t i = 0; i < reps; ++i) cur = pf_powmod_u64(cur, p, m, p);
    return cur;
}

// Rabin test: monic f of degree k is irreducible over GF(p) iff
// x^(p^k) == x (mod f) and gcd(x^(p^(k/r)) - x, f) = 1 for prime r | k.
bool pf_is_irreducible(const PfPoly& f, std::uint64_t p) {
    const int k = pf_deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    PfPoly x{0, 1};
    PfPoly xqk = pf_frobenius_iterate(f, p, static_cast<std::uint32_t>(k));
    PfPoly diff = xqk;
    // diff -= x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    pf_trim(diff);
    if (!diff.empty()) return false;
    for (int r = 2; r <= k; ++r) {
        if (k % r != 0) continue;
        bool r_prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) r_prime = false;
        if (!r_prime) continue;
        PfPoly xd = pf_frobenius_iterate(f, p, static_cast<std::uint32_t>(k / r));
        if (xd.size() < 2) xd.resize(2, 0);
        xd[1] = static_cast<std::uint32_t>((xd[1] + p - 1) % p);
        pf_trim(xd);
        PfPoly g = xd;
        pf_make_monic(g, p);
        PfPoly h = f;
        PfPoly gc = pf_gcd(h, g, p);
        if (pf_deg(gc) != 0) return false;
    }
    return true;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime_u32(p)) throw NotPrimeError("field: p = " + std::to_string(p) + " is not prime");
    if (k == 0) throw InvalidInputError("field: k must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > 0xffffffffull)
            throw OverflowError("field: q = p^k exceeds 32 bits (p=" + std::to_string(p) +
                                ", k=" + std::to_string(k) + ")");
    }
    q_ = q;
    if (k > 1) {
        // first monic irreducible of degree k in base-p counting order of the
        // lower coefficients (constant digit least significant)
        PfPoly cand(k + 1, 0);
        cand[k] = 1;
        std::uint64_t lower_count = 1;
        for (std::uint32_t i = 0; i < k; ++i) lower_count *= p;
        for (std::uint64_t idx = 0;; ++idx) {
            if (idx == lower_count)
                throw Error("field: no irreducible found (unreachable)");
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < k; ++i) {
                cand[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (pf_is_irreducible(cand, p)) break;
        }
        modulus_ = cand;
    }
}

void FieldCtx::check(FieldElem a) const {
    if (a.encoded() >= q_)
        throw ContextMismatchError("field: element encoding " + std::to_string(a.encoded()) +
                                   " out of range for q = " + std::to_string(q_));
}

std::vector<std::uint32_t> FieldCtx::decode(FieldElem a) const {
    std::vector<std::uint32_t> d(k_);
    std::uint64_t v = a.encoded();
    for (std::uint32_t i = 0; i < k_; ++i) {
        d[i] = static_cast<std::uint32_t>(v % p_);
        v /= p_;
    }
    return d;
}

FieldElem FieldCtx::encode(const std::vector<std::uint32_t>& digits) const {
    std::uint64_t v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * p_ + digits[i];
    return FieldElem(static_cast<std::uint32_t>(v));
}

FieldElem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() > k_) throw ContextMismatchError("field: too many coefficients");
    std::vector<std::uint32_t> d(k_, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) d[i] = coeffs[i] % p_;
    return encode(d);
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldElem a) const {
    check(a);
    return decode(a);
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
    check(a);
    check(b);
    if (k_ == 1) return FieldElem(static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.encoded()) + b.encoded()) % p_));
    auto da = decode(a), db = decode(b);
    for (std::uint32_t i = 0; i < k_; ++i) da[i] = static_cast<std::uint32_t>((da[i] + static_cast<std::uint64_t>(db[i])) % p_);
    return encode(da);
}

FieldElem FieldCtx::neg(FieldElem a) const {
    check(a);
    if (k_ == 1) return FieldElem(a.encoded() == 0 ? 0u : static_cast<std::uint32_t>(p_ - a.encoded()));
    auto d = decode(a);
    for (auto& c : d) c = c == 0 ? 0u : static_cast<std::uint32_t>(p_ - c);
    return encode(d);
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
    check(a);
    check(b);
    if (k_ == 1)
        return FieldElem(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.encoded()) * b.encoded() % p_));
    PfPoly pa = decode(a), pb = decode(b);
    pf_trim(pa);
    pf_trim(pb);
    PfPoly r = pf_mulmod(pa, pb, modulus_, p_);
    r.resize(k_, 0);
    return encode(r);
}

FieldElem FieldCtx::inv(FieldElem a) const {
    check(a);
    if (a.is_zero()) throw DivisionByZeroError("field: inverse of zero");
    if (k_ == 1) return FieldElem(pf_inv_scalar(a.encoded(), p_));
    // extended euclid over GF(p)[t]: u*a + v*modulus = 1
    PfPoly r0 = modulus_, r1 = decode(a);
    pf_trim(r1);
    PfPoly t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1: make r1 monic, track multiplier
        PfPoly r1m = r1;
        const std::uint32_t lead = r1.back();
        const std::uint32_t lead_inv = pf_inv_scalar(lead, p_);
        for (auto& c : r1m) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * lead_inv % p_);
        // quotient of r0 by monic r1m
        PfPoly rem = r0;
        PfPoly quot(rem.size() > r1m.size() ? rem.size() - r1m.size() + 1 : 1, 0);
        while (pf_deg(rem) >= pf_deg(r1m)) {
            const std::uint32_t c = rem.back();
            const int shift = pf_deg(rem) - pf_deg(r1m);
            quot[static_cast<std::size_t>(shift)] = c;
            for (int i = 0; i <= pf_deg(r1m); ++i) {
                std::uint32_t& ci = rem[static_cast<std::size_t>(i + shift)];
                ci = static_cast<std::uint32_t>((ci + p_ - static_cast<std::uint64_t>(c) * r1m[static_cast<std::size_t>(i)] % p_) % p_);
            }
            pf_trim(rem);
        }
        pf_trim(quot);
        // true quotient of r0 by r1 = quot * lead_inv
        for (auto& c : quot) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * lead_inv % p_);
        // (r0, r1) <- (r1, r0 - q r1) ; (t0, t1) likewise
        PfPoly qr1 = pf_mul(quot, r1, p_);
        PfPoly nr = r0;
        nr.resize(std::max(nr.size(), qr1.size()), 0);
        for (std::size_t i = 0; i < qr1.size(); ++i)
            nr[i] = static_cast<std::uint32_t>((nr[i] + p_ - qr1[i]) % p_);
        pf_trim(nr);
        PfPoly qt1 = pf_mul(quot, t1, p_);
        PfPoly nt = t0;
        nt.resize(std::max(nt.size(), qt1.size()), 0);
        for (std::size_t i = 0; i < qt1.size(); ++i)
            nt[i] = static_cast<std::uint32_t>((nt[i] + p_ - qt1[i]) % p_);
        pf_trim(nt);
        r0 = r1;
        r1 = nr;
        t0 = t1;
        t1 = nt;
    }
    // r0 = gcd (degree 0 since a != 0 and modulus irreducible)
    if (pf_deg(r0) != 0) throw DivisionByZeroError("field: non-invertible element");
    const std::uint32_t s = pf_inv_scalar(r0[0], p_);
    for (auto& c : t0) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * s % p_);
    pf_mod(t0, modulus_, p_);
    t0.resize(k_, 0);
    return encode(t0);
}

FieldElem FieldCtx::pow(FieldElem a, long long e) const {
    check(a);
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    FieldElem r = one();
    FieldElem b = a;
    unsigned long long u = static_cast<unsigned long long>(e);
    while (u) {
        if (u & 1ull) r = mul(r, b);
        b = mul(b, b);
        u >>= 1ull;
    }
    return r;
}

std::string FieldCtx::to_string(FieldElem a) const {
    check(a);
    if (k_ == 1) return std::to_string(a.encoded());
    const auto d = decode(a);
    std::string out;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(d[i]);
        } else {
            if (d[i] != 1) out += std::to_string(d[i]) + "*";
            out += 't';
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

FieldElem FieldCtx::parse(std::string_view text) const {
    // sum of t-terms: decimal, t, t^e, decimal*t, decimal*t^e
    std::vector<std::uint32_t> acc(k_, 0);
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto fail = [&](const char* why) { return ParseError(std::string("field element: ") + why, i); };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= text.size()) {
            if (first) throw fail("empty");
            break;
        }
        if (!first) {
            if (text[i] != '+') throw fail("expected '+'");
            ++i;
            skip_ws();
        }
        first = false;
        std::uint64_t coeff = 1;
        bool saw_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff = coeff * 10 + static_cast<std::uint64_t>(text[i] - '0');
                if (coeff > 0xffffffffull) coeff %= p_;
                ++i;
            }
            coeff %= p_;
            saw_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            } else {
                // bare constant term
                acc[0] = static_cast<std::uint32_t>((acc[0] + coeff) % p_);
                continue;
            }
        }
        if (i >= text.size() || text[i] != 't') {
            if (saw_coeff) throw fail("expected 't' after '*'");
            throw fail("expected coefficient or 't'");
        }
        if (k_ == 1) throw fail("generator symbol 't' undefined in a prime field");
        ++i;
        std::uint64_t e = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
            ++i;
            skip_ws();
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) throw fail("expected exponent");
            e = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                e = e * 10 + static_cast<std::uint64_t>(text[i] - '0');
                if (e > 1u << 20) throw fail("exponent too large");
                ++i;
            }
        }
        // accumulate coeff * t^e reduced mod the context modulus
        PfPoly term(static_cast<std::size_t>(e) + 1, 0);
        term[static_cast<std::size_t>(e)] = static_cast<std::uint32_t>(coeff % p_);
        pf_trim(term);
        pf_mod(term, modulus_, p_);
        term.resize(k_, 0);
        for (std::uint32_t j = 0; j < k_; ++j) acc[j] = static_cast<std::uint32_t>((acc[j] + term[j]) % p_);
    }
    return encode(acc);
}

}  // namespace covercert
