#ifndef COVERCERT_POLY_HPP
#define COVERCERT_POLY_HPP

#include "covercert/field.hpp"
#include "covercert/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covercert {

/// degree of the zero polynomial
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

/// default enumeration cap (residues / candidates), overridable per call
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 24;

/// A polynomial over GF(q): coefficients constant-term first, no trailing
/// zeros. All operations take the FieldCtx explicitly.
struct Poly {
    std::vector<FieldElem> c;

    int degree() const { return c.empty() ? kNegInfDegree : static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    FieldElem leading() const { return c.back(); }
    FieldElem coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : FieldElem(0);
    }

    static Poly zero() { return {}; }
    static Poly one() { return Poly{{FieldElem(1)}}; }
    static Poly x() { return Poly{{FieldElem(0), FieldElem(1)}}; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a.c == b.c); }
};

/// trims trailing zeros
Poly make_poly(std::vector<FieldElem> coeffs);

/// (degree, base-q value) order; total on polynomials over one context
bool poly_value_less(const Poly& a, const Poly& b);

Poly poly_add(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_sub(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_neg(const FieldCtx& ctx, const Poly& a);
Poly poly_mul(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_mul_elem(const FieldCtx& ctx, const Poly& a, FieldElem s);
/// quotient and remainder; DivisionByZeroError when b = 0
std::pair<Poly, Poly> poly_divrem(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_mod(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_pow(const FieldCtx& ctx, const Poly& a, unsigned e);
FieldElem poly_eval(const FieldCtx& ctx, const Poly& a, FieldElem at);

/// monic associate; InvalidInputError on the zero polynomial
Poly monic(const FieldCtx& ctx, const Poly& a);

/// monic gcd; BothZeroError when both inputs are zero
Poly poly_gcd(const FieldCtx& ctx, const Poly& a, const Poly& b);
/// monic g together with u,v such that u*a + v*b = g
struct ExtGcd {
    Poly g, u, v;
};
ExtGcd poly_ext_gcd(const FieldCtx& ctx, const Poly& a, const Poly& b);
/// monic lcm; BothZeroError when both inputs are zero
Poly poly_lcm(const FieldCtx& ctx, const Poly& a, const Poly& b);

/// |f| = q^deg f for f != 0
BigInt poly_norm(const FieldCtx& ctx, const Poly& f);

/// The unique class r mod lcm(m1,m2) contained in (r1 mod m1) and (r2 mod m2),
/// or nullopt when the classes are disjoint.
std::optional<std::pair<Poly, Poly>> crt_pair(const FieldCtx& ctx, const Poly& r1, const Poly& m1,
                                              const Poly& r2, const Poly& m2);

/// Enumeration of the residues of F_q[x]/(m) in base-q counting order
/// (constant coefficient fastest). Construction checks q^deg(m) against cap.
class ResidueSpace {
  public:
    ResidueSpace(const FieldCtx& ctx, Poly modulus, std::uint64_t cap = kDefaultEnumerationCap);

    const FieldCtx& ctx() const { return ctx_; }
    const Poly& modulus() const { return modulus_; }
    std::uint64_t size() const { return size_; }

    Poly at(std::uint64_t index) const;
    /// index of a residue already reduced mod the modulus
    std::uint64_t index_of_reduced(const Poly& r) const;
    /// reduces first
    std::uint64_t index_of(const Poly& any) const;

  private:
    FieldCtx ctx_;
    Poly modulus_;
    std::uint64_t size_;
};

/// materialized residue enumeration
std::vector<Poly> residues_mod(const FieldCtx& ctx, const Poly& m,
                               std::uint64_t cap = kDefaultEnumerationCap);

/// all monic polynomials of the given degree, base-q counting order
std::vector<Poly> monic_polys_of_degree(const FieldCtx& ctx, int n,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// Rabin criterion over GF(q); pure, no enumeration
bool is_irreducible(const FieldCtx& ctx, const Poly& f);

/// all monic irreducibles of degree n, counting order; every returned
/// polynomial additionally passes the Rabin check
std::vector<Poly> irreducibles_of_degree(const FieldCtx& ctx, int n,
                                         std::uint64_t cap = kDefaultEnumerationCap);

/// exact count via the divisor/Moebius formula (1/n) sum_{d|n} mu(d) q^{n/d};
/// q must be a prime power
BigInt count_irreducibles(std::uint64_t q, unsigned n);

/// prime-power factorization, factors sorted by (degree, value)
struct Factorization {
    std::vector<std::pair<Poly, int>> factors;
};
Factorization factor(const FieldCtx& ctx, const Poly& m, std::uint64_t cap = kDefaultEnumerationCap);

/// text grammar (shared with the field element form for coefficients)
Poly parse_poly(const FieldCtx& ctx, std::string_view text);
std::string poly_to_string(const FieldCtx& ctx, const Poly& p);

}  // namespace covercert

#endif
