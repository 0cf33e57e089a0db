#ifndef COVERCERT_FIELD_HPP
#define COVERCERT_FIELD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace covercert {

/// An element of GF(q), stored as its index in the field enumeration:
/// value = sum coeffs[i] * p^i over the power basis of the generator.
/// Elements carry no context; every operation takes the FieldCtx explicitly.
class FieldElem {
  public:
    constexpr FieldElem() = default;
    explicit constexpr FieldElem(std::uint32_t encoded) : v_(encoded) {}

    constexpr std::uint32_t encoded() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr bool operator==(FieldElem a, FieldElem b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(FieldElem a, FieldElem b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(FieldElem a, FieldElem b) { return a.v_ < b.v_; }

  private:
    std::uint32_t v_ = 0;
};

/// Immutable description of GF(q), q = p^k. For k > 1 the field is
/// GF(p)[t]/(modulus) where modulus is the first monic irreducible of
/// degree k in base-p counting order (constant digit least significant).
/// Context construction is deterministic; instances are safe to share
/// across threads and all operations are pure.
///
/// Cross-context misuse is detected by range-checking element encodings
/// against q (ContextMismatchError); two contexts with equal q cannot be
/// told apart from a bare element.
class FieldCtx {
  public:
    /// field_new. Throws NotPrimeError / OverflowError (q must fit 32 bits).
    FieldCtx(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }

    /// GF(p) coefficients of the modulus polynomial, constant term first,
    /// size k+1. Empty for prime fields (k = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElem zero() const { return FieldElem(0); }
    FieldElem one() const { return FieldElem(1); }
    /// the residue of n in the prime subfield
    FieldElem from_int(std::uint64_t n) const { return FieldElem(static_cast<std::uint32_t>(n % p_)); }
    /// element from power-basis coefficients (each reduced mod p); at most k entries
    FieldElem from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
    std::vector<std::uint32_t> coeffs(FieldElem a) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    /// Throws DivisionByZeroError on inv(0).
    FieldElem inv(FieldElem a) const;
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
    /// a^e; negative e inverts first (requires a != 0)
    FieldElem pow(FieldElem a, long long e) const;

    /// text form: k = 1 -> decimal in [0,p); k > 1 -> polynomial in `t`
    std::string to_string(FieldElem a) const;
    /// parses the text form (whole string); ParseError on junk
    FieldElem parse(std::string_view text) const;

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

  private:
    void check(FieldElem a) const;
    std::vector<std::uint32_t> decode(FieldElem a) const;
    FieldElem encode(const std::vector<std::uint32_t>& digits) const;

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
};

/// convenience for fe_add(ctx, a, b) style call sites
inline FieldElem fe_add(const FieldCtx& c, FieldElem a, FieldElem b) { return c.add(a, b); }
inline FieldElem fe_sub(const FieldCtx& c, FieldElem a, FieldElem b) { return c.sub(a, b); }
inline FieldElem fe_neg(const FieldCtx& c, FieldElem a) { return c.neg(a); }
inline FieldElem fe_mul(const FieldCtx& c, FieldElem a, FieldElem b) { return c.mul(a, b); }
inline FieldElem fe_inv(const FieldCtx& c, FieldElem a) { return c.inv(a); }
inline FieldElem fe_pow(const FieldCtx& c, FieldElem a, long long e) { return c.pow(a, e); }

bool is_prime_u32(std::uint32_t n);

}  // namespace covercert

#endif
