#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covercert/errors.hpp"
#include "covercert/field.hpp"

#include <random>

using namespace covercert;

namespace {

std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (!is_prime_u32(p)) continue;
        std::uint64_t q = p;
        while (q <= n) {
            out.push_back(q);
            q *= p;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FieldCtx ctx_for(std::uint64_t q) {
    for (std::uint32_t p = 2;; ++p) {
        if (!is_prime_u32(p)) continue;
        if (q % p == 0) {
            std::uint32_t k = 0;
            std::uint64_t t = q;
            while (t > 1) {
                t /= p;
                ++k;
            }
            return FieldCtx(p, k);
        }
    }
}

}  // namespace

TEST_CASE("deterministic construction") {
    const FieldCtx f2(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.modulus().empty());

    // only monic irreducible quadratic over GF(2)
    const FieldCtx f4(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});

    // first irreducible quadratic over GF(3) in counting order
    const FieldCtx f9(3, 2);
    CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});

    // reproducibility
    const FieldCtx f9b(3, 2);
    CHECK(f9 == f9b);

    CHECK_THROWS_AS(FieldCtx(4, 1), NotPrimeError);
    CHECK_THROWS_AS(FieldCtx(91, 1), NotPrimeError);
    CHECK_THROWS_AS(FieldCtx(2, 33), OverflowError);
    CHECK_THROWS_AS(FieldCtx(65521, 3), OverflowError);
    CHECK_THROWS_AS(FieldCtx(2, 0), InvalidInputError);
}

TEST_CASE("arithmetic examples") {
    const FieldCtx f2(2, 1);
    CHECK(f2.add(f2.one(), f2.one()) == f2.zero());

    const FieldCtx f4(2, 2);
    const FieldElem t = f4.from_coeffs({0, 1});
    const FieldElem t_plus_1 = f4.from_coeffs({1, 1});
    CHECK(f4.mul(t, t) == t_plus_1);  // t^2 = t+1 mod t^2+t+1

    const FieldCtx f5(5, 1);
    CHECK(f5.inv(FieldElem(2)) == FieldElem(3));
    CHECK_THROWS_AS(f5.inv(f5.zero()), DivisionByZeroError);
}

TEST_CASE("context mismatch detection by range") {
    const FieldCtx f2(2, 1);
    CHECK_THROWS_AS(f2.add(FieldElem(5), f2.one()), ContextMismatchError);
    CHECK_THROWS_AS(f2.coeffs(FieldElem(2)), ContextMismatchError);
}

TEST_CASE("a^(q-1) = 1 exhaustively for q <= 64") {
    for (const std::uint64_t q : prime_powers_up_to(64)) {
        const FieldCtx ctx = ctx_for(q);
        REQUIRE(ctx.q() == q);
        for (std::uint64_t v = 1; v < q; ++v) {
            const FieldElem a(static_cast<std::uint32_t>(v));
            CHECK(ctx.pow(a, static_cast<long long>(q) - 1) == ctx.one());
        }
    }
}

TEST_CASE("inverses are two-sided and field axioms hold on random triples") {
    std::mt19937_64 rng(20260809);
    for (const std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 8ull, 9ull, 25ull, 27ull, 49ull}) {
        const FieldCtx ctx = ctx_for(q);
        for (std::uint64_t v = 1; v < q; ++v) {
            const FieldElem a(static_cast<std::uint32_t>(v));
            CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
            CHECK(ctx.mul(ctx.inv(a), a) == ctx.one());
        }
        for (int trial = 0; trial < 200; ++trial) {
            const FieldElem a(static_cast<std::uint32_t>(rng() % q));
            const FieldElem b(static_cast<std::uint32_t>(rng() % q));
            const FieldElem c(static_cast<std::uint32_t>(rng() % q));
            CHECK(ctx.add(a, b) == ctx.add(b, a));
            CHECK(ctx.mul(a, b) == ctx.mul(b, a));
            CHECK(ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c)));
            CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
            CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
            CHECK(ctx.sub(a, b) == ctx.add(a, ctx.neg(b)));
        }
    }
}

TEST_CASE("negative powers") {
    const FieldCtx f7(7, 1);
    const FieldElem a(3);
    CHECK(f7.pow(a, -1) == f7.inv(a));
    CHECK(f7.mul(f7.pow(a, -2), f7.pow(a, 2)) == f7.one());
}

TEST_CASE("text form") {
    const FieldCtx f5(5, 1);
    CHECK(f5.to_string(FieldElem(3)) == "3");
    CHECK(f5.parse("3") == FieldElem(3));
    CHECK(f5.parse("8") == FieldElem(3));  // liberal input, reduced mod p
    CHECK_THROWS_AS(f5.parse("t"), ParseError);

    const FieldCtx f9(3, 2);
    const FieldElem e = f9.from_coeffs({1, 2});  // 2t + 1
    CHECK(f9.to_string(e) == "2*t+1");
    CHECK(f9.parse("2*t+1") == e);
    CHECK(f9.parse(" 2 * t + 1 ") == e);
    CHECK(f9.parse("t+t+1") == f9.from_coeffs({1, 2}));  // repeated terms summed
    CHECK(f9.parse("t^2") == f9.from_coeffs({2}));       // t^2 = -1 = 2 mod t^2+1
    CHECK(f9.to_string(f9.zero()) == "0");
    CHECK_THROWS_AS(f9.parse(""), ParseError);
    CHECK_THROWS_AS(f9.parse("1+"), ParseError);

    // round trip over all of GF(27)
    const FieldCtx f27(3, 3);
    for (std::uint32_t v = 0; v < 27; ++v) {
        const FieldElem a(v);
        CHECK(f27.parse(f27.to_string(a)) == a);
    }
}
