#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covercert/bounds.hpp"
#include "covercert/errors.hpp"

using namespace covercert;

namespace {

const Rational kPrec(1, 10000);

// the paper prints truncated decimals; the true value lies in [printed, printed + ulp)
bool brackets_printed(const Enclosure& e, const std::string& printed) {
    const Rational p = rat_from_user_string(printed);
    std::size_t digits = 0;
    const auto dot = printed.find('.');
    if (dot != std::string::npos) digits = printed.size() - dot - 1;
    const Rational ulp = rat_pow(Rational(1, 10), static_cast<int>(digits));
    return e.lo <= p + ulp && e.hi >= p;
}

}  // namespace

TEST_CASE("rational utilities") {
    CHECK(rat_to_fraction_string(Rational(3, 4)) == "3/4");
    CHECK(rat_from_fraction_string("3/4") == Rational(3, 4));
    CHECK(rat_from_fraction_string("5") == Rational(5));
    CHECK(rat_from_user_string("0.01") == Rational(1, 100));
    CHECK(rat_from_user_string("1e-4") == Rational(1, 10000));
    CHECK(rat_from_user_string("1.5e2") == Rational(150));
    CHECK(rat_to_decimal_string(Rational(1, 8), 4) == "0.1250");
    CHECK(rat_to_decimal_string(Rational(-1, 8), 3) == "-0.125");
    CHECK(round_up_to_grid(Rational(123, 100), Rational(1, 10)) == Rational(13, 10));
    CHECK(round_up_to_grid(Rational(13, 10), Rational(1, 10)) == Rational(13, 10));
    CHECK(rat_ceil_ll(Rational(758261, 1000)) == 759);
    CHECK(rat_ceil_ll(Rational(759)) == 759);
    CHECK_THROWS_AS(rat_from_fraction_string("1/0"), ParseError);
}

TEST_CASE("sqrt enclosure") {
    const Enclosure s2 = sqrt_enclosure(Rational(2), Rational(1, 1000000));
    CHECK(s2.lo * s2.lo <= 2);
    CHECK(s2.hi * s2.hi >= 2);
    CHECK(s2.width() <= Rational(1, 1000000));
    const Enclosure s4 = sqrt_enclosure(Rational(4), Rational(1, 100));
    CHECK(s4.lo == 2);
    CHECK(sqrt_enclosure(Rational(0), Rational(1, 10)).hi == 0);
    CHECK_THROWS_AS(sqrt_enclosure(Rational(-1), Rational(1, 10)), InvalidInputError);
}

TEST_CASE("ln enclosure") {
    CHECK(ln_enclosure(Rational(1), kPrec).lo == 0);
    CHECK(ln_enclosure(Rational(1), kPrec).hi == 0);
    const Enclosure l2 = ln_enclosure(Rational(2), Rational(1, 1000000));
    CHECK(brackets_printed(l2, "0.693147"));
    const Enclosure l10 = ln_enclosure(Rational(10), Rational(1, 1000000));
    CHECK(brackets_printed(l10, "2.302585"));
    CHECK(l10.width() <= Rational(1, 1000000));
    CHECK_THROWS_AS(ln_enclosure(Rational(1, 2), kPrec), InvalidInputError);
}

TEST_CASE("exp enclosure") {
    const Enclosure e0 = exp_enclosure(Rational(0), kPrec);
    CHECK(e0.lo == 1);
    CHECK(e0.hi == 1);
    const Enclosure e1 = exp_enclosure(Rational(1), Rational(1, 100000));
    CHECK(brackets_printed(e1, "2.71828"));
    // the threshold constant: 1.14 e^6.5 = 758.261...
    const Enclosure e65 = exp_enclosure(Rational(13, 2), kPrec);
    const Enclosure scaled{kPaperFinalConst * e65.lo, kPaperFinalConst * e65.hi};
    CHECK(brackets_printed(scaled, "758.261"));
    CHECK_THROWS_AS(exp_enclosure(Rational(-1), kPrec), InvalidInputError);
    CHECK_THROWS_AS(exp_enclosure(Rational(65), kPrec), InvalidInputError);
    CHECK_THROWS_AS(exp_enclosure(Rational(64), rat_pow(Rational(1, 10), 1000)),
                    PrecisionUnreachableError);
}

TEST_CASE("series enclosures match the paper's printed decimals at q0 = 700") {
    const Rational q0(700);
    const struct {
        Series id;
        const char* printed;
    } rows[] = {
        {Series::LogMertensTail, "0.0770585"},
        {Series::InverseSquareNorm, "1.07631"},
        {Series::InverseSquareNormGenus, "0.15119"},
        {Series::DegreeFifthMoment, "1.12194"},
        {Series::DegreeFifthMomentGenus, "0.151447"},
    };
    for (const auto& row : rows) {
        const Enclosure e = series_enclosure(row.id, q0, kPrec);
        CAPTURE(row.printed);
        CHECK(e.width() <= kPrec);
        CHECK(brackets_printed(e, row.printed));
        // refinement keeps the value inside and grows the lower end
        const Enclosure fine = series_enclosure(row.id, q0, kPrec / 100);
        CHECK(fine.width() <= kPrec / 100);
        CHECK(fine.lo >= e.lo);
        CHECK(fine.lo <= e.hi);
        CHECK(fine.hi >= e.lo);
    }
    CHECK_THROWS_AS(series_enclosure(Series::DegreeFifthMoment, Rational(30), kPrec),
                    InvalidInputError);
}

TEST_CASE("mertens bounds") {
    CHECK(mertens_log_bound(1, 0) == Rational(27, 25));
    CHECK(mertens_log_bound(1, 1) == Rational(31, 25));  // 1.24
    CHECK(mertens_square_bound(Rational(700), 0) == Rational(27, 25) / 700);
    CHECK_THROWS_AS(mertens_square_bound(Rational(500), 0), InvalidInputError);
    // log N enters at its upper end
    const Rational b10 = mertens_log_bound(10, 0);
    CHECK(b10 >= Rational(27, 25) + rat_from_user_string("2.302585"));
    CHECK(b10 <= Rational(27, 25) + rat_from_user_string("2.302586"));
}

TEST_CASE("pi_upper") {
    CHECK(pi_upper(4, 1, 0) == 8);
    CHECK(pi_upper(4, 2, 0) == 12);
    CHECK_THROWS_AS(pi_upper(2, 3, 0), InvalidInputError);
    // odd power of a non-square uses the upper sqrt end and still dominates
    const Rational b = pi_upper(5, 3, 0);
    CHECK(b >= Rational(125 + 2 * 11, 3));  // sqrt(125) = 11.18...
}

TEST_CASE("second moment bound") {
    const Enclosure b1 = second_moment_bound(1, Rational(700), 0, 1);
    CHECK(brackets_printed(b1, "0.001371"));
    const Enclosure b2 = second_moment_bound(2, Rational(700), 0, 1);
    const Rational ratio(64, 700 * 700);
    CHECK(b2.lo == b1.lo * ratio);
    CHECK(b2.hi == b1.hi * ratio);
    const Enclosure bs = second_moment_bound(1, Rational(700), 0, 2);
    CHECK(bs.lo == 4 * b1.lo);
    CHECK(bs.hi == 4 * b1.hi);
    CHECK_THROWS_AS(second_moment_bound(1, Rational(500), 0, 1), InvalidInputError);
}

TEST_CASE("bridge to the exact closed form at the first stage") {
    // s^2/(q-1)^2 <= 1.01 s^2/q^2 <= bound, in exact arithmetic
    for (const long long q : {700ll, 724ll, 1000ll, 1000000ll}) {
        for (const int s : {1, 2, 3}) {
            const Rational lemma25(BigInt(s) * s, BigInt(q - 1) * (q - 1));
            const Rational slacked = kPaperSlack * s * s / (Rational(q) * q);
            const Enclosure bound = second_moment_bound(1, Rational(q), 0, s);
            CHECK(lemma25 <= slacked);
            CHECK(slacked <= bound.lo);
        }
    }
}

TEST_CASE("paper constants dominate the series values") { check_paper_constants(); }

TEST_CASE("derived constants at the paper grid reproduce the paper") {
    const DerivedConstants dc = derive_constants(Rational(700), Rational(1, 100), kPrec);
    CHECK(dc.mertens_const.hi == kPaperMertensConst);
    CHECK(dc.mertens_g.hi == kPaperMertensGenus);
    CHECK(dc.mertens_sq_const.hi == kPaperMertensConst);
    CHECK(dc.mertens_sq_g.hi == kPaperMertensGenus);
    CHECK(dc.slack.hi == kPaperSlack);
    CHECK(dc.exp_const.hi == kPaperExpConst);
    CHECK(dc.exp_g.hi == kPaperExpGenus);
    CHECK(dc.final_const.hi == kPaperFinalConst);
    CHECK(dc.final_g.hi == kPaperFinalGenus);
}

TEST_CASE("thresholds") {
    const ThresholdResult t11 = theorem_threshold(0, 1);
    CHECK(t11.threshold == 759);
    CHECK(t11.rhs.width() <= Rational(1, 100));
    CHECK(brackets_printed(t11.rhs, "758.261"));

    CHECK(theorem_threshold(0, 2).threshold == 3034);
    CHECK(theorem_threshold(1, 1).threshold == 2281);  // ceil of 1.30 e^7.47

    // monotone in g, strictly increasing in s
    long long prev_g = 0;
    for (int g = 0; g <= 2; ++g) {
        const long long t = theorem_threshold(g, 1).threshold;
        CHECK(t >= prev_g);
        prev_g = t;
        long long prev_s = 0;
        for (int s = 1; s <= 3; ++s) {
            const long long ts = theorem_threshold(g, s).threshold;
            CHECK(ts > prev_s);
            prev_s = ts;
        }
    }
}

TEST_CASE("refined variant at q0 = 724 reproduces the remark constant 725") {
    const ThresholdResult t = theorem_threshold(0, 1, ThresholdVariant::Refined724);
    CHECK(t.threshold == 725);
    CHECK(t.rhs.hi < 726);
}

TEST_CASE("uniform fine re-rounding beats the remark's 739") {
    // re-deriving every constant on the 1e-4 grid (the remark re-rounds only
    // the lemma constants) gives a better threshold than the printed 739
    const DerivedConstants dc = derive_constants(Rational(700), Rational(1, 10000), kPrec);
    const ThresholdResult t = threshold_from_constants(dc, 0, 1);
    CHECK(t.threshold == 734);
    CHECK(t.threshold <= 739);
}
