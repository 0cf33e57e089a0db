#include "covercert/bounds.hpp"

#include "covercert/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace covercert {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

constexpr int kSeriesTermCap = 10000;
constexpr int kExpTermCap = 1000;

Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace

long long rat_ceil_ll(const Rational& x) {
    BigInt n = numerator(x) / denominator(x);  // truncates toward zero
    if (Rational(n) < x) ++n;
    return static_cast<long long>(n);
}

Enclosure sqrt_enclosure(const Rational& x, const Rational& precision) {
    if (x < 0) throw InvalidInputError("sqrt_enclosure: negative argument");
    if (precision <= 0) throw InvalidInputError("sqrt_enclosure: precision must be positive");
    if (x == 0) return {Rational(0), Rational(0)};
    const BigInt a = numerator(x), b = denominator(x);
    // sqrt(a/b) = sqrt(ab)/b; bracket with denominator b*10^m, width 1/(b*10^m)
    BigInt scale = 1;
    while (Rational(1, b * scale) > precision) scale *= 10;
    const BigInt s = isqrt_floor(a * b * scale * scale);
    return {Rational(s, b * scale), Rational(s + 1, b * scale)};
}

Enclosure ln_enclosure(const Rational& x, const Rational& precision) {
    if (x < 1) throw InvalidInputError("ln_enclosure: argument must be >= 1");
    if (precision <= 0) throw InvalidInputError("ln_enclosure: precision must be positive");
    if (x == 1) return {Rational(0), Rational(0)};

    // atanh series at z = (y-1)/(y+1): ln y = 2 sum z^(2k+1)/(2k+1), z in [0, 1/3]
    const auto ln_small = [](const Rational& y, const Rational& prec) -> Enclosure {
        const Rational z = (y - 1) / (y + 1);
        const Rational z2 = z * z;
        Rational sum = 0;
        Rational pow = z;  // z^(2k+1)
        for (int k = 0; k < kExpTermCap; ++k) {
            sum += pow / (2 * k + 1);
            pow *= z2;
            // tail of 2*sum_{i>k} z^(2i+1)/(2i+1) <= 2 z^(2k+3) / ((2k+3)(1 - z^2))
            const Rational tail = 2 * pow / ((2 * k + 3) * (Rational(1) - z2));
            if (tail <= prec) return {2 * sum, 2 * sum + tail};
        }
        throw PrecisionUnreachableError("ln_enclosure: series did not converge within cap");
    };

    // range-reduce by powers of two
    Rational y = x;
    int halvings = 0;
    while (y > 2) {
        y /= 2;
        ++halvings;
    }
    const Rational sub_prec = precision / (halvings + 2);
    Enclosure acc = ln_small(y, sub_prec);
    if (halvings > 0) {
        const Enclosure ln2 = ln_small(Rational(2), sub_prec / halvings);
        acc.lo += halvings * ln2.lo;
        acc.hi += halvings * ln2.hi;
    }
    return acc;
}

Enclosure exp_enclosure(const Rational& x, const Rational& precision) {
    if (x < 0) throw InvalidInputError("exp_enclosure: argument must be >= 0");
    if (x > 64) throw InvalidInputError("exp_enclosure: argument must be <= 64");
    if (precision <= 0) throw InvalidInputError("exp_enclosure: precision must be positive");
    Rational sum = 1;
    Rational term = 1;  // x^i / i!
    for (int i = 1; i <= kExpTermCap; ++i) {
        term *= x / i;
        sum += term;
        // tail = sum_{j>i} x^j/j! <= term * (x/(i+1)) / (1 - x/(i+2)) once i+2 > x
        if (Rational(i + 2) > x) {
            const Rational next = term * x / (i + 1);
            const Rational tail = next / (Rational(1) - x / (i + 2));
            if (tail <= precision) return {sum, sum + tail};
        }
    }
    throw PrecisionUnreachableError("exp_enclosure: series did not converge within cap");
}

namespace {

// q0^(h/2) for integer h >= 0 as an enclosure (exact when h is even)
Enclosure half_power(const Rational& q0, int h, const Enclosure& sqrt_q0) {
    if (h % 2 == 0) {
        const Rational v = rat_pow(q0, h / 2);
        return {v, v};
    }
    const Rational base = rat_pow(q0, (h - 1) / 2);
    return {base * sqrt_q0.lo, base * sqrt_q0.hi};
}

// [a,b] += c / [d_lo, d_hi], everything positive
void add_ratio(Enclosure& acc, const Rational& c, const Enclosure& den) {
    acc.lo += c / den.hi;
    acc.hi += c / den.lo;
}

}  // namespace

Enclosure series_enclosure(Series s, const Rational& q0, const Rational& precision) {
    if (precision <= 0) throw InvalidInputError("series_enclosure: precision must be positive");
    const bool fifth = (s == Series::DegreeFifthMoment || s == Series::DegreeFifthMomentGenus);
    if (q0 <= (fifth ? Rational(32) : Rational(1)))
        throw InvalidInputError("series_enclosure: q0 too small for a convergent tail bound");

    const Enclosure sq = sqrt_enclosure(q0, rat_min(precision / 1000, Rational(1, 1000000)));
    // one-term ratio upper bound: q0^(-1/2) for the plain series, 32/q0 with n^5
    const Rational ratio = fifth ? Rational(32) / q0 : Rational(1) / sq.lo;
    if (!(ratio < 1)) throw InvalidInputError("series_enclosure: tail ratio not < 1");

    Enclosure acc{Rational(0), Rational(0)};
    for (int n = 1; n <= kSeriesTermCap; ++n) {
        Enclosure term{Rational(0), Rational(0)};
        const Rational n5 = rat_pow(Rational(n), 5);
        switch (s) {
            case Series::LogMertensTail:
                add_ratio(term, Rational(2, n), half_power(q0, n, sq));
                break;
            case Series::InverseSquareNorm:
                add_ratio(term, Rational(1, n), half_power(q0, 2 * (n - 1), sq));
                add_ratio(term, Rational(2, n), half_power(q0, 3 * n - 2, sq));
                break;
            case Series::InverseSquareNormGenus:
                add_ratio(term, Rational(4, n), half_power(q0, 3 * n - 2, sq));
                break;
            case Series::DegreeFifthMoment:
                add_ratio(term, n5, half_power(q0, 2 * (n - 1), sq));
                add_ratio(term, 2 * n5, half_power(q0, 3 * n - 2, sq));
                break;
            case Series::DegreeFifthMomentGenus:
                add_ratio(term, 4 * n5, half_power(q0, 3 * n - 2, sq));
                break;
        }
        acc.lo += term.lo;
        acc.hi += term.hi;
        const Rational tail = term.hi * ratio / (Rational(1) - ratio);
        if (tail + acc.width() <= precision) {
            acc.hi += tail;
            return acc;
        }
    }
    throw PrecisionUnreachableError("series_enclosure: did not reach requested precision within cap");
}

Rational pi_upper(std::uint64_t q, int n, int g) {
    if (q < 4) throw InvalidInputError("pi_upper: valid for q >= 4 only");
    if (n < 1) throw InvalidInputError("pi_upper: n must be >= 1");
    const Rational qr(q);
    const Rational qn = rat_pow(qr, n);
    Rational half_hi;  // upper bound on q^(n/2), exact when q^(n/2) is an integer
    const BigInt root = isqrt_floor(BigInt(q));
    if (n % 2 == 0) {
        half_hi = rat_pow(qr, n / 2);
    } else if (root * root == q) {
        half_hi = rat_pow(Rational(root), n);
    } else {
        const Enclosure sq = sqrt_enclosure(qr, Rational(1, 1000000));
        half_hi = rat_pow(qr, (n - 1) / 2) * sq.hi;
    }
    return (qn + Rational(2 + 4 * g) * half_hi) / n;
}

Rational mertens_log_bound(std::uint64_t n_cut, int g, const Rational& precision) {
    if (n_cut < 1) throw InvalidInputError("mertens_log_bound: N must be >= 1");
    const Enclosure ln = ln_enclosure(Rational(n_cut), precision);
    return ln.hi + kPaperMertensConst + kPaperMertensGenus * g;
}

Rational mertens_square_bound(const Rational& q, int g) {
    if (q < 700) throw InvalidInputError("mertens_square_bound: stated for q >= 700");
    return (kPaperMertensConst + kPaperMertensGenus * g) / q;
}

Enclosure second_moment_bound(int deg_pj, const Rational& q, int g, int s, const Rational& precision) {
    if (q < 700) throw InvalidInputError("second_moment_bound: stated for q >= 700");
    if (deg_pj < 1 || s < 1) throw InvalidInputError("second_moment_bound: bad parameters");
    const Enclosure e = exp_enclosure(kPaperExpConst + kPaperExpGenus * g, precision);
    const Rational scale = kPaperSlack * s * s * rat_pow(Rational(deg_pj), 6) / rat_pow(q, 2 * deg_pj);
    return {e.lo * scale, e.hi * scale};
}

DerivedConstants derive_constants(const Rational& q0, const Rational& grid, const Rational& precision) {
    const Enclosure s_log = series_enclosure(Series::LogMertensTail, q0, precision);
    const Enclosure s_sq = series_enclosure(Series::InverseSquareNorm, q0, precision);
    const Enclosure s_sq_g = series_enclosure(Series::InverseSquareNormGenus, q0, precision);
    const Enclosure s_m = series_enclosure(Series::DegreeFifthMoment, q0, precision);
    const Enclosure s_m_g = series_enclosure(Series::DegreeFifthMomentGenus, q0, precision);
    const Rational slack_raw_lo = rat_pow(q0 / (q0 - 1), 2);

    DerivedConstants dc;
    dc.q0 = q0;
    dc.grid = grid;
    if (grid == 0) {
        dc.mertens_const = {1 + s_log.lo, 1 + s_log.hi};
        dc.mertens_g = {2 * s_log.lo, 2 * s_log.hi};
        dc.mertens_sq_const = s_sq;
        dc.mertens_sq_g = s_sq_g;
        dc.slack = {slack_raw_lo, slack_raw_lo};
        dc.exp_const = {6 * dc.mertens_const.lo + 11 * dc.mertens_sq_const.lo / q0,
                        6 * dc.mertens_const.hi + 11 * dc.mertens_sq_const.hi / q0};
        dc.exp_g = {6 * dc.mertens_g.lo + 11 * dc.mertens_sq_g.lo / q0,
                    6 * dc.mertens_g.hi + 11 * dc.mertens_sq_g.hi / q0};
        dc.final_const = {dc.slack.lo * s_m.lo, dc.slack.hi * s_m.hi};
        dc.final_g = {dc.slack.lo * s_m_g.lo, dc.slack.hi * s_m_g.hi};
        return dc;
    }
    const auto pt = [&](const Rational& raw) -> Enclosure {
        const Rational r = round_up_to_grid(raw, grid);
        return {r, r};
    };
    dc.mertens_const = pt(1 + s_log.hi);
    dc.mertens_g = pt(2 * s_log.hi);
    dc.mertens_sq_const = pt(s_sq.hi);
    dc.mertens_sq_g = pt(s_sq_g.hi);
    dc.slack = pt(slack_raw_lo);
    dc.exp_const = pt(6 * dc.mertens_const.hi + 11 * dc.mertens_sq_const.hi / q0);
    dc.exp_g = pt(6 * dc.mertens_g.hi + 11 * dc.mertens_sq_g.hi / q0);
    dc.final_const = pt(dc.slack.hi * s_m.hi);
    dc.final_g = pt(dc.slack.hi * s_m_g.hi);
    return dc;
}

void check_paper_constants(const Rational& precision) {
    const Rational q0(700);
    const Enclosure s_log = series_enclosure(Series::LogMertensTail, q0, precision);
    const Enclosure s_sq = series_enclosure(Series::InverseSquareNorm, q0, precision);
    const Enclosure s_sq_g = series_enclosure(Series::InverseSquareNormGenus, q0, precision);
    const Enclosure s_m = series_enclosure(Series::DegreeFifthMoment, q0, precision);
    const Enclosure s_m_g = series_enclosure(Series::DegreeFifthMomentGenus, q0, precision);
    const auto fail = [](const char* what) {
        throw std::logic_error(std::string("paper constant fails to dominate series value: ") + what);
    };
    if (!(1 + s_log.hi <= kPaperMertensConst)) fail("1 + S_log <= 1.08");
    if (!(2 * s_log.hi <= kPaperMertensGenus)) fail("2 S_log <= 0.16");
    if (!(s_sq.hi <= kPaperMertensConst)) fail("S_sq <= 1.08");
    if (!(s_sq_g.hi <= kPaperMertensGenus)) fail("S_sq_genus <= 0.16");
    if (!(rat_pow(q0 / (q0 - 1), 2) <= kPaperSlack)) fail("(q0/(q0-1))^2 <= 1.01");
    if (!(6 * kPaperMertensConst + 11 * kPaperMertensConst / q0 <= kPaperExpConst))
        fail("6*1.08 + 11*1.08/700 <= 6.5");
    if (!(6 * kPaperMertensGenus + 11 * kPaperMertensGenus / q0 <= kPaperExpGenus))
        fail("6*0.16 + 11*0.16/700 <= 0.97");
    if (!(kPaperSlack * s_m.hi <= kPaperFinalConst)) fail("1.01 S_moment <= 1.14");
    if (!(kPaperSlack * s_m_g.hi <= kPaperFinalGenus)) fail("1.01 S_moment_genus <= 0.16");
}

namespace {

Enclosure threshold_rhs(const DerivedConstants& dc, int g, int s, const Rational& exp_prec) {
    const Enclosure expo{dc.exp_const.lo + dc.exp_g.lo * g, dc.exp_const.hi + dc.exp_g.hi * g};
    const Enclosure coef{dc.final_const.lo + dc.final_g.lo * g, dc.final_const.hi + dc.final_g.hi * g};
    const Enclosure elo = exp_enclosure(expo.lo, exp_prec);
    const Enclosure ehi = expo.lo == expo.hi ? elo : exp_enclosure(expo.hi, exp_prec);
    const Rational s2(s * s);
    return {coef.lo * elo.lo * s2, coef.hi * ehi.hi * s2};
}

}  // namespace

ThresholdResult threshold_from_constants(const DerivedConstants& dc, int g, int s,
                                         const Rational& precision) {
    if (g < 0 || s < 1) throw InvalidInputError("threshold: need g >= 0, s >= 1");
    Rational prec = precision;
    for (int attempt = 0; attempt < 12; ++attempt) {
        // sharp constants carry series width the exp refinement cannot shrink,
        // so re-derive them along with the finer exponential
        const DerivedConstants use =
            (attempt == 0 || dc.grid != 0) ? dc : derive_constants(dc.q0, dc.grid, prec);
        const Enclosure rhs = threshold_rhs(use, g, s, prec);
        if (rat_ceil_ll(rhs.lo) == rat_ceil_ll(rhs.hi))
            return ThresholdResult{rat_ceil_ll(rhs.hi), rhs, use};
        prec /= 10;
    }
    throw PrecisionUnreachableError("threshold: ceiling did not stabilize under refinement");
}

ThresholdResult theorem_threshold(int g, int s, ThresholdVariant variant, const Rational& precision) {
    if (variant == ThresholdVariant::Paper) {
        check_paper_constants(precision);
        DerivedConstants dc = derive_constants(Rational(700), Rational(1, 100), precision);
        const auto expect = [](const Enclosure& e, const Rational& want, const char* what) {
            if (e.lo != want || e.hi != want)
                throw std::logic_error(std::string("derived constant differs from the paper: ") + what);
        };
        expect(dc.mertens_const, kPaperMertensConst, "mertens 1.08");
        expect(dc.mertens_g, kPaperMertensGenus, "mertens genus 0.16");
        expect(dc.mertens_sq_const, kPaperMertensConst, "mertens square 1.08");
        expect(dc.mertens_sq_g, kPaperMertensGenus, "mertens square genus 0.16");
        expect(dc.slack, kPaperSlack, "slack 1.01");
        expect(dc.exp_const, kPaperExpConst, "exponent 6.5");
        expect(dc.exp_g, kPaperExpGenus, "exponent genus 0.97");
        expect(dc.final_const, kPaperFinalConst, "final 1.14");
        expect(dc.final_g, kPaperFinalGenus, "final genus 0.16");
        return threshold_from_constants(dc, g, s, precision);
    }
    const DerivedConstants dc = derive_constants(Rational(724), Rational(0), precision);
    return threshold_from_constants(dc, g, s, precision);
}

}  // namespace covercert
