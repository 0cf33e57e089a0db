#ifndef COVERCERT_BOUNDS_HPP
#define COVERCERT_BOUNDS_HPP

#include "covercert/rational.hpp"

#include <cstdint>

namespace covercert {

/// pair of rationals provably bracketing a real value
struct Enclosure {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// certified sqrt/ln/exp via integer square roots and tail-bounded series;
/// no floating point anywhere
Enclosure sqrt_enclosure(const Rational& x, const Rational& precision);
Enclosure ln_enclosure(const Rational& x, const Rational& precision);   // x >= 1
Enclosure exp_enclosure(const Rational& x, const Rational& precision);  // 0 <= x <= 64

/// the five series the explicit constants come from, all evaluated at a
/// rational cutoff q0 with a certified geometric tail bound
enum class Series {
    LogMertensTail,          // sum 2/(n q0^{n/2})
    InverseSquareNorm,       // sum (1/(n q0^{n-1}) + 2/(n q0^{3n/2-1}))
    InverseSquareNormGenus,  // sum 4/(n q0^{3n/2-1})
    DegreeFifthMoment,       // sum (n^5/q0^{n-1} + 2 n^5/q0^{3n/2-1})
    DegreeFifthMomentGenus,  // sum 4 n^5/q0^{3n/2-1}
};
Enclosure series_enclosure(Series s, const Rational& q0, const Rational& precision);

/// exact count upper bound q^n/n + (2+4g) q^{n/2}/n (rational, dominating);
/// requires q >= 4
Rational pi_upper(std::uint64_t q, int n, int g);

/// log N + 1.08 + 0.16 g with the log taken at its upper enclosure end
Rational mertens_log_bound(std::uint64_t n_cut, int g,
                           const Rational& precision = Rational(1, 10000));
/// (1.08 + 0.16 g)/q; requires q >= 700
Rational mertens_square_bound(const Rational& q, int g);

/// 1.01 e^{6.5+0.97g} s^2 (deg P_j)^6 / |P_j|^2 as an enclosure; requires q >= 700
Enclosure second_moment_bound(int deg_pj, const Rational& q, int g, int s,
                              const Rational& precision = Rational(1, 10000));

/// Constants of the explicit-bound chain re-derived from the series
/// enclosures. With a positive grid every constant is rounded up onto that
/// decimal grid (point enclosures), reproducing the theorem statement; with
/// grid = 0 the raw enclosure ends are kept (sharp evaluation).
struct DerivedConstants {
    Rational q0;
    Rational grid;               // 0 = sharp
    Enclosure mertens_const;     // >= 1 + S_log
    Enclosure mertens_g;         // >= 2 S_log
    Enclosure mertens_sq_const;  // >= S_sq
    Enclosure mertens_sq_g;      // >= S_sq_genus
    Enclosure slack;             // >= (q0/(q0-1))^2
    Enclosure exp_const;         // >= 6 mertens + 11 mertens_sq / q0
    Enclosure exp_g;
    Enclosure final_const;       // >= slack * S_moment
    Enclosure final_g;           // >= slack * S_moment_genus
};
DerivedConstants derive_constants(const Rational& q0, const Rational& grid,
                                  const Rational& precision = Rational(1, 10000));

/// throws when the paper's printed constants fail to dominate the series
/// values at q0 = 700 (the decimal-rounding reproduction check)
void check_paper_constants(const Rational& precision = Rational(1, 10000));

enum class ThresholdVariant {
    Paper,       // q0 = 700, constants rounded at 1/100 (must match the paper)
    Refined724,  // q0 = 724, sharp evaluation
};

struct ThresholdResult {
    long long threshold = 0;
    Enclosure rhs;  // encloses (final + final_g g) e^{exp + exp_g g} s^2
    DerivedConstants constants;
};

/// least integer q satisfying the theorem inequality, from enclosures with a
/// ceiling-stability refinement loop
ThresholdResult theorem_threshold(int g, int s, ThresholdVariant variant = ThresholdVariant::Paper,
                                  const Rational& precision = Rational(1, 10000));
/// same, from an explicit constant set (used for the re-rounding flag)
ThresholdResult threshold_from_constants(const DerivedConstants& dc, int g, int s,
                                         const Rational& precision = Rational(1, 10000));

/// ceil as integer (value must fit long long)
long long rat_ceil_ll(const Rational& x);

// the paper's printed constants, exact
inline const Rational kPaperMertensConst{27, 25};    // 1.08
inline const Rational kPaperMertensGenus{4, 25};     // 0.16
inline const Rational kPaperSlack{101, 100};         // 1.01
inline const Rational kPaperExpConst{13, 2};         // 6.5
inline const Rational kPaperExpGenus{97, 100};       // 0.97
inline const Rational kPaperFinalConst{57, 50};      // 1.14
inline const Rational kPaperFinalGenus{4, 25};       // 0.16

}  // namespace covercert

#endif
