#ifndef COVERCERT_RATIONAL_HPP
#define COVERCERT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace covercert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt ipow(const BigInt& base, unsigned exp);
Rational rat_pow(const Rational& base, int exp);

// floor(sqrt(n)) for n >= 0
BigInt isqrt_floor(const BigInt& n);

// canonical "num/den" form, always with denominator ("0/1", "3/4", "5/1")
std::string rat_to_fraction_string(const Rational& r);
// accepts "num/den" and bare integers
Rational rat_from_fraction_string(std::string_view text);
// accepts fractions and decimal literals like "0.01" or "1e-4"
Rational rat_from_user_string(std::string_view text);

// truncated decimal rendering (annotation only, never used in certificates)
std::string rat_to_decimal_string(const Rational& r, int digits = 10);

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// smallest multiple of grid that is >= x (grid > 0)
Rational round_up_to_grid(const Rational& x, const Rational& grid);

}  // namespace covercert

#endif
