#include "covercert/rational.hpp"

#include "covercert/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace covercert {

BigInt ipow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    BigInt b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

Rational rat_pow(const Rational& base, int exp) {
    if (exp == 0) return Rational(1);
    if (exp < 0) {
        if (base == 0) throw DivisionByZeroError("rat_pow: 0 to a negative power");
        return Rational(1) / rat_pow(base, -exp);
    }
    Rational r = 1;
    Rational b = base;
    int e = exp;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw InvalidInputError("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

std::string rat_to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

Rational rat_from_fraction_string(std::string_view text) {
    auto bad = [&](const char* why) { return ParseError(std::string("rational: ") + why, 0); };
    if (text.empty()) throw bad("empty");
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(text)));
        }
        BigInt num{std::string(text.substr(0, slash))};
        BigInt den{std::string(text.substr(slash + 1))};
        if (den == 0) throw bad("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw bad("malformed");
    }
}

Rational rat_from_user_string(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return rat_from_fraction_string(text);
    // decimal / scientific literal
    std::string s(text);
    auto bad = [&]() { return ParseError("rational: malformed decimal '" + s + "'", 0); };
    if (s.empty()) throw bad();
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        try {
            exp10 = std::stol(s.substr(epos + 1));
        } catch (const std::exception&) {
            throw bad();
        }
        s = s.substr(0, epos);
    }
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto dot = s.find('.');
    std::string digits = s;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        exp10 -= static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
    Rational r{BigInt(digits)};
    if (exp10 > 0)
        r *= Rational(ipow(BigInt(10), static_cast<unsigned>(exp10)));
    else if (exp10 < 0)
        r /= Rational(ipow(BigInt(10), static_cast<unsigned>(-exp10)));
    return neg ? Rational(-r) : r;
}

std::string rat_to_decimal_string(const Rational& r, int digits) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const bool neg = r < 0;
    BigInt num = numerator(r);
    if (neg) num = -num;
    const BigInt den = denominator(r);
    const BigInt whole = num / den;
    BigInt frac = num % den;
    std::string out = (neg ? "-" : "") + whole.str();
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            frac *= 10;
            out += static_cast<char>('0' + static_cast<int>(frac / den));
            frac %= den;
        }
    }
    return out;
}

Rational round_up_to_grid(const Rational& x, const Rational& grid) {
    if (grid <= 0) throw InvalidInputError("round_up_to_grid: grid must be positive");
    const Rational q = x / grid;
    BigInt n = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
    if (Rational(n) * grid < x) ++n;  // integer division truncates toward zero
    return Rational(n) * grid;
}

}  // namespace covercert
