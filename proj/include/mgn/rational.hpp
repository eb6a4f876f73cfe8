/**
 * @file rational.hpp
 * @brief Exact rational scalars used by every class computation.
 *
 * All coefficients are arbitrary-precision rationals (Boost.Multiprecision,
 * header-only backend). Nothing in the class algebra ever touches floating
 * point.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mgn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Lowest terms, "p/q", or just "p" when q = 1. A minus sign only when negative.
inline std::string to_string(const Rational& r) {
    Integer num = numerator_of(r);
    Integer den = denominator_of(r);
    std::string out = num.str();
    if (den != 1) out += "/" + den.str();
    return out;
}

/// Lowest terms with an explicit sign and an explicit denominator: "+13/1", "-1/12".
inline std::string to_signed_string(const Rational& r) {
    Integer num = numerator_of(r);
    Integer den = denominator_of(r);
    std::string out = num < 0 ? "-" : "+";
    Integer mag = num < 0 ? Integer(-num) : num;
    out += mag.str() + "/" + den.str();
    return out;
}

/// Accepts "[+-]p" and "[+-]p/q" with decimal digits; q must be non-zero.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    auto slash = text.find('/', pos);
    std::string_view num_part = text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (!digits(num_part) || !digits(den_part)) throw fail();
    Integer num{std::string(num_part)};
    Integer den{std::string(den_part)};
    if (den == 0) throw fail();
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

/// Fractional part {x} in [0, 1).
inline Rational fractional_part(const Rational& x) {
    Integer num = numerator_of(x);
    Integer den = denominator_of(x);
    Integer rem = num % den;
    if (rem < 0) rem += den;
    return Rational(rem, den);
}

inline Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

}  // namespace mgn
