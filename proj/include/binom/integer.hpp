#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace binom {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

using Exponent = std::vector<int>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invariant_violation : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct resource_exceeded : error {
    using error::error;
};

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;  // truncates
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q)
{
    if (is_integer(q))
        return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

// accepts "7", "-3/4", "0.125", "1e-3"
inline Rational parse_rational(std::string_view s)
{
    auto bad = [&] { return parse_error("bad rational '" + std::string(s) + "'"); };
    if (s.empty())
        throw bad();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational n = parse_rational(s.substr(0, slash));
        Rational d = parse_rational(s.substr(slash + 1));
        if (d == 0)
            throw bad();
        return n / d;
    }
    std::string mant(s);
    long exp10 = 0;
    if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
        try {
            exp10 = std::stol(mant.substr(e + 1));
        } catch (...) {
            throw bad();
        }
        mant.resize(e);
    }
    bool neg = false;
    std::size_t i = 0;
    if (i < mant.size() && (mant[i] == '-' || mant[i] == '+'))
        neg = mant[i++] == '-';
    std::string digits;
    bool dot = false, any = false;
    for (; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '.' && !dot) {
            dot = true;
        } else if (c >= '0' && c <= '9') {
            digits += c;
            any = true;
            if (dot)
                --exp10;
        } else {
            throw bad();
        }
    }
    if (!any)
        throw bad();
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational r{Integer(digits)};
    Integer ten = 10;
    Integer p = boost::multiprecision::pow(ten, static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    r = exp10 < 0 ? r / p : r * p;
    return neg ? Rational(-r) : r;
}

inline Integer integer_gcd(Integer a, Integer b)
{
    return boost::multiprecision::gcd(a, b);
}

inline Integer integer_lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::abs(a / integer_gcd(a, b) * b);
}

}  // namespace binom
