#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fibercone {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer gcd(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(a, b);
}

inline Integer pow(const Integer& base, unsigned exponent)
{
    return boost::multiprecision::pow(base, exponent);
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& q)
{
    const Integer den = denominator(q);
    if (den == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + den.str();
}

inline std::string to_string(const Integer& n) { return n.str(); }

/// Narrowing conversion for quantities that index memory (vertex counts, step counts).
inline std::size_t to_size(const Integer& n, const char* what)
{
    if (n < 0 || n > Integer(std::numeric_limits<std::size_t>::max()))
        throw std::out_of_range(std::string(what) + " does not fit in a machine word: " + n.str());
    return n.convert_to<std::size_t>();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

} // namespace fibercone
