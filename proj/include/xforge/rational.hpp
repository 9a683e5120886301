#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace xforge {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q", or just "p" for integers.
inline std::string to_string(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

}  // namespace xforge
