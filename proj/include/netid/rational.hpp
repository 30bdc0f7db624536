#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "netid/errors.hpp"

namespace netid {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values in
// canonical form (reduced, positive denominator) which the polynomial and
// rational-function layers rely on.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_div(const Rat& a, const Rat& b) {
    if (b == 0) throw DivisionByZero("rational division");
    return a / b;
}

}  // namespace netid
