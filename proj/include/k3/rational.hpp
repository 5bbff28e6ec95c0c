#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace k3 {

// Exact rational coefficients. Everything in this project is exact; there is
// no floating point anywhere in the computational core.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long p, long long q = 1) { return Rat(Int(p), Int(q)); }

Int factorial(int n);

// Prints in lowest terms as "p" or "p/q" with q > 0.
std::string rat_to_string(const Rat& r);

// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

}  // namespace k3
