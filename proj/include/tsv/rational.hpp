#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace tsv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "p" or "p/q", canonical (cpp_rational keeps gcd-reduced form).
std::string to_string(const Rat& r);

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rat parse_rational(std::string_view text);

Int binomial(int n, int k);
Int int_pow(const Int& base, int exp);

} // namespace tsv
