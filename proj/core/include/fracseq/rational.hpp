#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracseq {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" or "p"; throws InvalidArgument on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical lowest-terms rendering: "-5/128", "1", "0".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace fracseq
