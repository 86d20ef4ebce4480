#pragma once

// Exact arithmetic helpers on top of GMP's C++ bindings.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hweyl {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "num/den", a bare integer, or a finite decimal ("-0.25", "1e3")
// into an exact canonical rational. Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

// Always "num/den", including integers ("2/1").
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

double to_double(const Rational& q);

// binom(n, k) for nonnegative n, k; zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

BigInt pow(const BigInt& base, unsigned exp);

// floor(q) as an exact integer.
BigInt floor(const Rational& q);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace hweyl
