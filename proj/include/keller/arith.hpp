#pragma once

// Arbitrary-precision scalars. BigInt and BigRat are the GMP C++ classes;
// mpq_class keeps values canonical (den > 0, gcd(num, den) = 1, zero = 0/1)
// after every arithmetic operator.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace keller {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Nonnegative gcd; gcd(0, 0) = 0.
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Positive divisors of |n| in ascending order. Throws DomainError for n = 0.
std::vector<BigInt> divisors(const BigInt& n);

/// Number of positive divisors of |n|. Throws DomainError for n = 0.
std::uint64_t divisor_count(const BigInt& n);

/// Prime factorization of |n| by trial division, ascending primes.
std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n);

/// num/den in lowest terms. Throws DomainError when den = 0.
BigRat make_rat(const BigInt& num, const BigInt& den);

/// Parses "a" or "a/b" (optional sign). Throws DomainError on bad text.
BigRat parse_rat(const std::string& text);

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

/// Integer value of q when q is an integer that fits in a long.
std::optional<long> to_long(const BigRat& q);
std::optional<long> to_long(const BigInt& z);

/// Exact square root when q is the square of a rational.
std::optional<BigRat> rational_sqrt(const BigRat& q);

BigInt ipow(const BigInt& base, unsigned exp);
BigRat ipow(const BigRat& base, unsigned exp);

std::string to_string(const BigInt& z);
std::string to_string(const BigRat& q);

}  // namespace keller
