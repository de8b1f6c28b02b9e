#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace neron {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::int64_t n);

// l^e as an arbitrary-precision integer.
Integer ipow(std::int64_t base, unsigned exp);

// l-adic valuation of a nonzero integer; throws on zero.
unsigned valuation(const Integer& x, std::int64_t l);

// Splits |x| = l^v * w with l not dividing w; x must be nonzero.
std::pair<unsigned, Integer> split_valuation(const Integer& x, std::int64_t l);

// Prime factorization of n > 0 as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::int64_t, unsigned>> factorize(std::int64_t n);

// Euler phi of l^i for a prime l, i >= 1.
Integer phi_prime_power(std::int64_t l, unsigned i);

void require_prime(std::int64_t l, const char* what);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

} // namespace neron
