#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arithdyn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Natural log of |x|; x must be nonzero. Accurate to a few ulps for any size.
double log_abs(const Integer& x);

std::size_t bit_length(const Integer& x);

/// Parses "123", "-7" or "3/4". Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// floor(x^(1/k)) for x >= 0, k >= 1.
Integer floor_root(const Integer& x, unsigned long k);

Integer gcd_of(std::span<const Integer> values);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Prime factorization of |n| (n != 0), ascending primes with multiplicity.
/// Uses trial division then Pollard-Brent rho.
std::vector<std::pair<Integer, unsigned>> factor(const Integer& n);

/// All positive divisors of |n|, ascending.
std::vector<Integer> positive_divisors(const Integer& n);

std::uint64_t mod_u64(const Integer& x, std::uint64_t m);

}  // namespace arithdyn
