#include "arithdyn/bigint.hpp"
#include "arithdyn/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace arithdyn;

namespace {

bool naive_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("log_abs matches std::log and scales to huge integers") {
    CHECK(log_abs(Integer(1)) == doctest::Approx(0.0));
    CHECK(log_abs(Integer(-200)) == doctest::Approx(std::log(200.0)).epsilon(1e-15));
    Integer big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, 100000);
    CHECK(log_abs(big) == doctest::Approx(100000 * std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_abs(Integer(0)), InvalidInput);
}

TEST_CASE("bit_length") {
    CHECK(bit_length(Integer(0)) == 0);
    CHECK(bit_length(Integer(1)) == 1);
    CHECK(bit_length(Integer(-255)) == 8);
    CHECK(bit_length(Integer(256)) == 9);
}

TEST_CASE("parse_rational and parse_integer") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK(parse_integer("+12") == 12);
    CHECK(parse_integer("-123456789012345678901234567890") == Integer("-123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_rational("3/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
    CHECK_THROWS_AS(parse_integer("1.5"), InvalidInput);
    CHECK_THROWS_AS(parse_integer(""), InvalidInput);
}

TEST_CASE("floor_root brackets the root") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        Integer x(static_cast<unsigned long>(rng() >> 3));
        x *= Integer(static_cast<unsigned long>(rng() >> 20));
        const unsigned long k = 1 + rng() % 6;
        const Integer r = floor_root(x, k);
        Integer lo, hi;
        mpz_pow_ui(lo.get_mpz_t(), r.get_mpz_t(), k);
        const Integer r1 = r + 1;
        mpz_pow_ui(hi.get_mpz_t(), r1.get_mpz_t(), k);
        CHECK(lo <= x);
        CHECK(x < hi);
    }
}

TEST_CASE("gcd_of") {
    const std::vector<Integer> v{12, -18, 30};
    CHECK(gcd_of(v) == 6);
    const std::vector<Integer> z{0, 0};
    CHECK(gcd_of(z) == 0);
}

TEST_CASE("is_prime and primes_up_to agree with trial division") {
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == naive_prime(n));
    const auto ps = primes_up_to(1000);
    std::size_t count = 0;
    for (std::uint64_t n = 0; n <= 1000; ++n) count += naive_prime(n);
    CHECK(ps.size() == count);
    for (auto p : ps) CHECK(naive_prime(p));
    CHECK(is_prime(2305843009213693951ull));
    CHECK_FALSE(is_prime(2305843009213693953ull));
}

TEST_CASE("factor reconstructs n from primes") {
    std::mt19937_64 rng(5);
    const std::vector<unsigned long> pool{2, 3, 5, 7, 97, 1009, 65537, 999983, 1000003, 2147483647};
    for (int t = 0; t < 60; ++t) {
        Integer n = 1;
        const int k = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) n *= pool[rng() % pool.size()];
        if (rng() % 2) n = -n;
        const auto fac = factor(n);
        Integer prod = 1;
        for (const auto& [p, e] : fac) {
            CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == abs(n));
        for (std::size_t i = 1; i < fac.size(); ++i) CHECK(fac[i - 1].first < fac[i].first);
    }
}

TEST_CASE("positive_divisors against a naive scan") {
    CHECK(positive_divisors(Integer(12)) == std::vector<Integer>{1, 2, 3, 4, 6, 12});
    CHECK(positive_divisors(Integer(-1)) == std::vector<Integer>{1});
    for (long n = 1; n <= 400; ++n) {
        std::vector<Integer> expect;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) expect.emplace_back(d);
        CHECK(positive_divisors(Integer(n)) == expect);
    }
}

TEST_CASE("mod_u64 returns the nonnegative residue") {
    CHECK(mod_u64(Integer(-1), 5) == 4);
    CHECK(mod_u64(Integer(17), 5) == 2);
    // 10^20 = 3^20 = 3^2 (mod 7)
    CHECK(mod_u64(Integer("100000000000000000000"), 7) == 2);
    CHECK(mod_u64(Integer("-100000000000000000000"), 7) == 5);
}
