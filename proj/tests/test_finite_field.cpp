#include "arithdyn/errors.hpp"
#include "arithdyn/finite_field.hpp"

#include <doctest.h>

#include <random>

using namespace arithdyn;

namespace {

using Poly = std::vector<std::uint64_t>;

// Schoolbook product reduced by a monic modulus, coefficients low to high.
Poly mulmod_oracle(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const std::size_t r = mod.size() - 1;
    for (std::size_t k = prod.size(); k-- > r;) {
        const std::uint64_t c = prod[k];
        if (!c) continue;
        for (std::size_t i = 0; i <= r; ++i) prod[k - r + i] = (prod[k - r + i] + (p - c) * mod[i]) % p;
    }
    prod.resize(r);
    return prod;
}

Poly random_poly(std::mt19937_64& rng, std::size_t r, std::uint64_t p) {
    Poly v(r);
    for (auto& c : v) c = rng() % p;
    return v;
}

// Monic polynomial with no monic factor of degree 1..deg/2, by exhaustive division.
bool naive_irreducible(const Poly& f, std::uint64_t p) {
    const std::size_t n = f.size() - 1;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            Poly g(k + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < k; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[k] = 1;
            Poly rem = f;
            for (std::size_t d = rem.size(); d-- > k;) {
                const std::uint64_t lead = rem[d];
                if (!lead) continue;
                for (std::size_t i = 0; i <= k; ++i) rem[d - k + i] = (rem[d - k + i] + (p - lead) * g[i]) % p;
            }
            bool zero = true;
            for (std::size_t i = 0; i < k; ++i) zero &= rem[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST_CASE("first irreducible modulus is found in lexicographic order") {
    CHECK(FiniteField::first_irreducible(3, 2) == Poly{1, 0, 1});  // t^2 + 1
    CHECK(FiniteField::first_irreducible(2, 2) == Poly{1, 1, 1});  // t^2 + t + 1
    CHECK(FiniteField::first_irreducible(2, 3) == Poly{1, 1, 0, 1});
    CHECK(FiniteField::get(3, 2)->modulus() == Poly{1, 0, 1});
}

TEST_CASE("Ben-Or test agrees with exhaustive trial division") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        const unsigned max_deg = p == 2 ? 6 : (p == 3 ? 4 : 3);
        for (unsigned n = 1; n <= max_deg; ++n) {
            const std::uint64_t total = ipow(p, n);
            for (std::uint64_t code = 0; code < total; ++code) {
                Poly f(n + 1);
                std::uint64_t c = code;
                for (unsigned i = 0; i < n; ++i) {
                    f[i] = c % p;
                    c /= p;
                }
                f[n] = 1;
                CHECK(FiniteField::is_irreducible(f, p) == naive_irreducible(f, p));
            }
        }
    }
}

TEST_CASE("multiplication matches schoolbook reduction") {
    std::mt19937_64 rng(2024);
    const std::vector<std::pair<std::uint64_t, unsigned>> fields{{3, 4}, {2, 5}, {5, 2}, {7, 1}, {3, 15}, {2, 24}};
    for (auto [p, r] : fields) {
        const auto F = FiniteField::get(p, r);
        CAPTURE(p);
        CAPTURE(r);
        CHECK(F->has_tables() == (F->order() <= FiniteField::kTableLimit && r > 1));
        for (int t = 0; t < 300; ++t) {
            const Poly a = random_poly(rng, r, p), b = random_poly(rng, r, p);
            const FieldElement x = F->from_coeffs(a), y = F->from_coeffs(b);
            CHECK(F->coeffs(F->mul(x, y)) == mulmod_oracle(a, b, F->modulus(), p));
            Poly sum(r);
            for (unsigned i = 0; i < r; ++i) sum[i] = (a[i] + b[i]) % p;
            CHECK(F->coeffs(F->add(x, y)) == sum);
        }
    }
}

TEST_CASE("field axioms hold on random samples") {
    std::mt19937_64 rng(7);
    for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {5, 3}, {2, 8}, {11, 1}, {3, 15}}) {
        const auto F = FiniteField::get(p, r);
        const std::uint64_t q = F->order();
        for (int t = 0; t < 300; ++t) {
            const FieldElement a{rng() % q}, b{rng() % q}, c{rng() % q};
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->add(a, F->neg(a)) == F->zero());
            CHECK(F->sub(F->add(a, b), b) == a);
            if (a.code) {
                CHECK(F->mul(a, F->inv(a)) == F->one());
                CHECK(F->pow(a, q - 1) == F->one());
            }
            // Frobenius is additive
            CHECK(F->pow(F->add(a, b), p) == F->add(F->pow(a, p), F->pow(b, p)));
        }
        CHECK_THROWS_AS(F->inv(F->zero()), InvalidInput);
    }
}

TEST_CASE("pow agrees for machine and big exponents") {
    const auto F = FiniteField::get(3, 4);
    const FieldElement t = F->generator_t();
    CHECK(F->pow(t, Integer(80)) == F->one());
    // 10^21 is divisible by 80 = |F_81^*|
    CHECK(F->pow(t, Integer("1000000000000000000003")) == F->pow(t, std::uint64_t{3}));
    CHECK(F->pow(t, 0) == F->one());
}

TEST_CASE("small constants and conversions") {
    const auto F = FiniteField::get(5, 2);
    CHECK(F->from_int(-1) == F->from_int(4));
    CHECK(F->from_integer(Integer(-7)) == F->from_int(3));
    CHECK(F->coeffs(F->generator_t()) == Poly{0, 1});
    CHECK(F->characteristic() == 5);
    CHECK(F->degree() == 2);
    CHECK(F->order() == 25);
}

TEST_CASE("fields are cached per (p, r)") {
    CHECK(FiniteField::get(7, 3).get() == FiniteField::get(7, 3).get());
    CHECK(FiniteField::get(7, 3).get() != FiniteField::get(7, 2).get());
}

TEST_CASE("invalid field parameters are rejected") {
    CHECK_THROWS_AS(FiniteField::get(4, 1), InvalidInput);
    CHECK_THROWS_AS(FiniteField(3, Poly{2, 0, 1}), InvalidInput);  // t^2 + 2 = (t-1)(t+1) over F_3
    CHECK_THROWS_AS(FiniteField(3, Poly{1, 0, 2}), InvalidInput);  // not monic
}
