#include "arithdyn/errors.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/lattes.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace arithdyn;

namespace {

ProjMorphism quad(long c) {
    const std::vector<Rational> coeffs{Rational(c), Rational(0), Rational(1)};
    return polynomial_map(coeffs);
}

ProjMorphism plane_map() {
    const auto X = HomogeneousForm::variable(3, 0), Y = HomogeneousForm::variable(3, 1),
               Z = HomogeneousForm::variable(3, 2);
    return ProjMorphism::validate({X * X + Y * Z, Y * Y, Z * Z});
}

// Canonical representatives from a full nested loop.
std::set<std::vector<Integer>> nested_loop_points(std::size_t dim, long H) {
    std::set<std::vector<Integer>> out;
    std::vector<long> v(dim + 1, -H);
    for (;;) {
        std::vector<Integer> w(v.begin(), v.end());
        Integer g = gcd_of(w);
        if (g == 1) {
            std::size_t k = 0;
            while (sgn(w[k]) == 0) ++k;
            if (sgn(w[k]) > 0) out.insert(w);
        }
        std::size_t i = dim + 1;
        while (i > 0 && v[i - 1] == H) v[--i] = -H;
        if (i == 0) break;
        ++v[i - 1];
    }
    return out;
}

ProjPointQ random_point(std::mt19937_64& rng, std::size_t dim, long range) {
    for (;;) {
        std::vector<Integer> v(dim + 1);
        bool nz = false;
        for (auto& c : v) {
            c = static_cast<long>(rng() % (2 * range + 1)) - range;
            nz |= sgn(c) != 0;
        }
        if (nz) return ProjPointQ(v);
    }
}

Integer max_abs(const ProjPointQ& x) { return x.naive_height(); }

Integer pow_int(const Integer& b, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

TEST_CASE("Weil height") {
    CHECK(weil_height(ProjPointQ{1, 0}) == 0.0);
    CHECK(weil_height(ProjPointQ{3, 2}) == doctest::Approx(std::log(3.0)));
    CHECK(weil_height(ProjPointQ{1, -7}) == doctest::Approx(std::log(7.0)));
}

TEST_CASE("bounded enumeration small counts") {
    const auto p11 = enumerate_points(1, 1);
    CHECK(p11.size() == 4);
    const std::set<ProjPointQ> s(p11.begin(), p11.end());
    CHECK(s == std::set<ProjPointQ>{ProjPointQ{1, 0}, ProjPointQ{0, 1}, ProjPointQ{1, 1}, ProjPointQ{1, -1}});
    CHECK(enumerate_points(1, 2).size() == 8);
    CHECK(enumerate_points(2, 1).size() == 13);
}

TEST_CASE("bounded enumeration matches a nested-loop oracle") {
    for (std::size_t N = 1; N <= 3; ++N)
        for (long H = 1; H <= (N == 3 ? 4 : 5); ++H) {
            CAPTURE(N);
            CAPTURE(H);
            const auto expect = nested_loop_points(N, H);
            std::set<std::vector<Integer>> got;
            std::size_t emitted = 0;
            BoundedPointStream stream(N, H);
            while (auto x = stream.next()) {
                got.insert(x->coords());
                ++emitted;
            }
            CHECK(emitted == got.size());
            CHECK(got == expect);
            CHECK(count_points(N, H) == expect.size());
        }
}

TEST_CASE("comparison constants of quadratic maps") {
    const auto c0 = comparison_constant(quad(0));
    CHECK(c0.C == 0.0);
    CHECK(c0.k_up == 1);
    CHECK(c0.k_low == 1);
    const auto cm = comparison_constant(quad(-1));
    CHECK(cm.k_up == 2);
    CHECK(cm.c_up == doctest::Approx(std::log(2.0)));
    CHECK(cm.C == doctest::Approx(std::log(2.0)));
    const auto cp = comparison_constant(quad(1));
    CHECK(cp.k_up == 2);
    CHECK(cp.k_low == 2);
}

TEST_CASE("Nullstellensatz identities hold exactly") {
    for (const ProjMorphism& f : {quad(0), quad(-1), quad(3), plane_map()}) {
        const auto ids = nullstellensatz_identities(f);
        CHECK(sgn(ids.denominator) > 0);
        const std::size_t n = f.dim() + 1;
        REQUIRE(ids.cofactors.size() == n);
        for (std::size_t k = 0; k < n; ++k) {
            HomogeneousForm lhs(n, ids.degree);
            for (std::size_t j = 0; j < n; ++j) lhs += ids.cofactors[k][j] * f.forms()[j];
            Exponents e(n, 0);
            e[k] = ids.degree;
            CHECK(lhs == HomogeneousForm::monomial(e, ids.denominator));
        }
    }
}

TEST_CASE("one-sided height bounds hold as integer inequalities") {
    std::mt19937_64 rng(41);
    for (const ProjMorphism& f : {quad(0), quad(-1), quad(1), quad(-2), plane_map()}) {
        const auto cc = comparison_constant(f);
        const unsigned d = f.degree();
        for (int t = 0; t < 300; ++t) {
            const ProjPointQ x = random_point(rng, f.dim(), 500);
            const Integer Hx = max_abs(x), Hfx = max_abs(apply(f, x));
            CHECK(Hfx <= cc.k_up * pow_int(Hx, d));
            CHECK(pow_int(Hx, d) <= cc.k_low * Hfx);
        }
    }
}

TEST_CASE("escape criterion") {
    const auto cc = comparison_constant(quad(-1));
    // C/(d-1) = log 2: height 2 is not beyond, 3 is
    CHECK_FALSE(beyond_escape_height(ProjPointQ{2, 1}, cc, 2));
    CHECK(beyond_escape_height(ProjPointQ{3, 1}, cc, 2));
    CHECK(escape_height_bound(cc, 2) == 2);
    CHECK(escape_height_bound(comparison_constant(quad(0)), 2) == 1);
}

TEST_CASE("canonical height examples") {
    const auto h2 = canonical_height(quad(0), ProjPointQ{2, 1}, 1e-9);
    CHECK(std::abs(h2.value - std::log(2.0)) <= 1e-9);
    CHECK(h2.error_bound <= 1e-9);
    const auto h0 = canonical_height(quad(-1), ProjPointQ{0, 1}, 1e-9);
    CHECK(std::abs(h0.value) <= 1e-9);
    CHECK(h0.preperiodic_detected);
}

TEST_CASE("canonical height of x^2+1 at 0 against the exact orbit") {
    // a_{n+1} = a_n^2 + 1 from a_0 = 0; log(a_n)/2^n increases to the limit
    // and the gap at n = 14 is below 1e-300.
    Integer a = 0;
    for (int n = 0; n < 14; ++n) a = a * a + 1;
    const double oracle = log_abs(a) / std::ldexp(1.0, 14);
    const auto h = canonical_height(quad(1), ProjPointQ{0, 1}, 1e-9);
    CHECK(h.error_bound <= 1e-9);
    CHECK(std::abs(h.value - oracle) <= 1e-9 + 1e-12);
    CHECK(h.value > 0.0);
}

TEST_CASE("the float continuation agrees with the exact orbit") {
    CanonicalHeightOptions small, big;
    small.max_exact_bits = 256;
    big.max_exact_bits = 1'000'000;
    const auto exact = canonical_height(quad(1), ProjPointQ{3, 7}, 1e-12, big);
    const auto cont = canonical_height(quad(1), ProjPointQ{3, 7}, 1e-12, small);
    CHECK(cont.exact_iterations < exact.iterations);
    CHECK(std::abs(exact.value - cont.value) <= exact.error_bound + cont.error_bound);
}

TEST_CASE("the float continuation removes the exact gcd when R > 1") {
    const ProjMorphism L = lattes_map(WeierstrassCurve(0, 1));
    const auto cc = comparison_constant(L);
    REQUIRE(cc.identity_denominator > 1);
    CanonicalHeightOptions small, big;
    small.max_exact_bits = 64;
    big.max_exact_bits = 1'000'000;
    std::mt19937_64 rng(41);
    for (int t = 0; t < 10; ++t) {
        const ProjPointQ x = random_point(rng, 1, 50);
        const auto exact = canonical_height(L, cc, x, 1e-4, big);
        const auto cont = canonical_height(L, cc, x, 1e-10, small);
        if (exact.preperiodic_detected) continue;
        CHECK(exact.exact_iterations == exact.iterations);
        CHECK(cont.error_bound <= 1e-10);
        CHECK(std::abs(exact.value - cont.value) <= exact.error_bound + cont.error_bound);
        const auto image = canonical_height(L, cc, apply(L, x), 1e-10, small);
        CHECK(std::abs(image.value - 4 * cont.value) <= image.error_bound + 4 * cont.error_bound);
    }
}

TEST_CASE("functional equation and Tate bound on random points") {
    std::mt19937_64 rng(5);
    for (const ProjMorphism& f : {quad(0), quad(-1), quad(1), plane_map()}) {
        const auto cc = comparison_constant(f);
        const double d = f.degree();
        for (int t = 0; t < 40; ++t) {
            const ProjPointQ x = random_point(rng, f.dim(), 100);
            const auto hx = canonical_height(f, cc, x, 1e-9);
            const auto hfx = canonical_height(f, cc, apply(f, x), 1e-9);
            CHECK(std::abs(hfx.value - d * hx.value) <= 1e-9 * (1 + d));
            CHECK(std::abs(hx.value - weil_height(x)) <= cc.C / (d - 1) + 1e-9);
        }
    }
}

TEST_CASE("canonical height reports an exhausted budget") {
    CanonicalHeightOptions opts;
    opts.max_iterations = 3;
    CHECK_THROWS_AS(canonical_height(quad(1), ProjPointQ{0, 1}, 1e-12, opts), BudgetExceeded);
}
