#include "arithdyn/dynamics_finite.hpp"
#include "arithdyn/errors.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace arithdyn;

namespace {

ProjMorphism quad(long c) {
    const std::vector<Rational> coeffs{Rational(c), Rational(0), Rational(1)};
    return polynomial_map(coeffs);
}

std::uint64_t odd_part(std::uint64_t n) {
    while (n % 2 == 0) n /= 2;
    return n;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

ProjPointF pt(const FieldPtr& F, long x, long z = 1) { return ProjPointF(F, {F->from_int(x), F->from_int(z)}); }

// Periodic points by iterating each point until it returns or the step count exceeds the set size.
std::uint64_t naive_periodic_count(const ProjMorphism& f, const FieldPtr& F) {
    const PointIndexer idx(F, f.dim());
    const ReducedMorphism rf(f, F);
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < idx.size(); ++i) {
        const ProjPointF u = idx.point(i);
        ProjPointF v = rf.apply(u);
        for (std::uint64_t k = 1; k <= idx.size(); ++k) {
            if (v == u) {
                ++count;
                break;
            }
            v = rf.apply(v);
        }
    }
    return count;
}

std::set<std::vector<FieldElement>> coord_set(const std::vector<ProjPointF>& pts) {
    std::set<std::vector<FieldElement>> s;
    for (const auto& u : pts) s.insert(u.coords());
    return s;
}

HomogeneousForm xz_x_minus_z() {
    HomogeneousForm g(2, 3);
    g.add_term({2, 1}, 1);
    g.add_term({1, 2}, -1);
    return g;
}

}  // namespace

TEST_CASE("functional graph examples") {
    const auto F3 = FiniteField::get(3, 1);
    const FunctionalGraph g = build_graph(quad(0), F3);
    CHECK(g.size() == 4);
    const auto& idx = g.indexer();
    auto at = [&](long x, long z = 1) { return idx.index(pt(F3, x, z)); };
    CHECK(g.successor(at(0)) == at(0));
    CHECK(g.successor(at(1)) == at(1));
    CHECK(g.successor(at(2)) == at(1));
    CHECK(g.successor(at(1, 0)) == at(1, 0));
    CHECK(g.periodic_count() == 3);
    CHECK(g.tail(at(2)) == 1);
    CHECK(g.period(at(2)) == 1);

    const auto F5 = FiniteField::get(5, 1);
    const FunctionalGraph h = build_graph(quad(1), F5);
    const auto& jdx = h.indexer();
    auto at5 = [&](long x, long z = 1) { return jdx.index(pt(F5, x, z)); };
    CHECK(h.successor(at5(0)) == at5(1));
    CHECK(h.successor(at5(1)) == at5(2));
    CHECK(h.successor(at5(2)) == at5(0));
    CHECK(h.successor(at5(3)) == at5(0));
    CHECK(h.successor(at5(4)) == at5(2));
    CHECK(h.successor(at5(1, 0)) == at5(1, 0));
    std::set<std::uint64_t> per{at5(0), at5(1), at5(2), at5(1, 0)};
    const auto ps = h.periodic_set();
    CHECK(std::set<std::uint64_t>(ps.begin(), ps.end()) == per);
    CHECK(h.period(at5(3)) == 3);
    CHECK(h.tail(at5(3)) == 1);

    const FunctionalGraph k = build_graph(quad(0), FiniteField::get(2, 1));
    CHECK(k.periodic_count() == 3);
    for (std::uint64_t i = 0; i < 3; ++i) CHECK(k.successor(i) == i);
}

TEST_CASE("graph invariants on assorted maps and fields") {
    std::mt19937_64 rng(6);
    const auto X = HomogeneousForm::variable(3, 0), Y = HomogeneousForm::variable(3, 1),
               Z = HomogeneousForm::variable(3, 2);
    const ProjMorphism plane = ProjMorphism::validate({X * X + Y * Z, Y * Y, Z * Z});
    const std::vector<std::pair<ProjMorphism, std::vector<std::pair<std::uint64_t, unsigned>>>> cases{
        {quad(1), {{3, 3}, {5, 2}, {7, 1}, {2, 5}}},
        {quad(-2), {{3, 2}, {5, 3}, {11, 1}}},
        {plane, {{3, 1}, {5, 1}, {2, 2}}},
    };
    for (const auto& [f, fields] : cases)
        for (auto [p, r] : fields) {
            CAPTURE(p);
            CAPTURE(r);
            const auto F = FiniteField::get(p, r);
            const FunctionalGraph g = build_graph(f, F);
            const std::uint64_t q = F->order();
            CHECK(g.size() == (ipow(q, static_cast<unsigned>(f.dim()) + 1) - 1) / (q - 1));
            const ReducedMorphism rf(f, F);
            std::uint64_t periodic = 0;
            for (std::uint64_t i = 0; i < g.size(); ++i) {
                const ProjPointF u = g.point(i);
                CHECK(g.point(g.successor(i)) == apply_f(f, u));
                // walking tail steps lands on the cycle, which closes after period steps
                std::uint64_t j = i;
                for (std::uint32_t s = 0; s < g.tail(i); ++s) {
                    CHECK_FALSE(g.is_periodic(j));
                    j = g.successor(j);
                }
                CHECK(g.is_periodic(j));
                std::uint64_t c = j;
                for (std::uint32_t s = 0; s < g.period(i); ++s) c = g.successor(c);
                CHECK(c == j);
                periodic += g.is_periodic(i);
                if (rng() % 4 == 0) {
                    const CycleInfo ci = brent_cycle(rf, u);
                    CHECK(ci.tail == g.tail(i));
                    CHECK(ci.period == g.period(i));
                }
            }
            CHECK(periodic == g.periodic_count());
            CHECK(periodic == naive_periodic_count(f, F));
        }
}

TEST_CASE("periodic growth of x^2 over F_{3^r}") {
    const auto rows = periodic_growth(quad(0), 3, 8);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        CAPTURE(row.r);
        CHECK(row.periodic == 2 + odd_part(ipow(3, row.r) - 1));
        CHECK(row.points == ipow(3, row.r) + 1);
    }
    CHECK(rows[0].periodic == 3);
    CHECK(rows[1].periodic == 3);
    CHECK(rows[3].periodic == 7);
}

TEST_CASE("periodic growth is monotone along divisibility") {
    for (long c : {0L, 1L, -1L, 2L})
        for (std::uint64_t p : {3ull, 5ull, 7ull}) {
            const ProjMorphism f = quad(c);
            if (!is_good_prime(f, p)) continue;
            const auto rows = periodic_growth(f, p, p == 7 ? 5 : 6);
            for (const auto& a : rows)
                for (const auto& b : rows)
                    if (b.r % a.r == 0) CHECK(a.periodic <= b.periodic);
            CHECK(rows[0].periodic == naive_periodic_count(f, FiniteField::get(p, 1)));
        }
    CHECK_THROWS_AS(periodic_growth(quad(0), 2, 0), InvalidInput);
    CHECK_THROWS_AS(frobenius_twist_solve(quad(0), 3, 0, 2), InvalidInput);
}

TEST_CASE("Frobenius twist examples") {
    const auto F3 = FiniteField::get(3, 1);
    CHECK(coord_set(frobenius_twist_solve(quad(0), 3, 1, 1)) == coord_set({pt(F3, 1, 0), pt(F3, 0), pt(F3, 1)}));
    const auto F2 = FiniteField::get(2, 1);
    CHECK(frobenius_twist_solve(quad(1), 2, 1, 1) == std::vector<ProjPointF>{pt(F2, 1, 0)});
    const auto F9 = FiniteField::get(3, 2);
    const auto sol = frobenius_twist_solve(quad(0), 3, 1, 2);
    CHECK(coord_set(sol) == coord_set({pt(F9, 1, 0), pt(F9, 0), pt(F9, 1)}));
    CHECK(sol.size() == 3);
    const PointIndexer idx(F9, 1);
    for (std::size_t i = 1; i < sol.size(); ++i) CHECK(idx.index(sol[i - 1]) < idx.index(sol[i]));
}

TEST_CASE("Frobenius twist solutions are periodic with period dividing r") {
    for (long c : {0L, 1L, -1L, 3L})
        for (std::uint64_t p : {3ull, 5ull, 7ull}) {
            const ProjMorphism f = quad(c);
            if (!is_good_prime(f, p)) continue;
            for (unsigned r = 1; r <= (p == 7 ? 4u : 5u); ++r)
                for (unsigned long m = 1; m <= 4; ++m) {
                    const auto sol = frobenius_twist_solve(f, p, m, r);
                    const auto F = FiniteField::get(p, r);
                    for (const auto& u : sol) {
                        CHECK(apply_f(f, u) == frobenius(u, m, p));
                        CHECK(iterate_f(f, u, r) == u);
                    }
                    // brute-force count of the same equation
                    const PointIndexer idx(F, 1);
                    std::size_t count = 0;
                    for (std::uint64_t i = 0; i < idx.size(); ++i) {
                        const ProjPointF u = idx.point(i);
                        count += apply_f(f, u) == frobenius(u, m, p);
                    }
                    CHECK(count == sol.size());
                }
        }
}

TEST_CASE("density witnesses") {
    const auto F3 = FiniteField::get(3, 1);
    const auto w1 = density_in_open(quad(0), 3, HomogeneousForm::variable(2, 0), 4);
    REQUIRE(w1.has_value());
    CHECK(w1->r == 1);
    CHECK(evaluate_form(HomogeneousForm::variable(2, 0), w1->point).code != 0);

    // XZ(X-Z) removes 0, 1 and infinity. The 13th roots of unity of F_27 are
    // the first periodic points left; squaring permutes them with period
    // ord_13(2) = 12.
    const auto w2 = density_in_open(quad(0), 3, xz_x_minus_z(), 8);
    REQUIRE(w2.has_value());
    CHECK(w2->r == 3);
    CHECK(evaluate_form(xz_x_minus_z(), w2->point).code != 0);
    CHECK(iterate_f(quad(0), w2->point, w2->period) == w2->point);
    CHECK(w2->period == 12);

    // Z != 0 keeps the affine points: the 3-cycle 0 -> 1 -> 2
    const auto w3 = density_in_open(quad(1), 5, HomogeneousForm::variable(2, 1), 3);
    REQUIRE(w3.has_value());
    CHECK(w3->r == 1);
    CHECK(w3->point[1].code != 0);
    CHECK(w3->period == 3);
    // X avoids 0 but keeps infinity, which comes first
    const auto w4 = density_in_open(quad(1), 5, HomogeneousForm::variable(2, 0), 3);
    REQUIRE(w4.has_value());
    CHECK(w4->point == pt(FiniteField::get(5, 1), 1, 0));
    CHECK(w4->period == 1);

    CHECK_THROWS_AS(density_in_open(quad(0), 3, HomogeneousForm(2, 1), 3), InvalidInput);
    // x^2 has only 0, 1, infinity over F_3 and F_9
    CHECK_FALSE(density_in_open(quad(0), 3, xz_x_minus_z(), 2).has_value());
    (void)F3;
}

TEST_CASE("bad primes are rejected by name") {
    const auto X = HomogeneousForm::variable(2, 0), Z = HomogeneousForm::variable(2, 1);
    HomogeneousForm two_xz(2, 2);
    two_xz.add_term({1, 1}, 2);
    const ProjMorphism f = ProjMorphism::validate({X * X + Z * Z, two_xz});
    try {
        build_graph(f, FiniteField::get(2, 1));
        FAIL("expected BadReduction");
    } catch (const BadReduction& e) {
        CHECK(e.prime == 2);
    }
    CHECK_THROWS_AS(periodic_growth(f, 2, 2), BadReduction);
    CHECK_THROWS_AS(frobenius_twist_solve(f, 2, 1, 1), BadReduction);
}

TEST_CASE("evaluate_form over a finite field") {
    const auto F = FiniteField::get(7, 1);
    HomogeneousForm g(2, 2);
    g.add_term({2, 0}, 3);
    g.add_term({0, 2}, -1);
    // (2:1) is stored as (1:4)
    CHECK(evaluate_form(g, pt(F, 2)).code == 1);
    CHECK(evaluate_form(g, pt(F, 0)).code == 6);
    CHECK_THROWS_AS(evaluate_form(HomogeneousForm(3, 1), pt(F, 2)), InvalidInput);
}
