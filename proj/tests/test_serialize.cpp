#include "arithdyn/errors.hpp"
#include "arithdyn/serialize.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

using namespace arithdyn;

namespace {

ProjMorphism quad(long c) { return polynomial_map(std::vector<Rational>{Rational(c), Rational(0), Rational(1)}); }

HomogeneousForm random_form(std::mt19937_64& rng, std::size_t n, unsigned d) {
    HomogeneousForm g(n, d);
    for (int t = 0; t < 6; ++t) {
        Exponents e(n, 0);
        unsigned left = d;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            e[i] = static_cast<unsigned>(rng() % (left + 1));
            left -= e[i];
        }
        e[n - 1] = left;
        g.add_term(e, Integer(static_cast<long>(rng() % 41) - 20));
    }
    return g;
}

}  // namespace

TEST_CASE("points") {
    CHECK(to_json(ProjPointQ{3, 5}) == Json::parse(R"(["3","5"])"));
    CHECK(point_from_json(Json::parse(R"(["3","5"])")) == ProjPointQ{3, 5});
    CHECK(point_from_json(Json::parse(R"([6, 10])")) == ProjPointQ{3, 5});
    CHECK(point_from_json(Json::parse(R"(["1/2", 1])")) == ProjPointQ{1, 2});
    CHECK(parse_point("1/2,1") == ProjPointQ{1, 2});
    CHECK(parse_point(" -3/4 ") == ProjPointQ{-3, 4});
    CHECK(parse_point("7") == ProjPointQ{7, 1});
    CHECK(parse_point("inf") == ProjPointQ{1, 0});
    CHECK(parse_point("[1, 2, 3]") == ProjPointQ{1, 2, 3});
    CHECK(parse_point("1,0") == ProjPointQ{1, 0});
    CHECK_THROWS_AS(parse_point(""), InvalidInput);
    CHECK_THROWS_AS(parse_point("0,0"), InvalidInput);
    CHECK_THROWS_AS(parse_point("[1]"), InvalidInput);
    CHECK_THROWS_AS(parse_point("x"), InvalidInput);
    CHECK_THROWS_AS(point_from_json(Json::parse(R"([1.5, 2])")), InvalidInput);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        std::vector<Integer> v;
        for (int i = 0; i < 3; ++i) v.emplace_back(static_cast<long>(rng() % 2001) - 1000);
        if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
        const ProjPointQ x(v);
        CHECK(point_from_json(to_json(x)) == x);
        CHECK(point_from_json(parse_json(to_json(x).dump())) == x);
    }
}

TEST_CASE("forms") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const unsigned d = 1 + static_cast<unsigned>(rng() % 4);
        const HomogeneousForm g = random_form(rng, n, d);
        if (g.is_zero()) continue;
        CHECK(form_from_json(to_json(g)) == g);
    }
    const HomogeneousForm zero = form_from_json(Json::parse(R"({"n_vars":3,"degree":2,"terms":[]})"));
    CHECK(zero.is_zero());
    CHECK(zero.degree() == 2);
    // repeated monomials are summed, cancelling terms dropped
    const auto g = form_from_json(Json::parse(R"([{"exps":[1,1],"coeff":"2"},{"exps":[1,1],"coeff":-2},{"exps":[2,0],"coeff":1}])"));
    CHECK(g == HomogeneousForm::monomial({2, 0}, 1));
    CHECK_THROWS_AS(form_from_json(Json::parse("[]")), InvalidInput);
    CHECK_THROWS_AS(form_from_json(Json::parse(R"([{"exps":[-1,3],"coeff":1}])")), InvalidInput);
    CHECK_THROWS_AS(form_from_json(Json::parse(R"([{"exps":[1,1]}])")), InvalidInput);
    CHECK_THROWS_AS(form_from_json(Json::parse(R"({"degree":2})")), InvalidInput);
}

TEST_CASE("morphisms") {
    const ProjMorphism f = quad(1);
    const Json j = to_json(f);
    CHECK(j.at("dim") == 1);
    CHECK(j.at("degree") == 2);
    CHECK(j.at("forms").size() == 2);
    CHECK(morphism_from_json(j) == f);
    CHECK(morphism_from_json(parse_json(j.dump(2))) == f);
    CHECK(morphism_from_json(Json::parse(R"({"polynomial":["1",0,1]})")) == f);
    CHECK(morphism_from_json(Json::parse(R"({"polynomial":["1/2",0,1]})")) ==
          polynomial_map(std::vector<Rational>{Rational(1, 2), Rational(0), Rational(1)}));

    const auto X = HomogeneousForm::variable(3, 0), Y = HomogeneousForm::variable(3, 1), Z = HomogeneousForm::variable(3, 2);
    const ProjMorphism sq = ProjMorphism::validate({X * X, Y * Y, Z * Z});
    CHECK(morphism_from_json(to_json(sq)) == sq);

    // (X^2 : XZ) has the common zero (0:1)
    CHECK_THROWS_AS(morphism_from_json(Json::parse(
                        R"({"dim":1,"degree":2,"forms":[[{"exps":[2,0],"coeff":1}],[{"exps":[1,1],"coeff":1}]]})")),
                    InvalidInput);
    CHECK_THROWS_AS(morphism_from_json(Json::parse(
                        R"({"dim":2,"degree":2,"forms":[[{"exps":[2,0],"coeff":1}],[{"exps":[0,2],"coeff":1}]]})")),
                    InvalidInput);
    CHECK_THROWS_AS(morphism_from_json(Json::parse(
                        R"({"degree":3,"forms":[[{"exps":[2,0],"coeff":1}],[{"exps":[0,2],"coeff":1}]]})")),
                    InvalidInput);
    CHECK_THROWS_AS(morphism_from_json(Json::parse(R"({"forms":[[],[{"exps":[0,2],"coeff":1}]]})")), InvalidInput);
    CHECK_THROWS_AS(morphism_from_json(Json::parse("[1,2]")), InvalidInput);
    CHECK_THROWS_AS(morphism_from_json(Json::parse(R"({"polynomial":["1"]})")), InvalidInput);
}

TEST_CASE("fields and finite points") {
    const auto F = FiniteField::get(3, 2);
    const Json j = to_json(*F);
    CHECK(j.at("p") == 3);
    CHECK(j.at("r") == 2);
    CHECK(j.at("modulus").size() == 3);
    CHECK(*FiniteField::get(j.at("p").get<std::uint64_t>(), j.at("r").get<unsigned>()) == *F);

    const ProjPointF u(F, {F->one(), F->zero()});
    const Json ju = to_json(u);
    CHECK(ju.at("coords").size() == 2);
    CHECK(ju.at("text") == u.to_string());
}

TEST_CASE("structured outputs") {
    const ProjMorphism f = quad(-1);
    const Json c = to_json(f.certificate());
    CHECK(c.at("kind") == to_string(f.certificate().kind));
    CHECK(c.at("value") == f.certificate().value.get_str());

    const auto rec = classify_orbit(f, ProjPointQ{0, 1});
    const Json r = to_json(rec);
    CHECK(r.at("kind") == "periodic");
    CHECK(r.at("period") == 2);
    CHECK(r.at("points").size() == 2);
    CHECK_FALSE(r.contains("escape_index"));
    const Json w = to_json(classify_orbit(quad(0), ProjPointQ{2, 1}));
    CHECK(w.at("kind") == "wandering");
    CHECK(w.contains("escape_index"));

    const Json cc = to_json(comparison_constant(f));
    CHECK(cc.at("C").is_number());
    CHECK(cc.at("k_up").is_string());

    const Json h = to_json(canonical_height(f, ProjPointQ{0, 1}, 1e-9));
    CHECK(h.at("value").get<double>() <= 1e-9);
    CHECK(h.at("preperiodic_detected") == true);
}

TEST_CASE("JSON parsing errors") {
    CHECK_THROWS_AS(parse_json("{\"dim\":"), InvalidInput);
    CHECK_THROWS_AS(parse_json(""), InvalidInput);
    CHECK_THROWS_AS(read_json_file("/nonexistent/morphism.json"), InvalidInput);
    const std::string path = "serialize_roundtrip_tmp.json";
    {
        std::ofstream out(path);
        out << to_json(quad(2)).dump();
    }
    CHECK(morphism_from_json(read_json_file(path)) == quad(2));
    std::remove(path.c_str());
}
