#include "helpers.hpp"
#include "residua/jet.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

TEST_CASE("gaussian rational field arithmetic") {
    GaussianRational a(mpq_class(1, 2), mpq_class(-3, 4));
    GaussianRational b(mpq_class(2, 3), mpq_class(5));
    CHECK(a + b - b == a);
    CHECK((a * b) / b == a);
    CHECK(a * a.inverse() == GaussianRational(1));
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
    CHECK_THROWS_AS(GaussianRational(0).inverse(), Error);
}

TEST_CASE("gaussian rational wire form round-trips") {
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        GaussianRational v = random_scalar(rng);
        CHECK(GaussianRational::from_wire(v.to_wire()) == v);
    }
    CHECK(GaussianRational(2).to_wire() == "2/1+0/1i");
}

TEST_CASE("polynomial ring laws on random inputs") {
    Rng rng(11);
    std::vector<std::string> vars{"x", "y", "z"};
    for (int k = 0; k < 100; ++k) {
        Polynomial p = random_polynomial(rng, vars);
        Polynomial q = random_polynomial(rng, vars);
        Polynomial r = random_polynomial(rng, vars);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("gcd normalizes rational functions") {
    auto f = expr("(x+y)^2*(x-y)/((x+y)*(x+2*y))", {"x", "y"});
    CHECK(f == expr("(x+y)*(x-y)/(x+2*y)", {"x", "y"}));
    CHECK(expr("(x^2-y^2)/(x-y)", {"x", "y"}) == expr("x+y", {"x", "y"}));
}

TEST_CASE("differentiate") {
    CHECK(differentiate(expr("x^2*y", {"x", "y"}), "x") == expr("2*x*y", {"x", "y"}));
    CHECK(differentiate(expr("x/(1-x*y)", {"x", "y"}), "y") ==
          expr("x^2/(1-x*y)^2", {"x", "y"}));
    CHECK(differentiate(expr("7", {}), "x").is_zero());
}

TEST_CASE("leibniz rule holds exactly on random rational functions") {
    Rng rng(13);
    std::vector<std::string> vars{"x", "y"};
    for (int k = 0; k < 150; ++k) {
        RationalFunction p = random_rational(rng, vars);
        RationalFunction q = random_rational(rng, vars);
        for (const auto& v : vars)
            CHECK(differentiate(p * q, v) ==
                  differentiate(p, v) * q + p * differentiate(q, v));
    }
}

TEST_CASE("substitute") {
    std::map<std::string, RationalFunction> a1{{"x", expr("u+w", {"u", "w"})},
                                               {"y", expr("u", {"u"})}};
    CHECK(substitute(expr("x^2+y", {"x", "y"}), a1) == expr("(u+w)^2+u", {"u", "w"}));
    std::map<std::string, RationalFunction> a2{{"y", expr("1/w", {"w"})}};
    CHECK(substitute(expr("1/y", {"y"}), a2) == expr("w", {"w"}));
    std::map<std::string, RationalFunction> a3{{"x", RationalFunction()},
                                               {"y", expr("y", {"y"})}};
    CHECK(substitute(expr("x/(1-x*y)", {"x", "y"}), a3).is_zero());
    // pole everywhere
    std::map<std::string, RationalFunction> a4{{"x", RationalFunction()},
                                               {"y", RationalFunction()}};
    CHECK_THROWS_WITH_AS(substitute(expr("1/(x+y)", {"x", "y"}), a4),
                         doctest::Contains("pole everywhere"), Error);
    // missing assignment names the variable
    CHECK_THROWS_WITH_AS(substitute(expr("x+y", {"x", "y"}), a2),
                         doctest::Contains("x"), Error);
}

TEST_CASE("jet projection") {
    NormalJet j = jet_project(expr("x*y/(1-x)", {"x", "y"}), {"x"}, 2);
    CHECK(j.to_rational() == expr("x*y", {"x", "y"}));
    CHECK(jet_project(expr("y^2", {"y"}), {"x"}, 3).to_rational() == expr("y^2", {"y"}));
    CHECK(jet_project(expr("x^3", {"x"}), {"x"}, 3).is_zero());
    CHECK_THROWS_WITH_AS(jet_project(expr("1/x", {"x"}), {"x"}, 2),
                         doctest::Contains("not regular along S"), Error);
}

TEST_CASE("theta projections are transitive") {
    Rng rng(17);
    for (int k = 0; k < 50; ++k) {
        RationalFunction p = random_rational(rng, {"x", "y"});
        if (p.den().restrict_zero({"x"}).is_zero()) continue;
        NormalJet j4 = jet_project(p, {"x"}, 4);
        CHECK(j4.truncate(2) == jet_project(p, {"x"}, 2));
    }
}

TEST_CASE("jet inversion") {
    NormalJet one_plus = jet_project(expr("1+x", {"x"}), {"x"}, 2);
    CHECK(jet_invert(one_plus).to_rational() == expr("1-x", {"x"}));
    NormalJet k3 = jet_project(expr("1+x", {"x"}), {"x"}, 3);
    CHECK(jet_invert(k3).to_rational() == expr("1-x+x^2", {"x"}));
    NormalJet yx = jet_project(expr("y+x", {"x", "y"}), {"x"}, 2);
    CHECK(jet_invert(yx).to_rational() == expr("1/y - x/y^2", {"x", "y"}));
    NormalJet zero_on_s = jet_project(expr("x", {"x"}), {"x"}, 2);
    CHECK_THROWS_WITH_AS(jet_invert(zero_on_s), doctest::Contains("not a unit"), Error);
}

TEST_CASE("jet inverse identity on random unit jets") {
    Rng rng(19);
    for (int k = 0; k < 100; ++k) {
        unsigned order = unsigned(rng.range(1, 5));
        RationalFunction p = random_rational(rng, {"x", "y"});
        if (p.is_zero() || p.den().restrict_zero({"x"}).is_zero() ||
            p.num().restrict_zero({"x"}).is_zero())
            continue;
        NormalJet j = jet_project(p, {"x"}, order);
        NormalJet prod = jet_invert(j).mul(j);
        NormalJet one({"x"}, order);
        one.set_coeff({0}, RationalFunction(1));
        CHECK(prod == one);
    }
}

TEST_CASE("ideal order") {
    CHECK(*ideal_order(expr("x^2*y", {"x", "y"}), {"x"}) == 2);
    CHECK(*ideal_order(expr("y+x", {"x", "y"}), {"x"}) == 0);
    CHECK(!ideal_order(RationalFunction(), {"x"}).has_value());  // infinity
}

TEST_CASE("valuation additivity on random polynomials") {
    Rng rng(23);
    std::vector<std::string> vars{"x", "z", "y"};
    std::vector<std::string> normal{"x", "z"};
    for (int k = 0; k < 120; ++k) {
        Polynomial p = random_polynomial(rng, vars);
        Polynomial q = random_polynomial(rng, vars);
        if (p.is_zero() || q.is_zero()) continue;
        auto op = ideal_order(RationalFunction(p), normal);
        auto oq = ideal_order(RationalFunction(q), normal);
        auto opq = ideal_order(RationalFunction(p * q), normal);
        CHECK(*opq == *op + *oq);
    }
}
