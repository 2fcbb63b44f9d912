#include "helpers.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

TEST_CASE("expression grammar") {
    auto p = expr("x^2*y - 3/2", {"x", "y"});
    CHECK(p == RationalFunction(Polynomial::variable("x").pow(2) * Polynomial::variable("y")) -
                   RationalFunction(GaussianRational(mpq_class(3, 2))));
    CHECK(expr("y/(1 - x*y)", {"x", "y"}).den() == expr("x*y - 1", {"x", "y"}).num());
    auto c = expr("i*x + (2+3i)", {"x"});
    CHECK(evaluate(c, {{"x", GaussianRational(0)}}).constant_value() ==
          GaussianRational(mpq_class(2), mpq_class(3)));
    CHECK(expr("1/2i", {}).constant_value() == GaussianRational(mpq_class(0), mpq_class(1, 2)));
    CHECK(expr("2^3", {}).constant_value() == GaussianRational(8));
    CHECK(expr("-x^2", {"x"}) == -expr("x^2", {"x"}));
}

TEST_CASE("parser rejects bad input with positions") {
    CHECK_THROWS_WITH_AS(expr("x + q", {"x"}), doctest::Contains("unknown variable 'q'"),
                         ParseError);
    CHECK_THROWS_WITH_AS(expr("x/0", {"x"}), doctest::Contains("division by zero"), ParseError);
    CHECK_THROWS_WITH_AS(expr("x^y", {"x", "y"}),
                         doctest::Contains("exponent must be a nonnegative integer"), ParseError);
    try {
        expr("x +\n* y", {"x", "y"});
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.diagnostic.line == 2);
        CHECK(e.diagnostic.column == 1);
    }
}

TEST_CASE("serialization round-trips exactly") {
    CHECK(serialize_expression(expr("2*x*y", {"x", "y"})) == "2*x*y");
    CHECK(serialize_expression(RationalFunction()) == "0");
    CHECK(serialize_expression(RationalFunction(GaussianRational(mpq_class(1, 2),
                                                                 mpq_class(1, 2)))) ==
          "(1/2+1/2i)");
    Rng rng(29);
    std::vector<std::string> vars{"x", "y", "alpha"};
    for (int k = 0; k < 300; ++k) {
        RationalFunction p = random_rational(rng, vars);
        CHECK(parse_expression(serialize_expression(p), vars) == p);
    }
}
