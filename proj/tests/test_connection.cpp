#include "helpers.hpp"
#include "residua/foliation.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

namespace {

Atlas c3_product_atlas() {
    Chart c1{"c1", {"x"}, {"y1", "y2"}};
    return Atlas({c1}, {});
}

} // namespace

TEST_CASE("connection matrix reproduces the Camacho-Sad kernel") {
    Atlas pl = plane_atlas();
    // v = a^1 d/dx + a^2 d/dy with a^1 = x (tangent), a^2 = 3y
    Foliation fol = make_foliation(pl, "F", 1, "c1",
                                   {{expr("x", {"x"}), expr("3*y", {"y"})}});
    PsiMorphism psi = psi_tangential(pl, fol);
    std::vector<RationalFunction> direction{expr("3*y", {"y"})};
    Mat<RationalFunction> c = connection_matrix(pl, psi, "c1", direction);
    // a^2 d(a^1/a^2)/dx |_S = 3y * 1/(3y) = 1
    RationalFunction a2 = expr("3*y", {"y"});
    RationalFunction kernel = a2 * restrict_zero(differentiate(expr("x/(3*y)", {"x", "y"}), "x"),
                                                 {"x"});
    CHECK(c(0, 0) == kernel);
    CHECK(c(0, 0) == RationalFunction(1));
}

TEST_CASE("trivial product foliation has zero connection matrix") {
    Atlas pl = plane_atlas();
    Foliation fol = make_foliation(pl, "F", 1, "c1", {{RationalFunction(), RationalFunction(1)}});
    PsiMorphism psi = psi_tangential(pl, fol);
    CHECK(connection_matrix(pl, psi, "c1", {RationalFunction(1)}).is_zero());
}

TEST_CASE("curvature vanishes for tangential frames and detects perturbations") {
    Atlas c3 = c3_product_atlas();
    Foliation fol = make_foliation(
        c3, "F", 2, "c1",
        {{RationalFunction(), RationalFunction(1), RationalFunction()},
         {expr("x", {"x"}), RationalFunction(), expr("y2", {"y2"})}});
    PsiMorphism psi = psi_tangential(c3, fol);
    CHECK(curvature(c3, psi, "c1", 0, 1).is_zero());
    CHECK(curvature(c3, psi, "c1", 1, 0).is_zero());

    // break flatness by adding a tangential-variable-dependent e-part
    PsiMorphism bent = psi;
    bent.per_chart["c1"][0].value.e(0, 0) += expr("y2", {"y2"});
    CHECK(!curvature(c3, bent, "c1", 0, 1).is_zero());

    // a rank-2 frame on a three-dimensional S whose bracket leaves the span
    Atlas c4({Chart{"c1", {"x"}, {"y1", "y2", "y3"}}}, {});
    PsiMorphism skew;
    auto unit = [&](std::vector<RationalFunction> field) {
        PsiMorphism::Image img;
        img.frame_field = std::move(field);
        img.value.chart = "c1";
        img.value.b = img.frame_field;
        img.value.e = Mat<RationalFunction>(1, 1);
        return img;
    };
    skew.per_chart["c1"] = {
        unit({RationalFunction(1), RationalFunction(), RationalFunction()}),
        unit({RationalFunction(), RationalFunction(1), expr("y1", {"y1"})})};
    CHECK_THROWS_WITH_AS(curvature(c4, skew, "c1", 0, 1),
                         doctest::Contains("not involutive"), Error);
}

TEST_CASE("theta1 section check names offenders") {
    Atlas pl = plane_atlas();
    Foliation fol = make_foliation(pl, "F", 1, "c1", {{RationalFunction(), RationalFunction(1)}});
    PsiMorphism psi = psi_tangential(pl, fol);
    check_theta1_section(psi);  // passes
    PsiMorphism bad = psi;
    bad.per_chart["c1"][0].value.b[0] = expr("y", {"y"});
    CHECK_THROWS_WITH_AS(check_theta1_section(bad), doctest::Contains("theta_1"), Error);
}
