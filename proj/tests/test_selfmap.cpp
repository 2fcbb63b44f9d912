#include "helpers.hpp"
#include "residua/foliation.hpp"
#include "residua/selfmap.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

namespace {

SelfMap plane_map(const Atlas& atlas, const std::string& fx, const std::string& fy) {
    return make_selfmap(atlas, "f",
                        {{"c1", {expr(fx, {"x", "y"}), expr(fy, {"x", "y"})}}});
}

Atlas mobius_atlas() {
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"x2"}, {"w"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["x2"] = expr("x", {"x", "y"});
    t.forward["w"] = expr("1/y", {"x", "y"});
    t.backward["x"] = expr("x2", {"x2", "w"});
    t.backward["y"] = expr("1/w", {"x2", "w"});
    return Atlas({c1, c2}, {t});
}

} // namespace

TEST_CASE("order of contact") {
    Atlas pl = plane_atlas();
    CHECK(order_of_contact(pl, plane_map(pl, "x + x^3", "y + x^2")) == 2);
    CHECK(order_of_contact(pl, plane_map(pl, "x", "y + x")) == 1);
    CHECK(order_of_contact(pl, plane_map(pl, "x", "y/(1 - x*y)")) == 1);
    CHECK_THROWS_WITH_AS(order_of_contact(pl, plane_map(pl, "x", "y")),
                         doctest::Contains("identity"), Error);
    // chart independence on the two-chart model
    Atlas mob = mobius_atlas();
    SelfMap f = make_selfmap(mob, "f",
                             {{"c1", {expr("x", {"x"}), expr("y/(1-x*y)", {"x", "y"})}}});
    CHECK(order_of_contact(mob, f) == 1);
    CHECK(f.comps.at("c2")[1] == expr("w - x2", {"x2", "w"}));
}

TEST_CASE("self-maps must fix S pointwise") {
    Atlas pl = plane_atlas();
    CHECK_THROWS_WITH_AS(plane_map(pl, "x", "y + 1"), doctest::Contains("fix S"), Error);
}

TEST_CASE("canonical section and tangentiality") {
    Atlas pl = plane_atlas();
    ContactData nu2 = canonical_section(pl, plane_map(pl, "x + x^3", "y + x^2"));
    CHECK(nu2.nu == 2);
    CHECK(nu2.tangential);
    CHECK(nu2.g.at("c1").at({0, 0})[0] == expr("x", {"x"}));
    CHECK(nu2.g.at("c1").at({0, 0})[1] == RationalFunction(1));

    ContactData nu1 = canonical_section(pl, plane_map(pl, "x + x^2", "y + x*y"));
    CHECK(nu1.nu == 1);
    CHECK(nu1.tangential);
    CHECK(nu1.g.at("c1").at({0})[0] == expr("x", {"x"}));
    CHECK(nu1.g.at("c1").at({0})[1] == expr("y", {"y"}));

    // the tangential deviation is zero, so the contact order is set by the
    // normal component alone and the map is not tangential
    ContactData flat = canonical_section(pl, plane_map(pl, "x + x^2", "y"));
    CHECK(flat.nu == 2);
    CHECK(!flat.tangential);
    CHECK(flat.g.at("c1").at({0, 0})[0] == RationalFunction(1));
    CHECK(flat.g.at("c1").at({0, 0})[1].is_zero());

    ContactData nt = canonical_section(pl, plane_map(pl, "x + x*y", "y + x"));
    CHECK(nt.nu == 1);
    CHECK(!nt.tangential);
}

TEST_CASE("symmetric g extraction reconstructs exactly in codimension two") {
    Atlas c3({Chart{"c1", {"x1", "x2"}, {"y"}}}, {});
    SelfMap f = make_selfmap(
        c3, "f",
        {{"c1",
          {expr("x1 + x1*x2*y", {"x1", "x2", "y"}),
           expr("x2 + x1^2", {"x1", "x2"}),
           expr("y + x1*x2 + x2^2", {"x1", "x2", "y"})}}});
    ContactData data = canonical_section(c3, f);
    CHECK(data.nu == 2);
    CHECK(!data.tangential);
    // reconstruction is verified inside canonical_section; spot-check symmetry
    CHECK(data.g.at("c1").count({0, 1}) == 1);
    CHECK(data.g.at("c1").count({1, 0}) == 0);  // sorted multi-indices only
}

TEST_CASE("canonical distribution") {
    Atlas pl = plane_atlas();
    SelfMap f2 = plane_map(pl, "x + x^3", "y + x^2");
    DistributionReport d2 = canonical_distribution(pl, f2, canonical_section(pl, f2));
    CHECK(d2.rank == 1);
    CHECK(d2.generators.at("c1")[0][1] == RationalFunction(1));
    CHECK(d2.degeneracy.at("c1").is_constant());  // nowhere degenerate

    SelfMap f1 = plane_map(pl, "x + x^2", "y + x*y");
    DistributionReport d1 = canonical_distribution(pl, f1, canonical_section(pl, f1));
    CHECK(d1.generators.at("c1")[0][1] == expr("y", {"y"}));

    Atlas mob = mobius_atlas();
    SelfMap fm = make_selfmap(mob, "f",
                              {{"c1", {expr("x", {"x"}), expr("y/(1-x*y)", {"x", "y"})}}});
    DistributionReport dm = canonical_distribution(mob, fm, canonical_section(mob, fm));
    CHECK(dm.generators.at("c1")[0][1] == expr("y^2", {"y"}));
    CHECK(dm.generators.at("c2")[0][1] == expr("-1", {}));
    CHECK(dm.transformation_failures.empty());
    CHECK(dm.degeneracy.at("c1") == expr("y^2", {"y"}).num());
}

TEST_CASE("m cocycle vanishes for linear transitions and satisfies antisymmetry") {
    Atlas mob = mobius_atlas();
    SelfMap fm = make_selfmap(mob, "f",
                              {{"c1", {expr("x", {"x"}), expr("y/(1-x*y)", {"x", "y"})}}});
    ContactData cm = canonical_section(mob, fm);
    CHECK(m_cocycle(mob, fm, cm, "c1", "c2").is_zero());  // normal transition is trivial

    // blow-up carries a nonzero obstruction cocycle for the lifted map
    Atlas bu = blowup_atlas();
    SelfMap fb = make_selfmap(
        bu, "f", {{"c1", {expr("x/(1-x)", {"x"}), expr("t*(1-x)", {"x", "t"})}}});
    ContactData cb = canonical_section(bu, fb);
    CHECK(cb.nu == 1);
    CHECK(cb.tangential);
    CochainValue m12 = m_cocycle(bu, fb, cb, "c1", "c2");
    CHECK(!m12.is_zero());
    CochainValue m21 = m_cocycle(bu, fb, cb, "c2", "c1");
    FrameChange frames = map_frame_change(bu, cb);
    CHECK((m12 + transport_cochain(bu, m21, "c2", frames)).is_zero());
}

TEST_CASE("m cocycle equals the psi-local differences on the blow-up map") {
    Atlas bu = blowup_atlas();
    SelfMap f = make_selfmap(
        bu, "f", {{"c1", {expr("x/(1-x)", {"x"}), expr("t*(1-x)", {"x", "t"})}}});
    ContactData c = canonical_section(bu, f);
    DistributionReport dist = canonical_distribution(bu, f, c);
    REQUIRE(c.tangential);
    REQUIRE(dist.transformation_failures.empty());

    // uncorrected local splittings: b = frame, e = 0
    PsiMorphism psi;
    for (const auto& ch : bu.charts()) {
        PsiMorphism::Image img;
        img.frame_field = {dist.generators.at(ch.name)[0][1]};
        img.value.chart = ch.name;
        img.value.b = img.frame_field;
        img.value.e = Mat<RationalFunction>(1, 1);
        psi.per_chart[ch.name] = {img};
    }
    auto pushed = bu.push_field({RationalFunction(), expr("-t", {"t"})}, "c1", "c2");
    AtiyahElement psi2 = psi_apply(bu, psi, "c2", {bu.on_s(pushed[1], "c2")});
    AtiyahElement diff = transport_atiyah(bu, psi2, "c1") -
                         psi_apply(bu, psi, "c1", {expr("-t", {"t"})});
    CochainValue m = m_cocycle(bu, f, c, "c2", "c1");
    CHECK(diff.e(0, 0) == m.comp({0, 0, 0}));
    CHECK(diff.e(0, 0) == RationalFunction(1));
    // and the explicit x cochain is a primitive in the displayed orientation:
    // x_A - x_B = m_{(B,A)} on this overlap
    auto x = map_x_cochain(bu, f, c);
    CHECK(x.at("c1").comp({0, 0, 0}) - x.at("c2").comp({0, 0, 0}) == m.comp({0, 0, 0}));
}

TEST_CASE("codimension-one coboundary on the corpus maps") {
    Atlas mob = mobius_atlas();
    SelfMap fm = make_selfmap(mob, "f",
                              {{"c1", {expr("x", {"x"}), expr("y/(1-x*y)", {"x", "y"})}}});
    ContactData cm = canonical_section(mob, fm);
    auto x = map_x_cochain(mob, fm, cm);
    for (const auto& [a, b] : mob.overlaps()) {
        CochainValue res = coboundary_residual(mob, m_cocycle(mob, fm, cm, a, b), x,
                                               map_frame_change(mob, cm));
        CHECK(res.is_zero());
    }
}

TEST_CASE("psi for codimension-one maps") {
    Atlas pl = plane_atlas();
    SelfMap f1 = plane_map(pl, "x + x^2", "y + x*y");
    ContactData c1 = canonical_section(pl, f1);
    PsiMorphism psi = psi_map_codim1(pl, f1, c1);
    CHECK(psi.images("c1")[0].value.e(0, 0) == RationalFunction(-1));
    Mat<RationalFunction> cm = connection_matrix(pl, psi, "c1", {expr("y", {"y"})});
    CHECK(cm(0, 0) == RationalFunction(-1));

    // nu = 2 example: psi(d/dy) kills the e-part after the correction
    SelfMap f2 = plane_map(pl, "x + x^3", "y + x^2");
    ContactData c2 = canonical_section(pl, f2);
    PsiMorphism psi2 = psi_map_codim1(pl, f2, c2);
    CHECK(psi2.images("c1")[0].value.b[0] == RationalFunction(1));
    CHECK(psi2.images("c1")[0].value.e(0, 0) == RationalFunction(-1));

    // Moebius corpus: zero connection matrix in chart c1
    Atlas mob = mobius_atlas();
    SelfMap fm = make_selfmap(mob, "f",
                              {{"c1", {expr("x", {"x"}), expr("y/(1-x*y)", {"x", "y"})}}});
    ContactData cmt = canonical_section(mob, fm);
    PsiMorphism psim = psi_map_codim1(mob, fm, cmt);
    Mat<RationalFunction> c0 = connection_matrix(mob, psim, "c1", {expr("y^2", {"y"})});
    CHECK(c0.is_zero());
}

TEST_CASE("self-map pushes stay compatible across a three-chart atlas") {
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"x2"}, {"w"}};
    Chart c3{"c3", {"x3"}, {"u"}};
    TransitionMap t12, t13, t23;
    t12.from = "c1";
    t12.to = "c2";
    t12.forward["x2"] = expr("x", {"x", "y"});
    t12.forward["w"] = expr("1/y", {"x", "y"});
    t12.backward["x"] = expr("x2", {"x2", "w"});
    t12.backward["y"] = expr("1/w", {"x2", "w"});
    t13.from = "c1";
    t13.to = "c3";
    t13.forward["x3"] = expr("x", {"x", "y"});
    t13.forward["u"] = expr("1/(y-1)", {"x", "y"});
    t13.backward["x"] = expr("x3", {"x3", "u"});
    t13.backward["y"] = expr("1 + 1/u", {"x3", "u"});
    t23.from = "c2";
    t23.to = "c3";
    t23.forward["x3"] = expr("x2", {"x2", "w"});
    t23.forward["u"] = expr("w/(1-w)", {"x2", "w"});
    t23.backward["x2"] = expr("x3", {"x3", "u"});
    t23.backward["w"] = expr("u/(1+u)", {"x3", "u"});
    Atlas atlas({c1, c2, c3}, {t12, t13, t23});

    // f = (x, y + x) pushed everywhere; the pairwise compatibility of the
    // three chart expressions is checked at construction
    SelfMap f = make_selfmap(atlas, "f",
                             {{"c1", {expr("x", {"x"}), expr("y + x", {"x", "y"})}}});
    CHECK(f.comps.size() == 3);
    CHECK(order_of_contact(atlas, f) == 1);
    ContactData c = canonical_section(atlas, f);
    CHECK(c.tangential);
    DistributionReport dist = canonical_distribution(atlas, f, c);
    CHECK(dist.transformation_failures.empty());
    // m-cocycle triple law (all second derivatives vanish here)
    for (const auto& [a, b] : atlas.overlaps())
        CHECK(m_cocycle(atlas, f, c, a, b).is_zero());
}

TEST_CASE("map residues") {
    Atlas pl = plane_atlas();
    SelfMap f1 = plane_map(pl, "x + x^2", "y + x*y");
    ContactData c1 = canonical_section(pl, f1);
    PsiMorphism psi = psi_map_codim1(pl, f1, c1);
    GaussianRational idx = localized_residue(pl, psi, "c1", {expr("y", {"y"})},
                                             PhiSpec::c1_power(1), 1,
                                             {{"y", GaussianRational(0)}});
    CHECK(idx == GaussianRational(-1));

    Atlas mob = mobius_atlas();
    SelfMap fm = make_selfmap(mob, "f",
                              {{"c1", {expr("x", {"x"}), expr("y/(1-x*y)", {"x", "y"})}}});
    ContactData cmt = canonical_section(mob, fm);
    PsiMorphism psim = psi_map_codim1(mob, fm, cmt);
    GaussianRational zero = localized_residue(mob, psim, "c1", {expr("y^2", {"y"})},
                                              PhiSpec::c1_power(1), 1,
                                              {{"y", GaussianRational(0)}});
    CHECK(zero == GaussianRational(0));
}
