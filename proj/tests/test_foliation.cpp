#include "helpers.hpp"
#include "residua/foliation.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

namespace {

Foliation linear_field(const Atlas& atlas, long l1, long l2) {
    return make_foliation(atlas, "F", 1, "c1",
                          {{expr(std::to_string(l1) + "*x", {"x"}),
                            expr(std::to_string(l2) + "*y", {"y"})}});
}

Atlas c4_adapted() { return Atlas({Chart{"c1", {"z1"}, {"w2", "w3", "w4"}}}, {}); }

} // namespace

TEST_CASE("tangency classification") {
    Atlas pl = plane_atlas();
    CHECK(tangency_classify(pl, linear_field(pl, 1, 2)).tangent);
    Foliation trans = make_foliation(pl, "G", 1, "c1",
                                     {{RationalFunction(1), RationalFunction(1)}});
    TangencyReport rep = tangency_classify(pl, trans);
    CHECK(!rep.tangent);
    CHECK(!rep.witnesses.empty());

    // the lift of a linear field is tangent to the exceptional divisor
    Atlas bu = blowup_atlas();
    Foliation lifted = make_foliation(bu, "L", 1, "c1",
                                      {{expr("x", {"x"}), expr("2*t", {"t"})}});
    CHECK(tangency_classify(bu, lifted).tangent);
}

TEST_CASE("sigma projection and faithfulness on the four-dimensional example") {
    // S = {z1 = 0} in C^4 with the foliation spanned by
    // (z2 - z1) d/dz3 + d/dz4 and d/dz1 + d/dz2
    Atlas c4({Chart{"c1", {"z1"}, {"z2", "z3", "z4"}}}, {});
    auto vars = std::vector<std::string>{"z1", "z2", "z3", "z4"};
    Foliation f = make_foliation(
        c4, "F", 2, "c1",
        {{RationalFunction(), RationalFunction(), expr("z2 - z1", vars), RationalFunction(1)},
         {RationalFunction(1), RationalFunction(1), RationalFunction(), RationalFunction()}});
    SigmaReport rep = sigma_project(c4, f);
    CHECK(rep.generic_rank == 2);
    CHECK(!rep.involutive);
    CHECK(!rep.faithful);

    // the same foliation in coordinates adapted to the lifting rho_2:
    // w2 = z2 - z1, w3 = z3 + z1, w4 = z4
    auto wars = std::vector<std::string>{"z1", "w2", "w3", "w4"};
    Foliation f2 = make_foliation(
        c4_adapted(), "F", 2, "c1",
        {{RationalFunction(), RationalFunction(), expr("w2", wars), RationalFunction(1)},
         {RationalFunction(1), RationalFunction(), RationalFunction(1), RationalFunction()}});
    SigmaReport rep2 = sigma_project(c4_adapted(), f2);
    CHECK(rep2.generic_rank == 2);
    CHECK(rep2.involutive);
    CHECK(rep2.faithful);
}

TEST_CASE("canonical frames") {
    Atlas pl = plane_atlas();
    Foliation f = linear_field(pl, 1, 3);
    CanonicalFrame frame = canonical_frame(pl, f, "c1");
    // v = d/dy + (a^1/a^2) d/dx
    CHECK(frame.fields[0][1] == RationalFunction(1));
    CHECK(frame.fields[0][0] == expr("x/(3*y)", {"x", "y"}));

    // coordinate foliations normalize to the coordinate frame
    Foliation coord = make_foliation(pl, "C", 1, "c1",
                                     {{RationalFunction(), expr("5", {})}});
    CanonicalFrame cf = canonical_frame(pl, coord, "c1");
    CHECK(cf.fields[0][0].is_zero());
    CHECK(cf.fields[0][1] == RationalFunction(1));

    // frame cocycle identities hold on the corpus overlaps
    Atlas bu = blowup_atlas();
    Foliation lifted = make_foliation(bu, "L", 1, "c1",
                                      {{expr("x", {"x"}), expr("2*t", {"t"})}});
    for (const auto& [a, b] : bu.overlaps()) frame_cocycle(bu, lifted, a, b);
}

TEST_CASE("transfer section separates tangential and transversal") {
    Atlas pl = plane_atlas();
    CHECK(transfer_section(pl, linear_field(pl, 2, 1), "c1").is_zero());
    Foliation trans = make_foliation(pl, "G", 1, "c1",
                                     {{RationalFunction(1), RationalFunction(1)}});
    CHECK(!transfer_section(pl, trans, "c1").is_zero());
    // mixed model: tangency locus exactly {y = 0}
    Foliation mixed = make_foliation(pl, "M", 1, "c1",
                                     {{expr("y", {"y"}), RationalFunction(1)}});
    CochainValue t = transfer_section(pl, mixed, "c1");
    CHECK(t.comp({0, 0}) == expr("y", {"y"}));
}

TEST_CASE("psi for tangential foliations") {
    Atlas pl = plane_atlas();
    Foliation f = linear_field(pl, 1, 5);
    PsiMorphism psi = psi_tangential(pl, f);
    // scaled by a^2: pi([5y] d/dy + [x] d/dx)
    AtiyahElement img = psi_apply(pl, psi, "c1", {expr("5*y", {"y"})});
    CHECK(img.b[0] == expr("5*y", {"y"}));
    CHECK(img.e(0, 0) == RationalFunction(1));

    // product: psi of the coordinate frame is the frame element
    Foliation coord = make_foliation(pl, "C", 1, "c1",
                                     {{RationalFunction(), RationalFunction(1)}});
    PsiMorphism pc = psi_tangential(pl, coord);
    CHECK(pc.images("c1")[0].value.e.is_zero());

    // blow-up: overlap residual of the psi images vanishes (checked inside)
    Atlas bu = blowup_atlas();
    Foliation lifted = make_foliation(bu, "L", 1, "c1",
                                      {{expr("x", {"x"}), expr("2*t", {"t"})}});
    PsiMorphism pb = psi_tangential(bu, lifted);
    CHECK(!psi_overlap_residual(bu, pb).has_value());
    CHECK_THROWS_AS(psi_tangential(pl, make_foliation(pl, "G", 1, "c1",
                                                      {{RationalFunction(1),
                                                        RationalFunction(1)}})),
                    Error);
}

TEST_CASE("psi from global generators") {
    Atlas pl = plane_atlas();
    Foliation g = make_foliation(pl, "G", 1, "c1", {{RationalFunction(1), RationalFunction(1)}});
    PsiMorphism psi = psi_from_global_generators(pl, g);
    // psi(d/dy) = pi~(d/dx + d/dy) = pi(d/dy)
    CHECK(psi.images("c1")[0].frame_field[0] == RationalFunction(1));
    CHECK(psi.images("c1")[0].value.e.is_zero());

    // degenerate projections are refused
    Foliation vert = make_foliation(pl, "V", 1, "c1", {{RationalFunction(1), expr("x", {"x"})}});
    CHECK_THROWS_WITH_AS(psi_from_global_generators(pl, vert), doctest::Contains("span"),
                         Error);
}

TEST_CASE("the two psi constructions agree where both apply") {
    Atlas pl = plane_atlas();
    Foliation f = linear_field(pl, 1, 4);  // tangent, globally generated
    PsiMorphism tangential = psi_tangential(pl, f);
    PsiMorphism global = psi_from_global_generators(pl, f);
    std::vector<RationalFunction> section{expr("4*y", {"y"})};
    CHECK(psi_apply(pl, tangential, "c1", section) == psi_apply(pl, global, "c1", section));
}

TEST_CASE("f cocycle is zero for tangential foliations") {
    Atlas p2 = p2_line_atlas();
    Foliation f = make_foliation(p2, "F", 1, "c1",
                                 {{expr("x", {"x"}), expr("2*y", {"y"})}});
    for (const auto& [a, b] : p2.overlaps()) {
        CHECK(f_cocycle(p2, f, a, b).is_zero());
        CHECK(f_cocycle_pushed(p2, f, a, b).is_zero());
    }
}

TEST_CASE("camacho-sad indices") {
    Atlas pl = plane_atlas();
    for (auto [l1, l2] : std::vector<std::pair<long, long>>{{2, 1}, {1, 3}, {-1, 2}}) {
        CsIndex idx = camacho_sad_index(pl, linear_field(pl, l1, l2), "c1", GaussianRational(0));
        CHECK(idx.value == GaussianRational(l1) / GaussianRational(l2));
        CHECK(!idx.warning);
    }
    // numerator restricted to S vanishes when a^1 lies in I^2
    Foliation deep = make_foliation(pl, "D", 1, "c1",
                                    {{expr("x^2", {"x"}), expr("y", {"y"})}});
    CHECK(camacho_sad_index(pl, deep, "c1", GaussianRational(0)).value == GaussianRational(0));
    // blow-up chart formula
    Atlas bu = blowup_atlas();
    Foliation lifted = make_foliation(bu, "L", 1, "c1",
                                      {{expr("x", {"x"}), expr("2*t", {"t"})}});
    CHECK(camacho_sad_index(bu, lifted, "c1", GaussianRational(0)).value ==
          GaussianRational(1, 2));
    // regular point: index 0 with a warning
    CsIndex reg = camacho_sad_index(pl, linear_field(pl, 1, 2), "c1", GaussianRational(3));
    CHECK(reg.value == GaussianRational(0));
    CHECK(reg.warning.has_value());
}

TEST_CASE("localized residue reduces to the camacho-sad formula") {
    Atlas pl = plane_atlas();
    Foliation f = linear_field(pl, 3, 2);
    PsiMorphism psi = psi_tangential(pl, f);
    GaussianRational grot = localized_residue(pl, psi, "c1", {expr("2*y", {"y"})},
                                              PhiSpec::c1_power(1), 1,
                                              {{"y", GaussianRational(0)}});
    CHECK(grot == camacho_sad_index(pl, f, "c1", GaussianRational(0)).value);
    CHECK(grot == GaussianRational(3, 2));
    // the degree gate rejects constants
    CHECK_THROWS_WITH_AS(localized_residue(pl, psi, "c1", {expr("2*y", {"y"})}, PhiSpec{}, 1,
                                           {{"y", GaussianRational(0)}}),
                         doctest::Contains("degree"), Error);
}

TEST_CASE("index is invariant under unit rescaling of the generator") {
    Atlas pl = plane_atlas();
    Rng rng(53);
    for (int k = 0; k < 30; ++k) {
        long l1 = rng.range(-4, 4), l2 = rng.range(1, 4);
        if (l1 == 0) continue;
        Foliation f = linear_field(pl, l1, l2);
        // multiply the generator by a unit along S
        RationalFunction unit = RationalFunction(GaussianRational(rng.range(1, 5))) +
                                expr("x", {"x"}) * random_rational(rng, {"y"}) +
                                expr("y^2", {"y"}) * RationalFunction(GaussianRational(
                                                         rng.range(0, 2)));
        if (evaluate(restrict_zero(unit, {"x"}), {{"y", GaussianRational(0)}}).is_zero())
            continue;
        Foliation g = make_foliation(pl, "Fu", 1, "c1",
                                     {{unit * expr(std::to_string(l1) + "*x", {"x"}),
                                       unit * expr(std::to_string(l2) + "*y", {"y"})}});
        CHECK(camacho_sad_index(pl, g, "c1", GaussianRational(0)).value ==
              GaussianRational(l1) / GaussianRational(l2));
    }
}

TEST_CASE("f cocycle equals the psi-local differences across an overlap") {
    // comfortable but not 2-splitting: the tangential transition carries a
    // second-order normal term, so the transversal obstruction survives
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"x2"}, {"w"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["x2"] = expr("x", {"x", "y"});
    t.forward["w"] = expr("1/y + x^2", {"x", "y"});
    t.backward["x"] = expr("x2", {"x2", "w"});
    t.backward["y"] = expr("1/(w - x2^2)", {"x2", "w"});
    Atlas atlas({c1, c2}, {t});
    REQUIRE(classify_atlas(atlas).comfortable);

    Foliation f = make_foliation(atlas, "F", 1, "c1",
                                 {{RationalFunction(1), RationalFunction(1)}});
    REQUIRE(!tangency_classify(atlas, f).tangent);

    // psi locals from the canonical frames
    PsiMorphism psi;
    for (const auto& c : atlas.charts()) {
        CanonicalFrame frame = canonical_frame(atlas, f, c.name);
        PsiMorphism::Image img;
        img.frame_field = {atlas.on_s(frame.fields[0][1], c.name)};
        img.value.chart = c.name;
        img.value.b = img.frame_field;
        img.value.e = Mat<RationalFunction>(1, 1);
        img.value.e(0, 0) =
            atlas.on_s(differentiate(frame.fields[0][0], c.normal_vars[0]), c.name);
        psi.per_chart[c.name] = {img};
    }
    // difference of the local splittings on the section d/dy, in c1 frames
    RationalFunction dy_in_c2 = atlas.s_to_chart(
        atlas.on_s(atlas.jacobian("c1", "c2", "w", "y"), "c1"), "c1", "c2");
    AtiyahElement psi2 = psi_apply(atlas, psi, "c2", {dy_in_c2});
    AtiyahElement diff = transport_atiyah(atlas, psi2, "c1") -
                         psi_apply(atlas, psi, "c1", {RationalFunction(1)});
    CHECK(diff.b[0].is_zero());
    // equals the pushed obstruction cocycle for the pair (c2, c1),
    // contracted against the single frame/coframe direction
    CochainValue fp = f_cocycle_pushed(atlas, f, "c2", "c1");
    CHECK(diff.e(0, 0) == fp.comp({0, 0, 0}));
    CHECK(diff.e(0, 0) == expr("2*y^2", {"y"}));
}

TEST_CASE("chart invariance of the residue at a shared singular point") {
    // three-chart product model: the point y = 0 of c1 is u = -1 in c3
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c3{"c3", {"x3"}, {"u"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c3";
    t.forward["x3"] = expr("x", {"x", "y"});
    t.forward["u"] = expr("1/(y-1)", {"x", "y"});
    t.backward["x"] = expr("x3", {"x3", "u"});
    t.backward["y"] = expr("1 + 1/u", {"x3", "u"});
    Atlas atlas({c1, c3}, {t});
    Foliation f = make_foliation(atlas, "F", 1, "c1",
                                 {{expr("x", {"x"}), expr("y", {"y"})}});
    GaussianRational in_c1 = camacho_sad_index(atlas, f, "c1", GaussianRational(0)).value;
    GaussianRational in_c3 = camacho_sad_index(atlas, f, "c3", GaussianRational(-1)).value;
    CHECK(in_c1 == in_c3);
    CHECK(in_c1 == GaussianRational(1));
}
