#include "helpers.hpp"
#include "residua/cochain.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

TEST_CASE("transition validation") {
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"u"}, {"w"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["u"] = expr("x", {"x", "y"});
    t.forward["w"] = expr("y^2", {"x", "y"});  // not invertible by the claimed inverse
    t.backward["x"] = expr("u", {"u", "w"});
    t.backward["y"] = expr("w", {"u", "w"});
    CHECK_THROWS_WITH_AS(Atlas({c1, c2}, {t}), doctest::Contains("not inverted"), Error);
}

TEST_CASE("classification of the standard models") {
    EmbeddingReport bu = classify_atlas(blowup_atlas());
    CHECK(bu.adapted);
    CHECK(bu.splitting);
    CHECK(bu.comfortable);
    CHECK(bu.two_splitting);
    CHECK(bu.two_linearizable);

    EmbeddingReport pr = classify_atlas(product_atlas());
    CHECK(pr.two_linearizable);

    EmbeddingReport ns = classify_atlas(nonsplit_atlas());
    CHECK(ns.adapted);
    CHECK(!ns.splitting);
    CHECK(!ns.two_splitting);
    CHECK(!ns.comfortable);
    bool witnessed = false;
    for (const auto& w : ns.witnesses)
        if (w.flag == "splitting" && w.detail.find("= 1") != std::string::npos) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("an atlas that is comfortable but not 2-splitting") {
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"x2"}, {"w"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["x2"] = expr("x", {"x", "y"});
    t.forward["w"] = expr("1/y + x^2", {"x", "y"});
    t.backward["x"] = expr("x2", {"x2", "w"});
    t.backward["y"] = expr("1/(w - x2^2)", {"x2", "w"});
    EmbeddingReport rep = classify_atlas(Atlas({c1, c2}, {t}));
    CHECK(rep.splitting);
    CHECK(rep.comfortable);
    CHECK(!rep.two_splitting);
    CHECK(!rep.two_linearizable);
}

TEST_CASE("conormal cocycle") {
    Atlas ns = nonsplit_atlas();
    CochainValue s = conormal_cocycle(ns, "c1", "c2");
    CHECK(s.comp({0, 0}) == RationalFunction(-1));

    for (const auto& [a, b] : blowup_atlas().overlaps())
        CHECK(conormal_cocycle(blowup_atlas(), a, b).is_zero());
    Atlas p2 = p2_line_atlas();
    for (const auto& [a, b] : p2.overlaps()) CHECK(conormal_cocycle(p2, a, b).is_zero());
}

TEST_CASE("atiyah cocycle") {
    Atlas pr = product_atlas();
    for (const auto& [a, b] : pr.overlaps()) CHECK(atiyah_cocycle(pr, a, b).is_zero());

    // blow-up: one second derivative survives; value frozen from the chain
    // rule ds x = d(sy)/ds etc.
    Atlas bu = blowup_atlas();
    CochainValue g = atiyah_cocycle(bu, "c2", "c1");
    CHECK(g.comp({0, 0, 0}) == expr("-1/t", {"t"}));
    // antisymmetry through the transport
    CochainValue g12 = atiyah_cocycle(bu, "c1", "c2");
    CHECK((g + transport_cochain(bu, g12, "c1")).is_zero());

    // purely linear transitions have no obstruction
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"x2"}, {"y2"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["x2"] = expr("2*x", {"x", "y"});
    t.forward["y2"] = expr("3*y", {"x", "y"});
    t.backward["x"] = expr("x2/2", {"x2", "y2"});
    t.backward["y"] = expr("y2/3", {"x2", "y2"});
    Atlas lin({c1, c2}, {t});
    CHECK(atiyah_cocycle(lin, "c1", "c2").is_zero());
}

TEST_CASE("coboundary residual") {
    Atlas ns = nonsplit_atlas();
    CochainValue s = conormal_cocycle(ns, "c1", "c2");

    CochainValue zero1{"c1", "", {Slot::Conormal, Slot::TangentS}, {1, 1}, {}};
    CochainValue c2v{"c2", "", {Slot::Conormal, Slot::TangentS}, {1, 1}, {}};
    c2v.set({0, 0}, RationalFunction(1));
    std::map<std::string, CochainValue> good{{"c1", zero1}, {"c2", c2v}};
    CHECK(coboundary_residual(ns, s, good).is_zero());

    // zero cocycle, zero cochain
    CochainValue zero_cocycle = s;
    zero_cocycle.comps.clear();
    CochainValue zero2 = c2v;
    zero2.comps.clear();
    std::map<std::string, CochainValue> zeros{{"c1", zero1}, {"c2", zero2}};
    CHECK(coboundary_residual(ns, zero_cocycle, zeros).is_zero());

    // a cocycle against itself as a fake cochain is generally nonzero
    std::map<std::string, CochainValue> fake{{"c1", zero1}, {"c2", s}};
    CHECK(!coboundary_residual(ns, s, fake).is_zero());
}

TEST_CASE("splitting correction repairs the demo atlas") {
    Atlas ns = nonsplit_atlas();
    CochainValue zero1{"c1", "", {Slot::Conormal, Slot::TangentS}, {1, 1}, {}};
    CochainValue c2v{"c2", "", {Slot::Conormal, Slot::TangentS}, {1, 1}, {}};
    c2v.set({0, 0}, RationalFunction(1));
    Atlas fixed = apply_splitting_correction(ns, {{"c1", zero1}, {"c2", c2v}});
    CHECK(classify_atlas(fixed).splitting);
    for (const auto& [a, b] : fixed.overlaps())
        CHECK(conormal_cocycle(fixed, a, b).is_zero());

    // the zero cochain leaves a splitting atlas untouched
    Atlas bu = blowup_atlas();
    CochainValue z1{"c1", "", {Slot::Conormal, Slot::TangentS}, {1, 1}, {}};
    CochainValue z2{"c2", "", {Slot::Conormal, Slot::TangentS}, {1, 1}, {}};
    Atlas same = apply_splitting_correction(bu, {{"c1", z1}, {"c2", z2}});
    CHECK(same.transition("c1", "c2").forward.at("y") == expr("t*x", {"x", "t"}));

    // a wrong cochain is rejected with the residual
    CochainValue wrong = c2v;
    wrong.set({0, 0}, RationalFunction(5));
    CHECK_THROWS_WITH_AS(apply_splitting_correction(ns, {{"c1", zero1}, {"c2", wrong}}),
                         doctest::Contains("residual"), Error);
}

TEST_CASE("normal bundle degree anchors") {
    CHECK(normal_bundle_degree(p2_line_atlas()) == 1);
    CHECK(normal_bundle_degree(blowup_atlas()) == -1);
    CHECK(normal_bundle_degree(product_atlas()) == 0);
    CHECK_THROWS_WITH_AS(normal_bundle_degree(plane_atlas()),
                         doctest::Contains("two-chart"), Error);
}

TEST_CASE("push_field matches hand transport on the blow-up") {
    Atlas bu = blowup_atlas();
    // x d/dx + 2t d/dt goes to 3y d/dy - 2s d/ds
    auto pushed = bu.push_field({expr("x", {"x", "t"}), expr("2*t", {"x", "t"})}, "c1", "c2");
    CHECK(pushed[0] == expr("3*y", {"y", "s"}));
    CHECK(pushed[1] == expr("-2*s", {"y", "s"}));
}
