#include "helpers.hpp"
#include "residua/atiyah.hpp"
#include "residua/connection.hpp"

#include <doctest.h>

using namespace residua;
using namespace residua::testing;

TEST_CASE("atiyah projection in the canonical frame") {
    Atlas pl = plane_atlas();
    // the coordinate frame elements
    AtiyahElement q1 = atiyah_project(pl, "c1", {RationalFunction(), RationalFunction(1)});
    CHECK(q1.b[0] == RationalFunction(1));
    CHECK(q1.e.is_zero());
    AtiyahElement q2 = atiyah_project(pl, "c1", {expr("x", {"x"}), RationalFunction()});
    CHECK(q2.b[0].is_zero());
    CHECK(q2.e(0, 0) == RationalFunction(1));
    // [x y^2] d/dx + [y] d/dy
    AtiyahElement q3 =
        atiyah_project(pl, "c1", {expr("x*y^2", {"x", "y"}), expr("y", {"y"})});
    CHECK(q3.b[0] == expr("y", {"y"}));
    CHECK(q3.e(0, 0) == expr("y^2", {"y"}));
    // a field with a normal component surviving on S is rejected by name
    CHECK_THROWS_WITH_AS(atiyah_project(pl, "c1", {expr("y", {"y"}), RationalFunction()}),
                         doctest::Contains("x"), Error);
}

TEST_CASE("tilde_pi extends the projection on comfortable atlases") {
    Atlas pl = plane_atlas();
    // constant normal direction dies
    AtiyahElement z = tilde_pi(pl, "c1", {RationalFunction(1), RationalFunction()});
    CHECK(z.is_zero());
    // [y] d/dx + d/dy reduces to pi(d/dy)
    AtiyahElement q = tilde_pi(pl, "c1", {expr("y", {"y"}), RationalFunction(1)});
    CHECK(q.b[0] == RationalFunction(1));
    CHECK(q.e.is_zero());
    // agreement with the plain projection on tangent fields
    AtiyahElement a = atiyah_project(pl, "c1", {expr("x*y", {"x", "y"}), expr("y^2", {"y"})});
    AtiyahElement b = tilde_pi(pl, "c1", {expr("x*y", {"x", "y"}), expr("y^2", {"y"})});
    CHECK(a == b);
    // refusal on a non-comfortable atlas carries the classification
    CHECK_THROWS_WITH_AS(tilde_pi(nonsplit_atlas(), "c1", {expr("y", {"y"}), RationalFunction(1)}),
                         doctest::Contains("comfortable"), Error);
}

TEST_CASE("universal connection on the canonical frame") {
    Atlas pl = plane_atlas();
    AtiyahElement frame = atiyah_project(pl, "c1", {RationalFunction(), RationalFunction(1)});
    CHECK(universal_connection(frame, 0)[0].is_zero());
    // q = pi([z^s] d/dz^t): the bracket [z^s d_t, d_s] = -d_t
    AtiyahElement e_elem = atiyah_project(pl, "c1", {expr("x", {"x"}), RationalFunction()});
    CHECK(universal_connection(e_elem, 0)[0] == RationalFunction(-1));
    // the map-index kernel example
    AtiyahElement k = atiyah_project(pl, "c1", {expr("x*y^2", {"x", "y"}), expr("y", {"y"})});
    CHECK(universal_connection(k, 0)[0] == expr("-y^2", {"y"}));
}

TEST_CASE("representative independence of the universal connection") {
    Atlas pl = plane_atlas();
    Rng rng(31);
    for (int k = 0; k < 60; ++k) {
        RationalFunction a = random_rational(rng, {"y"});
        RationalFunction b = random_rational(rng, {"y"});
        std::vector<RationalFunction> v{a * expr("x", {"x"}), b};
        AtiyahElement q = atiyah_project(pl, "c1", v);
        // perturb by an element of I_S . T^S: normal comps in I^2, tangential in I
        RationalFunction px = random_rational(rng, {"y"}) * expr("x^2", {"x"});
        RationalFunction py = random_rational(rng, {"y"}) * expr("x", {"x"});
        AtiyahElement q2 = atiyah_project(pl, "c1", {v[0] + px, v[1] + py});
        CHECK(universal_connection(q, 0) == universal_connection(q2, 0));
    }
}

TEST_CASE("frame change coherence across the blow-up overlap") {
    Atlas bu = blowup_atlas();
    Rng rng(37);
    for (int k = 0; k < 25; ++k) {
        // a random tangent-along-S field in chart c1
        RationalFunction a = random_rational(rng, {"t"});
        RationalFunction b = random_rational(rng, {"t"});
        std::vector<RationalFunction> field{a * expr("x", {"x"}), b};
        AtiyahElement q1 = atiyah_project(bu, "c1", field);
        AtiyahElement via_transport = transport_atiyah(bu, q1, "c2");
        AtiyahElement direct = atiyah_project(bu, "c2", bu.push_field(field, "c1", "c2"));
        CHECK(via_transport == direct);
    }
}

#include "residua/manifest.hpp"
#include <filesystem>

TEST_CASE("projection commutes with the frame change on every corpus overlap") {
#ifdef RESIDUA_SOURCE_CORPUS
    const char* dir = RESIDUA_SOURCE_CORPUS;
#else
    const char* dir = "corpus";
#endif
    Rng rng(59);
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".man") continue;
        ModelBundle bundle = load_model(entry.path().string());
        const Atlas& atlas = *bundle.atlas;
        for (const auto& [a, b] : atlas.overlaps()) {
            const Chart& ca = atlas.chart(a);
            // two random fields tangent along S in the source chart
            for (int k = 0; k < 2; ++k) {
                std::vector<RationalFunction> field;
                for (const auto& nv : ca.normal_vars)
                    field.push_back(random_rational(rng, ca.tangential_vars) *
                                    RationalFunction::variable(nv));
                for (size_t p = 0; p < ca.dim_s(); ++p)
                    field.push_back(random_rational(rng, ca.tangential_vars));
                AtiyahElement via = transport_atiyah(atlas, atiyah_project(atlas, a, field), b);
                AtiyahElement direct =
                    atiyah_project(atlas, b, atlas.push_field(field, a, b));
                CHECK(via == direct);
            }
        }
    }
}
