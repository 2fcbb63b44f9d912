#include "helpers.hpp"
#include "residua/manifest.hpp"

#include <doctest.h>

#include <filesystem>

using namespace residua;
using namespace residua::testing;

static const char* corpus_dir() {
#ifdef RESIDUA_SOURCE_CORPUS
    return RESIDUA_SOURCE_CORPUS;
#else
    return "corpus";
#endif
}

TEST_CASE("every bundled manifest parses with zero diagnostics") {
    size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
        if (entry.path().extension() != ".man") continue;
        ModelBundle b = load_model(entry.path().string());
        CHECK(b.atlas.has_value());
        ++count;
    }
    CHECK(count >= 8);
}

TEST_CASE("manifest cross-reference diagnostics") {
    CHECK_THROWS_WITH_AS(parse_manifest(R"(
model broken
chart c1 normal(x) tangential(y)
transition c1 -> nowhere { } inverse { }
)"),
                         doctest::Contains("unknown chart 'nowhere'"), ManifestError);

    CHECK_THROWS_WITH_AS(parse_manifest(R"(
model broken
chart c1 normal(x) tangential(y)
submanifold codim 2
)"),
                         doctest::Contains("codimension"), ManifestError);

    try {
        parse_manifest(R"(
model broken
chart c1 normal(x) tangential(y)
foliation F in c1 generators { q*d/dx }
map f in c1 { x' = x + x^2; y' = y + zz; }
)");
        CHECK(false);
    } catch (const ManifestError& e) {
        CHECK(e.diagnostics.size() == 2);  // both statements report
        CHECK(e.diagnostics[0].line == 4);
        CHECK(e.diagnostics[1].line == 5);
    }
}

TEST_CASE("atlas-only manifests are valid bundles") {
    ModelBundle b = parse_manifest(R"(
model atlas_only
chart c1 normal(x) tangential(y)
)");
    CHECK(b.foliations.empty());
    CHECK(b.maps.empty());
    CHECK(b.atlas.has_value());
}

TEST_CASE("missing transition inverse is rejected") {
    CHECK_THROWS_WITH_AS(parse_manifest(R"(
model broken
chart c1 normal(x) tangential(y)
chart c2 normal(u) tangential(w)
transition c1 -> c2 { u = x; w = 1/y; }
)"),
                         doctest::Contains("inverse"), ManifestError);
}

TEST_CASE("expectations and declared points parse") {
    ModelBundle b = parse_manifest(R"(
model full
chart c1 normal(x) tangential(y)
foliation F in c1 generators { 2*x*d/dx + y*d/dy }
points c1 { 0, 1/2, 1+i }
expect degree -1
expect sum 1/2
)");
    CHECK(b.declared_points.size() == 3);
    CHECK(b.declared_points[2].second == GaussianRational(mpq_class(1), mpq_class(1)));
    CHECK(b.expected_degree == -1);
    CHECK(*b.expected_sum == GaussianRational(mpq_class(1, 2)));
}
