#ifndef RESIDUA_TESTS_HELPERS_HPP
#define RESIDUA_TESTS_HELPERS_HPP

#include "residua/atlas.hpp"
#include "residua/expr.hpp"

#include <cstdint>

namespace residua::testing {

// deterministic xorshift generator for the randomized suites
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + long(next() % uint64_t(hi - lo + 1));
    }
};

inline GaussianRational random_scalar(Rng& rng, bool complex_part = true) {
    mpq_class re(rng.range(-9, 9), rng.range(1, 4));
    mpq_class im(complex_part ? rng.range(-3, 3) : 0, rng.range(1, 3));
    return GaussianRational(re, im);
}

inline Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars,
                                    unsigned max_terms = 4, unsigned max_deg = 3) {
    Polynomial p;
    unsigned terms = unsigned(rng.range(1, long(max_terms)));
    for (unsigned t = 0; t < terms; ++t) {
        Polynomial::Exponents e(vars.size());
        for (size_t k = 0; k < vars.size(); ++k) e[k] = unsigned(rng.range(0, long(max_deg)));
        p += Polynomial::monomial(vars, e, random_scalar(rng));
    }
    return p;
}

inline RationalFunction random_rational(Rng& rng, const std::vector<std::string>& vars) {
    Polynomial den = random_polynomial(rng, vars, 2, 1);
    while (den.is_zero()) den = random_polynomial(rng, vars, 2, 1);
    return RationalFunction(random_polynomial(rng, vars, 3, 2), den);
}

inline RationalFunction expr(const std::string& text, const std::vector<std::string>& vars) {
    return parse_expression(text, vars);
}

// -- standard model atlases ---------------------------------------------------

inline Atlas blowup_atlas() {
    Chart c1{"c1", {"x"}, {"t"}};
    Chart c2{"c2", {"y"}, {"s"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["y"] = expr("t*x", {"x", "t"});
    t.forward["s"] = expr("1/t", {"x", "t"});
    t.backward["x"] = expr("s*y", {"y", "s"});
    t.backward["t"] = expr("1/s", {"y", "s"});
    return Atlas({c1, c2}, {t});
}

inline Atlas p2_line_atlas() {
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"u"}, {"w"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["u"] = expr("x/y", {"x", "y"});
    t.forward["w"] = expr("1/y", {"x", "y"});
    t.backward["x"] = expr("u/w", {"u", "w"});
    t.backward["y"] = expr("1/w", {"u", "w"});
    return Atlas({c1, c2}, {t});
}

inline Atlas product_atlas() {
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

inline Atlas nonsplit_atlas() {
    Chart c1{"c1", {"x"}, {"y"}};
    Chart c2{"c2", {"x2"}, {"y2"}};
    TransitionMap t;
    t.from = "c1";
    t.to = "c2";
    t.forward["x2"] = expr("x", {"x", "y"});
    t.forward["y2"] = expr("y + x", {"x", "y"});
    t.backward["x"] = expr("x2", {"x2", "y2"});
    t.backward["y"] = expr("y2 - x2", {"x2", "y2"});
    return Atlas({c1, c2}, {t});
}

inline Atlas plane_atlas() {  // single chart of C^2 adapted to the y-axis
    return Atlas({Chart{"c1", {"x"}, {"y"}}}, {});
}

} // namespace residua::testing

#endif
