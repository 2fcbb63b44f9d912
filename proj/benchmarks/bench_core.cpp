// Microbenchmarks for the exact kernels: polynomial arithmetic, the
// 1-D and multivariate residue engines, and a full model verification.

#include "residua/expr.hpp"
#include "residua/foliation.hpp"
#include "residua/residue.hpp"
#include "residua/verify.hpp"

#include <benchmark/benchmark.h>

using namespace residua;

namespace {

RationalFunction e(const std::string& text, const std::vector<std::string>& vars) {
    return parse_expression(text, vars);
}

void bm_polynomial_mul(benchmark::State& state) {
    Polynomial a = e("(x^2 + 3*x*y - 7/2*y^3 + i*x)^2", {"x", "y"}).num();
    Polynomial b = e("(y^2 - x + (1+i))^3", {"x", "y"}).num();
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_polynomial_mul);

void bm_rational_normalize(benchmark::State& state) {
    Polynomial num = e("(x+y)^3*(x-y)", {"x", "y"}).num();
    Polynomial den = e("(x+y)*(x^2+y)", {"x", "y"}).num();
    for (auto _ : state) benchmark::DoNotOptimize(RationalFunction(num, den));
}
BENCHMARK(bm_rational_normalize);

void bm_residue_trace_form(benchmark::State& state) {
    OneForm1D form{"y", e("(y^3 + 2*y + 5)/(y^6 - 2*y^4 + y + 3)", {"y"})};
    Polynomial factor = e("y^6 - 2*y^4 + y + 3", {"y"}).num();
    for (auto _ : state) benchmark::DoNotOptimize(residue_total_1d(form, factor));
}
BENCHMARK(bm_residue_trace_form);

void bm_grothendieck(benchmark::State& state) {
    GrothendieckData d;
    d.vars = {"x", "y"};
    d.denominators = {e("x + y + x*y^2", {"x", "y"}).num(), e("x - y", {"x", "y"}).num()};
    d.numerator = e("1 + x*y", {"x", "y"});
    for (auto _ : state) benchmark::DoNotOptimize(grothendieck_residue(d));
}
BENCHMARK(bm_grothendieck);

void bm_verify_blowup(benchmark::State& state) {
    std::string man = R"(
model blowup_foliation
chart c1 normal(x) tangential(t)
chart c2 normal(y) tangential(s)
transition c1 -> c2 { y = t*x; s = 1/t; } inverse { x = s*y; t = 1/s; }
submanifold codim 1
foliation F in c1 generators { x*d/dx + 2*t*d/dt }
expect degree compute
expect sum -1
)";
    for (auto _ : state) {
        ModelBundle b = parse_manifest(man);
        benchmark::DoNotOptimize(run_verification(b));
    }
}
BENCHMARK(bm_verify_blowup);

} // namespace

BENCHMARK_MAIN();
