#include <benchmark/benchmark.h>

#include "qortho/quasi.hpp"

using namespace qortho;

namespace {

const mpq_class kWidth(1, 1000000000000UL);

FamilySpec bqj() { return suite_instances(FamilyId::BigQJacobi).front(); }

void BM_MonicPoly(benchmark::State& st)
{
    auto s = bqj();
    for (auto _ : st)
        benchmark::DoNotOptimize(monic_poly(s, static_cast<unsigned>(st.range(0))));
}
BENCHMARK(BM_MonicPoly)->Arg(4)->Arg(8)->Arg(16);

void BM_IsolateRefine(benchmark::State& st)
{
    Poly p = monic_poly(bqj(), static_cast<unsigned>(st.range(0)));
    for (auto _ : st) {
        auto boxes = sturm_isolate(p);
        for (auto& b : boxes)
            b = refine_root(p, b, kWidth);
        benchmark::DoNotOptimize(boxes);
    }
}
BENCHMARK(BM_IsolateRefine)->Arg(5)->Arg(8)->Arg(12);

void BM_VerifyCatalog(benchmark::State& st)
{
    for (auto _ : st)
        for (const auto& e : catalog()) {
            FamilySpec s = reference_spec(e);
            unsigned n = s.N ? std::min<unsigned>(6, *s.N) : 6;
            benchmark::DoNotOptimize(verify_entry(e, n, s));
        }
}
BENCHMARK(BM_VerifyCatalog)->Unit(benchmark::kMillisecond);

void BM_CertifyInterlace(benchmark::State& st)
{
    auto s = bqj();
    unsigned n = static_cast<unsigned>(st.range(0));
    Poly q = monic_poly(ShiftSpec::parse("alpha/q").apply(s), n);
    Poly pn = monic_poly(s, n), pn1 = monic_poly(s, n - 1);
    auto a = catalog_coeffs(catalog_entry("bqj.a"), n, s)[1];
    auto v = a.sign() < 0 ? InterlaceVariant::QuasiBelow : InterlaceVariant::QuasiAbove;
    for (auto _ : st)
        benchmark::DoNotOptimize(certify_interlace(q, pn, pn1, v, {}, kWidth));
}
BENCHMARK(BM_CertifyInterlace)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State& st)
{
    auto s = bqj();
    SuiteOptions opt{kWidth, static_cast<unsigned>(st.range(0))};
    for (auto _ : st)
        benchmark::DoNotOptimize(theorem_suite(s, 5, opt));
}
BENCHMARK(BM_Suite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
