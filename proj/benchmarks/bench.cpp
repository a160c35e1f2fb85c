#include <benchmark/benchmark.h>

#include "pwforge/solvers.hpp"
#include "pwforge/walker.hpp"

using namespace pwf;

namespace {

Poly dense_poly(const ChartPtr& ch, int deg, int salt) {
  Poly p;
  long c = 1;
  std::vector<int> mi(size_t(deg), 0);
  // All monomials of total degree <= deg with drifting coefficients.
  std::vector<int32_t> expo(size_t(ch->dim()), 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == ch->dim()) {
      Poly mono(Rational((salt + c++) % 13 - 6, 1 + c % 4));
      for (int i = 0; i < ch->dim(); ++i)
        for (int k = 0; k < expo[size_t(i)]; ++k)
          mono *= Poly(ch->vars[size_t(i)]);
      p += mono;
      return;
    }
    for (int d = 0; d <= left; ++d) {
      expo[size_t(var)] = d;
      rec(var + 1, left - d);
    }
    expo[size_t(var)] = 0;
  };
  rec(0, deg);
  return p;
}

PWSpace quadratic_example() {
  auto ch = base_chart(2);
  TensorField phi(ch, {Variance::Lower, Variance::Lower});
  phi.at({0, 0}) = Poly::parse("x2^2");
  return build_pw(AffineConnection::flat(ch), phi);
}

void BM_PolyMultiply(benchmark::State& state) {
  auto ch = base_chart(3);
  Poly a = dense_poly(ch, int(state.range(0)), 1);
  Poly b = dense_poly(ch, int(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(8);

void BM_CurvaturePack(benchmark::State& state) {
  auto ch = base_chart(int(state.range(0)));
  TensorField gamma(ch,
                    {Variance::Lower, Variance::Upper, Variance::Lower});
  int n = ch->dim();
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int b = a; b < n; ++b) {
        Poly v = dense_poly(ch, 2, a + 3 * c + 9 * b);
        gamma.at({a, c, b}) = v;
        gamma.at({b, c, a}) = v;
      }
  AffineConnection conn{ch, gamma};
  for (auto _ : state) benchmark::DoNotOptimize(curvature_pack(conn));
}
BENCHMARK(BM_CurvaturePack)->Arg(2)->Arg(3);

void BM_MetricCurvature(benchmark::State& state) {
  auto pw = quadratic_example();
  for (auto _ : state)
    benchmark::DoNotOptimize(metric_curvature(pw.g, pw.g_inv, pw.lc));
}
BENCHMARK(BM_MetricCurvature);

void BM_EinsteinReduced(benchmark::State& state) {
  auto pw = quadratic_example();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        einstein_scales_reduced(pw.base_conn, pw.phi, int(state.range(0))));
}
BENCHMARK(BM_EinsteinReduced)->Arg(2)->Arg(4);

void BM_ConformalKillingDirect(benchmark::State& state) {
  auto pw = quadratic_example();
  for (auto _ : state)
    benchmark::DoNotOptimize(conformal_killing_direct(pw, 3, false));
}
BENCHMARK(BM_ConformalKillingDirect)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
