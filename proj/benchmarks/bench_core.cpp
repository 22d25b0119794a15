#include <benchmark/benchmark.h>

#include "relst/elimination.hpp"
#include "relst/quotients.hpp"

using namespace relst;

namespace {

CtxPtr fixture(std::size_t n, u64 m) {
  RingPtr base = cyclic_ring(m);
  RingPtr mat = matrix_ring(n, base);
  CrossedModule cm = ideal_crossed_module(mat, {mat->scalar_mul(2, mat->one())});
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
  IdempotentFamily fam = block_family(mat, n, base, blocks);
  return LinearContext::make(mat, std::move(cm), std::move(fam), "bench");
}

void BM_RingMul(benchmark::State& state) {
  CtxPtr ctx = fixture(static_cast<std::size_t>(state.range(0)), 8);
  const FiniteRing& s = ctx->S();
  Rng rng(1);
  Vec x = s.one(), y = s.one();
  for (std::size_t i = 0; i < ctx->n(); ++i) {
    x = s.add(x, ctx->sample_s(i, (i + 1) % ctx->n(), rng));
    y = s.add(y, ctx->sample_s((i + 1) % ctx->n(), i, rng));
  }
  for (auto _ : state) {
    Vec z = s.mul(x, y);
    benchmark::DoNotOptimize(z);
  }
}

void BM_VerifyInstance(benchmark::State& state) {
  CtxPtr ctx = fixture(4, 8);
  RelationId id = static_cast<RelationId>(state.range(0));
  std::size_t t = 0;
  for (auto _ : state) {
    Rng rng(derive_seed(3, relation_name(id), t++));
    RelationInstance inst = sample_instance(*ctx, id, rng, false);
    Verdict v = verify_instance(*ctx, inst);
    benchmark::DoNotOptimize(v.pass);
  }
}

void BM_ConjugationForm(benchmark::State& state) {
  CtxPtr ctx = fixture(5, 8);
  const LinearContext& c = *ctx;
  std::size_t t = 0;
  for (auto _ : state) {
    Rng rng(derive_seed(5, "bench-conj", t++));
    RootSet sigma = random_special_closed(c.n(), rng, static_cast<std::size_t>(state.range(0)));
    std::vector<UnipotentFactor> g;
    for (const auto& r : sigma) g.push_back({r, c.sample_r(r.i, r.j, rng)});
    std::size_t hi = rng.below(c.n()), hj = rng.below(c.n());
    if (hi == hj) hj = (hj + 1) % c.n();
    Word h = word_of(xsym(c, hi, hj, c.sample_a(hi, hj, rng)));
    Word w = conjugation_form(c, g, h);
    benchmark::DoNotOptimize(w.size());
  }
}

void BM_FtGroup(benchmark::State& state) {
  CtxPtr ctx = fixture(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) {
    FtGroup ft = FtGroup::linear(ctx);
    benchmark::DoNotOptimize(ft.snf().invariant_factors.size());
  }
}

void BM_SmithNormalForm(benchmark::State& state) {
  Rng rng(7);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  IMat m(n, std::vector<i64>(n + 10));
  for (auto& row : m)
    for (auto& x : row) x = static_cast<i64>(rng.below(7)) - 3;
  for (auto _ : state) {
    SmithResult s = smith_normal_form(m);
    benchmark::DoNotOptimize(s.diag.size());
  }
}

}  // namespace

BENCHMARK(BM_RingMul)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK(BM_VerifyInstance)
    ->Arg(static_cast<int>(RelationId::St2))
    ->Arg(static_cast<int>(RelationId::Conj2))
    ->Arg(static_cast<int>(RelationId::HW));
BENCHMARK(BM_ConjugationForm)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_FtGroup)->Arg(3)->Arg(4);
BENCHMARK(BM_SmithNormalForm)->Arg(10)->Arg(20)->Arg(40);

BENCHMARK_MAIN();
