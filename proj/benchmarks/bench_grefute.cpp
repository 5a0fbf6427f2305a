#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "grefute/canonical.hpp"
#include "grefute/conversion.hpp"
#include "grefute/matching.hpp"
#include "grefute/problem.hpp"
#include "grefute/prover.hpp"
#include "grefute/semantics.hpp"
#include "grefute/syntax.hpp"

using namespace grefute;

namespace {

void prove_problem(benchmark::State& state, const char* text) {
  Problem p = parse_problem(text);
  Formula c = p.conclusion.value_or(Formula::falsum());
  for (auto _ : state) benchmark::DoNotOptimize(check_consequence(p.premises, c).kind);
}

void BM_ProveExistentialIntro(benchmark::State& s) { prove_problem(s, gt::kExistentialIntro); }
void BM_ProveTwoBoxes(benchmark::State& s) { prove_problem(s, gt::kTwoBoxes); }
void BM_ProveChain(benchmark::State& s) {
  prove_problem(s, "forall x. (p(x) -> q(x))\nforall x. (q(x) -> s(x))\n"
                   "forall x. (s(x) -> t(x))\np(a)\n|- t(a)\n");
}

void BM_ProveLargeConsequence(benchmark::State& state) {
  Formula phi = parse_formula(gt::kLargePremise);
  Formula theta = parse_formula(gt::kLargeConclusion);
  for (auto _ : state) benchmark::DoNotOptimize(check_consequence({phi}, theta).kind);
}

void BM_MorphismCount(benchmark::State& state) {
  Draft src = gt::large_source(), dst = gt::large_target();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_morphisms(src, dst).size());
}

void BM_FindMorphism(benchmark::State& state) {
  Draft src = gt::large_source(), dst = gt::large_target();
  for (auto _ : state) benchmark::DoNotOptimize(find_morphism(src, dst).has_value());
}

void BM_ConvertRandom(benchmark::State& state) {
  gt::Rng rng(7);
  gt::FormulaShape shape;
  shape.depth = static_cast<int>(state.range(0));
  std::vector<Expression> fs;
  for (int i = 0; i < 64; ++i) fs.push_back(Expression::formula(gt::random_formula(rng, shape)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(to_basic(fs[i++ % fs.size()]).graph.slices().size());
}

void BM_CanonicalKey(benchmark::State& state) {
  gt::Rng rng(3);
  gt::SliceShape shape;
  shape.nodes = static_cast<int>(state.range(0));
  shape.arcs = shape.nodes;
  std::vector<Slice> ss;
  for (int i = 0; i < 64; ++i) ss.push_back(gt::random_basic_slice(rng, shape));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(ss[i++ % ss.size()]));
}

void BM_EvaluateSlice(benchmark::State& state) {
  gt::Rng rng(11);
  Slice s = gt::random_basic_slice(rng, {4, 5, 1, 2});
  FiniteModel m = gt::random_model(rng, gt::generator_symbols(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Evaluator ev(m);
    benchmark::DoNotOptimize(ev.eval(s).count());
  }
}

}  // namespace

BENCHMARK(BM_ProveExistentialIntro);
BENCHMARK(BM_ProveTwoBoxes);
BENCHMARK(BM_ProveChain);
BENCHMARK(BM_ProveLargeConsequence);
BENCHMARK(BM_MorphismCount);
BENCHMARK(BM_FindMorphism);
BENCHMARK(BM_ConvertRandom)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_CanonicalKey)->Arg(3)->Arg(5)->Arg(7);
BENCHMARK(BM_EvaluateSlice)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK_MAIN();
