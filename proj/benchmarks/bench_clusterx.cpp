#include <benchmark/benchmark.h>

#include "clusterx/explorer.hpp"
#include "clusterx/folding.hpp"
#include "clusterx/group_eval.hpp"
#include "clusterx/verify.hpp"

using namespace cx;

static void BM_RatfunPowerSum(benchmark::State& st) {
  const RationalFunction a = RationalFunction::parse("1+x+y"), b = RationalFunction::parse("1/(1+x*y)");
  for (auto _ : st) benchmark::DoNotOptimize((a.pow(static_cast<int>(st.range(0))) + b) * b);
}
BENCHMARK(BM_RatfunPowerSum)->Arg(3)->Arg(6)->Arg(10);

static void BM_WordSeed(benchmark::State& st) {
  const RootDatum rd = root_datum_preset("G2");
  const Word w = parse_word(rd, "a b a b a b -a -b -a -b -a -b");
  for (auto _ : st) benchmark::DoNotOptimize(word_seed(rd, w));
}
BENCHMARK(BM_WordSeed);

static void BM_MutationSequenceMap(benchmark::State& st) {
  const RootDatum rd = root_datum_preset("A3");
  const Seed s = word_seed(rd, parse_word(rd, "a b c a b a"));
  const auto m = s.mutable_labels();
  std::vector<std::string> program;
  for (int i = 0; i < st.range(0); ++i) program.push_back(m[i % m.size()]);
  for (auto _ : st) benchmark::DoNotOptimize(mutation_sequence_map(s, program));
}
BENCHMARK(BM_MutationSequenceMap)->Arg(2)->Arg(4)->Arg(6);

static void BM_EvSL4(benchmark::State& st) {
  const RootDatum rd = root_datum_preset("A3");
  const Word w = parse_word(rd, "a b c -a -b -c");
  for (auto _ : st) benchmark::DoNotOptimize(ev(rd, w));
}
BENCHMARK(BM_EvSL4);

static void BM_ExploreG2(benchmark::State& st) {
  const Seed s = g2_triple_flag_seed();
  for (auto _ : st) benchmark::DoNotOptimize(explore(s));
}
BENCHMARK(BM_ExploreG2);

static void BM_G2Complex(benchmark::State& st) {
  const ExchangeGraph g = explore(g2_triple_flag_seed());
  for (auto _ : st) benchmark::DoNotOptimize(build_modular_complex(g));
}
BENCHMARK(BM_G2Complex)->Unit(benchmark::kMillisecond);

static void BM_B2Identity(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(verify_b2_identity());
}
BENCHMARK(BM_B2Identity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
