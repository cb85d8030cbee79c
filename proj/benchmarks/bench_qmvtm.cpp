#include <benchmark/benchmark.h>

#include "qmvtm/error.hpp"
#include "qmvtm/harness.hpp"
#include "qmvtm/semantics.hpp"
#include "qmvtm/transforms.hpp"

using namespace qmvtm;

namespace {

const Fixture& fixture(const char* name) {
  static const std::vector<Fixture> all = corpus();
  for (const auto& f : all) {
    if (f.name == name) return f;
  }
  throw InvalidArgument(std::string("no fixture ") + name);
}

Word ones(std::size_t n) { return Word(n, "1"); }

void eval_depth_wrapper(benchmark::State& state) {
  const auto A = make_builtin("lukasiewicz(3)");
  const Machine m = acceptance_wrapper(contains_11_decider(), A, A->element("1/2"));
  Word input(static_cast<std::size_t>(state.range(0)), "0");
  for (auto _ : state) benchmark::DoNotOptimize(eval_depth(m, input));
}
BENCHMARK(eval_depth_wrapper)->Arg(4)->Arg(16)->Arg(64);

void eval_depth_scan(benchmark::State& state) {
  const Machine& m = fixture("scan_l4").machine;
  const Word input = Word(static_cast<std::size_t>(state.range(0)), "a");
  const bool prune = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(eval_depth(m, input, Budget{500, prune}));
}
BENCHMARK(eval_depth_scan)->Args({2, 1})->Args({2, 0})->Args({4, 1})->Args({4, 0})->Args({6, 1});

void eval_width_scan(benchmark::State& state) {
  const Machine& m = fixture("scan_l4").machine;
  const Word input = Word(static_cast<std::size_t>(state.range(0)), "a");
  for (auto _ : state) benchmark::DoNotOptimize(eval_width(m, input));
}
BENCHMARK(eval_width_scan)->Arg(2)->Arg(4)->Arg(8);

void eval_depth_count(benchmark::State& state) {
  const Machine& m = fixture("count_l4").machine;
  const Word input = ones(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_depth(m, input));
}
BENCHMARK(eval_depth_count)->Arg(8)->Arg(64)->Arg(256);

void transform_width(benchmark::State& state) {
  const Machine& m = fixture("scan_l4").machine;
  for (auto _ : state) benchmark::DoNotOptimize(classicalize_transitions_width(m));
}
BENCHMARK(transform_width);

void transform_depth(benchmark::State& state) {
  const Machine& m = fixture("scan_l4").machine;
  for (auto _ : state) benchmark::DoNotOptimize(classicalize_transitions_depth(m));
}
BENCHMARK(transform_depth);

void transform_both(benchmark::State& state) {
  const Machine& m = fixture("mprop_product").machine;
  for (auto _ : state) benchmark::DoNotOptimize(classicalize_both(m));
}
BENCHMARK(transform_both);

void sweep(benchmark::State& state) {
  const auto A = make_builtin(state.range(0) ? "product(lukasiewicz(3),lukasiewicz(3))" : "diamond");
  for (auto _ : state) benchmark::DoNotOptimize(proposition_sweep(A));
}
BENCHMARK(sweep)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
