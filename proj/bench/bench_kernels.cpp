// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include "codebounds/ffield_divisors.hpp"
#include "codebounds/rate_bounds.hpp"
#include "codebounds/rational.hpp"
#include "codebounds/s_surface.hpp"
#include "codebounds/vector_index.hpp"

#include <benchmark/benchmark.h>

using namespace codebounds;

namespace {

const Bits P{512};

SurfaceParams surface() {
  return SurfaceParams(64, Real(7L, P), parse_real("0.7", P),
                       {parse_real("3.41e-16", P), parse_real("1.0634e-23", P), parse_real("1.93e-31", P)},
                       parse_real("1.95e-5", P));
}

template <SweepResult (*F)(const SurfaceParams&, unsigned long, std::size_t, const Real&, const Real&)>
void bm_sweep(benchmark::State& state) {
  const SurfaceParams sp = surface();
  const Real ref(1L, P);
  for (auto _ : state) {
    benchmark::DoNotOptimize(F(sp, 7, static_cast<std::size_t>(state.range(0)), ref, Real(P)));
  }
}

template <std::vector<TableRow> (*F)(const IharaProfile&, const std::vector<Real>&, const XsChoice&, Bits)>
void bm_table(benchmark::State& state) {
  const IharaProfile profile(64, Real(7L, P));
  std::vector<Real> deltas;
  for (long i = 1; i <= state.range(0); ++i) deltas.emplace_back(mpq_class(i, state.range(0) + 1), P);
  const XsChoice zero{{Real(P)}, false, 0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(F(profile, deltas, zero, P));
}

template <std::vector<Divisor> (*F)(const FunctionFieldModel&, int)>
void bm_divisors(benchmark::State& state) {
  const FunctionFieldModel model = enumerate_places(3, 8);
  for (auto _ : state) benchmark::DoNotOptimize(F(model, static_cast<int>(state.range(0))));
}

template <ToyCode (*F)(int, const std::vector<int>&, int, int)>
void bm_toy_code(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(F(5, {0, 1, 2, 3, 4}, 2, static_cast<int>(state.range(0))));
}

template <CoveringResult (*F)(int, int, int, const std::vector<mpq_class>&, const std::vector<IndexedVector>&)>
void bm_covering(benchmark::State& state) {
  const ToyCode code = build_toy_code(3, {0, 1, 2}, 2, 2);
  std::vector<IndexedVector> image;
  for (std::uint64_t k = 0; k < code.size(); ++k) image.push_back(code.phi(k));
  const std::vector<mpq_class> xs{mpq_class(1, 3), mpq_class(1, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(F(3, 2, 3, xs, image));
}

}  // namespace

BENCHMARK(bm_sweep<sweep_serial>)->Name("sweep/serial")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep<sweep_parallel>)->Name("sweep/parallel")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_table<compare_table_serial>)->Name("compare_table/serial")->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_table<compare_table>)->Name("compare_table/parallel")->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_divisors<enumerate_divisors_serial>)->Name("divisors/serial")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_divisors<enumerate_divisors_parallel>)->Name("divisors/parallel")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_toy_code<build_toy_code_serial>)->Name("toy_code/serial")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_toy_code<build_toy_code>)->Name("toy_code/parallel")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_covering<covering_translate_serial>)->Name("covering/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bm_covering<covering_translate>)->Name("covering/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
