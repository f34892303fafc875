#include <benchmark/benchmark.h>

#include "gptlab/entropy.hpp"
#include "gptlab/interference.hpp"
#include "gptlab/nnls.hpp"
#include "gptlab/rng.hpp"
#include "gptlab/spectral.hpp"

namespace {

using namespace gptlab;

void BM_Diagonalize(benchmark::State& state) {
  const StateSpace space =
      StateSpace::quantum_c(static_cast<int>(state.range(0)));
  const Observable x = random_observable(space, 7);
  for (auto _ : state) {
    SpectralDecomposition dec = diagonalize(x);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_Diagonalize)->Arg(2)->Arg(4)->Arg(6);

void BM_EntropyReport(benchmark::State& state) {
  const StateSpace space = StateSpace::quantum_c(3);
  const State w = random_state(space, 11, Purity::Mixed);
  for (auto _ : state) {
    EntropyReport rep = entropy_report(w, 2.0, 20, 3);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_EntropyReport);

void BM_Nnls(benchmark::State& state) {
  Rng rng(23);
  const Eigen::MatrixXd a = rng.gaussian_matrix(16, 32);
  const Eigen::VectorXd b = rng.gaussian_vector(16);
  for (auto _ : state) {
    NnlsResult r = nnls(a, b);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Nnls);

void BM_SorkinDefect(benchmark::State& state) {
  const StateSpace space = StateSpace::quantum_c(4);
  const Frame frame = random_maximal_frame(space, 31);
  const std::vector<std::vector<State>> blocks = {
      {frame.states[0]}, {frame.states[1]}, {frame.states[2], frame.states[3]}};
  for (auto _ : state) {
    InterferenceReport rep = sorkin_i3(space, blocks, 4, 5);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_SorkinDefect);

}  // namespace

BENCHMARK_MAIN();
