// Serial vs OpenMP timings for the block kernels and a full DR step.
// Both paths compute bit-identical results; this target measures the speed
// difference on multi-core hosts.
#include <benchmark/benchmark.h>

#include <vector>

#include "bap/exec.hpp"
#include "bap/problem.hpp"
#include "bap/solvers.hpp"
#include "bap/vec.hpp"

namespace {

using namespace bap;

std::vector<Vec> make_blocks(std::size_t nb, std::size_t dim) {
  std::vector<Vec> blocks(nb, Vec(dim));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      blocks[i][j] = double((i * 131 + j * 17) % 1000) * 1e-3;
  return blocks;
}

void BM_sum_blocks(benchmark::State& state, Exec ex) {
  const std::size_t nb = 64, dim = std::size_t(state.range(0));
  auto blocks = make_blocks(nb, dim);
  Vec out;
  for (auto _ : state) {
    sum_blocks(ex, nb, dim, [&](std::size_t i) -> const Vec& { return blocks[i]; },
               out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_for_each_block(benchmark::State& state, Exec ex) {
  const std::size_t nb = std::size_t(state.range(0)), dim = 4096;
  auto blocks = make_blocks(nb, dim);
  for (auto _ : state) {
    for_each_block(ex, nb, [&](std::size_t i) {
      Vec& b = blocks[i];
      for (std::size_t j = 0; j < dim; ++j)
        b[j] = 0.5 * b[j] + 0.25;  // contraction: stays bounded across iters
    });
    benchmark::DoNotOptimize(blocks.data());
  }
}

void BM_dr_step(benchmark::State& state, Exec ex) {
  const std::size_t n = std::size_t(state.range(0));
  Problem boxes = builtin_boxes(n);
  SolverConfig cfg;
  cfg.algorithm = Algorithm::dr;
  cfg.alpha = 5.0;
  auto solver = make_solver(boxes, cfg, zero_pair(n), ex);
  for (auto _ : state) {
    solver->step();
    benchmark::DoNotOptimize(solver->primal().x.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_sum_blocks, serial, bap::Exec::serial)->Arg(4096);
BENCHMARK_CAPTURE(BM_sum_blocks, openmp, bap::Exec::openmp)->Arg(4096);
BENCHMARK_CAPTURE(BM_for_each_block, serial, bap::Exec::serial)->Arg(64);
BENCHMARK_CAPTURE(BM_for_each_block, openmp, bap::Exec::openmp)->Arg(64);
BENCHMARK_CAPTURE(BM_dr_step, serial, bap::Exec::serial)->Arg(1000);
BENCHMARK_CAPTURE(BM_dr_step, openmp, bap::Exec::openmp)->Arg(1000);

BENCHMARK_MAIN();
