#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Parallel kernels used by the block solvers. Both paths run the same
// floating-point operations in the same order, so OpenMP results are
// bit-identical to the serial reference for any thread count: block updates
// touch disjoint state, and reductions accumulate each output coordinate
// over blocks in fixed ascending order.

namespace bap {

enum class Exec { serial, openmp };

// fn(i) for i in [0, nblocks); fn(i) must write only block-i state.
template <class Fn>
void for_each_block(Exec ex, std::size_t nblocks, Fn&& fn) {
#ifdef _OPENMP
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(nblocks); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)ex;
  for (std::size_t i = 0; i < nblocks; ++i) fn(i);
}

// out[j] = sum_i get(i)[j]; get(i) -> const Vec&. Parallel over j, serial in
// ascending i per coordinate, hence the same rounding on every path.
template <class Get>
void sum_blocks(Exec ex, std::size_t nblocks, std::size_t dim, Get&& get,
                std::vector<double>& out) {
  out.assign(dim, 0.0);
  auto column = [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nblocks; ++i) acc += get(i)[j];
    out[j] = acc;
  };
#ifdef _OPENMP
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < static_cast<long long>(dim); ++j)
      column(static_cast<std::size_t>(j));
    return;
  }
#endif
  (void)ex;
  for (std::size_t j = 0; j < dim; ++j) column(j);
}

}  // namespace bap
