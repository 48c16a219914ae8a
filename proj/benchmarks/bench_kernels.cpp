// Compares the serial reference kernels against the OpenMP kernels and
// checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "dilatelab/matrix.hpp"
#include "dilatelab/models.hpp"

using namespace dilatelab;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (auto& v : m.data()) v = cplx(g(rng), g(rng));
  return m;
}

template <typename Fn>
double time_ms(Fn&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  std::printf("threads: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

  for (std::size_t n : {64, 128, 256, 384, 512}) {
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix b = random_matrix(n, rng);
    const int reps = n <= 128 ? 20 : 5;
    ComplexMatrix cs, cp;
    const double ts = time_ms([&] { cs = kernels::matmul_serial(a, b); }, reps);
    const double tp = time_ms([&] { cp = kernels::matmul_parallel(a, b); }, reps);
    if (!(cs == cp)) {
      std::printf("matmul %zu: MISMATCH between serial and parallel results\n", n);
      return 1;
    }
    std::printf("matmul %-21zu %12.3f %12.3f %8.2fx\n", n, ts, tp, ts / tp);
  }

  {
    // Defect-kernel grid of a random strict contraction.
    const std::size_t n = 48;
    ComplexMatrix t = random_matrix(n, rng);
    t *= cplx(0.5 / op_norm(t), 0.0);
    const Tolerance tol;
    const int reps = 3;
    DeltaGrid g1, g2;
    const double tp = time_ms([&] { g1 = delta_grid(t, 64, tol); }, reps);
    double ts;
    {
      const int saved = omp_get_max_threads();
      omp_set_num_threads(1);
      ts = time_ms([&] { g2 = delta_grid(t, 64, tol); }, reps);
      omp_set_num_threads(saved);
    }
    bool same = g1.samples.size() == g2.samples.size();
    for (std::size_t i = 0; same && i < g1.samples.size(); ++i)
      same = g1.samples[i].delta == g2.samples[i].delta;
    if (!same) {
      std::printf("delta_grid: MISMATCH between 1-thread and n-thread results\n");
      return 1;
    }
    std::printf("delta_grid %-17s %12.3f %12.3f %8.2fx\n", "48x48, 64 pts", ts, tp, ts / tp);
  }

  std::printf("\nall parallel kernels agree with the serial reference\n");
  return 0;
}
