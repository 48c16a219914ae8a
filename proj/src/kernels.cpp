#include "dilatelab/matrix.hpp"

namespace dilatelab::kernels {

void matmul_serial(const cplx* a, const cplx* b, cplx* c,
                   std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc(0.0, 0.0);
      const cplx* arow = a + i * k;
      for (std::size_t l = 0; l < k; ++l) acc += arow[l] * b[l * n + j];
      c[i * n + j] = acc;
    }
  }
}

void matmul_parallel(const cplx* a, const cplx* b, cplx* c,
                     std::size_t m, std::size_t k, std::size_t n) {
  const long long mm = static_cast<long long>(m);
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for collapse(2) schedule(static)
  for (long long i = 0; i < mm; ++i) {
    for (long long j = 0; j < nn; ++j) {
      cplx acc(0.0, 0.0);
      const cplx* arow = a + static_cast<std::size_t>(i) * k;
      for (std::size_t l = 0; l < k; ++l) acc += arow[l] * b[l * n + j];
      c[static_cast<std::size_t>(i) * n + j] = acc;
    }
  }
}

static void check_shapes(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
}

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_shapes(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  if (!c.empty() && a.cols() > 0)
    matmul_serial(a.data().data(), b.data().data(), c.data().data(),
                  a.rows(), a.cols(), b.cols());
  return c;
}

ComplexMatrix matmul_parallel(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_shapes(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  if (!c.empty() && a.cols() > 0)
    matmul_parallel(a.data().data(), b.data().data(), c.data().data(),
                    a.rows(), a.cols(), b.cols());
  return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_shapes(a, b);
  const std::size_t flops = a.rows() * a.cols() * b.cols();
  if (flops >= kParallelFlopThreshold) return matmul_parallel(a, b);
  return matmul_serial(a, b);
}

}  // namespace dilatelab::kernels
