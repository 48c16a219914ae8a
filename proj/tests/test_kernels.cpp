#include <doctest.h>

#include "test_helpers.hpp"

using namespace dilatelab;
using namespace dilatelab::testing;

TEST_CASE("matmul matches a hand-computed product") {
  const ComplexMatrix a{{cplx(1, 1), cplx(2, 0)}, {cplx(0, -1), cplx(3, 0)}};
  const ComplexMatrix b{{cplx(1, 0), cplx(0, 2)}, {cplx(1, -1), cplx(0, 0)}};
  const ComplexMatrix c = a * b;
  CHECK(c(0, 0) == cplx(3, -1));  // (1+i) + 2(1-i)
  CHECK(c(0, 1) == cplx(-2, 2));  // (1+i)*2i
  CHECK(c(1, 0) == cplx(3, -4));
  CHECK(c(1, 1) == cplx(2, 0));
}

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
  std::mt19937_64 rng(42);
  for (std::size_t n : {3, 17, 64, 130}) {
    const ComplexMatrix a = random_matrix(n, n + 1, rng);
    const ComplexMatrix b = random_matrix(n + 1, n, rng);
    CHECK(kernels::matmul_serial(a, b) == kernels::matmul_parallel(a, b));
    CHECK(kernels::matmul(a, b) == kernels::matmul_serial(a, b));
  }
}

TEST_CASE("matmul handles empty and degenerate shapes") {
  const ComplexMatrix a(0, 3), b(3, 2), c(2, 0);
  CHECK((a * b).rows() == 0);
  CHECK((b * c).cols() == 0);
  const ComplexMatrix d(3, 0), e(0, 4);
  const ComplexMatrix z = d * e;  // inner dimension 0: zero matrix
  CHECK(z.rows() == 3);
  CHECK(z.cols() == 4);
  CHECK(z.max_abs() == 0.0);
  CHECK_THROWS_AS(b * b, DimensionMismatch);
}
