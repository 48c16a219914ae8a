#include "dilatelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

// OpenBLAS spawns its own worker pool inside every LAPACK call, which both
// oversubscribes our OpenMP regions and ties results to an environment
// variable. Pin it to one thread when present.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace dilatelab {

namespace {

const bool blas_single_threaded = [] {
  if (openblas_set_num_threads) openblas_set_num_threads(1);
  return true;
}();

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionMismatch(std::string(what) + ": square matrix required");
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

// Phase-normalize a column in place: largest-magnitude entry (lowest index
// on ties) becomes real positive.
void normalize_column_phase(ComplexMatrix& m, std::size_t col) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double mag = std::abs(m(i, col));
    if (mag > best_mag + 1e-15 * (1.0 + best_mag)) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  cplx ph = m(best, col) / std::abs(m(best, col));
  cplx f = std::conj(ph);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, col) *= f;
}

}  // namespace

EigHermitian eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  const std::size_t n = m.rows();
  EigHermitian out;
  out.vectors = ComplexMatrix(n, n);
  out.values.assign(n, 0.0);
  if (n == 0) return out;
  ComplexMatrix a = hermitize(m);
  lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'L',
                                   static_cast<lapack_int>(n), a.data().data(),
                                   static_cast<lapack_int>(n), out.values.data());
  if (info != 0) throw NumericError("zheevd failed, info=" + std::to_string(info));
  out.vectors = a;
  for (std::size_t j = 0; j < n; ++j) normalize_column_phase(out.vectors, j);
  return out;
}

Svd svd(const ComplexMatrix& m) {
  Svd out;
  const std::size_t r = m.rows(), c = m.cols();
  const std::size_t k = std::min(r, c);
  out.u = ComplexMatrix(r, k);
  out.vh = ComplexMatrix(k, c);
  out.s.assign(k, 0.0);
  if (k == 0) return out;
  ComplexMatrix a = m;
  std::vector<double> superb(k > 1 ? k - 1 : 1);
  lapack_int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S',
                                   static_cast<lapack_int>(r), static_cast<lapack_int>(c),
                                   a.data().data(), static_cast<lapack_int>(c),
                                   out.s.data(), out.u.data().data(),
                                   static_cast<lapack_int>(k), out.vh.data().data(),
                                   static_cast<lapack_int>(c), superb.data());
  if (info != 0) throw NumericError("zgesvd failed, info=" + std::to_string(info));
  return out;
}

std::vector<cplx> eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenvalues");
  const std::size_t n = m.rows();
  std::vector<cplx> w(n);
  if (n == 0) return w;
  ComplexMatrix a = m;
  lapack_int info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N',
                                  static_cast<lapack_int>(n), a.data().data(),
                                  static_cast<lapack_int>(n), w.data(), nullptr,
                                  static_cast<lapack_int>(n), nullptr,
                                  static_cast<lapack_int>(n));
  if (info != 0) throw NumericError("zgeev failed, info=" + std::to_string(info));
  return w;
}

double spectral_radius(const ComplexMatrix& m) {
  double r = 0.0;
  for (const auto& w : eigenvalues(m)) r = std::max(r, std::abs(w));
  return r;
}

double op_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  const Svd d = svd(m);
  return d.s.empty() ? 0.0 : d.s.front();
}

double min_eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "min_eig_hermitian");
  if (m.rows() == 0) return 0.0;
  return eig_hermitian(m).values.front();
}

double rank_cutoff(double sigma_max, const Tolerance& tol) {
  return tol.atol * std::max(sigma_max, 1.0);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "psd_sqrt");
  const double herm_res = op_norm(m - m.adjoint());
  if (herm_res > tol.atol)
    throw NotHermitian("psd_sqrt: ||M - M*|| = " + std::to_string(herm_res));
  EigHermitian eig = eig_hermitian(m);
  const std::size_t n = m.rows();
  std::vector<cplx> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ev = eig.values[i];
    if (ev < -tol.atol)
      throw IndefiniteMatrix("psd_sqrt: eigenvalue " + std::to_string(ev));
    roots[i] = std::sqrt(std::max(ev, 0.0));
  }
  const ComplexMatrix q = eig.vectors;
  return q * ComplexMatrix::diag(roots) * q.adjoint();
}

ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.empty()) return ComplexMatrix(m.rows(), 0);
  Svd d = svd(m);
  const double cutoff = rank_cutoff(d.s.empty() ? 0.0 : d.s.front(), tol);
  std::size_t rank = 0;
  while (rank < d.s.size() && d.s[rank] > cutoff) ++rank;
  ComplexMatrix basis(m.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) basis(i, j) = d.u(i, j);
  for (std::size_t j = 0; j < rank; ++j) normalize_column_phase(basis, j);
  return basis;
}

ComplexMatrix compress(const ComplexMatrix& m, const ComplexMatrix& basis) {
  require_square(m, "compress");
  if (basis.rows() != m.rows()) throw DimensionMismatch("compress: basis rows != matrix side");
  return basis.adjoint() * m * basis;
}

ComplexMatrix lift(const ComplexMatrix& x, const ComplexMatrix& basis) {
  if (x.rows() != basis.cols() || x.cols() != basis.cols())
    throw DimensionMismatch("lift: coordinate matrix does not match basis rank");
  return basis * x * basis.adjoint();
}

PredicateResult is_unitary(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "is_unitary");
  const double res = op_norm(m.adjoint() * m - ComplexMatrix::identity(m.rows()));
  return {res <= tol.atol, res};
}

PredicateResult is_projection(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "is_projection");
  const double res = op_norm(m * m - m) + op_norm(m - m.adjoint());
  return {res <= tol.atol, res};
}

ComplexMatrix pinv(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.empty()) return ComplexMatrix(m.cols(), m.rows());
  Svd d = svd(m);
  const double cutoff = rank_cutoff(d.s.empty() ? 0.0 : d.s.front(), tol);
  const std::size_t k = d.s.size();
  ComplexMatrix sigma_inv(k, k);
  for (std::size_t i = 0; i < k; ++i)
    sigma_inv(i, i) = d.s[i] > cutoff ? cplx(1.0 / d.s[i], 0.0) : cplx(0.0, 0.0);
  return d.vh.adjoint() * sigma_inv * d.u.adjoint();
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve");
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: right-hand side rows");
  const std::size_t n = a.rows();
  if (n == 0) return b;
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, static_cast<lapack_int>(n),
                                  static_cast<lapack_int>(b.cols()), lu.data().data(),
                                  static_cast<lapack_int>(n), ipiv.data(), x.data().data(),
                                  static_cast<lapack_int>(b.cols()));
  if (info != 0) throw SingularResolvent("zgesv failed, info=" + std::to_string(info));
  return x;
}

ComplexMatrix top_singular_vector(const ComplexMatrix& a) {
  if (a.empty()) return ComplexMatrix(a.cols(), 1);
  Svd d = svd(a);
  ComplexMatrix v(a.cols(), 1);
  for (std::size_t j = 0; j < a.cols(); ++j) v(j, 0) = std::conj(d.vh(0, j));
  normalize_column_phase(v, 0);
  return v;
}

}  // namespace dilatelab
