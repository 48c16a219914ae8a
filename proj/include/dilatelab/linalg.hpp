#ifndef DILATELAB_LINALG_HPP
#define DILATELAB_LINALG_HPP

#include <vector>

#include "dilatelab/matrix.hpp"

namespace dilatelab {

struct EigHermitian {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, phase-normalized
};

struct Svd {
  ComplexMatrix u;        // left singular vectors, columns
  std::vector<double> s;  // descending
  ComplexMatrix vh;       // right singular vectors, rows (V^H)
};

// Hermitian eigendecomposition of (M + M^*)/2. Eigenvectors are
// phase-normalized: the largest-magnitude component of each is real positive.
EigHermitian eig_hermitian(const ComplexMatrix& m);

Svd svd(const ComplexMatrix& m);

// Eigenvalues of a general square matrix (for spectral radius).
std::vector<cplx> eigenvalues(const ComplexMatrix& m);
double spectral_radius(const ComplexMatrix& m);

// Largest singular value; 0 for empty matrices.
double op_norm(const ComplexMatrix& m);

double min_eig_hermitian(const ComplexMatrix& m);

// Singular values below atol * max(sigma_max, 1) count as zero.
double rank_cutoff(double sigma_max, const Tolerance& tol);

// Hermitian PSD square root. Inputs declared Hermitian are symmetrized
// before decomposition; eigenvalues in [-atol, 0) are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerance& tol);

// Orthonormal basis (columns) of the numerical range of M at the
// singular-value cutoff. Deterministic: singular vectors ordered by
// descending singular value, phases normalized. The zero matrix gives a
// 0-column basis.
ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol);

// B^* M B for B with orthonormal columns.
ComplexMatrix compress(const ComplexMatrix& m, const ComplexMatrix& basis);

// B X B^*: the lift of an operator expressed in basis coordinates back to
// the ambient space.
ComplexMatrix lift(const ComplexMatrix& x, const ComplexMatrix& basis);

struct PredicateResult {
  bool ok = false;
  double residual = 0.0;
};

PredicateResult is_unitary(const ComplexMatrix& m, const Tolerance& tol);
PredicateResult is_projection(const ComplexMatrix& m, const Tolerance& tol);

// Moore-Penrose pseudo-inverse with singular-value cutoff.
ComplexMatrix pinv(const ComplexMatrix& m, const Tolerance& tol);

// Solution of A X = B for square invertible A.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

// Unit vector maximizing ||(A)v|| (top right singular vector); empty for
// zero/empty A.
ComplexMatrix top_singular_vector(const ComplexMatrix& a);

}  // namespace dilatelab

#endif
