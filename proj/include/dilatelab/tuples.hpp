#ifndef DILATELAB_TUPLES_HPP
#define DILATELAB_TUPLES_HPP

#include <cstdint>
#include <vector>

#include "dilatelab/linalg.hpp"
#include "dilatelab/matrix.hpp"

namespace dilatelab {

enum class DefectSide {
  Column,  // D_X from I - X^*X
  Row,     // D_{X^*} from I - XX^*
};

struct DefectData {
  ComplexMatrix d;      // Hermitian PSD defect operator on the ambient space
  ComplexMatrix basis;  // orthonormal columns spanning its range at cutoff
  std::size_t rank = 0;
  // Kept singular values of d (descending). The cutoff is applied to the
  // eigenvalues of I - X^*X, not to their square roots: roundoff of scale
  // eps in the Gram matrix becomes sqrt(eps) in d and would otherwise read
  // as spurious rank.
  std::vector<double> sigma;
};

// Pseudo-inverse of the defect operator restricted to its numerical range.
ComplexMatrix defect_pinv(const DefectData& dd);

DefectData defect(const ComplexMatrix& x, DefectSide side, const Tolerance& tol);

// Validated commuting tuple (T_1,...,T_n) of contractions with cached
// product T = T_1...T_n and coproducts T_i' = prod_{j != i} T_j, both in
// index order.
class ContractionTuple {
public:
  std::size_t n() const { return ops_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const ComplexMatrix& op(std::size_t i) const { return ops_[i]; }
  const ComplexMatrix& product() const { return product_; }
  const ComplexMatrix& coproduct(std::size_t i) const { return coproducts_[i]; }
  const Tolerance& tol() const { return tol_; }

  friend ContractionTuple make_tuple(std::vector<ComplexMatrix> matrices, const Tolerance& tol);

private:
  ContractionTuple() = default;
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> ops_;
  ComplexMatrix product_;
  std::vector<ComplexMatrix> coproducts_;
  Tolerance tol_;
};

ContractionTuple make_tuple(std::vector<ComplexMatrix> matrices, const Tolerance& tol);

// The tuple (T_1^*,...,T_n^*); its product equals T^* up to the tuple's
// commutation residual.
ContractionTuple adjoint_tuple(const ContractionTuple& t);

struct SzegoReport {
  std::vector<std::size_t> subset;  // 0-based indices
  ComplexMatrix defect_sum;         // I - sum_{i in subset} T_i T_i^*
  double min_eig = 0.0;
  bool passes = false;
};

// First-order Szego-type positivity of the sub-tuple: reports the minimum
// eigenvalue of I - sum_{i in subset} T_i T_i^*.
SzegoReport szego_check(const ContractionTuple& t, const std::vector<std::size_t>& subset);

struct BrehmerEntry {
  std::uint32_t mask = 0;  // bit i set <=> index i in G
  double min_eig = 0.0;
  bool passes = false;
};

struct BrehmerReport {
  std::vector<BrehmerEntry> entries;  // every nonempty G, ascending mask
  double worst_min_eig = 0.0;
  bool passes = false;
};

// Brehmer positivity: min eigenvalue of sum_{F subset of G} (-1)^{|F|}
// T_F^* T_F for every nonempty G. Capped at n <= 16 (2^n blow-up).
BrehmerReport brehmer_check(const ContractionTuple& t);

struct C0Report {
  double spectral_radius = 0.0;
  std::vector<double> norm_decay;  // ||T^{*k}|| for k = 1..max_power
  bool is_c0 = false;
};

// At finite dimension T is C.0 iff its spectral radius is < 1; the norm
// decay is reported for diagnostics only.
C0Report c0_diagnostic(const ComplexMatrix& t, std::size_t max_power, const Tolerance& tol);

}  // namespace dilatelab

#endif
