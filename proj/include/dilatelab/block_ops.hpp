#ifndef DILATELAB_BLOCK_OPS_HPP
#define DILATELAB_BLOCK_OPS_HPP

#include <cstdint>
#include <vector>

#include "dilatelab/dilation_data.hpp"

namespace dilatelab {

// Element of H + D + D + ... with finitely many nonzero blocks; the exact
// carrier for the infinite Schaffer and Hardy operators. Trailing all-zero
// blocks are trimmed (canonical form).
struct BlockVector {
  ComplexMatrix head;               // dim x 1
  std::vector<ComplexMatrix> tail;  // rank x 1 each

  void trim();
  std::size_t support() const { return tail.size(); }
};

BlockVector block_vector(const ComplexMatrix& head, std::vector<ComplexMatrix> tail = {});
BlockVector operator+(const BlockVector& a, const BlockVector& b);
BlockVector operator-(const BlockVector& a, const BlockVector& b);
cplx inner(const BlockVector& a, const BlockVector& b);
double norm(const BlockVector& a);

// One operator of Schaffer type: corner acts H -> H, feed H -> D, diag and
// sub repeat down the l^2(D) part. Application is exact; support grows by
// at most one block.
struct SchafferOperator {
  ComplexMatrix corner;  // dim x dim
  ComplexMatrix feed;    // rank x dim
  ComplexMatrix diag;    // rank x rank
  ComplexMatrix sub;     // rank x rank
};

BlockVector apply(const SchafferOperator& op, const BlockVector& x);
BlockVector apply_adjoint(const SchafferOperator& op, const BlockVector& x);

struct SchafferDilation {
  std::vector<SchafferOperator> v;  // the V_i
  SchafferOperator product;         // the Schaffer dilation V of T
  std::size_t rank = 0;
};

// Assembles V_i from (T_i, P_i U_i^* D_T, P_i^perp U_i^*, P_i U_i^*) in the
// defect basis. Conditions (1)-(4) are enforced first.
SchafferDilation build_schaffer(const ContractionTuple& t, const DilationData& d,
                                const Tolerance& tol);

struct DilationCheckOptions {
  std::size_t max_total_degree = 5;
  std::size_t trials = 32;
  std::uint64_t seed = 0;
  bool check_product = true;
  double threshold = 0.0;  // 0 means use tol.atol
};

// Checks the compression identity at every multi-index |k| <= K, isometry
// and pairwise commutation on random finitely supported vectors, and
// (optionally) agreement of the product with the Schaffer dilation of T.
std::vector<ConditionReport> verify_isometric_dilation(const ContractionTuple& t,
                                                       const SchafferDilation& dil,
                                                       const DilationCheckOptions& opts,
                                                       const Tolerance& tol);

// Multiplier with linear analytic symbol phi(z) = c0 + z c1 on the
// truncated vector Hardy space.
struct HardyMultiplier {
  ComplexMatrix c0;
  ComplexMatrix c1;
};

// Coefficient sequences are vectors of rank x 1 blocks.
using CoeffSeq = std::vector<ComplexMatrix>;

CoeffSeq apply_multiplier(const HardyMultiplier& m, const CoeffSeq& f);
// Adjoint action on a truncated sequence: coefficients beyond the
// truncation are treated as zero (the tail error).
CoeffSeq apply_multiplier_adjoint(const HardyMultiplier& m, const CoeffSeq& f);

// phi_i = U_i P_i^perp + z U_i P_i on the defect-of-T-adjoint space.
// Conditions (1)-(3) of the pure case are enforced.
std::vector<HardyMultiplier> build_pure_dilation(const ContractionTuple& t,
                                                 const DilationData& d, const Tolerance& tol);

struct EmbeddingResult {
  CoeffSeq coeffs;          // first N coefficients of W h in the defect basis
  double tail_bound = 0.0;  // ||T^{*N} h||
  bool degenerate = false;  // empty defect of T^* (T unitary-like)
};

// First N coefficients D_{T^*} T^{*k} h of the canonical embedding of H
// into the vector Hardy space over the defect of T^*.
// ||W_N h||^2 = ||h||^2 - tail_bound^2 exactly.
EmbeddingResult embed_w(const ComplexMatrix& t, const ComplexMatrix& h, std::size_t count,
                        const Tolerance& tol);

// Checks V_i^*(W_N h) = W_N(T_i^* h) within a tail-dominated bound.
std::vector<ConditionReport> verify_intertwining(const std::vector<HardyMultiplier>& vs,
                                                 const ContractionTuple& t, std::size_t count,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const Tolerance& tol);

// Co-isometric extension Z_i: stored as the Schaffer operator X_i of the
// adjoint tuple, Z_i = X_i^*. H is invariant for Z_i and Z_i|_H = T_i.
struct CoisometricExtension {
  std::vector<SchafferOperator> x;  // X_i, so that Z_i = X_i^*
  std::size_t rank = 0;
};

CoisometricExtension build_coisometric_extension(const ContractionTuple& t,
                                                 const DilationData& d, const Tolerance& tol);

// Action of Z_i on a finitely supported vector.
BlockVector apply_coisometry(const CoisometricExtension& z, std::size_t i,
                             const BlockVector& x);

}  // namespace dilatelab

#endif
