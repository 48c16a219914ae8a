#ifndef DILATELAB_MODELS_HPP
#define DILATELAB_MODELS_HPP

#include <cstdint>
#include <vector>

#include "dilatelab/block_ops.hpp"

namespace dilatelab {

struct CharacteristicSample {
  cplx z;
  ComplexMatrix theta;  // defect-of-T coordinates -> defect-of-T* coordinates
};

// Theta_T(z) = [-T + z D_{T*} (I - z T*)^{-1} D_T] restricted to the defect
// space of T, expressed between the two defect bases.
CharacteristicSample theta(const ComplexMatrix& t, cplx z, const Tolerance& tol);

// Taylor coefficients: Theta_0 = -T compressed, Theta_k = D_{T*} T^{*(k-1)}
// D_T compressed for k >= 1.
std::vector<ComplexMatrix> theta_coeffs(const ComplexMatrix& t, std::size_t count,
                                        const Tolerance& tol);

struct DeltaSample {
  double t = 0.0;
  ComplexMatrix delta;    // PSD square root of I - Theta(e^{it})^* Theta(e^{it})
  std::size_t rank = 0;
  bool singular = false;  // resolvent not invertible at this grid point
};

struct DeltaGrid {
  std::vector<DeltaSample> samples;
  std::size_t max_rank = 0;
  std::size_t failures = 0;
};

DeltaGrid delta_grid(const ComplexMatrix& t, std::size_t grid_size, const Tolerance& tol);

struct ModelSpace {
  std::size_t trunc = 0;       // truncation degree N
  std::size_t ambient_dim = 0;  // N * rank of the defect of T*
  double tail = 0.0;            // ||T^{*N}||
  ComplexMatrix multiplier;     // truncated block Toeplitz M_Theta
  ComplexMatrix projector;      // I - M M^*
  ComplexMatrix basis;          // orthonormal basis of the model space
};

// trunc = 0 selects the smallest N <= 256 with ||T^{*N}|| < 1e-10; a
// contraction failing that criterion is rejected.
ModelSpace model_space(const ComplexMatrix& t, std::size_t trunc, const Tolerance& tol);

// Unitary-equivalence check of the tuple against its compressed-multiplier
// model: containment of W(H) in the model space, the intertwining of each
// compressed multiplier with T_i through W, and the defect identity
// W W^* + M M^* = I on the truncation.
std::vector<ConditionReport> verify_model(const ContractionTuple& t, const DilationData& d,
                                          std::size_t trunc, std::size_t trials,
                                          std::uint64_t seed, const Tolerance& tol);

}  // namespace dilatelab

#endif
