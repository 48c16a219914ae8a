#ifndef DILATELAB_DILATION_DATA_HPP
#define DILATELAB_DILATION_DATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dilatelab/tuples.hpp"

namespace dilatelab {

enum class DilationSpace {
  DefectOfT,         // candidates live on the defect space of T
  DefectOfTAdjoint,  // candidates live on the defect space of T^*
};

const char* to_string(DilationSpace space);

// Candidate tuple data (U_i, P_i, F_i, F_i') on a defect space, expressed
// in the orthonormal basis `basis` of that space. Candidates are plain
// matrices: nothing here is asserted unitary or idempotent, verification
// decides validity.
struct DilationData {
  DilationSpace space = DilationSpace::DefectOfT;
  std::size_t rank = 0;
  ComplexMatrix d;      // defect operator on the ambient space (dim x dim)
  ComplexMatrix basis;  // dim x rank
  std::vector<ComplexMatrix> u;   // rank x rank
  std::vector<ComplexMatrix> p;
  std::vector<ComplexMatrix> f;   // F_i   (= P_i^perp U_i^* for valid data)
  std::vector<ComplexMatrix> fp;  // F_i'  (= U_i P_i for valid data)
};

struct ConditionReport {
  std::string condition_id;
  double residual = 0.0;
  double threshold = 0.0;  // passes <=> residual <= threshold
  bool passes = false;
  bool informational = false;
  ComplexMatrix witness;  // unit vector maximizing the residual; may be empty
};

bool all_pass(const std::vector<ConditionReport>& reports);
double max_residual(const std::vector<ConditionReport>& reports);
const ConditionReport* find_condition(const std::vector<ConditionReport>& reports,
                                      const std::string& prefix);

// The unique candidates determined by the factorization identities
// D_{T_i'}^2 T_i = D F_i D and D_{T_i}^2 T_i' = D F_i' D, solved in
// least-squares sense on the defect space; U_i = F_i^* + F_i',
// P_i = F_i'^* F_i'. For space = DefectOfTAdjoint the same formulas are
// applied to the adjoint tuple.
DilationData extract_candidates(const ContractionTuple& t, DilationSpace space,
                                const Tolerance& tol);

// Wrap externally supplied candidates (U_i, P_i), given in the coordinates
// of the defect basis of the requested space; F_i, F_i' are filled in from
// their defining expressions.
DilationData data_from_candidates(const ContractionTuple& t, DilationSpace space,
                                  std::vector<ComplexMatrix> u,
                                  std::vector<ComplexMatrix> p, const Tolerance& tol);

// Conditions (1)-(5) plus well-formedness (unitarity, projections,
// commuting unitaries, product identity, factor consistency) on the defect
// space of T. Every condition instance is reported, no early exit.
std::vector<ConditionReport> verify_main(const ContractionTuple& t, const DilationData& d,
                                         const Tolerance& tol);

// Conditions (1)-(4) only: membership check for U^n.
std::vector<ConditionReport> verify_coromain(const ContractionTuple& t,
                                             const DilationData& d, const Tolerance& tol);

// The C.0 variant on the defect space of T^*: conditions (1)-(3) of the
// adjoint identities plus the telescoping-sum condition (4).
std::vector<ConditionReport> verify_pure(const ContractionTuple& t, const DilationData& d,
                                         const Tolerance& tol);

// Model n-isometry conditions for raw (U_i, P_i) data.
std::vector<ConditionReport> verify_bdf(const std::vector<ComplexMatrix>& u,
                                        const std::vector<ComplexMatrix>& p,
                                        const Tolerance& tol);

struct SuppliedCandidates {
  std::vector<ComplexMatrix> u;
  std::vector<ComplexMatrix> p;
};

struct Classification {
  bool in_s_n = false;
  bool in_u_n = false;
  DilationData extracted;  // defect-of-T side
  std::vector<ConditionReport> main_reports;
  std::vector<ConditionReport> coromain_reports;
  std::optional<std::vector<ConditionReport>> supplied_main;
  std::optional<std::vector<ConditionReport>> supplied_coromain;
  std::optional<DilationData> extracted_adjoint;
  std::optional<std::vector<ConditionReport>> pure_reports;
  SzegoReport szego;
  BrehmerReport brehmer;
  C0Report c0;
};

// Membership is decided by the extracted candidates; supplied candidates,
// when present, are verified as well and can also establish membership.
Classification classify(const ContractionTuple& t, const Tolerance& tol,
                        const std::optional<SuppliedCandidates>& supplied = std::nullopt);

struct ModelData {
  std::vector<ComplexMatrix> u;
  std::vector<ComplexMatrix> p;
};

// Simultaneously diagonal unitaries with product I and a diagonal 0/1
// partition of the identity; passes verify_bdf by construction and is
// deterministic in the seed.
ModelData gen_diagonal_model_data(std::size_t rank, std::size_t n, std::uint64_t seed);

// Compression of the model n-isometry M_{U_i P_i^perp + z U_i P_i} to the
// degree-< m polynomial truncation (dimension m * rank). The product of the
// returned tuple is the truncated shift, hence nilpotent.
ContractionTuple gen_compressed_tuple(const ModelData& data, std::size_t degree,
                                      const Tolerance& tol);

}  // namespace dilatelab

#endif
