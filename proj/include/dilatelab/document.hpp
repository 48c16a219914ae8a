#ifndef DILATELAB_DOCUMENT_HPP
#define DILATELAB_DOCUMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dilatelab/dilation_data.hpp"

namespace dilatelab {

inline constexpr const char* kTupleSchema = "dilatelab/tuple-v1";
inline constexpr const char* kReportSchema = "dilatelab/report-v1";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240915;

// Input document: a named tuple of square complex matrices, with an
// optional tolerance, optional expected verdicts, and optional candidate
// (U_i, P_i) data in defect-basis coordinates.
struct TupleDocument {
  std::string name;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<ComplexMatrix> matrices;
  std::optional<double> tolerance;
  nlohmann::json expected = nlohmann::json::object();
  std::optional<std::vector<ComplexMatrix>> unitaries;
  std::optional<std::vector<ComplexMatrix>> projections;
};

// Complex scalars are serialized as [re, im] pairs; a matrix is the
// row-major flat list of its entries.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                               const std::string& pointer);

TupleDocument parse_tuple_document(const nlohmann::json& j);
nlohmann::json to_json(const TupleDocument& doc);

TupleDocument load_tuple_document(const std::string& path);  // "-" reads stdin

nlohmann::json condition_to_json(const ConditionReport& r);

}  // namespace dilatelab

#endif
