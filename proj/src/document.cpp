#include "dilatelab/document.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace dilatelab {

namespace {

std::vector<ComplexMatrix> parse_matrix_list(const nlohmann::json& j, std::size_t count,
                                             std::size_t dim, const std::string& pointer) {
  if (!j.is_array() || j.size() != count)
    throw SchemaError(pointer, "expected an array of " + std::to_string(count) + " matrices");
  std::vector<ComplexMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(matrix_from_json(j[i], dim, dim, pointer + "/" + std::to_string(i)));
  return out;
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& v : m.data()) entries.push_back({v.real(), v.imag()});
  return entries;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                               const std::string& pointer) {
  if (!j.is_array() || j.size() != rows * cols)
    throw SchemaError(pointer, "expected " + std::to_string(rows * cols) +
                                   " [re, im] entries in row-major order");
  ComplexMatrix m(rows, cols);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw SchemaError(pointer + "/" + std::to_string(k), "entry must be [re, im]");
    m.data()[k] = cplx(e[0].get<double>(), e[1].get<double>());
  }
  if (!m.all_finite()) throw SchemaError(pointer, "non-finite entry");
  return m;
}

TupleDocument parse_tuple_document(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("", "document must be a JSON object");
  if (j.contains("schema") && j["schema"] != kTupleSchema)
    throw SchemaError("/schema", "unsupported schema, expected " + std::string(kTupleSchema));
  TupleDocument doc;
  if (!j.contains("name") || !j["name"].is_string())
    throw SchemaError("/name", "missing string field");
  doc.name = j["name"].get<std::string>();
  const auto is_count = [](const nlohmann::json& v) {
    return v.is_number_integer() && v.get<long long>() >= 0;
  };
  if (!j.contains("n") || !is_count(j["n"]))
    throw SchemaError("/n", "missing non-negative integer field");
  if (!j.contains("dim") || !is_count(j["dim"]))
    throw SchemaError("/dim", "missing non-negative integer field");
  doc.n = j["n"].get<std::size_t>();
  doc.dim = j["dim"].get<std::size_t>();
  if (doc.n < 1) throw SchemaError("/n", "need n >= 1");
  if (doc.dim < 1) throw SchemaError("/dim", "need dim >= 1");

  if (j.contains("matrices"))
    doc.matrices = parse_matrix_list(j["matrices"], doc.n, doc.dim, "/matrices");
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0.0))
      throw SchemaError("/tolerance", "must be a positive number");
    doc.tolerance = j["tolerance"].get<double>();
  }
  if (j.contains("expected")) {
    if (!j["expected"].is_object()) throw SchemaError("/expected", "must be an object");
    doc.expected = j["expected"];
  }
  if (j.contains("unitaries"))
    doc.unitaries = parse_matrix_list(j["unitaries"], doc.n, doc.dim, "/unitaries");
  if (j.contains("projections"))
    doc.projections = parse_matrix_list(j["projections"], doc.n, doc.dim, "/projections");
  if (doc.unitaries.has_value() != doc.projections.has_value())
    throw SchemaError("/unitaries", "unitaries and projections must come together");
  if (doc.matrices.empty() && !doc.unitaries)
    throw SchemaError("/matrices", "need matrices or unitaries+projections");
  return doc;
}

nlohmann::json to_json(const TupleDocument& doc) {
  nlohmann::json j;
  j["schema"] = kTupleSchema;
  j["name"] = doc.name;
  j["n"] = doc.n;
  j["dim"] = doc.dim;
  if (!doc.matrices.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : doc.matrices) arr.push_back(matrix_to_json(m));
    j["matrices"] = arr;
  }
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  if (!doc.expected.empty()) j["expected"] = doc.expected;
  if (doc.unitaries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : *doc.unitaries) arr.push_back(matrix_to_json(m));
    j["unitaries"] = arr;
    arr = nlohmann::json::array();
    for (const auto& m : *doc.projections) arr.push_back(matrix_to_json(m));
    j["projections"] = arr;
  }
  return j;
}

TupleDocument load_tuple_document(const std::string& path) {
  nlohmann::json j;
  try {
    if (path == "-") {
      j = nlohmann::json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw SchemaError("", "cannot open " + path);
      j = nlohmann::json::parse(in);
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_tuple_document(j);
}

nlohmann::json condition_to_json(const ConditionReport& r) {
  nlohmann::json j;
  j["condition_id"] = r.condition_id;
  j["residual"] = r.residual;
  j["threshold"] = r.threshold;
  j["passes"] = r.passes;
  if (r.informational) j["informational"] = true;
  if (!r.witness.empty()) j["witness"] = matrix_to_json(r.witness);
  return j;
}

}  // namespace dilatelab
