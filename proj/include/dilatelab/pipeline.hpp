#ifndef DILATELAB_PIPELINE_HPP
#define DILATELAB_PIPELINE_HPP

#include <map>

#include "dilatelab/document.hpp"

namespace dilatelab {

struct RunReport {
  std::string input_name;
  std::string pipeline;
  std::uint64_t seed = kDefaultSeed;
  double atol = 1e-10;
  std::vector<ConditionReport> condition_reports;
  nlohmann::json classifications = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  std::map<std::string, double> residual_summary;
  bool pass = false;
  std::optional<bool> expected_match;
};

nlohmann::json report_to_json(const RunReport& r);

struct PipelineOptions {
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> atol_override;  // env/flag; document tolerance wins
  std::size_t degree = 5;               // dilation check |k| <= degree
  std::size_t trunc = 0;                // model truncation, 0 = auto
  std::size_t trials = 32;
  DilationSpace space = DilationSpace::DefectOfT;
  std::string conditions = "main";  // main | coromain | pure | bdf
};

Tolerance resolve_tolerance(const TupleDocument& doc, const PipelineOptions& opts);

RunReport run_validate(const TupleDocument& doc, const PipelineOptions& opts);
RunReport run_extract(const TupleDocument& doc, const PipelineOptions& opts);
RunReport run_verify(const TupleDocument& doc, const PipelineOptions& opts);
RunReport run_dilate(const TupleDocument& doc, const PipelineOptions& opts);
RunReport run_model(const TupleDocument& doc, const PipelineOptions& opts);
RunReport run_classify(const TupleDocument& doc, const PipelineOptions& opts);
RunReport run_demo(const std::string& fixture_id, const PipelineOptions& opts);

TupleDocument run_gen(std::size_t rank, std::size_t n, std::size_t degree,
                      std::uint64_t seed);

}  // namespace dilatelab

#endif
