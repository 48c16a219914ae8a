#include "dilatelab/pipeline.hpp"

#include <cmath>

#include "dilatelab/block_ops.hpp"
#include "dilatelab/fixtures.hpp"
#include "dilatelab/models.hpp"

namespace dilatelab {

namespace {

void fold_reports(RunReport& rep, const std::string& stage,
                  const std::vector<ConditionReport>& reports) {
  double worst = 0.0;
  for (const auto& r : reports) {
    rep.condition_reports.push_back(r);
    if (!r.informational) worst = std::max(worst, r.residual);
  }
  rep.residual_summary[stage] = worst;
}

ConditionReport named_check(std::string id, double residual, double threshold,
                            bool informational = false) {
  ConditionReport c;
  c.condition_id = std::move(id);
  c.residual = residual;
  c.threshold = threshold;
  c.passes = residual <= threshold;
  c.informational = informational;
  return c;
}

bool reports_pass(const RunReport& rep) {
  for (const auto& r : rep.condition_reports)
    if (!r.informational && !r.passes) return false;
  return true;
}

ContractionTuple tuple_of(const TupleDocument& doc, const Tolerance& tol) {
  if (doc.matrices.empty())
    throw InputError(doc.name + ": document carries no contraction tuple");
  return make_tuple(doc.matrices, tol);
}

std::optional<SuppliedCandidates> supplied_of(const TupleDocument& doc) {
  if (!doc.unitaries) return std::nullopt;
  return SuppliedCandidates{*doc.unitaries, *doc.projections};
}

nlohmann::json dilation_data_to_json(const DilationData& d) {
  nlohmann::json j;
  j["space"] = to_string(d.space);
  j["rank"] = d.rank;
  j["basis"] = matrix_to_json(d.basis);
  nlohmann::json u = nlohmann::json::array(), p = nlohmann::json::array(),
                 f = nlohmann::json::array(), fp = nlohmann::json::array();
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    u.push_back(matrix_to_json(d.u[i]));
    p.push_back(matrix_to_json(d.p[i]));
    f.push_back(matrix_to_json(d.f[i]));
    fp.push_back(matrix_to_json(d.fp[i]));
  }
  j["U"] = u;
  j["P"] = p;
  j["F"] = f;
  j["Fp"] = fp;
  return j;
}

nlohmann::json classification_to_json(const Classification& c) {
  nlohmann::json j;
  j["in_S_n"] = c.in_s_n;
  j["in_U_n"] = c.in_u_n;
  j["szego"] = {{"min_eig", c.szego.min_eig}, {"passes", c.szego.passes}};
  j["brehmer"] = {{"worst_min_eig", c.brehmer.worst_min_eig}, {"passes", c.brehmer.passes}};
  j["c0"] = {{"spectral_radius", c.c0.spectral_radius}, {"is_c0", c.c0.is_c0}};
  return j;
}

DilationData data_for_space(const ContractionTuple& t, const TupleDocument& doc,
                            DilationSpace space, const Tolerance& tol) {
  const auto supplied = supplied_of(doc);
  if (supplied) return data_from_candidates(t, space, supplied->u, supplied->p, tol);
  return extract_candidates(t, space, tol);
}

bool check_expected(const TupleDocument& doc, const Classification& c, RunReport& rep) {
  if (doc.expected.empty()) return true;
  bool ok = true;
  nlohmann::json got = nlohmann::json::object();
  for (const auto& [key, want] : doc.expected.items()) {
    nlohmann::json have;
    if (key == "in_S_n")
      have = c.in_s_n;
    else if (key == "in_U_n")
      have = c.in_u_n;
    else if (key == "szego_passes")
      have = c.szego.passes;
    else if (key == "brehmer_passes")
      have = c.brehmer.passes;
    else if (key == "is_c0")
      have = c.c0.is_c0;
    else
      continue;
    got[key] = have;
    ok = ok && (have == want);
  }
  rep.details["expected"] = doc.expected;
  rep.details["observed"] = got;
  return ok;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["input_name"] = r.input_name;
  j["pipeline"] = r.pipeline;
  j["seed"] = r.seed;
  j["atol"] = r.atol;
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& c : r.condition_reports) conds.push_back(condition_to_json(c));
  j["condition_reports"] = conds;
  if (!r.classifications.empty()) j["classifications"] = r.classifications;
  if (!r.details.empty()) j["details"] = r.details;
  j["residual_summary"] = r.residual_summary;
  j["verdict"] = r.pass ? "pass" : "fail";
  if (r.expected_match) j["expected_match"] = *r.expected_match;
  return j;
}

Tolerance resolve_tolerance(const TupleDocument& doc, const PipelineOptions& opts) {
  if (doc.tolerance) return Tolerance(*doc.tolerance);
  if (opts.atol_override) return Tolerance(*opts.atol_override);
  return Tolerance();
}

RunReport run_validate(const TupleDocument& doc, const PipelineOptions& opts) {
  const Tolerance tol = resolve_tolerance(doc, opts);
  RunReport rep;
  rep.input_name = doc.name;
  rep.pipeline = "validate";
  rep.seed = opts.seed;
  rep.atol = tol.atol;
  std::vector<ConditionReport> checks;
  for (std::size_t i = 0; i < doc.matrices.size(); ++i)
    checks.push_back(named_check("contractive-" + std::to_string(i + 1),
                                 std::max(op_norm(doc.matrices[i]) - 1.0, 0.0), tol.atol));
  for (std::size_t i = 0; i < doc.matrices.size(); ++i)
    for (std::size_t j = i + 1; j < doc.matrices.size(); ++j)
      checks.push_back(named_check(
          "commuting-" + std::to_string(i + 1) + "-" + std::to_string(j + 1),
          op_norm(doc.matrices[i] * doc.matrices[j] - doc.matrices[j] * doc.matrices[i]),
          tol.atol));
  fold_reports(rep, "validate", checks);
  if (reports_pass(rep) && !doc.matrices.empty()) {
    const ContractionTuple t = tuple_of(doc, tol);
    std::vector<ConditionReport> consistency;
    for (std::size_t i = 0; i < t.n(); ++i)
      consistency.push_back(named_check(
          "product-consistency-" + std::to_string(i + 1),
          op_norm(t.product() - t.op(i) * t.coproduct(i)),
          static_cast<double>(t.n()) * tol.atol));
    fold_reports(rep, "product", consistency);
  }
  rep.pass = reports_pass(rep);
  return rep;
}

RunReport run_extract(const TupleDocument& doc, const PipelineOptions& opts) {
  const Tolerance tol = resolve_tolerance(doc, opts);
  RunReport rep;
  rep.input_name = doc.name;
  rep.pipeline = "extract";
  rep.seed = opts.seed;
  rep.atol = tol.atol;
  const ContractionTuple t = tuple_of(doc, tol);
  const DilationData d = extract_candidates(t, opts.space, tol);
  rep.details["dilation_data"] = dilation_data_to_json(d);
  if (d.rank == 0)
    rep.condition_reports.push_back(named_check("empty-defect", 0.0, tol.atol, true));
  // Candidates are returned without asserting validity; the residuals are
  // informational here, verification is a separate step.
  const ComplexMatrix eye = ComplexMatrix::identity(d.rank);
  std::vector<ConditionReport> info;
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    info.push_back(named_check("unitary-" + std::to_string(i + 1),
                               op_norm(d.u[i].adjoint() * d.u[i] - eye), tol.atol, true));
    info.push_back(named_check(
        "projection-" + std::to_string(i + 1),
        op_norm(d.p[i] * d.p[i] - d.p[i]) + op_norm(d.p[i] - d.p[i].adjoint()), tol.atol,
        true));
  }
  fold_reports(rep, "extract", info);
  rep.pass = true;
  return rep;
}

RunReport run_verify(const TupleDocument& doc, const PipelineOptions& opts) {
  const Tolerance tol = resolve_tolerance(doc, opts);
  RunReport rep;
  rep.input_name = doc.name;
  rep.pipeline = "verify-" + opts.conditions;
  rep.seed = opts.seed;
  rep.atol = tol.atol;
  if (opts.conditions == "bdf") {
    if (!doc.unitaries)
      throw InputError(doc.name + ": bdf verification needs unitaries and projections");
    fold_reports(rep, "bdf", verify_bdf(*doc.unitaries, *doc.projections, tol));
    rep.pass = reports_pass(rep);
    return rep;
  }
  const ContractionTuple t = tuple_of(doc, tol);
  if (opts.conditions == "main" || opts.conditions == "coromain") {
    // With --space defect-of-T-adjoint the same condition set is checked
    // for the adjoint tuple (the co-isometric extension gate).
    const bool adjoint = opts.space == DilationSpace::DefectOfTAdjoint;
    const ContractionTuple w = adjoint ? adjoint_tuple(t) : t;
    DilationData d = data_for_space(t, doc, opts.space, tol);
    d.space = DilationSpace::DefectOfT;
    if (opts.conditions == "main")
      fold_reports(rep, "main", verify_main(w, d, tol));
    else
      fold_reports(rep, "coromain", verify_coromain(w, d, tol));
  } else if (opts.conditions == "pure") {
    const DilationData d = data_for_space(t, doc, DilationSpace::DefectOfTAdjoint, tol);
    fold_reports(rep, "pure", verify_pure(t, d, tol));
  } else {
    throw InputError("unknown condition set: " + opts.conditions);
  }
  rep.pass = reports_pass(rep);
  return rep;
}

RunReport run_dilate(const TupleDocument& doc, const PipelineOptions& opts) {
  const Tolerance tol = resolve_tolerance(doc, opts);
  RunReport rep;
  rep.input_name = doc.name;
  rep.pipeline = "dilate";
  rep.seed = opts.seed;
  rep.atol = tol.atol;
  const ContractionTuple t = tuple_of(doc, tol);
  const DilationData d = data_for_space(t, doc, DilationSpace::DefectOfT, tol);
  const auto gate = verify_coromain(t, d, tol);
  fold_reports(rep, "conditions", gate);
  if (!all_pass(gate)) {
    rep.pass = false;
    return rep;
  }
  const auto main_reports = verify_main(t, d, tol);
  const bool minimal_product = all_pass(main_reports);
  rep.details["product_is_minimal"] = minimal_product;
  const SchafferDilation dil = build_schaffer(t, d, tol);
  DilationCheckOptions dopts;
  dopts.max_total_degree = opts.degree;
  dopts.trials = opts.trials;
  dopts.seed = opts.seed;
  dopts.check_product = minimal_product;
  fold_reports(rep, "dilation", verify_isometric_dilation(t, dil, dopts, tol));
  rep.pass = reports_pass(rep);
  return rep;
}

RunReport run_model(const TupleDocument& doc, const PipelineOptions& opts) {
  const Tolerance tol = resolve_tolerance(doc, opts);
  RunReport rep;
  rep.input_name = doc.name;
  rep.pipeline = "model";
  rep.seed = opts.seed;
  rep.atol = tol.atol;
  const ContractionTuple t = tuple_of(doc, tol);
  const DilationData d = data_for_space(t, doc, DilationSpace::DefectOfTAdjoint, tol);
  const auto pure = verify_pure(t, d, tol);
  fold_reports(rep, "pure", pure);
  if (!all_pass(pure)) {
    rep.pass = false;
    return rep;
  }
  const auto vs = build_pure_dilation(t, d, tol);
  const ModelSpace ms = model_space(t.product(), opts.trunc, tol);
  rep.details["trunc"] = ms.trunc;
  rep.details["tail"] = ms.tail;
  rep.details["model_dim"] = ms.basis.cols();
  const DeltaGrid grid = delta_grid(t.product(), 64, tol);
  rep.details["delta_max_rank"] = grid.max_rank;
  rep.details["delta_singular_points"] = grid.failures;
  fold_reports(rep, "model", verify_model(t, d, opts.trunc, opts.trials, opts.seed, tol));
  fold_reports(rep, "intertwine",
               verify_intertwining(vs, t, ms.trunc, opts.trials, opts.seed, tol));
  rep.pass = reports_pass(rep);
  return rep;
}

RunReport run_classify(const TupleDocument& doc, const PipelineOptions& opts) {
  const Tolerance tol = resolve_tolerance(doc, opts);
  RunReport rep;
  rep.input_name = doc.name;
  rep.pipeline = "classify";
  rep.seed = opts.seed;
  rep.atol = tol.atol;
  const ContractionTuple t = tuple_of(doc, tol);
  const Classification c = classify(t, tol, supplied_of(doc));
  rep.classifications = classification_to_json(c);

  const bool extraction_ok = all_pass(c.main_reports);
  const bool demote = c.in_s_n && !extraction_ok;
  for (auto r : c.main_reports) {
    r.informational = r.informational || demote;
    rep.condition_reports.push_back(std::move(r));
  }
  rep.residual_summary["main"] = max_residual(c.main_reports);
  if (c.supplied_main) {
    for (auto r : *c.supplied_main) {
      r.condition_id = "supplied-" + r.condition_id;
      r.informational = true;
      rep.condition_reports.push_back(std::move(r));
    }
  }
  if (c.supplied_coromain) {
    for (auto r : *c.supplied_coromain) {
      r.condition_id = "supplied-coromain-" + r.condition_id;
      r.informational = true;
      rep.condition_reports.push_back(std::move(r));
    }
  }
  if (c.pure_reports) {
    for (auto r : *c.pure_reports) {
      r.informational = true;
      rep.condition_reports.push_back(std::move(r));
    }
  }
  rep.expected_match = check_expected(doc, c, rep);
  rep.pass = c.in_s_n;
  return rep;
}

RunReport run_demo(const std::string& fixture_id, const PipelineOptions& opts) {
  const TupleDocument* doc = find_fixture(fixture_id);
  if (!doc) throw InputError("unknown fixture id: " + fixture_id);
  RunReport rep = run_classify(*doc, opts);
  rep.pipeline = "demo";
  // The bdf-pair fixture demonstrates that the model unitaries need not
  // commute with the projections: surface the witness products.
  if (fixture_id == "bdf-pair") {
    const Tolerance tol = resolve_tolerance(*doc, opts);
    const ContractionTuple t = tuple_of(*doc, tol);
    const DilationData d = extract_candidates(t, DilationSpace::DefectOfT, tol);
    rep.details["U1_P2"] = matrix_to_json(d.u[0] * d.p[1]);
    rep.details["P2_U1"] = matrix_to_json(d.p[1] * d.u[0]);
  }
  return rep;
}

TupleDocument run_gen(std::size_t rank, std::size_t n, std::size_t degree,
                      std::uint64_t seed) {
  const ModelData md = gen_diagonal_model_data(rank, n, seed);
  const Tolerance tol;
  const ContractionTuple t = gen_compressed_tuple(md, degree, tol);
  TupleDocument doc;
  doc.name = "gen-rank" + std::to_string(rank) + "-n" + std::to_string(n) + "-m" +
             std::to_string(degree) + "-seed" + std::to_string(seed);
  doc.n = t.n();
  doc.dim = t.dim();
  doc.matrices = t.ops();
  doc.expected = {{"is_c0", true}};
  return doc;
}

}  // namespace dilatelab
