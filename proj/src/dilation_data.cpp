#include "dilatelab/dilation_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dilatelab {

const char* to_string(DilationSpace space) {
  return space == DilationSpace::DefectOfT ? "defect-of-T" : "defect-of-T-adjoint";
}

bool all_pass(const std::vector<ConditionReport>& reports) {
  for (const auto& r : reports)
    if (!r.informational && !r.passes) return false;
  return true;
}

double max_residual(const std::vector<ConditionReport>& reports) {
  double m = 0.0;
  for (const auto& r : reports)
    if (!r.informational) m = std::max(m, r.residual);
  return m;
}

const ConditionReport* find_condition(const std::vector<ConditionReport>& reports,
                                      const std::string& prefix) {
  for (const auto& r : reports)
    if (r.condition_id.rfind(prefix, 0) == 0) return &r;
  return nullptr;
}

namespace {

ConditionReport make_report(std::string id, const ComplexMatrix& residual_matrix,
                            double threshold, bool informational = false) {
  ConditionReport rep;
  rep.condition_id = std::move(id);
  rep.residual = op_norm(residual_matrix);
  rep.threshold = threshold;
  rep.passes = rep.residual <= threshold;
  rep.informational = informational;
  if (!rep.passes) rep.witness = top_singular_vector(residual_matrix);
  return rep;
}

ConditionReport make_scalar_report(std::string id, double residual, double threshold,
                                   bool informational = false) {
  ConditionReport rep;
  rep.condition_id = std::move(id);
  rep.residual = residual;
  rep.threshold = threshold;
  rep.passes = residual <= threshold;
  rep.informational = informational;
  return rep;
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

// Telescoping sum P_1 + U_1^* P_2 U_1 + (U_1 U_2)^* P_3 (U_1 U_2) + ...
ComplexMatrix telescoping_sum(const std::vector<ComplexMatrix>& u,
                              const std::vector<ComplexMatrix>& p, std::size_t rank) {
  ComplexMatrix sum = ComplexMatrix::zeros(rank, rank);
  ComplexMatrix ubar = ComplexMatrix::identity(rank);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k == 0)
      sum += p[0];
    else
      sum += ubar.adjoint() * p[k] * ubar;
    if (k + 1 < u.size()) ubar = ubar * u[k];
  }
  return sum;
}

void append_wellformedness(std::vector<ConditionReport>& out, const DilationData& d,
                           const Tolerance& tol, bool require_product_identity) {
  const std::size_t n = d.u.size();
  const std::size_t r = d.rank;
  const ComplexMatrix eye = ComplexMatrix::identity(r);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(make_report("unitary-" + idx(i), d.u[i].adjoint() * d.u[i] - eye, tol.atol));
  for (std::size_t i = 0; i < n; ++i) {
    ConditionReport rep;
    rep.condition_id = "projection-" + idx(i);
    rep.residual = op_norm(d.p[i] * d.p[i] - d.p[i]) + op_norm(d.p[i] - d.p[i].adjoint());
    rep.threshold = tol.atol;
    rep.passes = rep.residual <= rep.threshold;
    if (!rep.passes) rep.witness = top_singular_vector(d.p[i] * d.p[i] - d.p[i]);
    out.push_back(std::move(rep));
  }
  double comm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      comm = std::max(comm, op_norm(d.u[i] * d.u[j] - d.u[j] * d.u[i]));
  out.push_back(make_scalar_report("commuting-unitaries", comm, tol.atol));
  if (require_product_identity) {
    ComplexMatrix prod = ComplexMatrix::identity(r);
    for (const auto& ui : d.u) prod = prod * ui;
    out.push_back(make_report("product-identity", prod - eye, tol.atol));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix pperp = eye - d.p[i];
    const double res = op_norm(d.f[i] - pperp * d.u[i].adjoint()) +
                       op_norm(d.fp[i] - d.u[i] * d.p[i]);
    out.push_back(make_scalar_report("factors-" + idx(i), res, tol.atol));
  }
}

// The five dilation conditions, parameterized by the working tuple so the
// same code serves the one-sided case (t itself) and the pure case (the
// adjoint tuple).
std::vector<ConditionReport> verify_conditions(const ContractionTuple& w,
                                               const DilationData& d, const Tolerance& tol,
                                               const std::string& tag, bool with_defect_match,
                                               bool with_telescoping,
                                               bool with_product_identity,
                                               bool with_impnote) {
  const std::size_t n = w.n();
  if (d.u.size() != n || d.p.size() != n || d.f.size() != n || d.fp.size() != n)
    throw DimensionMismatch("verify: candidate count does not match tuple size");
  const std::size_t r = d.rank;
  const ComplexMatrix eye_r = ComplexMatrix::identity(r);
  const ComplexMatrix& dm = d.d;
  const ComplexMatrix& b = d.basis;
  const ComplexMatrix& t = w.product();

  std::vector<ConditionReport> out;
  append_wellformedness(out, d, tol, with_product_identity);

  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix pperp_ustar = (eye_r - d.p[i]) * d.u[i].adjoint();
    const ComplexMatrix p_ustar = d.p[i] * d.u[i].adjoint();
    const ComplexMatrix resid =
        dm * w.op(i) - lift(pperp_ustar, b) * dm - lift(p_ustar, b) * (dm * t);
    out.push_back(make_report(tag + "-1-" + idx(i), resid, tol.atol));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const ComplexMatrix a = (eye_r - d.p[i]) * d.u[i].adjoint();
      const ComplexMatrix c = (eye_r - d.p[j]) * d.u[j].adjoint();
      out.push_back(make_report(tag + "-2-" + idx(i) + "-" + idx(j), a * c - c * a, tol.atol));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const ComplexMatrix a = d.u[i] * d.p[i];
      const ComplexMatrix c = d.u[j] * d.p[j];
      out.push_back(make_report(tag + "-3-" + idx(i) + "-" + idx(j), a * c - c * a, tol.atol));
    }
  }
  if (with_defect_match) {
    for (std::size_t i = 0; i < n; ++i) {
      const ComplexMatrix lhs = dm * lift(d.fp[i] * d.fp[i].adjoint(), b) * dm;
      const ComplexMatrix rhs =
          ComplexMatrix::identity(w.dim()) - w.op(i).adjoint() * w.op(i);
      out.push_back(make_report(tag + "-4-" + idx(i), lhs - rhs, tol.atol));
    }
  }
  if (with_telescoping) {
    const std::string id = with_defect_match ? tag + "-5" : tag + "-4";
    out.push_back(make_report(id, telescoping_sum(d.u, d.p, r) - eye_r, tol.atol));
  }
  if (with_impnote) {
    for (std::size_t i = 0; i < n; ++i) {
      const ComplexMatrix resid = dm * w.coproduct(i) - lift(d.u[i] * d.p[i], b) * dm -
                                  lift(d.u[i] * (eye_r - d.p[i]), b) * (dm * t);
      out.push_back(make_report("note-impnote-" + idx(i), resid, tol.atol, true));
    }
  }
  return out;
}

DilationData extract_from_working(const ContractionTuple& w, DilationSpace space,
                                  const Tolerance& tol) {
  DilationData d;
  d.space = space;
  const DefectData dd = defect(w.product(), DefectSide::Column, tol);
  d.d = dd.d;
  d.basis = dd.basis;
  d.rank = dd.rank;
  const std::size_t n = w.n();
  if (d.rank == 0) {
    d.u.assign(n, ComplexMatrix(0, 0));
    d.p.assign(n, ComplexMatrix(0, 0));
    d.f.assign(n, ComplexMatrix(0, 0));
    d.fp.assign(n, ComplexMatrix(0, 0));
    return d;
  }
  const ComplexMatrix dpinv = defect_pinv(dd);
  const ComplexMatrix eye = ComplexMatrix::identity(w.dim());
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix d2_i = eye - w.op(i).adjoint() * w.op(i);
    const ComplexMatrix d2_ip = eye - w.coproduct(i).adjoint() * w.coproduct(i);
    const ComplexMatrix f = compress(dpinv * (d2_ip * w.op(i)) * dpinv, d.basis);
    const ComplexMatrix fp = compress(dpinv * (d2_i * w.coproduct(i)) * dpinv, d.basis);
    d.f.push_back(f);
    d.fp.push_back(fp);
    d.u.push_back(f.adjoint() + fp);
    d.p.push_back(fp.adjoint() * fp);
  }
  return d;
}

const ContractionTuple& working_tuple(const ContractionTuple& t, DilationSpace space,
                                      std::optional<ContractionTuple>& storage) {
  if (space == DilationSpace::DefectOfT) return t;
  storage = adjoint_tuple(t);
  return *storage;
}

}  // namespace

DilationData extract_candidates(const ContractionTuple& t, DilationSpace space,
                                const Tolerance& tol) {
  std::optional<ContractionTuple> storage;
  const ContractionTuple& w = working_tuple(t, space, storage);
  return extract_from_working(w, space, tol);
}

DilationData data_from_candidates(const ContractionTuple& t, DilationSpace space,
                                  std::vector<ComplexMatrix> u, std::vector<ComplexMatrix> p,
                                  const Tolerance& tol) {
  if (u.size() != t.n() || p.size() != t.n())
    throw DimensionMismatch("supplied candidates: need one U and one P per operator");
  std::optional<ContractionTuple> storage;
  const ContractionTuple& w = working_tuple(t, space, storage);
  DilationData d;
  d.space = space;
  const DefectData dd = defect(w.product(), DefectSide::Column, tol);
  d.d = dd.d;
  d.basis = dd.basis;
  d.rank = dd.rank;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].rows() != d.rank || u[i].cols() != d.rank || p[i].rows() != d.rank ||
        p[i].cols() != d.rank)
      throw DimensionMismatch("supplied candidates must be rank x rank in the defect basis");
  }
  const ComplexMatrix eye = ComplexMatrix::identity(d.rank);
  for (std::size_t i = 0; i < u.size(); ++i) {
    d.f.push_back((eye - p[i]) * u[i].adjoint());
    d.fp.push_back(u[i] * p[i]);
  }
  d.u = std::move(u);
  d.p = std::move(p);
  return d;
}

std::vector<ConditionReport> verify_main(const ContractionTuple& t, const DilationData& d,
                                         const Tolerance& tol) {
  if (d.space != DilationSpace::DefectOfT)
    throw WrongSpace("verify_main expects defect-of-T data");
  return verify_conditions(t, d, tol, "main", /*with_defect_match=*/true,
                           /*with_telescoping=*/true, /*with_product_identity=*/true,
                           /*with_impnote=*/true);
}

std::vector<ConditionReport> verify_coromain(const ContractionTuple& t, const DilationData& d,
                                             const Tolerance& tol) {
  if (d.space != DilationSpace::DefectOfT)
    throw WrongSpace("verify_coromain expects defect-of-T data");
  return verify_conditions(t, d, tol, "main", /*with_defect_match=*/true,
                           /*with_telescoping=*/false, /*with_product_identity=*/false,
                           /*with_impnote=*/false);
}

std::vector<ConditionReport> verify_pure(const ContractionTuple& t, const DilationData& d,
                                         const Tolerance& tol) {
  if (d.space != DilationSpace::DefectOfTAdjoint)
    throw WrongSpace("verify_pure expects defect-of-T-adjoint data");
  std::optional<ContractionTuple> storage;
  const ContractionTuple& w = working_tuple(t, DilationSpace::DefectOfTAdjoint, storage);
  auto out = verify_conditions(w, d, tol, "pure", /*with_defect_match=*/false,
                               /*with_telescoping=*/true, /*with_product_identity=*/true,
                               /*with_impnote=*/false);
  const C0Report c0 = c0_diagnostic(t.product(), 1, tol);
  ConditionReport warn = make_scalar_report("c0-warning", c0.spectral_radius,
                                            1.0 - tol.atol, /*informational=*/true);
  out.push_back(std::move(warn));
  return out;
}

std::vector<ConditionReport> verify_bdf(const std::vector<ComplexMatrix>& u,
                                        const std::vector<ComplexMatrix>& p,
                                        const Tolerance& tol) {
  if (u.empty() || u.size() != p.size())
    throw DimensionMismatch("verify_bdf: need matching U and P lists");
  const std::size_t r = u.front().rows();
  for (const auto& m : u)
    if (m.rows() != r || m.cols() != r) throw DimensionMismatch("verify_bdf: sizes differ");
  for (const auto& m : p)
    if (m.rows() != r || m.cols() != r) throw DimensionMismatch("verify_bdf: sizes differ");

  const std::size_t n = u.size();
  const ComplexMatrix eye = ComplexMatrix::identity(r);
  std::vector<ConditionReport> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(make_report("bdf-unitary-" + idx(i), u[i].adjoint() * u[i] - eye, tol.atol));
  for (std::size_t i = 0; i < n; ++i) {
    const double res = op_norm(p[i] * p[i] - p[i]) + op_norm(p[i] - p[i].adjoint());
    out.push_back(make_scalar_report("bdf-projection-" + idx(i), res, tol.atol));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.push_back(make_report("bdf-1-" + idx(i) + "-" + idx(j),
                                u[i] * u[j] - u[j] * u[i], tol.atol));
  ComplexMatrix prod = eye;
  for (const auto& ui : u) prod = prod * ui;
  out.push_back(make_report("bdf-2", prod - eye, tol.atol));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const ComplexMatrix lhs = p[j] + u[j].adjoint() * p[i] * u[j];
      const ComplexMatrix rhs = p[i] + u[i].adjoint() * p[j] * u[i];
      out.push_back(make_report("bdf-3-" + idx(i) + "-" + idx(j), lhs - rhs, tol.atol));
      const double excess = -min_eig_hermitian(eye - rhs);
      out.push_back(make_scalar_report("bdf-3-le-" + idx(i) + "-" + idx(j),
                                       std::max(excess, 0.0), tol.atol));
    }
  }
  out.push_back(make_report("bdf-4", telescoping_sum(u, p, r) - eye, tol.atol));
  return out;
}

Classification classify(const ContractionTuple& t, const Tolerance& tol,
                        const std::optional<SuppliedCandidates>& supplied) {
  Classification c;
  c.extracted = extract_candidates(t, DilationSpace::DefectOfT, tol);
  c.main_reports = verify_main(t, c.extracted, tol);
  c.coromain_reports = verify_coromain(t, c.extracted, tol);
  c.in_s_n = all_pass(c.main_reports);
  c.in_u_n = all_pass(c.coromain_reports);
  if (supplied) {
    DilationData sd = data_from_candidates(t, DilationSpace::DefectOfT, supplied->u,
                                           supplied->p, tol);
    c.supplied_main = verify_main(t, sd, tol);
    c.supplied_coromain = verify_coromain(t, sd, tol);
    c.in_s_n = c.in_s_n || all_pass(*c.supplied_main);
    c.in_u_n = c.in_u_n || all_pass(*c.supplied_coromain);
  }
  std::vector<std::size_t> full(t.n());
  for (std::size_t i = 0; i < t.n(); ++i) full[i] = i;
  c.szego = szego_check(t, full);
  c.brehmer = brehmer_check(t);
  c.c0 = c0_diagnostic(t.product(), 8, tol);
  c.extracted_adjoint = extract_candidates(t, DilationSpace::DefectOfTAdjoint, tol);
  c.pure_reports = verify_pure(t, *c.extracted_adjoint, tol);
  return c;
}

ModelData gen_diagonal_model_data(std::size_t rank, std::size_t n, std::uint64_t seed) {
  if (rank < 1 || n < 1) throw InputError("gen_diagonal_model_data: rank >= 1, n >= 1");
  ModelData md;
  if (n == 1) {
    md.u.push_back(ComplexMatrix::identity(rank));
    md.p.push_back(ComplexMatrix::identity(rank));
    return md;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> owner(0, n - 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  md.u.assign(n, ComplexMatrix::zeros(rank, rank));
  md.p.assign(n, ComplexMatrix::zeros(rank, rank));
  for (std::size_t c = 0; c < rank; ++c) {
    md.p[owner(rng)](c, c) = 1.0;
    cplx prod(1.0, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const cplx ph = std::polar(1.0, angle(rng));
      md.u[i](c, c) = ph;
      prod *= ph;
    }
    md.u[n - 1](c, c) = std::conj(prod);
  }
  return md;
}

ContractionTuple gen_compressed_tuple(const ModelData& data, std::size_t degree,
                                      const Tolerance& tol) {
  if (degree < 1) throw InputError("gen_compressed_tuple: degree >= 1");
  auto bdf = verify_bdf(data.u, data.p, tol);
  if (!all_pass(bdf)) {
    const ConditionReport* worst = nullptr;
    for (const auto& r : bdf)
      if (!r.informational && !r.passes && (!worst || r.residual > worst->residual))
        worst = &r;
    throw InvalidModelData("gen_compressed_tuple: model data fails " +
                           (worst ? worst->condition_id : std::string("verify_bdf")));
  }
  const std::size_t r = data.u.front().rows();
  const std::size_t n = data.u.size();
  const ComplexMatrix eye = ComplexMatrix::identity(r);
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix diag = data.u[i] * (eye - data.p[i]);
    const ComplexMatrix sub = data.u[i] * data.p[i];
    ComplexMatrix ti(degree * r, degree * r);
    for (std::size_t blk = 0; blk < degree; ++blk) {
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          ti(blk * r + a, blk * r + b) = diag(a, b);
          if (blk > 0) ti(blk * r + a, (blk - 1) * r + b) = sub(a, b);
        }
    }
    ops.push_back(std::move(ti));
  }
  return make_tuple(std::move(ops), tol);
}

}  // namespace dilatelab
