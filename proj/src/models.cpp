#include "dilatelab/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dilatelab {

namespace {

struct Defects {
  DefectData col;  // D_T
  DefectData row;  // D_{T*}
};

Defects both_defects(const ComplexMatrix& t, const Tolerance& tol) {
  return {defect(t, DefectSide::Column, tol), defect(t, DefectSide::Row, tol)};
}

ComplexMatrix resolvent(const ComplexMatrix& t, cplx z, const Tolerance& tol) {
  const ComplexMatrix a = ComplexMatrix::identity(t.rows()) - z * t.adjoint();
  const Svd d = svd(a);
  const double smax = d.s.empty() ? 0.0 : d.s.front();
  const double smin = d.s.empty() ? 0.0 : d.s.back();
  if (smin <= tol.atol * std::max(smax, 1.0))
    throw SingularResolvent("I - z T* is numerically singular at z = (" +
                            std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  return solve(a, ComplexMatrix::identity(t.rows()));
}

CharacteristicSample theta_impl(const ComplexMatrix& t, const Defects& dd, cplx z,
                                const Tolerance& tol) {
  const ComplexMatrix r = resolvent(t, z, tol);
  const ComplexMatrix full = t * cplx(-1.0, 0.0) + z * (dd.row.d * r * dd.col.d);
  CharacteristicSample s;
  s.z = z;
  s.theta = dd.row.basis.adjoint() * full * dd.col.basis;
  return s;
}

ConditionReport scalar_report(std::string id, double residual, double threshold) {
  ConditionReport rep;
  rep.condition_id = std::move(id);
  rep.residual = residual;
  rep.threshold = threshold;
  rep.passes = residual <= threshold;
  return rep;
}

}  // namespace

CharacteristicSample theta(const ComplexMatrix& t, cplx z, const Tolerance& tol) {
  if (t.rows() != t.cols()) throw DimensionMismatch("theta: square matrix required");
  return theta_impl(t, both_defects(t, tol), z, tol);
}

std::vector<ComplexMatrix> theta_coeffs(const ComplexMatrix& t, std::size_t count,
                                        const Tolerance& tol) {
  const Defects dd = both_defects(t, tol);
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(count);
  if (count == 0) return coeffs;
  coeffs.push_back(dd.row.basis.adjoint() * (t * cplx(-1.0, 0.0)) * dd.col.basis);
  const ComplexMatrix left = dd.row.basis.adjoint() * dd.row.d;  // r* x dim
  const ComplexMatrix right = dd.col.d * dd.col.basis;           // dim x rT
  ComplexMatrix powers = ComplexMatrix::identity(t.rows());
  const ComplexMatrix tstar = t.adjoint();
  for (std::size_t k = 1; k < count; ++k) {
    coeffs.push_back(left * powers * right);
    powers = tstar * powers;
  }
  return coeffs;
}

DeltaGrid delta_grid(const ComplexMatrix& t, std::size_t grid_size, const Tolerance& tol) {
  if (grid_size == 0) throw InputError("delta_grid: grid_size >= 1");
  const Defects dd = both_defects(t, tol);
  DeltaGrid grid;
  grid.samples.resize(grid_size);
  const long long g = static_cast<long long>(grid_size);
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < g; ++j) {
    DeltaSample s;
    s.t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_size);
    try {
      const CharacteristicSample cs = theta_impl(t, dd, std::polar(1.0, s.t), tol);
      const ComplexMatrix gram = ComplexMatrix::identity(dd.col.rank) -
                                 cs.theta.adjoint() * cs.theta;
      // Rank is decided on the Gram matrix: entries of Delta itself sit at
      // sqrt(eps) for an inner Theta, above any reasonable cutoff.
      const EigHermitian eig = eig_hermitian(gram);
      double lmax = 0.0;
      for (double ev : eig.values) lmax = std::max(lmax, ev);
      const double cutoff = rank_cutoff(lmax, tol);
      std::vector<cplx> roots(eig.values.size());
      std::size_t rank = 0;
      for (std::size_t i = 0; i < eig.values.size(); ++i) {
        roots[i] = std::sqrt(std::max(eig.values[i], 0.0));
        if (eig.values[i] > cutoff) ++rank;
      }
      s.delta = eig.vectors * ComplexMatrix::diag(roots) * eig.vectors.adjoint();
      s.rank = rank;
    } catch (const NumericError&) {
      s.singular = true;
    }
    grid.samples[j] = std::move(s);
  }
  for (const auto& s : grid.samples) {
    if (s.singular)
      ++grid.failures;
    else
      grid.max_rank = std::max(grid.max_rank, s.rank);
  }
  return grid;
}

ModelSpace model_space(const ComplexMatrix& t, std::size_t trunc, const Tolerance& tol) {
  if (t.rows() != t.cols()) throw DimensionMismatch("model_space: square matrix required");
  if (spectral_radius(t) >= 1.0 - tol.atol)
    throw NotC0("model_space: spectral radius " + std::to_string(spectral_radius(t)) +
                " admits no finite truncation");
  const ComplexMatrix tstar = t.adjoint();
  std::size_t n = trunc;
  double tail = 0.0;
  if (n == 0) {
    ComplexMatrix power = tstar;
    for (std::size_t k = 1; k <= 256; ++k) {
      tail = op_norm(power);
      if (tail < 1e-10) {
        n = k;
        break;
      }
      power = power * tstar;
    }
    if (n == 0)
      throw NotC0("model_space: ||T^{*N}|| did not reach 1e-10 within N <= 256");
  } else {
    ComplexMatrix power = ComplexMatrix::identity(t.rows());
    for (std::size_t k = 0; k < n; ++k) power = power * tstar;
    tail = op_norm(power);
  }

  const Defects dd = both_defects(t, tol);
  const std::vector<ComplexMatrix> coeffs = theta_coeffs(t, n, tol);
  const std::size_t rt = dd.col.rank;
  const std::size_t rs = dd.row.rank;
  ModelSpace ms;
  ms.trunc = n;
  ms.ambient_dim = n * rs;
  ms.tail = tail;
  ms.multiplier = ComplexMatrix::zeros(n * rs, n * rt);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c <= b; ++c)
      for (std::size_t i = 0; i < rs; ++i)
        for (std::size_t j = 0; j < rt; ++j)
          ms.multiplier(b * rs + i, c * rt + j) = coeffs[b - c](i, j);
  ms.projector = ComplexMatrix::identity(n * rs) - ms.multiplier * ms.multiplier.adjoint();
  ms.basis = range_basis(ms.projector, tol);
  return ms;
}

std::vector<ConditionReport> verify_model(const ContractionTuple& t, const DilationData& d,
                                          std::size_t trunc, std::size_t trials,
                                          std::uint64_t seed, const Tolerance& tol) {
  if (d.space != DilationSpace::DefectOfTAdjoint)
    throw WrongSpace("verify_model expects defect-of-T-adjoint data");
  {
    const auto pure = verify_pure(t, d, tol);
    for (const auto& r : pure)
      if (!r.informational && !r.passes)
        throw ConditionsNotMet("verify_model: condition " + r.condition_id + " fails",
                               r.condition_id, r.residual);
  }
  const std::vector<HardyMultiplier> vs = build_pure_dilation(t, d, tol);
  const ModelSpace ms = model_space(t.product(), trunc, tol);
  const std::size_t n = ms.trunc;
  const std::size_t rs = d.rank;
  if (ms.ambient_dim != n * rs)
    throw DimensionMismatch("verify_model: defect ranks disagree");
  const double thr = 10.0 * ms.tail + tol.atol;

  // Columns of W_N on an orthonormal basis of H.
  ComplexMatrix w(ms.ambient_dim, t.dim());
  for (std::size_t j = 0; j < t.dim(); ++j) {
    ComplexMatrix e(t.dim(), 1);
    e(j, 0) = 1.0;
    const EmbeddingResult emb = embed_w(t.product(), e, n, tol);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < rs; ++i) w(k * rs + i, j) = emb.coeffs[k](i, 0);
  }

  std::vector<ConditionReport> out;
  const ComplexMatrix eye = ComplexMatrix::identity(ms.ambient_dim);
  out.push_back(scalar_report("model-containment",
                              op_norm((eye - ms.projector) * w), thr));
  out.push_back(scalar_report(
      "model-identity",
      op_norm(w * w.adjoint() + ms.multiplier * ms.multiplier.adjoint() - eye), thr));

  // Dense truncations of the multipliers on the ambient space.
  std::vector<ComplexMatrix> mult(vs.size(),
                                  ComplexMatrix::zeros(ms.ambient_dim, ms.ambient_dim));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a = 0; a < rs; ++a)
        for (std::size_t c = 0; c < rs; ++c) {
          mult[i](b * rs + a, b * rs + c) = vs[i].c0(a, c);
          if (b > 0) mult[i](b * rs + a, (b - 1) * rs + c) = vs[i].c1(a, c);
        }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    double res = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      ComplexMatrix h(t.dim(), 1);
      for (std::size_t a = 0; a < t.dim(); ++a) h(a, 0) = cplx(g(rng), g(rng));
      const double nh = vec_norm(h);
      if (nh > 0.0) h *= cplx(1.0 / nh, 0.0);
      const ComplexMatrix wh = w * h;
      const ComplexMatrix wth = w * (t.op(i) * h);
      res = std::max(res, vec_norm(ms.projector * (mult[i] * wh) - wth));
    }
    out.push_back(scalar_report("model-intertwine-" + std::to_string(i + 1), res, thr));
  }
  return out;
}

}  // namespace dilatelab
