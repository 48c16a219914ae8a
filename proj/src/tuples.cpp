#include "dilatelab/tuples.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace dilatelab {

DefectData defect(const ComplexMatrix& x, DefectSide side, const Tolerance& tol) {
  if (x.rows() != x.cols()) throw DimensionMismatch("defect: square matrix required");
  const double nrm = op_norm(x);
  if (nrm > 1.0 + tol.atol) throw NotContractive(0, nrm);
  const std::size_t n = x.rows();
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  const ComplexMatrix gram =
      side == DefectSide::Column ? eye - x.adjoint() * x : eye - x * x.adjoint();

  const EigHermitian eig = eig_hermitian(gram);
  double lmax = 0.0;
  for (double ev : eig.values) lmax = std::max(lmax, ev);
  const double cutoff = rank_cutoff(lmax, tol);

  DefectData out;
  std::vector<cplx> roots(n);
  std::vector<std::size_t> kept;  // descending eigenvalue order
  for (std::size_t i = 0; i < n; ++i) {
    const double ev = eig.values[i];
    // A norm of 1 + atol (admissible) already pushes Gram eigenvalues down
    // to -2 atol - atol^2.
    if (ev < -3.0 * tol.atol)
      throw IndefiniteMatrix("defect: eigenvalue " + std::to_string(ev));
    // Sub-cutoff eigenvalues are roundoff of the Gram matrix; keeping them
    // would smear sqrt(eps) noise over every identity involving d.
    roots[i] = eig.values[i] > cutoff ? std::sqrt(ev) : cplx(0.0, 0.0);
  }
  // Descending eigenvalue order, ties keeping the solver's eigenvector
  // order (so an exactly degenerate defect keeps its natural coordinates).
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (eig.values[i] > cutoff) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return eig.values[a] > eig.values[b];
  });
  kept = std::move(order);
  out.d = eig.vectors * ComplexMatrix::diag(roots) * eig.vectors.adjoint();
  out.rank = kept.size();
  out.basis = ComplexMatrix(n, out.rank);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = eig.vectors(i, kept[j]);
    out.sigma.push_back(std::sqrt(eig.values[kept[j]]));
  }
  return out;
}

ComplexMatrix defect_pinv(const DefectData& dd) {
  std::vector<cplx> inv(dd.rank);
  for (std::size_t i = 0; i < dd.rank; ++i) inv[i] = cplx(1.0 / dd.sigma[i], 0.0);
  return dd.basis * ComplexMatrix::diag(inv) * dd.basis.adjoint();
}

ContractionTuple make_tuple(std::vector<ComplexMatrix> matrices, const Tolerance& tol) {
  if (matrices.empty()) throw InputError("make_tuple: need at least one operator");
  const std::size_t dim = matrices.front().rows();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    matrices[i].require_finite("operator " + std::to_string(i + 1));
    if (matrices[i].rows() != matrices[i].cols() || matrices[i].rows() != dim)
      throw DimensionMismatch("make_tuple: operators must be square and of equal dimension");
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const double nrm = op_norm(matrices[i]);
    if (nrm > 1.0 + tol.atol) throw NotContractive(i, nrm);
  }
  // Report the worst offending pair, not the first.
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      const double res = op_norm(matrices[i] * matrices[j] - matrices[j] * matrices[i]);
      if (res > worst) {
        worst = res;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > tol.atol) throw NotCommuting(wi, wj, worst);

  ContractionTuple t;
  t.dim_ = dim;
  t.tol_ = tol;
  t.ops_ = std::move(matrices);
  t.product_ = ComplexMatrix::identity(dim);
  for (const auto& m : t.ops_) t.product_ = t.product_ * m;
  t.coproducts_.reserve(t.ops_.size());
  for (std::size_t i = 0; i < t.ops_.size(); ++i) {
    ComplexMatrix c = ComplexMatrix::identity(dim);
    for (std::size_t j = 0; j < t.ops_.size(); ++j)
      if (j != i) c = c * t.ops_[j];
    t.coproducts_.push_back(std::move(c));
  }
  return t;
}

ContractionTuple adjoint_tuple(const ContractionTuple& t) {
  std::vector<ComplexMatrix> adj;
  adj.reserve(t.n());
  for (const auto& m : t.ops()) adj.push_back(m.adjoint());
  return make_tuple(std::move(adj), t.tol());
}

SzegoReport szego_check(const ContractionTuple& t, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw InputError("szego_check: subset must be nonempty");
  for (std::size_t i : subset)
    if (i >= t.n()) throw InputError("szego_check: index out of range");
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      if (subset[a] == subset[b]) throw InputError("szego_check: duplicate index");
  SzegoReport rep;
  rep.subset = subset;
  rep.defect_sum = ComplexMatrix::identity(t.dim());
  for (std::size_t i : subset) rep.defect_sum -= t.op(i) * t.op(i).adjoint();
  rep.min_eig = min_eig_hermitian(rep.defect_sum);
  rep.passes = rep.min_eig >= -t.tol().atol;
  return rep;
}

BrehmerReport brehmer_check(const ContractionTuple& t) {
  const std::size_t n = t.n();
  if (n > 16) throw InputError("brehmer_check: capped at n <= 16");
  const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1u);

  // T_F^* T_F for every subset mask, built incrementally.
  std::vector<ComplexMatrix> prod(full + 1);
  prod[0] = ComplexMatrix::identity(t.dim());
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1u);
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(low));
    prod[mask] = prod[mask ^ low] * t.op(i);
  }
  std::vector<ComplexMatrix> gram(full + 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask)
    gram[mask] = prod[mask].adjoint() * prod[mask];

  BrehmerReport rep;
  rep.entries.resize(full);
  rep.passes = true;
  rep.worst_min_eig = 0.0;
#pragma omp parallel for schedule(dynamic)
  for (long long g = 1; g <= static_cast<long long>(full); ++g) {
    const std::uint32_t gmask = static_cast<std::uint32_t>(g);
    ComplexMatrix sum = ComplexMatrix::zeros(t.dim(), t.dim());
    std::uint32_t f = gmask;
    while (true) {
      const int sign = (std::popcount(f) % 2 == 0) ? 1 : -1;
      if (sign > 0)
        sum += gram[f];
      else
        sum -= gram[f];
      if (f == 0) break;
      f = (f - 1) & gmask;
    }
    BrehmerEntry e;
    e.mask = gmask;
    e.min_eig = min_eig_hermitian(sum);
    e.passes = e.min_eig >= -t.tol().atol;
    rep.entries[g - 1] = e;
  }
  for (const auto& e : rep.entries) {
    rep.worst_min_eig = std::min(rep.worst_min_eig, e.min_eig);
    rep.passes = rep.passes && e.passes;
  }
  return rep;
}

C0Report c0_diagnostic(const ComplexMatrix& t, std::size_t max_power, const Tolerance& tol) {
  if (t.rows() != t.cols()) throw DimensionMismatch("c0_diagnostic: square matrix required");
  const double nrm = op_norm(t);
  if (nrm > 1.0 + tol.atol) throw NotContractive(0, nrm);
  C0Report rep;
  rep.spectral_radius = spectral_radius(t);
  rep.is_c0 = rep.spectral_radius < 1.0 - tol.atol;
  ComplexMatrix power = t.adjoint();
  const ComplexMatrix adj = power;
  for (std::size_t k = 1; k <= max_power; ++k) {
    rep.norm_decay.push_back(op_norm(power));
    if (k < max_power) power = power * adj;
  }
  return rep;
}

}  // namespace dilatelab
