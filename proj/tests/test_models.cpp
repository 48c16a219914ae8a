#include <doctest.h>

#include <cmath>

#include "dilatelab/fixtures.hpp"
#include "dilatelab/models.hpp"
#include "test_helpers.hpp"

using namespace dilatelab;
using namespace dilatelab::testing;

namespace {
const Tolerance tol;

cplx mobius_half(cplx z) { return (2.0 * z - 1.0) / (2.0 - z); }
}  // namespace

TEST_CASE("theta at z = 0 is the compressed -T") {
  std::mt19937_64 rng(51);
  const ComplexMatrix t = random_contraction(4, rng, 0.9);
  const DefectData dc = defect(t, DefectSide::Column, tol);
  const DefectData dr = defect(t, DefectSide::Row, tol);
  const CharacteristicSample s = theta(t, cplx(0.0, 0.0), tol);
  CHECK(op_norm(s.theta - dr.basis.adjoint() * (cplx(-1.0, 0.0) * t) * dc.basis) <= 1e-13);
}

TEST_CASE("theta of the zero operator is z times the identity") {
  const ComplexMatrix zero = ComplexMatrix::zeros(3, 3);
  for (cplx z : {cplx(0.3, 0.1), cplx(-0.7, 0.2), cplx(0.0, 0.9)}) {
    const CharacteristicSample s = theta(zero, z, tol);
    CHECK(op_norm(s.theta - z * ComplexMatrix::identity(3)) <= 1e-13);
  }
}

TEST_CASE("scalar characteristic function is the Moebius factor") {
  const ComplexMatrix half = ComplexMatrix::diag({0.5});
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> rad(0.0, 0.99), ang(0.0, 6.283185307179586);
  for (int k = 0; k < 64; ++k) {
    const cplx z = std::polar(rad(rng), ang(rng));
    const CharacteristicSample s = theta(half, z, tol);
    CHECK(std::abs(s.theta(0, 0) - mobius_half(z)) <= 1e-12);
  }
  // Inner on the boundary.
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(1.0, ang(rng));
    CHECK(std::abs(std::abs(theta(half, z, tol).theta(0, 0)) - 1.0) <= 1e-10);
  }
}

TEST_CASE("theta is contractive on the disk and maps between the defect spaces") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexMatrix t = random_contraction(4, rng, 0.95);
    const DefectData dc = defect(t, DefectSide::Column, tol);
    const DefectData dr = defect(t, DefectSide::Row, tol);
    std::uniform_real_distribution<double> rad(0.0, 0.99), ang(0.0, 6.283185307179586);
    for (int k = 0; k < 8; ++k) {
      const cplx z = std::polar(rad(rng), ang(rng));
      CHECK(op_norm(theta(t, z, tol).theta) <= 1.0 + 1e-10);
      // Range containment of the uncompressed operator.
      const ComplexMatrix r = solve(ComplexMatrix::identity(4) - z * t.adjoint(),
                                    ComplexMatrix::identity(4));
      const ComplexMatrix full = cplx(-1.0, 0.0) * t + z * (dr.d * r * dc.d);
      const ComplexMatrix off =
          (ComplexMatrix::identity(4) - dr.basis * dr.basis.adjoint()) * full * dc.basis;
      CHECK(op_norm(off) <= tol.atol);
    }
  }
}

TEST_CASE("theta rejects singular resolvents") {
  const ComplexMatrix flip{{0.0, 1.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(theta(flip, cplx(1.0, 0.0), tol), SingularResolvent);
}

TEST_CASE("Taylor coefficients are consistent with point samples") {
  std::mt19937_64 rng(54);
  const ComplexMatrix t = random_contraction(3, rng, 0.7);
  const std::size_t count = 24;
  const auto coeffs = theta_coeffs(t, count, tol);
  std::uniform_real_distribution<double> rad(0.0, 0.6), ang(0.0, 6.283185307179586);
  for (int k = 0; k < 8; ++k) {
    const cplx z = std::polar(rad(rng), ang(rng));
    ComplexMatrix sum = ComplexMatrix::zeros(coeffs[0].rows(), coeffs[0].cols());
    cplx zk(1.0, 0.0);
    for (const auto& c : coeffs) {
      sum += zk * c;
      zk *= z;
    }
    const double bound =
        std::pow(std::abs(z), static_cast<double>(count)) / (1.0 - std::abs(z)) + 1e-12;
    CHECK(op_norm(theta(t, z, tol).theta - sum) <= bound);
  }
}

TEST_CASE("delta grid ranks") {
  const DeltaGrid zero = delta_grid(ComplexMatrix::zeros(2, 2), 32, tol);
  CHECK(zero.max_rank == 0);
  CHECK(zero.failures == 0);

  const DeltaGrid half = delta_grid(ComplexMatrix::diag({0.5}), 64, tol);
  CHECK(half.max_rank == 0);

  // A normal operator with a unimodular eigenvalue hits a singular
  // resolvent at the corresponding grid angle.
  const DeltaGrid sing = delta_grid(ComplexMatrix::diag({1.0, 0.5}), 8, tol);
  CHECK(sing.failures >= 1);
  CHECK(sing.samples[0].singular);

  // Every finite-dimensional contraction with spectral radius < 1 is C.0,
  // so its characteristic function is inner and the kernel vanishes.
  ComplexMatrix t(2, 2);
  t(0, 1) = 0.5;
  const DeltaGrid far = delta_grid(t, 16, tol);
  CHECK(far.max_rank == 0);
  CHECK(far.failures == 0);
}

TEST_CASE("model space of the zero operator") {
  const ComplexMatrix zero = ComplexMatrix::zeros(2, 2);
  const ModelSpace auto_ms = model_space(zero, 0, tol);
  CHECK(auto_ms.trunc == 1);
  CHECK(auto_ms.tail == 0.0);
  CHECK(auto_ms.basis.cols() == 2);

  const ModelSpace ms2 = model_space(zero, 2, tol);
  CHECK(ms2.ambient_dim == 4);
  // Projector onto the constants block.
  ComplexMatrix expected = ComplexMatrix::zeros(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  CHECK(op_norm(ms2.projector - expected) <= 1e-13);
  CHECK(ms2.basis.cols() == 2);
}

TEST_CASE("model space dimension equals dim H") {
  const ModelSpace scalar = model_space(ComplexMatrix::diag({0.5}), 0, tol);
  CHECK(scalar.tail < 1e-10);
  CHECK(scalar.basis.cols() == 1);

  const ModelData md = gen_diagonal_model_data(2, 2, 13);
  const ContractionTuple t = gen_compressed_tuple(md, 3, tol);
  const ModelSpace ms = model_space(t.product(), 0, tol);
  CHECK(ms.basis.cols() == t.dim());  // m * rank
}

TEST_CASE("model space rejects non-C.0 contractions") {
  CHECK_THROWS_AS(model_space(ComplexMatrix::identity(2), 0, tol), NotC0);
  CHECK_THROWS_AS(model_space(ComplexMatrix::diag({1.0, 0.5}), 4, tol), NotC0);
}

TEST_CASE("verify_model on generated instances and the nilpotent pair") {
  for (std::uint64_t seed : {3u, 14u}) {
    const ModelData md = gen_diagonal_model_data(2, 3, seed);
    const ContractionTuple t = gen_compressed_tuple(md, 2, tol);
    const DilationData d = extract_candidates(t, DilationSpace::DefectOfTAdjoint, tol);
    const auto rep = verify_model(t, d, 0, 8, seed, tol);
    CHECK(all_pass(rep));
  }

  const TupleDocument* doc = find_fixture("bdf-pair");
  const ContractionTuple pair = dilatelab::make_tuple(doc->matrices, tol);
  const DilationData d = extract_candidates(pair, DilationSpace::DefectOfTAdjoint, tol);
  const auto rep = verify_model(pair, d, 3, 8, 7, tol);
  CHECK(all_pass(rep));
  CHECK(max_residual(rep) <= 1e-12);

  // n = 1: the classical model check.
  std::mt19937_64 rng(55);
  const ContractionTuple single = dilatelab::make_tuple({random_contraction(2, rng, 0.6)}, tol);
  const DilationData ds = extract_candidates(single, DilationSpace::DefectOfTAdjoint, tol);
  CHECK(all_pass(verify_model(single, ds, 0, 8, 8, tol)));

  // n = 2 with a non-nilpotent product: the auto-selected truncation has a
  // nonzero tail and the model still verifies within its bound.
  const ContractionTuple halfpair = dilatelab::make_tuple(
      {ComplexMatrix::diag({0.5}), ComplexMatrix::identity(1)}, tol);
  const DilationData dh = extract_candidates(halfpair, DilationSpace::DefectOfTAdjoint, tol);
  const auto hrep = verify_model(halfpair, dh, 0, 8, 9, tol);
  CHECK(all_pass(hrep));
  const auto vs = build_pure_dilation(halfpair, dh, tol);
  CHECK(all_pass(verify_intertwining(vs, halfpair, 34, 8, 9, tol)));
}

TEST_CASE("defect identity W W^* + M M^* = I on the truncation") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix t = random_contraction(3, rng, 0.8);
    const ModelSpace ms = model_space(t, 0, tol);
    ComplexMatrix w(ms.ambient_dim, 3);
    const std::size_t rs = defect(t, DefectSide::Row, tol).rank;
    for (std::size_t j = 0; j < 3; ++j) {
      ComplexMatrix e(3, 1);
      e(j, 0) = 1.0;
      const EmbeddingResult emb = embed_w(t, e, ms.trunc, tol);
      for (std::size_t k = 0; k < ms.trunc; ++k)
        for (std::size_t i = 0; i < rs; ++i) w(k * rs + i, j) = emb.coeffs[k](i, 0);
    }
    const ComplexMatrix eye = ComplexMatrix::identity(ms.ambient_dim);
    CHECK(op_norm(w * w.adjoint() + ms.multiplier * ms.multiplier.adjoint() - eye) <=
          10.0 * ms.tail + 1e-10);
    CHECK(op_norm(ms.projector * ms.projector - ms.projector) <= 10.0 * ms.tail + 1e-10);
    CHECK(op_norm(ms.projector - ms.projector.adjoint()) <= 1e-12);
  }
}
