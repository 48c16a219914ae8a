#include "dilatelab/fixtures.hpp"

#include <cmath>

namespace dilatelab {

namespace {

TupleDocument make_doc(std::string name, std::vector<ComplexMatrix> ms,
                       nlohmann::json expected) {
  TupleDocument d;
  d.name = std::move(name);
  d.n = ms.size();
  d.dim = ms.front().rows();
  d.matrices = std::move(ms);
  d.tolerance = 1e-12;
  d.expected = std::move(expected);
  return d;
}

std::vector<TupleDocument> build_all() {
  std::vector<TupleDocument> out;
  const double s3 = std::sqrt(3.0);

  // 2x2 nilpotent pair whose extracted model data has U_i P_j != P_j U_i.
  out.push_back(make_doc(
      "bdf-pair",
      {ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}},
      {{"in_S_n", true}, {"in_U_n", true}}));

  out.push_back(make_doc(
      "exmp:06",
      {ComplexMatrix{{0.0, 0.0, 0.0}, {1.0 / 3.0, 0.0, 0.0}, {0.0, 1.0 / (3.0 * s3), 0.0}},
       ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {-1.0 / s3, 0.0, 0.0}}},
      {{"in_S_n", false}}));

  // Doubly commuting rank-one projections; in U^3 via U_i = I, P_i = I - T_i
  // but not in S^3.
  {
    TupleDocument d = make_doc(
        "eg1",
        {ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
         ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}},
         ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}},
        {{"in_S_n", false}, {"in_U_n", true}});
    const ComplexMatrix eye = ComplexMatrix::identity(3);
    d.unitaries = std::vector<ComplexMatrix>{eye, eye, eye};
    d.projections = std::vector<ComplexMatrix>();
    for (const auto& t : d.matrices) d.projections->push_back(eye - t);
    out.push_back(std::move(d));
  }

  out.push_back(make_doc(
      "exmp:05",
      {ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}},
       ComplexMatrix::identity(2)},
      {{"in_S_n", true}, {"in_U_n", true}, {"szego_passes", false},
       {"brehmer_passes", false}}));

  out.push_back(make_doc(
      "eg2",
      {ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}},
       ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}},
       ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}},
      {{"in_S_n", true}, {"in_U_n", true}}));

  // Off-diagonal entries of the second operator are both +1/3; the printed
  // source has a sign typo that would break self-adjointness and
  // commutativity.
  out.push_back(make_doc(
      "eg3",
      {ComplexMatrix{{0.0, 1.0 / 3.0, 0.0}, {1.0 / 3.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
       ComplexMatrix{{0.5, 1.0 / 3.0, 0.0}, {1.0 / 3.0, 0.5, 0.0}, {0.0, 0.0, 0.0}},
       ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}},
      {{"in_S_n", false}, {"in_U_n", false}}));

  out.push_back(make_doc(
      "last-eg",
      {ComplexMatrix{{0.0, 0.0, 0.0}, {1.0 / 3.0, 0.0, 0.0}, {0.0, 1.0 / (3.0 * s3), 0.0}},
       ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {-1.0 / s3, 0.0, 0.0}},
       ComplexMatrix::identity(3)},
      {{"in_S_n", false}}));
  return out;
}

}  // namespace

const std::vector<TupleDocument>& builtin_fixtures() {
  static const std::vector<TupleDocument> all = build_all();
  return all;
}

const TupleDocument* find_fixture(const std::string& id) {
  for (const auto& f : builtin_fixtures())
    if (f.name == id) return &f;
  return nullptr;
}

}  // namespace dilatelab
