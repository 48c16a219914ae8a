#ifndef DILATELAB_FIXTURES_HPP
#define DILATELAB_FIXTURES_HPP

#include <vector>

#include "dilatelab/document.hpp"

namespace dilatelab {

// Built-in example corpus. IDs: bdf-pair, exmp:06, eg1, exmp:05, eg2, eg3,
// last-eg. Every fixture carries its expected verdicts.
const std::vector<TupleDocument>& builtin_fixtures();

// nullptr when the id is unknown.
const TupleDocument* find_fixture(const std::string& id);

}  // namespace dilatelab

#endif
