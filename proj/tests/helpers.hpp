#pragma once

// Small shared bits for the unit tests: an ErrorKind extractor and matrix
// comparison helpers.

#include <utility>

#include "doctest.h"
#include "qcent/errors.hpp"
#include "qcent/linalg.hpp"

namespace test {

// Runs f and returns the ErrorKind it threw; fails the assertion if nothing
// was thrown (and returns a dummy so the caller still compiles).
template <typename F>
qcent::ErrorKind thrown_kind(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const qcent::Error& e) {
    return e.kind();
  }
  FAIL_CHECK("expected a qcent::Error");
  return qcent::ErrorKind::OutOfRange;
}

inline double max_abs_diff(const qcent::Matrix& a, const qcent::Matrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

inline qcent::Matrix mat2(qcent::Complex a, qcent::Complex b, qcent::Complex c,
                          qcent::Complex d) {
  qcent::Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace test
