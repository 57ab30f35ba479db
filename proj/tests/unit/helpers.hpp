#pragma once

#include <gtest/gtest.h>

#include <cmath>

#include "qcond/error.hpp"
#include "qcond/linalg.hpp"

namespace qcond::test {

inline const cplx kI{0.0, 1.0};

inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_z() { return ComplexMatrix::diagonal({1.0, -1.0}); }
inline ComplexMatrix p0() { return ComplexMatrix::diagonal({1.0, 0.0}); }
inline ComplexMatrix p1() { return ComplexMatrix::diagonal({0.0, 1.0}); }
inline ComplexMatrix plus() { return {{0.5, 0.5}, {0.5, 0.5}}; }
inline ComplexMatrix minus() { return {{0.5, -0.5}, {-0.5, 0.5}}; }
inline ComplexMatrix half_identity(std::size_t n = 2) {
  return ComplexMatrix::identity(n) * (1.0 / static_cast<double>(n));
}

inline ::testing::AssertionResult matrices_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.dim() != b.dim()) return ::testing::AssertionFailure() << "dims " << a.dim() << " vs " << b.dim();
  const double d = frobenius_distance(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "distance " << d << " > " << tol;
}

}  // namespace qcond::test

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_TRUE(::qcond::test::matrices_near((a), (b), (tol)))

#define EXPECT_QCOND_ERROR(stmt, expected_kind)                                     \
  do {                                                                              \
    try {                                                                           \
      stmt;                                                                         \
      ADD_FAILURE() << "expected " << ::qcond::to_string(expected_kind);            \
    } catch (const ::qcond::Error& e) {                                             \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                               \
    }                                                                               \
  } while (0)
