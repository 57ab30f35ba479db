#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcond/propgen.hpp"

namespace qcond {
namespace {

using test::kI;

TEST(HermitianEig, DiagonalInput) {
  const auto eig = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0}));
  ASSERT_EQ(eig.values.size(), 2u);
  EXPECT_NEAR(eig.values[0], 1.0, 1e-12);
  EXPECT_NEAR(eig.values[1], 3.0, 1e-12);
  EXPECT_NEAR(std::abs(eig.vectors[0][1]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(eig.vectors[1][0]), 1.0, 1e-12);
}

TEST(HermitianEig, PauliX) {
  const auto eig = hermitian_eig(test::pauli_x());
  EXPECT_NEAR(eig.values[0], -1.0, 1e-12);
  EXPECT_NEAR(eig.values[1], 1.0, 1e-12);
  const double r = 1.0 / std::sqrt(2.0);
  // (1, -1)/sqrt2 and (1, 1)/sqrt2 up to phase
  EXPECT_NEAR(std::abs(inner(eig.vectors[0], ComplexVector{r, -r})), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(inner(eig.vectors[1], ComplexVector{r, r})), 1.0, 1e-12);
}

TEST(HermitianEig, ComplexOffDiagonal) {
  const ComplexMatrix m{{2.0, kI}, {-kI, 2.0}};
  const auto eig = hermitian_eig(m);
  EXPECT_NEAR(eig.values[0], 1.0, 1e-12);
  EXPECT_NEAR(eig.values[1], 3.0, 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  const ComplexMatrix m{{1.0, 1.0}, {0.0, 1.0}};
  EXPECT_QCOND_ERROR(hermitian_eig(m), ErrorKind::NotHermitian);
}

TEST(HermitianEig, ReconstructsRandomMatrices) {
  Generator g(11);
  for (std::size_t dim : {1u, 2u, 3u, 5u, 8u}) {
    const ComplexMatrix h = g.random_hermitian(dim);
    const auto eig = hermitian_eig(h);
    EXPECT_MAT_NEAR(eig.reconstruct(), h, 1e-11);
    for (std::size_t i = 0; i + 1 < dim; ++i) EXPECT_LE(eig.values[i], eig.values[i + 1]);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        EXPECT_NEAR(std::abs(inner(eig.vectors[i], eig.vectors[j])), i == j ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(HermitianEig, DegenerateSpectrum) {
  Generator g(3);
  const ComplexMatrix u = g.random_unitary(4);
  const ComplexMatrix h = u * ComplexMatrix::diagonal({0.5, 0.5, 0.5, 2.0}) * u.adjoint();
  const auto eig = hermitian_eig(h);
  EXPECT_NEAR(eig.values[0], 0.5, 1e-12);
  EXPECT_NEAR(eig.values[2], 0.5, 1e-12);
  EXPECT_NEAR(eig.values[3], 2.0, 1e-12);
  EXPECT_MAT_NEAR(eig.reconstruct(), h, 1e-12);
}

TEST(PsdSqrt, Examples) {
  EXPECT_MAT_NEAR(psd_sqrt(ComplexMatrix::diagonal({4.0, 1.0})), ComplexMatrix::diagonal({2.0, 1.0}), 1e-12);
  EXPECT_MAT_NEAR(psd_sqrt(ComplexMatrix::identity(3)), ComplexMatrix::identity(3), 1e-12);
  EXPECT_MAT_NEAR(psd_sqrt(test::plus()), test::plus(), 1e-12);
}

TEST(PsdSqrt, SquaresBack) {
  Generator g(5);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = g.random_effect(3).matrix();
    const ComplexMatrix r = psd_sqrt(a);
    EXPECT_MAT_NEAR(r * r, a, 1e-12);
    EXPECT_TRUE(r.is_hermitian(1e-12));
  }
}

TEST(PsdSqrt, ToleratesTinyNegativeEigenvalue) {
  const ComplexMatrix m = ComplexMatrix::diagonal({1.0, -5e-11});
  EXPECT_MAT_NEAR(psd_sqrt(m), ComplexMatrix::diagonal({1.0, 0.0}), 1e-12);
}

TEST(PsdSqrt, RejectsNegativeEigenvalue) {
  EXPECT_QCOND_ERROR(psd_sqrt(ComplexMatrix::diagonal({1.0, -0.1})), ErrorKind::NotPSD);
}

TEST(LoewnerLeq, Examples) {
  EXPECT_TRUE(loewner_leq(test::p0(), ComplexMatrix::identity(2)));
  EXPECT_FALSE(loewner_leq(ComplexMatrix::identity(2), test::p0()));
  EXPECT_TRUE(loewner_leq(test::plus() * 0.5, test::plus()));
  EXPECT_TRUE(loewner_leq(test::p0(), test::p0()));
}

TEST(LoewnerLeq, RejectsNonHermitianDifference) {
  const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_QCOND_ERROR(loewner_leq(m, ComplexMatrix::identity(2)), ErrorKind::NotHermitian);
}

TEST(TraceProduct, Examples) {
  EXPECT_NEAR(trace_product(test::half_identity(), test::p0()).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(trace_product(test::p0(), test::p1())), 0.0, 1e-15);
  const cplx t = trace_product(ComplexMatrix::diagonal({0.75, 0.25}), ComplexMatrix::diagonal({2.0, -2.0}));
  EXPECT_NEAR(t.real(), 1.0, 1e-15);
  EXPECT_NEAR(t.imag(), 0.0, 1e-15);
}

TEST(TraceProduct, AgreesWithTraceOfProduct) {
  Generator g(9);
  const ComplexMatrix a = g.gaussian_matrix(4);
  const ComplexMatrix b = g.gaussian_matrix(4);
  EXPECT_NEAR(std::abs(trace_product(a, b) - (a * b).trace()), 0.0, 1e-12);
}

TEST(TraceProduct, DimMismatch) {
  EXPECT_QCOND_ERROR(trace_product(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                     ErrorKind::DimMismatch);
}

TEST(SimultaneousEigenbasis, StandardProjections) {
  const std::vector<ComplexMatrix> family{test::p0(), test::p1()};
  const auto basis = simultaneous_eigenbasis(family);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) {
    EXPECT_NEAR(std::max(std::abs(v[0]), std::abs(v[1])), 1.0, 1e-12);
  }
}

TEST(SimultaneousEigenbasis, PauliXWithIdentity) {
  const std::vector<ComplexMatrix> family{test::pauli_x(), ComplexMatrix::identity(2)};
  const auto basis = simultaneous_eigenbasis(family);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) {
    const ComplexVector xv = test::pauli_x() * v;
    EXPECT_NEAR(std::abs(inner(v, xv)), 1.0, 1e-12);
  }
}

TEST(SimultaneousEigenbasis, NonCommutingFamily) {
  const std::vector<ComplexMatrix> family{test::pauli_x(), test::pauli_z()};
  EXPECT_QCOND_ERROR(simultaneous_eigenbasis(family), ErrorKind::NotCommutingFamily);
}

TEST(SimultaneousEigenbasis, DiagonalizesRotatedCommutingFamily) {
  Generator g(21);
  const ComplexMatrix u = g.random_unitary(4);
  const std::vector<ComplexMatrix> family{
      u * ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0}) * u.adjoint(),
      u * ComplexMatrix::diagonal({0.2, 0.7, 0.7, 0.1}) * u.adjoint(),
  };
  const auto basis = simultaneous_eigenbasis(family);
  for (const auto& m : family) {
    const ComplexMatrix d = conjugate_by_basis(m, basis);
    EXPECT_LE(off_diagonal_mass(d), 1e-20);
  }
}

TEST(ComplexMatrix, AdjointAndCommutator) {
  const ComplexMatrix m{{1.0, kI}, {2.0, 3.0}};
  const ComplexMatrix expected{{1.0, 2.0}, {-kI, 3.0}};
  EXPECT_EQ(m.adjoint(), expected);
  EXPECT_MAT_NEAR(commutator(test::pauli_x(), test::pauli_z()),
                  ComplexMatrix({{0.0, -2.0}, {2.0, 0.0}}), 1e-15);
  EXPECT_TRUE(hermitian_part(m).is_hermitian(0.0));
}

TEST(ComplexMatrix, MismatchedArithmetic) {
  ComplexMatrix a = ComplexMatrix::identity(2);
  EXPECT_QCOND_ERROR(a += ComplexMatrix::identity(3), ErrorKind::DimMismatch);
}

}  // namespace
}  // namespace qcond
