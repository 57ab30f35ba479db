#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcond/operations.hpp"
#include "qcond/propgen.hpp"

namespace qcond {
namespace {

TEST(Apply, Examples) {
  const State half = State::maximally_mixed(2);
  EXPECT_MAT_NEAR(apply(luders(Effect(test::p0())).op(), half), ComplexMatrix::diagonal({0.5, 0.0}), 1e-15);
  EXPECT_MAT_NEAR(apply(holevo(Effect(test::p0()), State(test::p1())).op(), half),
                  ComplexMatrix::diagonal({0.0, 0.5}), 1e-15);
  const Operation flip({test::pauli_x()});
  EXPECT_MAT_NEAR(apply(flip, State(test::p0())), test::p1(), 0.0);
}

TEST(Apply, DimMismatch) {
  EXPECT_QCOND_ERROR(apply(Operation::identity(2), State::maximally_mixed(3)), ErrorKind::DimMismatch);
  EXPECT_QCOND_ERROR(dual_apply(Operation::identity(2), ComplexMatrix::identity(3)), ErrorKind::DimMismatch);
}

TEST(Operation, RejectsEmptyAndRaggedFamilies) {
  EXPECT_QCOND_ERROR(Operation(std::vector<ComplexMatrix>{}), ErrorKind::InvalidArgument);
  EXPECT_QCOND_ERROR(Operation({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}), ErrorKind::DimMismatch);
}

TEST(DualApply, LudersIsSelfDual) {
  Generator g(4);
  const Effect a = g.random_effect(3);
  const Operation op = luders(a).op();
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix h = g.random_hermitian(3);
    EXPECT_MAT_NEAR(dual_apply(op, h), apply(op, h), 1e-12);
  }
}

TEST(DualApply, HolevoDual) {
  Generator g(6);
  const Effect a = g.random_effect(3);
  const Effect b = g.random_effect(3);
  const State alpha = g.random_state(3);
  const ComplexMatrix expected = a.matrix() * trace_product(alpha.matrix(), b.matrix()).real();
  EXPECT_MAT_NEAR(dual_apply(holevo(a, alpha).op(), b.matrix()), expected, 1e-12);
}

TEST(DualApply, ChannelIsUnitalDual) {
  Generator g(8);
  const Operation ch = g.random_channel(3, 4);
  EXPECT_MAT_NEAR(dual_apply(ch, ComplexMatrix::identity(3)), ComplexMatrix::identity(3), 1e-12);
}

TEST(DualApply, DualityOnRandomTriples) {
  Generator g(12);
  for (int t = 0; t < 20; ++t) {
    const Operation op = g.random_operation_measuring(g.random_effect(3), 2);
    const State rho = g.random_state(3);
    const ComplexMatrix h = g.random_hermitian(3);
    const cplx lhs = trace_product(apply(op, rho), h);
    const cplx rhs = trace_product(rho.matrix(), dual_apply(op, h));
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(MeasuredEffect, Examples) {
  Generator g(13);
  const Effect a = g.random_effect(2);
  EXPECT_MAT_NEAR(measured_effect(luders(a).op()).matrix(), a.matrix(), 1e-12);
  EXPECT_MAT_NEAR(measured_effect(holevo(a, g.random_state(2)).op()).matrix(), a.matrix(), 1e-12);
  EXPECT_MAT_NEAR(measured_effect(g.random_channel(2, 3)).matrix(), ComplexMatrix::identity(2), 1e-12);
}

TEST(IsChannel, Examples) {
  EXPECT_TRUE(is_channel(Operation({ComplexMatrix::identity(2)})));
  EXPECT_FALSE(is_channel(luders(Effect(test::p0())).op()));
  EXPECT_TRUE(is_channel(Operation({test::p0(), test::p1()})));
}

TEST(Validate, DetectsTraceIncreasingFamily) {
  EXPECT_TRUE(validate(Operation({test::p0(), test::p1()})).empty());
  EXPECT_FALSE(validate(Operation({ComplexMatrix::identity(2), test::p0()})).empty());
}

TEST(Compose, LudersKrausFamily) {
  Generator g(14);
  const Effect a = g.random_effect(2);
  const Effect b = g.random_effect(2);
  const Operation c = compose(luders(a).op(), luders(b).op());
  ASSERT_EQ(c.kraus().size(), 1u);
  EXPECT_MAT_NEAR(c.kraus()[0], psd_sqrt(b.matrix()) * psd_sqrt(a.matrix()), 1e-12);
}

TEST(Compose, HolevoComposition) {
  Generator g(15);
  const Effect a = g.random_effect(3);
  const Effect b = g.random_effect(3);
  const State alpha = g.random_state(3);
  const State beta = g.random_state(3);
  const Operation c = compose(holevo(a, alpha).op(), holevo(b, beta).op());
  const double t = trace_product(alpha.matrix(), b.matrix()).real();
  const Operation predicted = holevo(Effect(a.matrix() * t), beta).op();
  EXPECT_LE(choi_distance(c, predicted), 1e-12);
  EXPECT_TRUE(maps_equal(c, predicted));
}

TEST(Compose, IdentityIsNeutral) {
  Generator g(16);
  const Operation op = g.random_operation_measuring(g.random_effect(3), 2);
  EXPECT_TRUE(maps_equal(compose(Operation::identity(3), op), op));
  EXPECT_TRUE(maps_equal(compose(op, Operation::identity(3)), op));
}

TEST(Compose, AppliesFirstThenSecond) {
  Generator g(17);
  const Operation f = g.random_operation_measuring(g.random_effect(2), 2);
  const Operation s = g.random_operation_measuring(g.random_effect(2), 2);
  const State rho = g.random_state(2);
  EXPECT_MAT_NEAR(apply(compose(f, s), rho), apply(s, apply(f, rho)), 1e-12);
}

TEST(Choi, DistinguishesDifferentKrausFamiliesOfTheSameMap) {
  // {P0, P1} and {Z/sqrt2, I/sqrt2} both realize dephasing.
  const double r = 1.0 / std::sqrt(2.0);
  const Operation a({test::p0(), test::p1()});
  const Operation b({test::pauli_z() * r, ComplexMatrix::identity(2) * r});
  EXPECT_TRUE(maps_equal(a, b));
  EXPECT_FALSE(maps_equal(a, Operation::identity(2)));
  EXPECT_EQ(choi_matrix(a).dim(), 4u);
}

TEST(SequentialProduct, Examples) {
  Generator g(18);
  const Effect a = g.random_effect(3);
  const Effect b = g.random_effect(3);
  const ComplexMatrix ra = psd_sqrt(a.matrix());
  EXPECT_MAT_NEAR(sequential_product(luders(a), b).matrix(), ra * b.matrix() * ra, 1e-12);
  const MeasurementContext ctx(g.random_operation_measuring(a, 3));
  EXPECT_MAT_NEAR(sequential_product(ctx, Effect::identity(3)).matrix(), a.matrix(), 1e-12);
}

TEST(SequentialProduct, AtomicEffectGivesMultiple) {
  Generator g(19);
  const Effect a = g.random_atomic_effect(3);
  for (int t = 0; t < 5; ++t) {
    const MeasurementContext ctx(g.random_operation_measuring(a, 2));
    const ComplexMatrix prod = sequential_product(ctx, g.random_effect(3)).matrix();
    const double lambda = prod.trace().real();
    EXPECT_GE(lambda, -1e-10);
    EXPECT_LE(lambda, 1.0 + 1e-10);
    EXPECT_MAT_NEAR(prod, a.matrix() * lambda, 1e-10);
  }
}

TEST(ConditionalProb, HolevoIsIndependentOfState) {
  Generator g(20);
  const Effect a = g.random_effect(2);
  const Effect b = g.random_effect(2);
  const State alpha = g.random_state(2);
  const double expected = trace_product(alpha.matrix(), b.matrix()).real();
  for (int t = 0; t < 5; ++t) {
    EXPECT_NEAR(conditional_prob(g.random_state(2), holevo(a, alpha), b), expected, 1e-12);
  }
}

TEST(ConditionalProb, Examples) {
  const State half = State::maximally_mixed(2);
  EXPECT_NEAR(conditional_prob(half, luders(Effect(test::p0())), Effect(test::plus())), 0.5, 1e-15);
  EXPECT_NEAR(conditional_prob(half, luders(Effect(test::plus())), Effect::identity(2)), 1.0, 1e-15);
}

TEST(ConditionalProb, ZeroProbabilityCondition) {
  EXPECT_QCOND_ERROR(conditional_prob(State(test::p1()), luders(Effect(test::p0())), Effect::identity(2)),
                     ErrorKind::ZeroProbabilityCondition);
}

TEST(UpdatedState, Examples) {
  EXPECT_MAT_NEAR(updated_state(State::maximally_mixed(2), luders(Effect(test::p0()))).matrix(), test::p0(), 1e-15);
  Generator g(22);
  const State alpha = g.random_state(3);
  EXPECT_MAT_NEAR(updated_state(g.random_state(3), holevo(g.random_effect(3), alpha)).matrix(), alpha.matrix(),
                  1e-12);
  const State rho = g.random_state(3);
  EXPECT_MAT_NEAR(updated_state(rho, MeasurementContext(Operation::identity(3))).matrix(), rho.matrix(), 1e-15);
  EXPECT_QCOND_ERROR(updated_state(State(test::p1()), luders(Effect(test::p0()))),
                     ErrorKind::ZeroProbabilityCondition);
}

TEST(LudersHolevo, Construction) {
  EXPECT_TRUE(maps_equal(luders(Effect::identity(2)).op(), Operation::identity(2)));
  EXPECT_MAT_NEAR(apply(holevo(Effect(test::p0()), State(test::p1())).op(), State(test::p0())), test::p1(), 1e-15);
  EXPECT_EQ(luders(Effect(test::p0())).op().kraus().size(), 1u);
  EXPECT_EQ(holevo(Effect(test::p0()), State(test::p1())).op().kraus().size(), 1u);
  EXPECT_QCOND_ERROR(luders(Effect(ComplexMatrix::diagonal({0.5, -0.5}))), ErrorKind::NotPSD);
}

TEST(LudersHolevo, HolevoKrausCountIsProductOfRanks) {
  const Operation op = holevo(Effect(ComplexMatrix::diagonal({0.3, 0.0, 0.9})),
                              State(ComplexMatrix::diagonal({0.5, 0.5, 0.0})))
                           .op();
  EXPECT_EQ(op.kraus().size(), 4u);
}

TEST(Bayes2, Examples) {
  const State rho(ComplexMatrix::diagonal({0.6, 0.4}));
  // P(P1 | P0) = 0 on both sides.
  EXPECT_NEAR(bayes2_residual(rho, luders(Effect(test::p0())), luders(Effect(test::p1()))), 0.0, 1e-15);

  // Hand computation: P0 (+) P0 = P0/2, so P(+|P0) = 1/2; (+) P0 (+) = (+)/2, so
  // P(P0|+) = 1/2; P(+) = 1/2 and P(P0) = 0.9, giving |1/2 - (1/2)(1/2)/0.9| = 2/9.
  const State skew(ComplexMatrix::diagonal({0.9, 0.1}));
  EXPECT_NEAR(bayes2_residual(skew, luders(Effect(test::p0())), luders(Effect(test::plus()))), 2.0 / 9.0, 1e-14);

  Generator g(23);
  const MeasurementContext ctx = luders(g.random_effect(3));
  EXPECT_NEAR(bayes2_residual(g.random_state(3), ctx, ctx), 0.0, 1e-14);
  EXPECT_NEAR(bayes2_algebraic_residual(ctx, ctx), 0.0, 1e-14);
}

TEST(Bayes2, AlgebraicCriterionMatchesCommutation) {
  EXPECT_NEAR(bayes2_algebraic_residual(luders(Effect(test::p0())), luders(Effect(test::p1()))), 0.0, 1e-15);
  EXPECT_GT(bayes2_algebraic_residual(luders(Effect(test::p0())), luders(Effect(test::plus()))), 1e-6);
}

}  // namespace
}  // namespace qcond
