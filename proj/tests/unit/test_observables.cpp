#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qcond/observables.hpp"
#include "qcond/propgen.hpp"

namespace qcond {
namespace {

Observable z_basis() { return Observable({"x0", "x1"}, {Effect(test::p0()), Effect(test::p1())}); }
Observable x_basis() { return Observable({"+", "-"}, {Effect(test::plus()), Effect(test::minus())}); }
RealValuedObservable z_valued() { return RealValuedObservable(z_basis(), std::vector<double>{1.0, -1.0}); }

TEST(EffectFamily, LabelsAndErrors) {
  const Observable a = z_basis();
  EXPECT_EQ(a.index_of("x1"), 1u);
  EXPECT_QCOND_ERROR(a.index_of("x2"), ErrorKind::UnknownLabel);
  EXPECT_QCOND_ERROR(Observable({"a", "a"}, {Effect(test::p0()), Effect(test::p1())}), ErrorKind::InvalidArgument);
  EXPECT_QCOND_ERROR(Observable({"a", "b"}, {Effect(test::p0()), Effect::identity(3)}), ErrorKind::DimMismatch);
}

TEST(Validate, ObservableMustSumToIdentity) {
  EXPECT_TRUE(validate(z_basis()).empty());
  EXPECT_FALSE(validate(Observable({"x0"}, {Effect(test::p0())})).empty());
  EXPECT_TRUE(validate(SubObservable({"x0"}, {Effect(test::p0())})).empty());
  EXPECT_FALSE(validate(SubObservable({"a", "b"}, {Effect::identity(2), Effect(test::p0())})).empty());
}

TEST(Povm, Examples) {
  const Observable a = z_basis();
  const std::vector<std::string> one{"x0"};
  const std::vector<std::string> all{"x0", "x1"};
  EXPECT_MAT_NEAR(povm(a, one).matrix(), test::p0(), 0.0);
  EXPECT_MAT_NEAR(povm(a, all).matrix(), ComplexMatrix::identity(2), 0.0);
  EXPECT_MAT_NEAR(povm(a, {}).matrix(), ComplexMatrix::zero(2), 0.0);
  const std::vector<std::string> unknown{"nope"};
  EXPECT_QCOND_ERROR(povm(a, unknown), ErrorKind::UnknownLabel);
}

TEST(Distribution, Examples) {
  const auto half = distribution(State::maximally_mixed(2), z_basis());
  ASSERT_EQ(half.size(), 2u);
  EXPECT_EQ(half[0].first, "x0");
  EXPECT_NEAR(half[0].second, 0.5, 1e-15);
  EXPECT_NEAR(half[1].second, 0.5, 1e-15);
  const auto pure = distribution(State(test::p0()), z_basis());
  EXPECT_NEAR(pure[0].second, 1.0, 1e-15);
  EXPECT_NEAR(pure[1].second, 0.0, 1e-15);
  const auto pm = distribution(State(ComplexMatrix::diagonal({0.75, 0.25})), x_basis());
  EXPECT_NEAR(pm[0].second, 0.5, 1e-15);
  EXPECT_NEAR(pm[1].second, 0.5, 1e-15);
  EXPECT_QCOND_ERROR(distribution(State::maximally_mixed(3), z_basis()), ErrorKind::DimMismatch);
}

TEST(StochasticOperator, Examples) {
  EXPECT_MAT_NEAR(stochastic_operator(z_valued()), test::pauli_z(), 0.0);
  const RealValuedObservable constant(z_basis(), std::vector<double>{2.5, 2.5});
  EXPECT_MAT_NEAR(stochastic_operator(constant), ComplexMatrix::identity(2) * 2.5, 1e-15);
  const RealValuedObservable plus_two(x_basis(), std::vector<double>{2.0, 0.0});
  EXPECT_MAT_NEAR(stochastic_operator(plus_two), ComplexMatrix({{1.0, 1.0}, {1.0, 1.0}}), 1e-15);
}

TEST(RealValuedObservable, ValuesByLabel) {
  const RealValuedObservable b(z_basis(), std::map<std::string, double>{{"x1", -3.0}, {"x0", 4.0}});
  EXPECT_EQ(b.values(), (std::vector<double>{4.0, -3.0}));
  EXPECT_QCOND_ERROR(RealValuedObservable(z_basis(), std::map<std::string, double>{{"x0", 1.0}}),
                     ErrorKind::UnknownLabel);
  EXPECT_QCOND_ERROR(RealValuedObservable(z_basis(), std::vector<double>{1.0}), ErrorKind::InvalidArgument);
}

TEST(Expectation, Examples) {
  EXPECT_NEAR(expectation(State::maximally_mixed(2), z_valued()), 0.0, 1e-15);
  EXPECT_NEAR(expectation(State(test::p0()), z_valued()), 1.0, 1e-15);
  EXPECT_NEAR(expectation(State(ComplexMatrix::diagonal({0.75, 0.25})), z_valued()), 0.5, 1e-15);
  EXPECT_QCOND_ERROR(expectation(State::maximally_mixed(3), z_valued()), ErrorKind::DimMismatch);
}

TEST(ConditionalExpectation, Examples) {
  Generator g(31);
  const RealValuedObservable b = g.random_real_valued(g.random_observable(3, 3));
  const State rho = g.random_state(3);
  EXPECT_NEAR(conditional_expectation(rho, MeasurementContext(Operation::identity(3)), b), expectation(rho, b),
              1e-12);

  const State alpha = g.random_state(3);
  const MeasurementContext h = holevo(g.random_effect(3), alpha);
  const double expected = trace_product(alpha.matrix(), stochastic_operator(b)).real();
  EXPECT_NEAR(conditional_expectation(rho, h, b), expected, 1e-12);
  EXPECT_NEAR(conditional_expectation(g.random_state(3), h, b), expected, 1e-12);

  EXPECT_NEAR(conditional_expectation(State::maximally_mixed(2), luders(Effect(test::p0())), z_valued()), 1.0,
              1e-15);
  EXPECT_QCOND_ERROR(conditional_expectation(State(test::p1()), luders(Effect(test::p0())), z_valued()),
                     ErrorKind::ZeroProbabilityCondition);
}

TEST(MinimalExtension, Examples) {
  const Observable ext = minimal_extension(SubObservable({"x0"}, {Effect(test::p0())}));
  ASSERT_EQ(ext.size(), 2u);
  EXPECT_EQ(ext.labels()[1], std::string(kComplementLabel));
  EXPECT_MAT_NEAR(ext.effects()[1].matrix(), test::p1(), 1e-15);

  const Observable same = minimal_extension(SubObservable(z_basis().labels(), z_basis().effects()));
  EXPECT_EQ(same.size(), 2u);
  EXPECT_EQ(same.labels(), z_basis().labels());

  const Observable halves = minimal_extension(SubObservable({"h"}, {Effect(test::half_identity())}));
  ASSERT_EQ(halves.size(), 2u);
  EXPECT_MAT_NEAR(halves.effects()[1].matrix(), test::half_identity(), 1e-15);
}

TEST(Commuting, Examples) {
  EXPECT_TRUE(is_commuting(z_basis()));
  EXPECT_FALSE(jointly_commuting(z_basis(), x_basis()));
  EXPECT_TRUE(jointly_commuting(z_basis(), z_basis()));
  Generator g(32);
  const Observable a = g.random_observable(2, 2);
  EXPECT_EQ(jointly_commuting(a, a), is_commuting(a));
  const Observable sharp = g.random_sharp_observable(3, 2);
  EXPECT_TRUE(is_commuting(sharp));
  EXPECT_QCOND_ERROR(jointly_commuting(z_basis(), g.random_observable(3, 2)), ErrorKind::DimMismatch);
}

}  // namespace
}  // namespace qcond
