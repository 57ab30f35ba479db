#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qcond/propgen.hpp"
#include "qcond/suites.hpp"

namespace qcond {
namespace {

TEST(Generator, SameSeedSameObjects) {
  Generator a(123);
  Generator b(123);
  EXPECT_EQ(a.random_state(3).matrix(), b.random_state(3).matrix());
  EXPECT_EQ(a.random_effect(4).matrix(), b.random_effect(4).matrix());
  const Observable oa = a.random_observable(3, 3);
  const Observable ob = b.random_observable(3, 3);
  for (std::size_t i = 0; i < oa.size(); ++i) EXPECT_EQ(oa.effects()[i].matrix(), ob.effects()[i].matrix());
}

TEST(Generator, DifferentSeedsDiffer) {
  Generator a(1);
  Generator b(2);
  EXPECT_NE(a.random_state(2).matrix(), b.random_state(2).matrix());
  EXPECT_NE(Generator::derive_seed(7, 0), Generator::derive_seed(7, 1));
  EXPECT_NE(Generator::derive_seed(7, 0), Generator::derive_seed(8, 0));
}

TEST(Generator, SplitMixReferenceStream) {
  // splitmix64 from the reference implementation, seed 1234567
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng(), 6457827717110365317ULL);
  EXPECT_EQ(rng(), 3203168211198807973ULL);
  EXPECT_EQ(rng(), 9817491932198370423ULL);
}

TEST(Generator, UniformRange) {
  Generator g(3);
  for (int t = 0; t < 1000; ++t) {
    const double u = g.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(g.index(5), 5u);
  }
}

TEST(Generator, ObjectsPassValidation) {
  Generator g(4);
  for (std::size_t dim : {1u, 2u, 3u, 5u}) {
    EXPECT_TRUE(validate(g.random_state(dim)).empty());
    EXPECT_TRUE(validate(g.random_effect(dim)).empty());
    const Observable obs = g.random_observable(dim, 3);
    EXPECT_TRUE(validate(obs).empty());
    EXPECT_MAT_NEAR(obs.total(), ComplexMatrix::identity(dim), 1e-10);
    EXPECT_TRUE(validate(g.random_atomic_observable(dim)).empty());
    EXPECT_TRUE(is_channel(g.random_channel(dim, 3)));
    const ComplexMatrix u = g.random_unitary(dim);
    EXPECT_MAT_NEAR(u * u.adjoint(), ComplexMatrix::identity(dim), 1e-12);
  }
}

TEST(Generator, ProbabilityVector) {
  Generator g(5);
  const auto p = g.random_probability_vector(6);
  double s = 0.0;
  for (double x : p) {
    EXPECT_GE(x, 0.0);
    s += x;
  }
  EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(Generator, OperationMeasuringEffect) {
  Generator g(6);
  const Effect a = g.random_effect(3);
  EXPECT_MAT_NEAR(measured_effect(g.random_operation_measuring(a, 3)).matrix(), a.matrix(), 1e-10);
  const Observable obs = g.random_observable(3, 2);
  const Instrument ins = g.random_instrument_measuring(obs, 2);
  EXPECT_TRUE(validate(ins).empty());
  const Observable m = measured_observable(ins);
  for (std::size_t x = 0; x < obs.size(); ++x) {
    EXPECT_MAT_NEAR(m.effects()[x].matrix(), obs.effects()[x].matrix(), 1e-10);
  }
}

TEST(Generator, SingleKrausChannelGivesLudersUpToUnitary) {
  Generator g(7);
  const Effect a = g.random_effect(2);
  const Operation op = g.random_operation_measuring(a, 1);
  ASSERT_EQ(op.kraus().size(), 1u);
  // K = U a^{1/2}, so K* K = a and the dual of I is a.
  EXPECT_MAT_NEAR(op.kraus()[0].adjoint() * op.kraus()[0], a.matrix(), 1e-12);
}

TEST(Generator, DifferentSeedsGiveDifferentMaps) {
  const Effect a(ComplexMatrix::diagonal({0.4, 0.9}));
  for (std::uint64_t seed = 1; seed < 5; ++seed) {
    Generator g1(seed);
    Generator g2(seed + 100);
    const Operation o1 = g1.random_operation_measuring(a, 2);
    const Operation o2 = g2.random_operation_measuring(a, 2);
    if (choi_distance(o1, o2) > 1e-6) return;
  }
  FAIL() << "every seed pair collided";
}

TEST(Generator, InvalidArguments) {
  Generator g(8);
  EXPECT_QCOND_ERROR(g.random_observable(2, 0), ErrorKind::InvalidArgument);
  EXPECT_QCOND_ERROR(g.random_channel(2, 0), ErrorKind::InvalidArgument);
}

TEST(Suites, CatalogAndUnknownSuite) {
  EXPECT_GE(suite_catalog().size(), 10u);
  EXPECT_EQ(suite_info("duality").default_trials, 200u);
  EXPECT_QCOND_ERROR(suite_info("no-such-suite"), ErrorKind::UnknownSuite);
  EXPECT_QCOND_ERROR(run_suite("no-such-suite", {2}, 1, 7), ErrorKind::UnknownSuite);
}

TEST(Suites, DualityExample) {
  const SuiteReport r = run_suite("duality", {2, 3}, 50, 7);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.passes, 100u);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_LT(r.max_residual, 1e-9);
}

TEST(Suites, NonCommutingBayesFindsWitnesses) {
  const SuiteReport r = run_suite("bayes2-luders-noncommuting", {2}, 50, 7);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.kind, SuiteKind::Search);
  EXPECT_FALSE(r.witnesses.empty());
  EXPECT_GT(r.witnesses.front().residual, 1e-6);
  EXPECT_FALSE(r.witnesses.front().witness.is_null());
}

TEST(Suites, ZeroTrialsIsEmptyPass) {
  const SuiteReport r = run_suite("theorem12", {2, 3}, 0, 7);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.passes, 0u);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Suites, Deterministic) {
  const json a = run_suite("entropy-chain-single", {2}, 10, 99).to_json();
  const json b = run_suite("entropy-chain-single", {2}, 10, 99).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  const json c = run_suite("entropy-chain-single", {2}, 10, 100).to_json();
  EXPECT_NE(a.dump(), c.dump());
}

TEST(Suites, ReportJsonShape) {
  const json j = run_suite("lemma11", {2}, 5, 7).to_json();
  for (const char* key : {"suite", "seed", "dims", "trials", "passes", "failures"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("suite"), "lemma11");
  EXPECT_EQ(j.at("seed"), 7);
}

}  // namespace
}  // namespace qcond
