#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcond/instruments.hpp"
#include "qcond/propgen.hpp"

namespace qcond {
namespace {

Observable z_basis() { return Observable({"x0", "x1"}, {Effect(test::p0()), Effect(test::p1())}); }
Observable x_basis() { return Observable({"+", "-"}, {Effect(test::plus()), Effect(test::minus())}); }

void expect_family_near(const EffectFamily& a, const EffectFamily& b, double tol) {
  ASSERT_EQ(a.labels(), b.labels());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_MAT_NEAR(a.effects()[i].matrix(), b.effects()[i].matrix(), tol);
}

TEST(Instrument, Construction) {
  EXPECT_QCOND_ERROR(Instrument({"a"}, {}), ErrorKind::InvalidArgument);
  EXPECT_QCOND_ERROR(Instrument({"a", "b"}, {Operation::identity(2), Operation::identity(3)}),
                     ErrorKind::DimMismatch);
  const Instrument t = Instrument::trivial(Operation::identity(2));
  EXPECT_EQ(t.size(), 1u);
  EXPECT_QCOND_ERROR(t.index_of("nope"), ErrorKind::UnknownLabel);
  EXPECT_TRUE(validate(t).empty());
  EXPECT_FALSE(validate(Instrument({"a"}, {luders(Effect(test::p0())).op()})).empty());
}

TEST(BarChannel, Examples) {
  const Operation dephase = bar_channel(luders_instrument(z_basis()));
  const ComplexMatrix rho{{0.6, 0.3}, {0.3, 0.4}};
  EXPECT_MAT_NEAR(apply(dephase, rho), ComplexMatrix::diagonal({0.6, 0.4}), 1e-15);
  EXPECT_TRUE(maps_equal(bar_channel(Instrument::trivial(Operation::identity(2))), Operation::identity(2)));

  Generator g(41);
  const Observable a = g.random_observable(3, 3);
  const auto alphas = g.random_alphas(a);
  const State s = g.random_state(3);
  ComplexMatrix expected(3);
  for (std::size_t x = 0; x < a.size(); ++x) {
    expected += alphas.at(a.labels()[x]).matrix() * prob(s, a.effects()[x]);
  }
  EXPECT_MAT_NEAR(apply(bar_channel(holevo_instrument(a, alphas)), s), expected, 1e-12);
}

TEST(MeasuredObservable, Examples) {
  Generator g(42);
  const Observable a = g.random_observable(3, 2);
  expect_family_near(measured_observable(luders_instrument(a)), a, 1e-12);
  expect_family_near(measured_observable(holevo_instrument(a, g.random_alphas(a))), a, 1e-12);
  expect_family_near(measured_observable(g.random_instrument_measuring(a, 2)), a, 1e-12);
  const Observable whole = measured_observable(Instrument::trivial(g.random_channel(3, 2)));
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_MAT_NEAR(whole.effects()[0].matrix(), ComplexMatrix::identity(3), 1e-12);
}

TEST(LudersHolevoInstrument, Examples) {
  const Instrument l = luders_instrument(z_basis());
  EXPECT_MAT_NEAR(apply(l.op("x0"), State::maximally_mixed(2)), ComplexMatrix::diagonal({0.5, 0.0}), 1e-15);

  const std::map<std::string, State> alphas{{"x0", State(test::p1())}, {"x1", State(test::p0())}};
  const Instrument h = holevo_instrument(z_basis(), alphas);
  EXPECT_MAT_NEAR(apply(h.op("x0"), State(test::p0())), test::p1(), 1e-15);

  const std::map<std::string, State> partial{{"x0", State(test::p1())}};
  EXPECT_QCOND_ERROR(holevo_instrument(z_basis(), partial), ErrorKind::MissingAlpha);
}

TEST(ConditionEffect, Examples) {
  Generator g(43);
  const Observable atoms = g.random_atomic_observable(3);
  const Effect a = g.random_effect(3);
  ComplexMatrix expected(3);
  for (const auto& p : atoms.effects()) {
    expected += p.matrix() * trace_product(p.matrix(), a.matrix()).real();
  }
  EXPECT_MAT_NEAR(condition_effect(a, luders_instrument(atoms)).matrix(), expected, 1e-12);

  const Observable obs = g.random_observable(3, 3);
  const auto alphas = g.random_alphas(obs);
  ComplexMatrix hol(3);
  for (std::size_t x = 0; x < obs.size(); ++x) {
    hol += obs.effects()[x].matrix() * trace_product(alphas.at(obs.labels()[x]).matrix(), a.matrix()).real();
  }
  EXPECT_MAT_NEAR(condition_effect(a, holevo_instrument(obs, alphas)).matrix(), hol, 1e-12);

  const Instrument r = g.random_instrument_measuring(obs, 2);
  EXPECT_MAT_NEAR(condition_effect(Effect::identity(3), r).matrix(), ComplexMatrix::identity(3), 1e-12);
  EXPECT_QCOND_ERROR(condition_effect(Effect::identity(2), r), ErrorKind::DimMismatch);
}

TEST(ConditionSubobservable, Examples) {
  Generator g(44);
  const Observable b = g.random_observable(2, 3);
  const SubObservable lp = condition_subobservable(b, luders(Effect(test::p0())));
  for (std::size_t y = 0; y < b.size(); ++y) {
    EXPECT_MAT_NEAR(lp.effects()[y].matrix(), test::p0() * b.effects()[y].matrix() * test::p0(), 1e-15);
  }

  const SubObservable whole = condition_subobservable(b, MeasurementContext(g.random_channel(2, 2)));
  EXPECT_MAT_NEAR(whole.total(), ComplexMatrix::identity(2), 1e-12);

  const Effect a = g.random_effect(2);
  const State alpha = g.random_state(2);
  const SubObservable h = condition_subobservable(b, holevo(a, alpha));
  for (std::size_t y = 0; y < b.size(); ++y) {
    const double t = trace_product(alpha.matrix(), b.effects()[y].matrix()).real();
    EXPECT_MAT_NEAR(h.effects()[y].matrix(), a.matrix() * t, 1e-12);
  }
}

TEST(ConditionObservable, Examples) {
  Generator g(45);
  // diagonal B with atomic diagonal A: (B|A) = B
  const Observable b({"y0", "y1"}, {Effect(ComplexMatrix::diagonal({0.3, 0.8})),
                                    Effect(ComplexMatrix::diagonal({0.7, 0.2}))});
  expect_family_near(condition_observable(b, luders_instrument(z_basis())), b, 1e-15);

  const Observable a = g.random_observable(2, 2);
  const auto alphas = g.random_alphas(a);
  const Observable hb = condition_observable(b, holevo_instrument(a, alphas));
  for (std::size_t y = 0; y < b.size(); ++y) {
    ComplexMatrix expected(2);
    for (std::size_t x = 0; x < a.size(); ++x) {
      expected += a.effects()[x].matrix() *
                  trace_product(alphas.at(a.labels()[x]).matrix(), b.effects()[y].matrix()).real();
    }
    EXPECT_MAT_NEAR(hb.effects()[y].matrix(), expected, 1e-12);
  }

  const Observable zx = condition_observable(x_basis(), luders_instrument(z_basis()));
  for (const auto& e : zx.effects()) EXPECT_MAT_NEAR(e.matrix(), test::half_identity(), 1e-15);

  const RealValuedObservable valued(x_basis(), std::vector<double>{3.0, -1.0});
  const RealValuedObservable cond = condition_observable(valued, luders_instrument(z_basis()));
  EXPECT_EQ(cond.values(), valued.values());
}

TEST(ConditionInstrument, Examples) {
  Generator g(46);
  const Instrument j = g.random_instrument_measuring(g.random_observable(2, 2), 2);
  const Instrument id = Instrument::trivial(Operation::identity(2));
  EXPECT_TRUE(maps_equal(condition_instrument(j, id), j));

  const Instrument i = g.random_instrument_measuring(g.random_observable(2, 3), 2);
  expect_family_near(measured_observable(condition_instrument(j, i)),
                     condition_observable(measured_observable(j), i), 1e-12);

  const Observable a = g.random_observable(2, 2);
  const Observable b = g.random_observable(2, 2);
  const auto alphas = g.random_alphas(a);
  const auto betas = g.random_alphas(b);
  const Instrument cond = condition_instrument(holevo_instrument(b, betas), holevo_instrument(a, alphas));
  const State rho = g.random_state(2);
  for (std::size_t y = 0; y < b.size(); ++y) {
    double w = 0.0;
    for (std::size_t x = 0; x < a.size(); ++x) {
      w += prob(rho, a.effects()[x]) *
           trace_product(alphas.at(a.labels()[x]).matrix(), b.effects()[y].matrix()).real();
    }
    EXPECT_MAT_NEAR(apply(cond.ops()[y], rho), betas.at(b.labels()[y]).matrix() * w, 1e-12);
  }
}

TEST(ComposeInstruments, HolevoComposition) {
  Generator g(47);
  const Observable a = g.random_observable(3, 2);
  const Observable b = g.random_observable(3, 3);
  const auto alphas = g.random_alphas(a);
  const auto betas = g.random_alphas(b);
  const Instrument c = compose_instruments(holevo_instrument(a, alphas), holevo_instrument(b, betas));
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.labels()[0], a.labels()[0] + "," + b.labels()[0]);
  EXPECT_EQ(c.labels()[1], a.labels()[0] + "," + b.labels()[1]);
  std::vector<std::string> labels;
  std::vector<Effect> effects;
  std::map<std::string, State> targets;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      const std::string label = a.labels()[x] + "," + b.labels()[y];
      const double t = trace_product(alphas.at(a.labels()[x]).matrix(), b.effects()[y].matrix()).real();
      labels.push_back(label);
      effects.emplace_back(a.effects()[x].matrix() * t);
      targets.emplace(label, betas.at(b.labels()[y]));
    }
  }
  const Instrument predicted = holevo_instrument(Observable(labels, effects), targets);
  EXPECT_LE(choi_distance(c, predicted), 1e-12);
}

TEST(ComposeInstruments, LudersComposition) {
  const Observable b({"y0", "y1"}, {Effect(ComplexMatrix::diagonal({0.3, 0.8})),
                                    Effect(ComplexMatrix::diagonal({0.7, 0.2}))});
  const Observable a({"x0", "x1"}, {Effect(ComplexMatrix::diagonal({0.9, 0.4})),
                                    Effect(ComplexMatrix::diagonal({0.1, 0.6}))});
  const Instrument c = compose_instruments(luders_instrument(a), luders_instrument(b));
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const Effect prod(a.effects()[x].matrix() * b.effects()[y].matrix());
      EXPECT_TRUE(maps_equal(c.ops()[2 * x + y], luders(prod).op()));
    }
  }

  const Observable z = z_basis();
  const Observable xb = x_basis();
  const Instrument zx = compose_instruments(luders_instrument(z), luders_instrument(xb));
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const ComplexMatrix& ax = z.effects()[x].matrix();
      const Effect seq(ax * xb.effects()[y].matrix() * ax);
      const Operation& op = zx.ops()[2 * x + y];
      EXPECT_FALSE(maps_equal(op, luders(seq).op()));
      EXPECT_GT(frobenius_distance(apply(op, test::half_identity()), apply(luders(seq).op(), test::half_identity())),
                1e-6);
    }
  }
}

TEST(Bayes1, Examples) {
  Generator g(48);
  const Observable atoms = g.random_atomic_observable(3);
  const State rho = g.random_state(3);
  const Effect a = g.random_effect(3);
  double expected = 0.0;
  for (const auto& p : atoms.effects()) {
    expected += prob(rho, p) * trace_product(p.matrix(), a.matrix()).real();
  }
  const TripleCheck t = bayes1_check(rho, luders_instrument(atoms), a);
  EXPECT_NEAR(t.lhs, expected, 1e-12);
  EXPECT_NEAR(t.mid, expected, 1e-12);
  EXPECT_NEAR(t.rhs, expected, 1e-12);
  EXPECT_LE(t.spread(), 1e-12);

  const Observable obs = g.random_observable(3, 3);
  const auto alphas = g.random_alphas(obs);
  const RealValuedObservable b = g.random_real_valued(g.random_observable(3, 2));
  double hol = 0.0;
  for (std::size_t x = 0; x < obs.size(); ++x) {
    hol += prob(rho, obs.effects()[x]) *
           trace_product(alphas.at(obs.labels()[x]).matrix(), stochastic_operator(b)).real();
  }
  const TripleCheck e = bayes1_expectation_check(rho, holevo_instrument(obs, alphas), b);
  EXPECT_NEAR(e.lhs, hol, 1e-12);
  EXPECT_NEAR(e.mid, hol, 1e-12);
  EXPECT_NEAR(e.rhs, hol, 1e-12);

  const TripleCheck one = bayes1_check(rho, g.random_instrument_measuring(obs, 2), Effect::identity(3));
  EXPECT_NEAR(one.lhs, 1.0, 1e-12);
  EXPECT_NEAR(one.mid, 1.0, 1e-12);
  EXPECT_NEAR(one.rhs, 1.0, 1e-12);

  const RealValuedObservable ones(obs, std::vector<double>(obs.size(), 1.0));
  const TripleCheck e1 = bayes1_expectation_check(rho, luders_instrument(atoms), ones);
  EXPECT_NEAR(e1.lhs, 1.0, 1e-12);
  EXPECT_NEAR(e1.rhs, 1.0, 1e-12);
}

TEST(Bayes1, SkipsZeroProbabilityOutcomes) {
  const State rho(test::p0());
  const TripleCheck t = bayes1_check(rho, luders_instrument(z_basis()), Effect(test::plus()));
  EXPECT_NEAR(t.lhs, 0.5, 1e-15);
  EXPECT_NEAR(t.mid, 0.5, 1e-15);
  EXPECT_NEAR(t.rhs, 0.5, 1e-15);
}

TEST(AtomicContext, SingleSharpObservable) {
  const std::vector<Observable> family{z_basis()};
  const AtomicContext ctx = atomic_context(family);
  ASSERT_EQ(ctx.observable.size(), 2u);
  EXPECT_EQ(ctx.observable.labels()[0], "e0");
  expect_family_near(condition_observable(z_basis(), ctx.instrument), z_basis(), 1e-12);
  for (const auto& e : ctx.observable.effects()) {
    EXPECT_TRUE(is_atomic(e));
    const double d0 = frobenius_distance(e.matrix(), test::p0());
    const double d1 = frobenius_distance(e.matrix(), test::p1());
    EXPECT_LE(std::min(d0, d1), 1e-12);
  }
}

TEST(AtomicContext, SharedXBasis) {
  const Observable b({"b0", "b1"}, {Effect(test::plus() * 0.8 + test::minus() * 0.1),
                                    Effect(test::plus() * 0.2 + test::minus() * 0.9)});
  const Observable c({"c0", "c1"}, {Effect(test::plus() * 0.5 + test::minus() * 0.3),
                                    Effect(test::plus() * 0.5 + test::minus() * 0.7)});
  const std::vector<Observable> family{b, c};
  const AtomicContext ctx = atomic_context(family);
  expect_family_near(condition_observable(b, ctx.instrument), b, 1e-12);
  expect_family_near(condition_observable(c, ctx.instrument), c, 1e-12);
  for (const auto& e : ctx.observable.effects()) {
    const double d = std::min(frobenius_distance(e.matrix(), test::plus()),
                              frobenius_distance(e.matrix(), test::minus()));
    EXPECT_LE(d, 1e-12);
  }
}

TEST(AtomicContext, NonCommutingFamily) {
  const std::vector<Observable> family{z_basis(), x_basis()};
  EXPECT_QCOND_ERROR(atomic_context(family), ErrorKind::NotJointlyCommuting);
}

TEST(MapsEqual, LabelMismatchIsInequality) {
  const Instrument a = luders_instrument(z_basis());
  const Instrument b = luders_instrument(Observable({"u", "v"}, z_basis().effects()));
  EXPECT_FALSE(maps_equal(a, b));
  EXPECT_TRUE(maps_equal(a, a));
}

}  // namespace
}  // namespace qcond
