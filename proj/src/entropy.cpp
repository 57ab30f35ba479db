#include "qcond/entropy.hpp"

#include <cmath>

namespace qcond {

namespace {

double entropy_term(double p, double t, const Tolerance& tol) {
  if (p <= tol.eq_tol || t <= tol.eq_tol) return 0.0;
  const double v = -p * std::log(p / t);
  // p <= t analytically; round-off can push the ratio just past 1.
  return v < 0.0 ? 0.0 : v;
}

State as_state(const ComplexMatrix& m) { return State(hermitian_part(m)); }

}  // namespace

double effect_entropy(const State& rho, const Effect& a, const Tolerance& tol) {
  return entropy_term(prob(rho, a, tol), a.matrix().trace().real(), tol);
}

double sequential_entropy(const State& rho, const MeasurementContext& ctx, const Effect& b, const Tolerance& tol) {
  return effect_entropy(rho, sequential_product(ctx, b), tol);
}

double conditional_effect_entropy(const State& rho, const MeasurementContext& ctx, const Effect& b,
                                  const Tolerance& tol) {
  const double p = trace_product(apply(ctx.op(), rho), b.matrix()).real();
  return entropy_term(p, b.matrix().trace().real(), tol);
}

bool lemma31_criterion(const MeasurementContext& ctx, const Effect& b, const Tolerance& tol) {
  const double seq_trace = dual_apply(ctx.op(), b.matrix()).trace().real();
  return seq_trace <= b.matrix().trace().real() + tol.eq_tol;
}

double entropy_gap(const State& rho, const MeasurementContext& ctx, const Effect& b, const Tolerance& tol) {
  return conditional_effect_entropy(rho, ctx, b, tol) - sequential_entropy(rho, ctx, b, tol);
}

double observable_entropy(const State& rho, const EffectFamily& obs, const Tolerance& tol) {
  double s = 0.0;
  for (const auto& e : obs.effects()) s += effect_entropy(rho, e, tol);
  return s;
}

double conditional_observable_entropy_double(const State& rho, const Instrument& ins, const Observable& b,
                                             const Tolerance& tol) {
  return observable_entropy(as_state(apply(bar_channel(ins), rho)), b, tol);
}

double conditional_observable_entropy_single(const State& rho, const Instrument& ins, const Observable& b,
                                             const Tolerance& tol) {
  return observable_entropy(rho, condition_observable(b, ins), tol);
}

ChainEntropies double_bar_chain(const State& rho, const Instrument& i, const Instrument& j, const Observable& c,
                                const Tolerance& tol) {
  const State after_i = as_state(apply(bar_channel(i), rho));
  return {conditional_observable_entropy_double(after_i, j, c, tol),
          conditional_observable_entropy_double(rho, condition_instrument(j, i), c, tol)};
}

ChainEntropies single_bar_chain(const State& rho, const Instrument& i, const Instrument& j, const Observable& c,
                                const Tolerance& tol) {
  const State after_i = as_state(apply(bar_channel(i), rho));
  return {conditional_observable_entropy_single(after_i, j, c, tol),
          conditional_observable_entropy_single(rho, condition_instrument(j, i), c, tol)};
}

}  // namespace qcond
