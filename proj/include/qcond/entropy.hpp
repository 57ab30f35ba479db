#pragma once

#include "qcond/instruments.hpp"

namespace qcond {

// All entropies are in nats. Terms with zero probability or with an effect
// of (numerically) zero trace contribute 0.

/// -p ln(p / t) with p = tr(rho a), t = tr(a).
double effect_entropy(const State& rho, const Effect& a, const Tolerance& tol = {});

/// S_{a[I]b}(rho): effect entropy of the sequential product I*(b).
double sequential_entropy(const State& rho, const MeasurementContext& ctx, const Effect& b,
                          const Tolerance& tol = {});

/// S_{(b|a)}(rho) = S_b[I(rho)]: -tr[I(rho) b] ln(tr[I(rho) b] / tr(b)).
double conditional_effect_entropy(const State& rho, const MeasurementContext& ctx, const Effect& b,
                                  const Tolerance& tol = {});

/// tr(I*(b)) <= tr(b), which holds iff S_{a[I]b} <= S_{(b|a)} for every state.
bool lemma31_criterion(const MeasurementContext& ctx, const Effect& b, const Tolerance& tol = {});

/// S_{(b|a)}(rho) - S_{a[I]b}(rho)
double entropy_gap(const State& rho, const MeasurementContext& ctx, const Effect& b, const Tolerance& tol = {});

/// S_A(rho) = sum_x S_{A_x}(rho)
double observable_entropy(const State& rho, const EffectFamily& obs, const Tolerance& tol = {});

/// S_{(B||A)}(rho) = S_B[bar I(rho)]
double conditional_observable_entropy_double(const State& rho, const Instrument& ins, const Observable& b,
                                             const Tolerance& tol = {});

/// S_{(B|A)}(rho) = sum_y S_{(B|A)_y}(rho)
double conditional_observable_entropy_single(const State& rho, const Instrument& ins, const Observable& b,
                                             const Tolerance& tol = {});

/// Both sides of a two-level conditioning chain: C conditioned on B (via j)
/// conditioned on A (via i), computed by iterating the one-level entropy on
/// the state updated by bar I, and via the conditioned instrument (J|I).
struct ChainEntropies {
  double iterated = 0.0;
  double composed = 0.0;
};

/// iterated = S_{(C||B)}[bar I(rho)], composed = S_C[bar(J|I)(rho)]. Always equal.
ChainEntropies double_bar_chain(const State& rho, const Instrument& i, const Instrument& j, const Observable& c,
                                const Tolerance& tol = {});

/// iterated = S_{(C|B)}[bar I(rho)], composed = S_{(C|(B|A))}(rho) relative to (J|I).
/// Differ in general.
ChainEntropies single_bar_chain(const State& rho, const Instrument& i, const Instrument& j, const Observable& c,
                                const Tolerance& tol = {});

}  // namespace qcond
