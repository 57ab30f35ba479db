#pragma once

#include <map>
#include <string>

#include "qcond/instruments.hpp"

namespace qcond {

/// (B|A)~ computed as the stochastic operator of the conditioned observable.
ComplexMatrix conditioned_stochastic_operator(const Instrument& ins, const RealValuedObservable& b);
/// (B|A)~ computed as bar I*(B~). Equal to the above by linearity.
ComplexMatrix conditioned_stochastic_operator_dual(const Instrument& ins, const RealValuedObservable& b);

/// E_rho(B | A) = tr[bar I(rho) B~]
double contextual_expectation(const State& rho, const Instrument& ins, const RealValuedObservable& b);

/// tr[rho (B|A)~ (C|A)~] - E(B|A) E(C|A); complex in general.
cplx contextual_correlation(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                            const RealValuedObservable& c);

double contextual_covariance(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                             const RealValuedObservable& c);

/// Negative round-off down to -eq_tol is reported as 0.
double contextual_variance(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                           const Tolerance& tol = {});

/// tr(rho [(B|A)~, (C|A)~]); purely imaginary up to round-off.
cplx commutator_trace(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                      const RealValuedObservable& c);

struct UncertaintyReport {
  cplx correlation;
  double covariance = 0.0;
  double variance_b = 0.0;
  double variance_c = 0.0;
  cplx commutator_trace;
  /// | |tr rho[.,.]|^2 / 4 + cov^2 - |Cor|^2 |
  double identity_residual = 0.0;
  /// Var(B) Var(C) - |Cor|^2
  double inequality_slack = 0.0;
};

UncertaintyReport uncertainty_report(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                                     const RealValuedObservable& c, const Tolerance& tol = {});

/// Every contextual statistic of a (B, C) pair, as produced either by the
/// generic engine or by one of the closed forms below.
struct ContextStats {
  double expectation_b = 0.0;
  double expectation_c = 0.0;
  cplx correlation;
  double covariance = 0.0;
  double variance_b = 0.0;
  double variance_c = 0.0;
  cplx commutator_trace;

  /// Largest absolute difference over all fields.
  double max_difference(const ContextStats& other) const;
};

ContextStats context_stats(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                           const RealValuedObservable& c);

/// Sharp A measured by its Lueders instrument, written with rho_x = A_x rho A_x
/// and D_x = A_x D A_x.
ContextStats sharp_luders_closed_form(const State& rho, const Observable& sharp_a,
                                      const RealValuedObservable& b, const RealValuedObservable& c);

/// A measured by the Holevo instrument with target states alpha_x.
ContextStats holevo_closed_form(const State& rho, const Observable& a, const std::map<std::string, State>& alphas,
                                const RealValuedObservable& b, const RealValuedObservable& c);

}  // namespace qcond
