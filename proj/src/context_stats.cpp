#include "qcond/context_stats.hpp"

#include <algorithm>
#include <cmath>

#include "qcond/error.hpp"

namespace qcond {

ComplexMatrix conditioned_stochastic_operator(const Instrument& ins, const RealValuedObservable& b) {
  return stochastic_operator(condition_observable(b, ins));
}

ComplexMatrix conditioned_stochastic_operator_dual(const Instrument& ins, const RealValuedObservable& b) {
  return hermitian_part(dual_apply(bar_channel(ins), stochastic_operator(b)));
}

double contextual_expectation(const State& rho, const Instrument& ins, const RealValuedObservable& b) {
  return trace_product(apply(bar_channel(ins), rho), stochastic_operator(b)).real();
}

cplx contextual_correlation(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                            const RealValuedObservable& c) {
  const ComplexMatrix bt = conditioned_stochastic_operator(ins, b);
  const ComplexMatrix ct = conditioned_stochastic_operator(ins, c);
  return trace_product(rho.matrix(), bt * ct) -
         contextual_expectation(rho, ins, b) * contextual_expectation(rho, ins, c);
}

double contextual_covariance(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                             const RealValuedObservable& c) {
  return contextual_correlation(rho, ins, b, c).real();
}

double contextual_variance(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                           const Tolerance& tol) {
  const double v = contextual_covariance(rho, ins, b, b);
  return (v < 0.0 && v >= -tol.eq_tol) ? 0.0 : v;
}

cplx commutator_trace(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                      const RealValuedObservable& c) {
  const ComplexMatrix bt = conditioned_stochastic_operator(ins, b);
  const ComplexMatrix ct = conditioned_stochastic_operator(ins, c);
  return trace_product(rho.matrix(), commutator(bt, ct));
}

UncertaintyReport uncertainty_report(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                                     const RealValuedObservable& c, const Tolerance& tol) {
  UncertaintyReport r;
  r.correlation = contextual_correlation(rho, ins, b, c);
  r.covariance = r.correlation.real();
  r.variance_b = contextual_variance(rho, ins, b, tol);
  r.variance_c = contextual_variance(rho, ins, c, tol);
  r.commutator_trace = commutator_trace(rho, ins, b, c);
  const double cor2 = std::norm(r.correlation);
  r.identity_residual = std::abs(0.25 * std::norm(r.commutator_trace) + r.covariance * r.covariance - cor2);
  r.inequality_slack = r.variance_b * r.variance_c - cor2;
  return r;
}

double ContextStats::max_difference(const ContextStats& o) const {
  return std::max({std::abs(expectation_b - o.expectation_b), std::abs(expectation_c - o.expectation_c),
                   std::abs(correlation - o.correlation), std::abs(covariance - o.covariance),
                   std::abs(variance_b - o.variance_b), std::abs(variance_c - o.variance_c),
                   std::abs(commutator_trace - o.commutator_trace)});
}

ContextStats context_stats(const State& rho, const Instrument& ins, const RealValuedObservable& b,
                           const RealValuedObservable& c) {
  ContextStats s;
  s.expectation_b = contextual_expectation(rho, ins, b);
  s.expectation_c = contextual_expectation(rho, ins, c);
  s.correlation = contextual_correlation(rho, ins, b, c);
  s.covariance = s.correlation.real();
  s.variance_b = contextual_covariance(rho, ins, b, b);
  s.variance_c = contextual_covariance(rho, ins, c, c);
  s.commutator_trace = commutator_trace(rho, ins, b, c);
  return s;
}

ContextStats sharp_luders_closed_form(const State& rho, const Observable& sharp_a,
                                      const RealValuedObservable& b, const RealValuedObservable& c) {
  const ComplexMatrix bt = stochastic_operator(b);
  const ComplexMatrix ct = stochastic_operator(c);
  const auto& r = rho.matrix();

  ContextStats s;
  cplx cross{};       // sum_x tr(rho_x B~ A_x C~)
  cplx cross_rev{};   // sum_x tr(rho_x C~ A_x B~)
  cplx sq_b{};        // sum_x tr(rho (B~_x)^2)
  cplx sq_c{};
  for (const auto& e : sharp_a.effects()) {
    const ComplexMatrix& ax = e.matrix();
    const ComplexMatrix rho_x = ax * r * ax;
    const ComplexMatrix bx = ax * bt * ax;
    const ComplexMatrix cx = ax * ct * ax;
    s.expectation_b += trace_product(rho_x, bt).real();
    s.expectation_c += trace_product(rho_x, ct).real();
    cross += trace_product(rho_x, bt * ax * ct);
    cross_rev += trace_product(rho_x, ct * ax * bt);
    sq_b += trace_product(r, bx * bx);
    sq_c += trace_product(r, cx * cx);
  }
  const double eb_ec = s.expectation_b * s.expectation_c;
  s.correlation = cross - eb_ec;
  s.covariance = 0.5 * (cross + cross_rev).real() - eb_ec;
  s.variance_b = sq_b.real() - s.expectation_b * s.expectation_b;
  s.variance_c = sq_c.real() - s.expectation_c * s.expectation_c;
  s.commutator_trace = cross - cross_rev;
  return s;
}

ContextStats holevo_closed_form(const State& rho, const Observable& a, const std::map<std::string, State>& alphas,
                                const RealValuedObservable& b, const RealValuedObservable& c) {
  const ComplexMatrix bt = stochastic_operator(b);
  const ComplexMatrix ct = stochastic_operator(c);
  const auto& r = rho.matrix();
  const std::size_t k = a.size();

  std::vector<double> wb(k), wc(k), p(k);  // tr(alpha_x B~), tr(alpha_x C~), tr(rho A_x)
  for (std::size_t x = 0; x < k; ++x) {
    auto it = alphas.find(a.labels()[x]);
    if (it == alphas.end()) fail(ErrorKind::MissingAlpha, "no target state for outcome '" + a.labels()[x] + "'");
    wb[x] = trace_product(it->second.matrix(), bt).real();
    wc[x] = trace_product(it->second.matrix(), ct).real();
    p[x] = trace_product(r, a.effects()[x].matrix()).real();
  }

  ContextStats s;
  for (std::size_t x = 0; x < k; ++x) {
    s.expectation_b += p[x] * wb[x];
    s.expectation_c += p[x] * wc[x];
  }
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      const ComplexMatrix& ax = a.effects()[x].matrix();
      const ComplexMatrix& ay = a.effects()[y].matrix();
      const cplx t_xy = trace_product(r, ax * ay);
      const cplx t_yx = trace_product(r, ay * ax);
      const double pp = p[x] * p[y];
      s.correlation += wb[x] * wc[y] * (t_xy - pp);
      s.covariance += wb[x] * wc[y] * (0.5 * (t_xy + t_yx).real() - pp);
      s.variance_b += wb[x] * wb[y] * (t_xy.real() - pp);
      s.variance_c += wc[x] * wc[y] * (t_xy.real() - pp);
      s.commutator_trace += wb[x] * wc[y] * (t_xy - t_yx);
    }
  }
  return s;
}

}  // namespace qcond
