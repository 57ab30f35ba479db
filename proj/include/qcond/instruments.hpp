#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcond/observables.hpp"

namespace qcond {

/// Outcome-labelled family of operations whose sum is a channel.
class Instrument {
 public:
  Instrument(std::vector<std::string> labels, std::vector<Operation> ops);

  /// Single outcome carrying a whole channel.
  static Instrument trivial(Operation channel, std::string label = "1");

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return ops_.front().dim(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Operation>& ops() const noexcept { return ops_; }

  std::size_t index_of(std::string_view label) const;
  const Operation& op(std::string_view label) const { return ops_[index_of(label)]; }

 private:
  std::vector<std::string> labels_;
  std::vector<Operation> ops_;
};

/// Checks that the total map is a channel.
std::vector<Violation> validate(const Instrument& ins, const Tolerance& tol = {});
void require_valid(const Instrument& ins, const Tolerance& tol = {}, std::string_view what = "instrument");

/// sum_x I_x as one operation (union of Kraus families).
Operation bar_channel(const Instrument& ins);

/// x -> I_x*(I)
Observable measured_observable(const Instrument& ins);

/// Outcome x of an instrument as a context measuring I_x*(I).
MeasurementContext outcome_context(const Instrument& ins, std::size_t index);

/// rho -> A_x^{1/2} rho A_x^{1/2}
Instrument luders_instrument(const Observable& obs, const Tolerance& tol = {});

/// rho -> tr(rho A_x) alpha_x. Throws MissingAlpha if an outcome has no state.
Instrument holevo_instrument(const Observable& obs, const std::map<std::string, State>& alphas,
                             const Tolerance& tol = {});

/// (a | A) = sum_x I_x*(a)
Effect condition_effect(const Effect& a, const Instrument& ins);

/// (A | a)_x = a[I]A_x
SubObservable condition_subobservable(const Observable& obs, const MeasurementContext& ctx);

/// (B | A)_y = sum_x I_x*(B_y)
Observable condition_observable(const Observable& obs, const Instrument& ins);
RealValuedObservable condition_observable(const RealValuedObservable& obs, const Instrument& ins);

/// (J | I)_y = J_y after the total map of I.
Instrument condition_instrument(const Instrument& j, const Instrument& i);

/// (I o J)_{(x,y)} = I_x then J_y, labels "x,y".
Instrument compose_instruments(const Instrument& i, const Instrument& j);

/// Outcome-wise Choi comparison; labels must match in order.
bool maps_equal(const Instrument& a, const Instrument& b, const Tolerance& tol = {});
double choi_distance(const Instrument& a, const Instrument& b);

struct TripleCheck {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;

  double spread() const;
};

/// sum_x P(A_x) P(a | A_x)  =  P[(a | A)]  =  P_{bar I(rho)}(a).
/// Outcomes with P(A_x) <= eq_tol contribute nothing to lhs.
TripleCheck bayes1_check(const State& rho, const Instrument& ins, const Effect& a,
                         const Tolerance& tol = {});

/// sum_x P(A_x) E(B | A_x)  =  E[(B | A)]  =  E_{bar I(rho)}(B).
TripleCheck bayes1_expectation_check(const State& rho, const Instrument& ins,
                                     const RealValuedObservable& obs, const Tolerance& tol = {});

struct AtomicContext {
  Observable observable;  // rank-one projections, labels "e0", "e1", ...
  Instrument instrument;  // Lueders instrument of `observable`
};

/// Common atomic refinement of a commuting family of observables, such that
/// condition_observable(M, instrument) reproduces every member M.
/// Throws NotJointlyCommuting.
AtomicContext atomic_context(std::span<const Observable> family, const Tolerance& tol = {});

}  // namespace qcond
