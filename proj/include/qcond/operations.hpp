#pragma once

#include <span>
#include <vector>

#include "qcond/core.hpp"

namespace qcond {

/// Completely positive trace-non-increasing map rho -> sum_i K_i rho K_i*.
///
/// Kraus families are not canonical: two operations are the same map iff
/// their Choi matrices agree (see maps_equal).
class Operation {
 public:
  /// Throws InvalidArgument on an empty family, DimMismatch on ragged dims.
  explicit Operation(std::vector<ComplexMatrix> kraus);

  static Operation identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const ComplexMatrix> kraus() const noexcept { return kraus_; }

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t dim_ = 0;
};

/// Checks sum_i K_i* K_i <= I.
std::vector<Violation> validate(const Operation& op, const Tolerance& tol = {});
void require_valid(const Operation& op, const Tolerance& tol = {}, std::string_view what = "operation");

/// sum_i K_i* K_i
ComplexMatrix kraus_sum(const Operation& op);

ComplexMatrix apply(const Operation& op, const ComplexMatrix& rho);
ComplexMatrix apply(const Operation& op, const State& rho);

/// sum_i K_i* A K_i, the Heisenberg-picture adjoint.
ComplexMatrix dual_apply(const Operation& op, const ComplexMatrix& a);

/// The unique effect the operation measures: dual_apply(op, I).
Effect measured_effect(const Operation& op);

bool is_channel(const Operation& op, const Tolerance& tol = {});

/// "first then second": rho -> second(first(rho)), Kraus family {L_j K_i}.
Operation compose(const Operation& first, const Operation& second);

/// Choi matrix sum_{ij} E_ij (x) op(E_ij), dimension dim^2.
ComplexMatrix choi_matrix(const Operation& op);
double choi_distance(const Operation& a, const Operation& b);
bool maps_equal(const Operation& a, const Operation& b, const Tolerance& tol = {});

/// An operation paired with the effect it measures.
class MeasurementContext {
 public:
  explicit MeasurementContext(Operation op);

  const Operation& op() const noexcept { return op_; }
  const Effect& effect() const noexcept { return effect_; }
  std::size_t dim() const noexcept { return op_.dim(); }

 private:
  Operation op_;
  Effect effect_;
};

/// rho -> a^{1/2} rho a^{1/2}
MeasurementContext luders(const Effect& a, const Tolerance& tol = {});

/// rho -> tr(rho a) alpha, realized with Kraus operators
/// sqrt(mu_j nu_k) |w_j><v_k| from the spectra of alpha and a.
MeasurementContext holevo(const Effect& a, const State& alpha, const Tolerance& tol = {});

/// a[I]b = I*(b)
Effect sequential_product(const MeasurementContext& ctx, const Effect& b);

/// P_rho(b | a) = tr[I(rho) b] / P_rho(a). Throws ZeroProbabilityCondition
/// when P_rho(a) <= eq_tol.
double conditional_prob(const State& rho, const MeasurementContext& ctx, const Effect& b,
                        const Tolerance& tol = {});

/// I(rho) / P_rho(a)
State updated_state(const State& rho, const MeasurementContext& ctx, const Tolerance& tol = {});

/// |P(b|a) - P(b) P(a|b) / P(a)| with P(b|a) relative to ctx_a and P(a|b) relative to ctx_b.
double bayes2_residual(const State& rho, const MeasurementContext& ctx_a,
                       const MeasurementContext& ctx_b, const Tolerance& tol = {});

/// ||I*(b) - J*(a)||, zero iff Bayes' second rule holds for every state.
double bayes2_algebraic_residual(const MeasurementContext& ctx_a, const MeasurementContext& ctx_b);

}  // namespace qcond
