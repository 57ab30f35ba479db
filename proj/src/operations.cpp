#include "qcond/operations.hpp"

#include <cmath>
#include <sstream>

#include "qcond/error.hpp"

namespace qcond {

Operation::Operation(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) fail(ErrorKind::InvalidArgument, "operation needs at least one Kraus operator");
  dim_ = kraus_.front().dim();
  if (dim_ == 0) fail(ErrorKind::InvalidArgument, "Kraus operators must be non-empty");
  for (const auto& k : kraus_) require_same_dim(k, kraus_.front());
}

Operation Operation::identity(std::size_t dim) {
  return Operation({ComplexMatrix::identity(dim)});
}

ComplexMatrix kraus_sum(const Operation& op) {
  ComplexMatrix s(op.dim());
  for (const auto& k : op.kraus()) s += k.adjoint() * k;
  return s;
}

std::vector<Violation> validate(const Operation& op, const Tolerance& tol) {
  std::vector<Violation> out;
  const ComplexMatrix slack = ComplexMatrix::identity(op.dim()) - kraus_sum(op);
  const double lo = min_eigenvalue(hermitian_part(slack), tol);
  if (lo < -tol.psd_tol) out.push_back({"sum K*K exceeds I: eigenvalue of I - sum K*K", lo});
  return out;
}

void require_valid(const Operation& op, const Tolerance& tol, std::string_view what) {
  auto v = validate(op, tol);
  if (!v.empty()) fail(ErrorKind::ValidationError, std::string(what) + ": " + describe(v));
}

ComplexMatrix apply(const Operation& op, const ComplexMatrix& rho) {
  require_same_dim(op.kraus().front(), rho);
  ComplexMatrix out(op.dim());
  for (const auto& k : op.kraus()) out += k * rho * k.adjoint();
  return out;
}

ComplexMatrix apply(const Operation& op, const State& rho) { return apply(op, rho.matrix()); }

ComplexMatrix dual_apply(const Operation& op, const ComplexMatrix& a) {
  require_same_dim(op.kraus().front(), a);
  ComplexMatrix out(op.dim());
  for (const auto& k : op.kraus()) out += k.adjoint() * a * k;
  return out;
}

Effect measured_effect(const Operation& op) { return Effect(hermitian_part(kraus_sum(op))); }

bool is_channel(const Operation& op, const Tolerance& tol) {
  return frobenius_distance(kraus_sum(op), ComplexMatrix::identity(op.dim())) <= tol.eq_tol;
}

Operation compose(const Operation& first, const Operation& second) {
  require_same_dim(first.kraus().front(), second.kraus().front());
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& l : second.kraus()) {
    for (const auto& k : first.kraus()) kraus.push_back(l * k);
  }
  return Operation(std::move(kraus));
}

ComplexMatrix choi_matrix(const Operation& op) {
  const std::size_t n = op.dim();
  ComplexMatrix choi(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix unit(n);
      unit(i, j) = 1.0;
      const ComplexMatrix image = apply(op, unit);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) choi(i * n + k, j * n + l) = image(k, l);
      }
    }
  }
  return choi;
}

double choi_distance(const Operation& a, const Operation& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimMismatch, "operations act on different dims");
  return frobenius_distance(choi_matrix(a), choi_matrix(b));
}

bool maps_equal(const Operation& a, const Operation& b, const Tolerance& tol) {
  return choi_distance(a, b) <= tol.eq_tol;
}

MeasurementContext::MeasurementContext(Operation op)
    : op_(std::move(op)), effect_(measured_effect(op_)) {}

MeasurementContext luders(const Effect& a, const Tolerance& tol) {
  return MeasurementContext(Operation({psd_sqrt(a.matrix(), tol)}));
}

MeasurementContext holevo(const Effect& a, const State& alpha, const Tolerance& tol) {
  require_same_dim(a.matrix(), alpha.matrix());
  const auto eig_alpha = hermitian_eig(alpha.matrix(), tol);
  const auto eig_a = hermitian_eig(a.matrix(), tol);
  for (double v : eig_alpha.values) {
    if (v < -tol.psd_tol) fail(ErrorKind::NotPSD, "Holevo target state has a negative eigenvalue");
  }
  for (double v : eig_a.values) {
    if (v < -tol.psd_tol) fail(ErrorKind::NotPSD, "Holevo effect has a negative eigenvalue");
  }

  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < eig_alpha.values.size(); ++j) {
    const double mu = eig_alpha.values[j];
    if (mu <= 0.0) continue;
    for (std::size_t k = 0; k < eig_a.values.size(); ++k) {
      const double nu = eig_a.values[k];
      if (nu <= 0.0) continue;
      kraus.push_back(ComplexMatrix::outer(eig_alpha.vectors[j], eig_a.vectors[k]) * std::sqrt(mu * nu));
    }
  }
  // a == 0: the zero map.
  if (kraus.empty()) kraus.push_back(ComplexMatrix::zero(a.dim()));
  return MeasurementContext(Operation(std::move(kraus)));
}

Effect sequential_product(const MeasurementContext& ctx, const Effect& b) {
  return Effect(hermitian_part(dual_apply(ctx.op(), b.matrix())));
}

namespace {

double require_condition(const State& rho, const Effect& a, const Tolerance& tol) {
  const double p = prob(rho, a, tol);
  if (p <= tol.eq_tol) {
    std::ostringstream msg;
    msg << "conditioning effect has probability " << p << " <= " << tol.eq_tol;
    fail(ErrorKind::ZeroProbabilityCondition, msg.str());
  }
  return p;
}

}  // namespace

double conditional_prob(const State& rho, const MeasurementContext& ctx, const Effect& b,
                        const Tolerance& tol) {
  const double pa = require_condition(rho, ctx.effect(), tol);
  return trace_product(apply(ctx.op(), rho), b.matrix()).real() / pa;
}

State updated_state(const State& rho, const MeasurementContext& ctx, const Tolerance& tol) {
  const double pa = require_condition(rho, ctx.effect(), tol);
  return State(hermitian_part(apply(ctx.op(), rho)) * (1.0 / pa));
}

double bayes2_residual(const State& rho, const MeasurementContext& ctx_a,
                       const MeasurementContext& ctx_b, const Tolerance& tol) {
  const Effect& a = ctx_a.effect();
  const Effect& b = ctx_b.effect();
  const double pa = require_condition(rho, a, tol);
  const double pb = require_condition(rho, b, tol);
  const double b_given_a = conditional_prob(rho, ctx_a, b, tol);
  const double a_given_b = conditional_prob(rho, ctx_b, a, tol);
  return std::abs(b_given_a - pb * a_given_b / pa);
}

double bayes2_algebraic_residual(const MeasurementContext& ctx_a, const MeasurementContext& ctx_b) {
  return frobenius_distance(dual_apply(ctx_a.op(), ctx_b.effect().matrix()),
                            dual_apply(ctx_b.op(), ctx_a.effect().matrix()));
}

}  // namespace qcond
