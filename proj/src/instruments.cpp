#include "qcond/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qcond/error.hpp"

namespace qcond {

Instrument::Instrument(std::vector<std::string> labels, std::vector<Operation> ops)
    : labels_(std::move(labels)), ops_(std::move(ops)) {
  if (labels_.empty()) fail(ErrorKind::InvalidArgument, "instrument needs at least one outcome");
  if (labels_.size() != ops_.size()) fail(ErrorKind::InvalidArgument, "label count differs from op count");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) fail(ErrorKind::InvalidArgument, "duplicate outcome label '" + l + "'");
  }
  for (const auto& op : ops_) {
    if (op.dim() != ops_.front().dim()) fail(ErrorKind::DimMismatch, "instrument outcomes act on different dims");
  }
}

Instrument Instrument::trivial(Operation channel, std::string label) {
  return Instrument({std::move(label)}, {std::move(channel)});
}

std::size_t Instrument::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) fail(ErrorKind::UnknownLabel, "no outcome '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<Violation> validate(const Instrument& ins, const Tolerance& tol) {
  std::vector<Violation> out;
  ComplexMatrix total(ins.dim());
  for (const auto& op : ins.ops()) total += kraus_sum(op);
  const double gap = frobenius_distance(total, ComplexMatrix::identity(ins.dim()));
  if (gap > tol.eq_tol) out.push_back({"total map is not a channel: ||sum K*K - I||", gap});
  return out;
}

void require_valid(const Instrument& ins, const Tolerance& tol, std::string_view what) {
  auto v = validate(ins, tol);
  if (!v.empty()) fail(ErrorKind::ValidationError, std::string(what) + ": " + describe(v));
}

Operation bar_channel(const Instrument& ins) {
  std::vector<ComplexMatrix> kraus;
  for (const auto& op : ins.ops()) kraus.insert(kraus.end(), op.kraus().begin(), op.kraus().end());
  return Operation(std::move(kraus));
}

Observable measured_observable(const Instrument& ins) {
  std::vector<Effect> effects;
  effects.reserve(ins.size());
  for (const auto& op : ins.ops()) effects.push_back(measured_effect(op));
  return Observable(ins.labels(), std::move(effects));
}

MeasurementContext outcome_context(const Instrument& ins, std::size_t index) {
  return MeasurementContext(ins.ops().at(index));
}

Instrument luders_instrument(const Observable& obs, const Tolerance& tol) {
  std::vector<Operation> ops;
  ops.reserve(obs.size());
  for (const auto& e : obs.effects()) ops.emplace_back(std::vector<ComplexMatrix>{psd_sqrt(e.matrix(), tol)});
  return Instrument(obs.labels(), std::move(ops));
}

Instrument holevo_instrument(const Observable& obs, const std::map<std::string, State>& alphas,
                             const Tolerance& tol) {
  std::vector<Operation> ops;
  ops.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    auto it = alphas.find(obs.labels()[i]);
    if (it == alphas.end()) fail(ErrorKind::MissingAlpha, "no target state for outcome '" + obs.labels()[i] + "'");
    ops.push_back(holevo(obs.effects()[i], it->second, tol).op());
  }
  return Instrument(obs.labels(), std::move(ops));
}

namespace {

ComplexMatrix total_dual(const Instrument& ins, const ComplexMatrix& a) {
  ComplexMatrix s(ins.dim());
  for (const auto& op : ins.ops()) s += dual_apply(op, a);
  return hermitian_part(s);
}

}  // namespace

Effect condition_effect(const Effect& a, const Instrument& ins) { return Effect(total_dual(ins, a.matrix())); }

SubObservable condition_subobservable(const Observable& obs, const MeasurementContext& ctx) {
  std::vector<Effect> effects;
  effects.reserve(obs.size());
  for (const auto& e : obs.effects()) effects.push_back(sequential_product(ctx, e));
  return SubObservable(obs.labels(), std::move(effects));
}

Observable condition_observable(const Observable& obs, const Instrument& ins) {
  std::vector<Effect> effects;
  effects.reserve(obs.size());
  for (const auto& e : obs.effects()) effects.push_back(condition_effect(e, ins));
  return Observable(obs.labels(), std::move(effects));
}

RealValuedObservable condition_observable(const RealValuedObservable& obs, const Instrument& ins) {
  return RealValuedObservable(condition_observable(obs.observable(), ins), obs.values());
}

Instrument condition_instrument(const Instrument& j, const Instrument& i) {
  const Operation total = bar_channel(i);
  std::vector<Operation> ops;
  ops.reserve(j.size());
  for (const auto& op : j.ops()) ops.push_back(compose(total, op));
  return Instrument(j.labels(), std::move(ops));
}

Instrument compose_instruments(const Instrument& i, const Instrument& j) {
  std::vector<std::string> labels;
  std::vector<Operation> ops;
  for (std::size_t x = 0; x < i.size(); ++x) {
    for (std::size_t y = 0; y < j.size(); ++y) {
      labels.push_back(i.labels()[x] + "," + j.labels()[y]);
      ops.push_back(compose(i.ops()[x], j.ops()[y]));
    }
  }
  return Instrument(std::move(labels), std::move(ops));
}

double choi_distance(const Instrument& a, const Instrument& b) {
  if (a.labels() != b.labels()) fail(ErrorKind::InvalidArgument, "instruments have different outcome labels");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, choi_distance(a.ops()[k], b.ops()[k]));
  return worst;
}

bool maps_equal(const Instrument& a, const Instrument& b, const Tolerance& tol) {
  return a.labels() == b.labels() && choi_distance(a, b) <= tol.eq_tol;
}

double TripleCheck::spread() const {
  return std::max({std::abs(lhs - mid), std::abs(mid - rhs), std::abs(lhs - rhs)});
}

TripleCheck bayes1_check(const State& rho, const Instrument& ins, const Effect& a, const Tolerance& tol) {
  require_same_dim(rho.matrix(), a.matrix());
  TripleCheck out;
  for (std::size_t x = 0; x < ins.size(); ++x) {
    const MeasurementContext ctx = outcome_context(ins, x);
    const double px = prob(rho, ctx.effect(), tol);
    if (px <= tol.eq_tol) continue;
    out.lhs += px * conditional_prob(rho, ctx, a, tol);
  }
  out.mid = prob(rho, condition_effect(a, ins), tol);
  out.rhs = trace_product(apply(bar_channel(ins), rho), a.matrix()).real();
  return out;
}

TripleCheck bayes1_expectation_check(const State& rho, const Instrument& ins,
                                     const RealValuedObservable& obs, const Tolerance& tol) {
  require_same_dim(rho.matrix(), obs.observable().effects().front().matrix());
  TripleCheck out;
  for (std::size_t x = 0; x < ins.size(); ++x) {
    const MeasurementContext ctx = outcome_context(ins, x);
    const double px = prob(rho, ctx.effect(), tol);
    if (px <= tol.eq_tol) continue;
    out.lhs += px * conditional_expectation(rho, ctx, obs, tol);
  }
  out.mid = expectation(rho, condition_observable(obs, ins));
  out.rhs = trace_product(apply(bar_channel(ins), rho), stochastic_operator(obs)).real();
  return out;
}

AtomicContext atomic_context(std::span<const Observable> family, const Tolerance& tol) {
  if (family.empty()) fail(ErrorKind::InvalidArgument, "atomic_context needs at least one observable");
  std::vector<ComplexMatrix> members;
  for (const auto& obs : family) {
    for (const auto& e : obs.effects()) members.push_back(e.matrix());
  }
  std::vector<ComplexVector> basis;
  try {
    basis = simultaneous_eigenbasis(members, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotCommutingFamily) fail(ErrorKind::NotJointlyCommuting, e.what());
    throw;
  }

  std::vector<std::string> labels;
  std::vector<Effect> effects;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    labels.push_back("e" + std::to_string(k));
    effects.emplace_back(ComplexMatrix::outer(basis[k], basis[k]));
  }
  Observable atoms(labels, effects);

  std::vector<Operation> ops;
  for (const auto& e : effects) ops.emplace_back(std::vector<ComplexMatrix>{e.matrix()});
  return AtomicContext{std::move(atoms), Instrument(std::move(labels), std::move(ops))};
}

}  // namespace qcond
