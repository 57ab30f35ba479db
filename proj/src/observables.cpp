#include "qcond/observables.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qcond/error.hpp"

namespace qcond {

EffectFamily::EffectFamily(std::vector<std::string> labels, std::vector<Effect> effects)
    : labels_(std::move(labels)), effects_(std::move(effects)) {
  if (labels_.empty()) fail(ErrorKind::InvalidArgument, "effect family needs at least one outcome");
  if (labels_.size() != effects_.size()) {
    fail(ErrorKind::InvalidArgument, "label count differs from effect count");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) fail(ErrorKind::InvalidArgument, "duplicate outcome label '" + l + "'");
  }
  for (const auto& e : effects_) require_same_dim(e.matrix(), effects_.front().matrix());
}

std::size_t EffectFamily::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) fail(ErrorKind::UnknownLabel, "no outcome '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

ComplexMatrix EffectFamily::total() const {
  ComplexMatrix s(dim());
  for (const auto& e : effects_) s += e.matrix();
  return s;
}

namespace {

void validate_members(const EffectFamily& fam, const Tolerance& tol, std::vector<Violation>& out) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (auto& v : validate(fam.effects()[i], tol)) {
      out.push_back({"outcome '" + fam.labels()[i] + "': " + v.invariant, v.magnitude});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const Observable& obs, const Tolerance& tol) {
  std::vector<Violation> out;
  validate_members(obs, tol, out);
  const double gap = frobenius_distance(obs.total(), ComplexMatrix::identity(obs.dim()));
  if (gap > tol.eq_tol) out.push_back({"effects do not sum to I: ||sum - I||", gap});
  return out;
}

std::vector<Violation> validate(const SubObservable& obs, const Tolerance& tol) {
  std::vector<Violation> out;
  validate_members(obs, tol, out);
  const ComplexMatrix slack = ComplexMatrix::identity(obs.dim()) - obs.total();
  if (slack.is_hermitian(tol.eq_tol)) {
    const double lo = min_eigenvalue(slack, tol);
    if (lo < -tol.psd_tol) out.push_back({"effects sum above I: eigenvalue of I - sum", lo});
  }
  return out;
}

void require_valid(const Observable& obs, const Tolerance& tol, std::string_view what) {
  auto v = validate(obs, tol);
  if (!v.empty()) fail(ErrorKind::ValidationError, std::string(what) + ": " + describe(v));
}

RealValuedObservable::RealValuedObservable(Observable obs, std::vector<double> values)
    : obs_(std::move(obs)), values_(std::move(values)) {
  if (values_.size() != obs_.size()) fail(ErrorKind::InvalidArgument, "one value per outcome required");
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "outcome values must be finite");
  }
}

namespace {

std::vector<double> values_in_order(const Observable& obs, const std::map<std::string, double>& values) {
  std::vector<double> out;
  out.reserve(obs.size());
  for (const auto& label : obs.labels()) {
    auto it = values.find(label);
    if (it == values.end()) fail(ErrorKind::UnknownLabel, "no value for outcome '" + label + "'");
    out.push_back(it->second);
  }
  if (values.size() != obs.size()) fail(ErrorKind::UnknownLabel, "value given for an unknown outcome");
  return out;
}

}  // namespace

RealValuedObservable::RealValuedObservable(Observable obs, const std::map<std::string, double>& values)
    : RealValuedObservable(obs, values_in_order(obs, values)) {}

Effect povm(const Observable& obs, std::span<const std::string> delta) {
  ComplexMatrix s(obs.dim());
  for (const auto& label : delta) s += obs.effect(label).matrix();
  return Effect(std::move(s));
}

Distribution distribution(const State& rho, const Observable& obs, const Tolerance& tol) {
  require_same_dim(rho.matrix(), obs.effects().front().matrix());
  Distribution out;
  out.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) out.emplace_back(obs.labels()[i], prob(rho, obs.effects()[i], tol));
  return out;
}

ComplexMatrix stochastic_operator(const RealValuedObservable& obs) {
  const auto& o = obs.observable();
  ComplexMatrix s(o.dim());
  for (std::size_t i = 0; i < o.size(); ++i) s += o.effects()[i].matrix() * obs.values()[i];
  return s;
}

double expectation(const State& rho, const RealValuedObservable& obs) {
  return trace_product(rho.matrix(), stochastic_operator(obs)).real();
}

double conditional_expectation(const State& rho, const MeasurementContext& ctx,
                               const RealValuedObservable& obs, const Tolerance& tol) {
  const double pa = prob(rho, ctx.effect(), tol);
  if (pa <= tol.eq_tol) {
    fail(ErrorKind::ZeroProbabilityCondition, "conditioning effect has probability " + std::to_string(pa));
  }
  const auto& o = obs.observable();
  double s = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    s += obs.values()[i] * trace_product(rho.matrix(), dual_apply(ctx.op(), o.effects()[i].matrix())).real();
  }
  return s / pa;
}

Observable minimal_extension(const SubObservable& obs, const Tolerance& tol) {
  ComplexMatrix rest = ComplexMatrix::identity(obs.dim()) - obs.total();
  if (rest.frobenius_norm() <= tol.eq_tol) return Observable(obs.labels(), obs.effects());
  auto labels = obs.labels();
  auto effects = obs.effects();
  labels.emplace_back(kComplementLabel);
  effects.emplace_back(std::move(rest));
  return Observable(std::move(labels), std::move(effects));
}

bool is_commuting(const EffectFamily& obs, const Tolerance& tol) {
  const auto& e = obs.effects();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (commutator(e[i].matrix(), e[j].matrix()).frobenius_norm() > tol.eq_tol) return false;
    }
  }
  return true;
}

bool jointly_commuting(const EffectFamily& b, const EffectFamily& c, const Tolerance& tol) {
  require_same_dim(b.effects().front().matrix(), c.effects().front().matrix());
  if (!is_commuting(b, tol) || !is_commuting(c, tol)) return false;
  for (const auto& x : b.effects()) {
    for (const auto& y : c.effects()) {
      if (commutator(x.matrix(), y.matrix()).frobenius_norm() > tol.eq_tol) return false;
    }
  }
  return true;
}

}  // namespace qcond
