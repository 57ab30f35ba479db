#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcond/operations.hpp"

namespace qcond {

/// Label adjoined by minimal_extension; scene files may not use it.
inline constexpr std::string_view kComplementLabel = "⊥";

/// Outcome-labelled family of effects, in insertion order.
class EffectFamily {
 public:
  EffectFamily(std::vector<std::string> labels, std::vector<Effect> effects);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return effects_.front().dim(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Effect>& effects() const noexcept { return effects_; }

  /// Throws UnknownLabel.
  std::size_t index_of(std::string_view label) const;
  const Effect& effect(std::string_view label) const { return effects_[index_of(label)]; }

  ComplexMatrix total() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Effect> effects_;
};

/// Effects summing to I.
class Observable : public EffectFamily {
 public:
  using EffectFamily::EffectFamily;
};

/// Effects summing to at most I.
class SubObservable : public EffectFamily {
 public:
  using EffectFamily::EffectFamily;
};

std::vector<Violation> validate(const Observable& obs, const Tolerance& tol = {});
std::vector<Violation> validate(const SubObservable& obs, const Tolerance& tol = {});
void require_valid(const Observable& obs, const Tolerance& tol = {}, std::string_view what = "observable");

/// Observable with a real value attached to each outcome.
class RealValuedObservable {
 public:
  RealValuedObservable(Observable obs, std::vector<double> values);
  RealValuedObservable(Observable obs, const std::map<std::string, double>& values);

  const Observable& observable() const noexcept { return obs_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  Observable obs_;
  std::vector<double> values_;
};

using Distribution = std::vector<std::pair<std::string, double>>;

/// A(delta) = sum of the selected effects.
Effect povm(const Observable& obs, std::span<const std::string> delta);

Distribution distribution(const State& rho, const Observable& obs, const Tolerance& tol = {});

/// sum_x x A_x
ComplexMatrix stochastic_operator(const RealValuedObservable& obs);

double expectation(const State& rho, const RealValuedObservable& obs);

/// E_rho(B | a) = sum_y y tr[rho I*(B_y)] / tr(rho a)
double conditional_expectation(const State& rho, const MeasurementContext& ctx,
                               const RealValuedObservable& obs, const Tolerance& tol = {});

/// Adjoins I - sum A_x under kComplementLabel unless that remainder is below eq_tol.
Observable minimal_extension(const SubObservable& obs, const Tolerance& tol = {});

bool is_commuting(const EffectFamily& obs, const Tolerance& tol = {});
bool jointly_commuting(const EffectFamily& b, const EffectFamily& c, const Tolerance& tol = {});

}  // namespace qcond
