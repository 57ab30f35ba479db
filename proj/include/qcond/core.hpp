#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcond/linalg.hpp"

namespace qcond {

/// One violated invariant and how far off it is.
struct Violation {
  std::string invariant;
  double magnitude = 0.0;
};

std::string describe(std::span<const Violation> violations);

/// Density operator. Construction does not validate; call validate().
class State {
 public:
  explicit State(ComplexMatrix rho) : rho_(std::move(rho)) {}

  static State maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return rho_.dim(); }

 private:
  ComplexMatrix rho_;
};

/// Operator with 0 <= a <= I. Construction does not validate; call validate().
class Effect {
 public:
  explicit Effect(ComplexMatrix a) : a_(std::move(a)) {}

  static Effect identity(std::size_t dim) { return Effect(ComplexMatrix::identity(dim)); }
  static Effect zero(std::size_t dim) { return Effect(ComplexMatrix::zero(dim)); }

  const ComplexMatrix& matrix() const noexcept { return a_; }
  std::size_t dim() const noexcept { return a_.dim(); }

 private:
  ComplexMatrix a_;
};

std::vector<Violation> validate(const State& rho, const Tolerance& tol = {});
std::vector<Violation> validate(const Effect& a, const Tolerance& tol = {});

/// Throws ValidationError naming `what` if any invariant is violated.
void require_valid(const State& rho, const Tolerance& tol = {}, std::string_view what = "state");
void require_valid(const Effect& a, const Tolerance& tol = {}, std::string_view what = "effect");

/// P_rho(a) = tr(rho a), tiny negative round-off clamped to 0.
double prob(const State& rho, const Effect& a, const Tolerance& tol = {});

/// a' = I - a
Effect complement(const Effect& a);

/// a + b <= I
bool perp(const Effect& a, const Effect& b, const Tolerance& tol = {});

/// a is a projection: ||a^2 - a|| <= eq_tol.
bool is_sharp(const Effect& a, const Tolerance& tol = {});

/// a is a rank-one projection: spectrum {1 once, 0 elsewhere} within eq_tol.
bool is_atomic(const Effect& a, const Tolerance& tol = {});

}  // namespace qcond
