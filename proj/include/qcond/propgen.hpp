#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcond/instruments.hpp"
#include "qcond/random.hpp"

namespace qcond {

/// Seeded source of random domain objects. Identical seeds give identical
/// object sequences; normals come from Box-Muller over splitmix64 so the
/// stream does not depend on the standard library's distributions.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  /// Seed for sub-stream `index` of `seed`, used to give each trial its own generator.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }

  double uniform() { return rng_.uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  std::size_t index(std::size_t n);
  double normal();
  cplx complex_normal();

  ComplexMatrix gaussian_matrix(std::size_t dim);
  ComplexMatrix random_hermitian(std::size_t dim);
  ComplexVector random_unit_vector(std::size_t dim);
  ComplexMatrix random_unitary(std::size_t dim);
  /// Random real vector on the probability simplex.
  std::vector<double> random_probability_vector(std::size_t k);

  /// G G* / tr(G G*) with complex Gaussian G.
  State random_state(std::size_t dim);
  /// Random Hermitian with spectrum affinely mapped into a random [lo, hi] inside [0, 1].
  Effect random_effect(std::size_t dim);
  /// Random rank-r projection (r in [1, dim - 1] when dim > 1).
  Effect random_projection(std::size_t dim);
  Effect random_atomic_effect(std::size_t dim);

  /// A_i = S^{-1/2} M_i S^{-1/2} with random PSD M_i and S = sum M_i.
  /// Throws RetryExhausted if S stays singular for 100 attempts.
  Observable random_observable(std::size_t dim, std::size_t k);
  /// Rank-one projections onto a random orthonormal basis.
  Observable random_atomic_observable(std::size_t dim);
  /// Projections onto a random partition of a random orthonormal basis.
  Observable random_sharp_observable(std::size_t dim, std::size_t k);
  RealValuedObservable random_real_valued(const Observable& obs);

  /// Kraus family {C_i} of size k with sum C_i* C_i = I (orthonormalized stacked Gaussians).
  std::vector<ComplexMatrix> random_channel_kraus(std::size_t dim, std::size_t k);
  Operation random_channel(std::size_t dim, std::size_t k);

  /// K_i = C_i a^{1/2}; measures a.
  Operation random_operation_measuring(const Effect& a, std::size_t k);
  /// Outcome-wise K_{x,i} = C_{x,i} A_x^{1/2}; measures obs.
  Instrument random_instrument_measuring(const Observable& obs, std::size_t k);
  /// Random target states keyed by the observable's labels.
  std::map<std::string, State> random_alphas(const Observable& obs);

 private:
  std::uint64_t seed_;
  SplitMix64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qcond
