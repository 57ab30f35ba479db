#include "qcond/propgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcond/error.hpp"

namespace qcond {

namespace {

// Orthonormalize the columns of a tall (rows x cols) matrix stored column-wise,
// modified Gram-Schmidt applied twice.
void orthonormalize_columns(std::vector<ComplexVector>& cols) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const cplx proj = inner(cols[i], cols[j]);
        for (std::size_t r = 0; r < cols[j].size(); ++r) cols[j][r] -= proj * cols[i][r];
      }
      const double nrm = vector_norm(cols[j]);
      for (auto& z : cols[j]) z /= nrm;
    }
  }
}

}  // namespace

std::uint64_t Generator::derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

std::size_t Generator::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Generator::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cplx Generator::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix Generator::gaussian_matrix(std::size_t dim) {
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal();
  }
  return g;
}

ComplexMatrix Generator::random_hermitian(std::size_t dim) { return hermitian_part(gaussian_matrix(dim)); }

ComplexVector Generator::random_unit_vector(std::size_t dim) {
  ComplexVector v(dim);
  double nrm = 0.0;
  while (nrm < 1e-8) {
    for (auto& z : v) z = complex_normal();
    nrm = vector_norm(v);
  }
  for (auto& z : v) z /= nrm;
  return v;
}

ComplexMatrix Generator::random_unitary(std::size_t dim) {
  std::vector<ComplexVector> cols(dim, ComplexVector(dim));
  for (auto& c : cols) {
    for (auto& z : c) z = complex_normal();
  }
  orthonormalize_columns(cols);
  ComplexMatrix u(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
  }
  return u;
}

std::vector<double> Generator::random_probability_vector(std::size_t k) {
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& v : p) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    v = -std::log(u);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

State Generator::random_state(std::size_t dim) {
  const ComplexMatrix g = gaussian_matrix(dim);
  ComplexMatrix m = hermitian_part(g * g.adjoint());
  m *= 1.0 / m.trace().real();
  return State(std::move(m));
}

Effect Generator::random_effect(std::size_t dim) {
  const double lo = uniform(0.0, 0.3);
  const double hi = uniform(0.7, 1.0);
  auto eig = hermitian_eig(random_hermitian(dim));
  const double span = eig.values.back() - eig.values.front();
  const double base = eig.values.front();
  for (auto& v : eig.values) v = span > 1e-12 ? lo + (hi - lo) * (v - base) / span : uniform(lo, hi);
  return Effect(hermitian_part(eig.reconstruct()));
}

Effect Generator::random_projection(std::size_t dim) {
  const ComplexMatrix u = random_unitary(dim);
  const std::size_t rank = dim > 1 ? 1 + index(dim - 1) : 1;
  ComplexMatrix p(dim);
  for (std::size_t k = 0; k < rank; ++k) {
    ComplexVector col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = u(i, k);
    p += ComplexMatrix::outer(col, col);
  }
  return Effect(hermitian_part(p));
}

Effect Generator::random_atomic_effect(std::size_t dim) {
  const ComplexVector v = random_unit_vector(dim);
  return Effect(ComplexMatrix::outer(v, v));
}

Observable Generator::random_observable(std::size_t dim, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "observable needs at least one outcome");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<ComplexMatrix> parts;
    ComplexMatrix total(dim);
    for (std::size_t i = 0; i < k; ++i) {
      const ComplexMatrix g = gaussian_matrix(dim);
      parts.push_back(hermitian_part(g * g.adjoint()));
      total += parts.back();
    }
    const auto eig = hermitian_eig(total);
    if (eig.values.front() < 1e-8) continue;
    auto inv_sqrt = eig;
    for (auto& v : inv_sqrt.values) v = 1.0 / std::sqrt(v);
    const ComplexMatrix s = inv_sqrt.reconstruct();

    std::vector<std::string> labels;
    std::vector<Effect> effects;
    for (std::size_t i = 0; i < k; ++i) {
      labels.push_back("x" + std::to_string(i));
      effects.emplace_back(hermitian_part(s * parts[i] * s));
    }
    return Observable(std::move(labels), std::move(effects));
  }
  fail(ErrorKind::RetryExhausted, "random_observable: normalizer singular after 100 attempts");
}

Observable Generator::random_atomic_observable(std::size_t dim) { return random_sharp_observable(dim, dim); }

Observable Generator::random_sharp_observable(std::size_t dim, std::size_t k) {
  k = std::clamp<std::size_t>(k, 1, dim);
  const ComplexMatrix u = random_unitary(dim);
  std::vector<ComplexMatrix> groups(k, ComplexMatrix(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    ComplexVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = u(i, col);
    const std::size_t g = col < k ? col : index(k);
    groups[g] += ComplexMatrix::outer(v, v);
  }
  std::vector<std::string> labels;
  std::vector<Effect> effects;
  for (std::size_t g = 0; g < k; ++g) {
    labels.push_back("x" + std::to_string(g));
    effects.emplace_back(hermitian_part(groups[g]));
  }
  return Observable(std::move(labels), std::move(effects));
}

RealValuedObservable Generator::random_real_valued(const Observable& obs) {
  std::vector<double> values(obs.size());
  for (auto& v : values) v = uniform(-2.0, 2.0);
  return RealValuedObservable(obs, std::move(values));
}

std::vector<ComplexMatrix> Generator::random_channel_kraus(std::size_t dim, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "channel needs at least one Kraus operator");
  // Columns of the stacked (k*dim) x dim block.
  std::vector<ComplexVector> cols(dim, ComplexVector(k * dim));
  for (auto& c : cols) {
    for (auto& z : c) z = complex_normal();
  }
  orthonormalize_columns(cols);
  std::vector<ComplexMatrix> kraus(k, ComplexMatrix(dim));
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) kraus[b](i, j) = cols[j][b * dim + i];
    }
  }
  return kraus;
}

Operation Generator::random_channel(std::size_t dim, std::size_t k) { return Operation(random_channel_kraus(dim, k)); }

Operation Generator::random_operation_measuring(const Effect& a, std::size_t k) {
  const ComplexMatrix root = psd_sqrt(a.matrix());
  auto kraus = random_channel_kraus(a.dim(), k);
  for (auto& c : kraus) c = c * root;
  return Operation(std::move(kraus));
}

Instrument Generator::random_instrument_measuring(const Observable& obs, std::size_t k) {
  std::vector<Operation> ops;
  ops.reserve(obs.size());
  for (const auto& e : obs.effects()) ops.push_back(random_operation_measuring(e, k));
  return Instrument(obs.labels(), std::move(ops));
}

std::map<std::string, State> Generator::random_alphas(const Observable& obs) {
  std::map<std::string, State> out;
  for (const auto& label : obs.labels()) out.emplace(label, random_state(obs.dim()));
  return out;
}

}  // namespace qcond
