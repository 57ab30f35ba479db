#include "qcond/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qcond/error.hpp"
#include "qcond/random.hpp"

namespace qcond {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    std::ostringstream msg;
    msg << "matrix of dim " << dim_ << " needs " << dim_ * dim_ << " entries, got " << data_.size();
    fail(ErrorKind::DimMismatch, msg.str());
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      fail(ErrorKind::InvalidArgument, "matrix entries must be finite");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) fail(ErrorKind::DimMismatch, "matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v, std::span<const cplx> w) {
  if (v.size() != w.size()) fail(ErrorKind::DimMismatch, "outer product of unequal vectors");
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return frobenius_distance(*this, adjoint()) <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim_;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const cplx> v) {
  if (v.size() != m.dim_) fail(ErrorKind::DimMismatch, "matrix-vector size mismatch");
  ComplexVector out(m.dim_);
  for (std::size_t i = 0; i < m.dim_; ++i) {
    cplx s{};
    for (std::size_t j = 0; j < m.dim_; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "dims " << a.dim() << " and " << b.dim() << " differ";
    fail(ErrorKind::DimMismatch, msg.str());
  }
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) s += std::norm(a.entries()[k] - b.entries()[k]);
  return std::sqrt(s);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

cplx inner(std::span<const cplx> v, std::span<const cplx> w) {
  if (v.size() != w.size()) fail(ErrorKind::DimMismatch, "inner product of unequal vectors");
  cplx s{};
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
  return s;
}

double vector_norm(std::span<const cplx> v) { return std::sqrt(std::real(inner(v, v))); }

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  cplx s{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, i);
  }
  return s;
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = values.size();
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) m += ComplexMatrix::outer(vectors[k], vectors[k]) * values[k];
  return m;
}

namespace {

void require_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  const double asym = frobenius_distance(m, m.adjoint());
  if (asym > tol.eq_tol) {
    std::ostringstream msg;
    msg << "||M - M*|| = " << asym << " exceeds " << tol.eq_tol;
    fail(ErrorKind::NotHermitian, msg.str());
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m, const Tolerance& tol) {
  require_hermitian(m, tol);
  const std::size_t n = m.dim();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix w = ComplexMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double stop = std::pow(1e-15 * scale, 2);
  const double negligible = 1e-18 * scale;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= stop) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= negligible) continue;
        rotated = true;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // V = D R with D = diag(1, conj(phase)) on (p, q) and R the real rotation.
        const cplx vpp = c;
        const cplx vpq = s;
        const cplx vqp = -s * std::conj(phase);
        const cplx vqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx wkp = w(k, p);
          const cplx wkq = w(k, q);
          w(k, p) = wkp * vpp + wkq * vqp;
          w(k, q) = wkp * vpq + wkq * vqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a(k, k).real());
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = w(i, k);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.dim() == 0) return 0.0;
  return hermitian_eig(m, tol).values.front();
}

double max_eigenvalue(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.dim() == 0) return 0.0;
  return hermitian_eig(m, tol).values.back();
}

ComplexMatrix hermitian_function(const ComplexMatrix& m, const std::function<double(double)>& f,
                                 const Tolerance& tol) {
  auto eig = hermitian_eig(m, tol);
  for (auto& v : eig.values) v = f(v);
  return eig.reconstruct();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerance& tol) {
  auto eig = hermitian_eig(m, tol);
  double scale = 1.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  // sqrt would blow a round-off eigenvalue of 1e-16 up to 1e-8.
  const double floor = 32.0 * std::numeric_limits<double>::epsilon() * scale;
  for (auto& v : eig.values) {
    if (v < -tol.psd_tol) {
      std::ostringstream msg;
      msg << "eigenvalue " << v << " below -psd_tol = " << -tol.psd_tol;
      fail(ErrorKind::NotPSD, msg.str());
    }
    v = v <= floor ? 0.0 : std::sqrt(v);
  }
  return eig.reconstruct();
}

bool loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  require_same_dim(a, b);
  require_hermitian(a, tol);
  require_hermitian(b, tol);
  return min_eigenvalue(b - a, tol) >= -tol.psd_tol;
}

ComplexMatrix conjugate_by_basis(const ComplexMatrix& m, std::span<const ComplexVector> basis) {
  const std::size_t k = basis.size();
  ComplexMatrix out(k);
  for (std::size_t j = 0; j < k; ++j) {
    const ComplexVector mv = m * std::span<const cplx>(basis[j]);
    for (std::size_t i = 0; i < k; ++i) out(i, j) = inner(basis[i], mv);
  }
  return out;
}

namespace {

using Block = std::vector<ComplexVector>;

// Diagonalize `m` restricted to span(block) and split the rotated block into
// clusters of (numerically) equal eigenvalues.
std::vector<Block> split_block(const ComplexMatrix& m, const Block& block, const Tolerance& tol) {
  const ComplexMatrix restricted = hermitian_part(conjugate_by_basis(m, block));
  const auto eig = hermitian_eig(restricted, Tolerance{1e300, tol.psd_tol});
  const std::size_t n = block.front().size();

  double scale = 1.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  const double gap = 1e-6 * scale;

  std::vector<Block> out;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    ComplexVector v(n, cplx{});
    for (std::size_t j = 0; j < block.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) v[i] += block[j][i] * eig.vectors[k][j];
    }
    if (k == 0 || eig.values[k] - eig.values[k - 1] > gap) out.emplace_back();
    out.back().push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<ComplexVector> simultaneous_eigenbasis(std::span<const ComplexMatrix> family,
                                                   const Tolerance& tol, std::uint64_t seed) {
  if (family.empty()) fail(ErrorKind::InvalidArgument, "empty family");
  const std::size_t n = family.front().dim();
  for (const auto& m : family) {
    require_same_dim(m, family.front());
    require_hermitian(m, tol);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double c = commutator(family[i], family[j]).frobenius_norm();
      if (c > tol.eq_tol) {
        std::ostringstream msg;
        msg << "members " << i << " and " << j << " have commutator norm " << c;
        fail(ErrorKind::NotCommutingFamily, msg.str());
      }
    }
  }

  SplitMix64 rng(seed);
  ComplexMatrix combo(n);
  for (const auto& m : family) combo += hermitian_part(m) * (rng.uniform() + 0.5);

  Block standard;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexVector e(n, cplx{});
    e[i] = 1.0;
    standard.push_back(std::move(e));
  }

  std::vector<Block> blocks = split_block(combo, standard, tol);
  for (const auto& m : family) {
    std::vector<Block> refined;
    for (const auto& block : blocks) {
      if (block.size() == 1) {
        refined.push_back(block);
        continue;
      }
      for (auto& piece : split_block(hermitian_part(m), block, tol)) refined.push_back(std::move(piece));
    }
    blocks = std::move(refined);
  }

  std::vector<ComplexVector> basis;
  basis.reserve(n);
  for (auto& block : blocks) {
    for (auto& v : block) basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qcond
