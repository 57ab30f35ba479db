#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcond {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Equality and positivity thresholds shared by every check in the library.
struct Tolerance {
  double eq_tol = 1e-9;
  double psd_tol = 1e-10;
};

/// Dense dim x dim complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::initializer_list<double> diag);
  /// |v><w|
  static ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool is_hermitian(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend ComplexVector operator*(const ComplexMatrix& m, std::span<const cplx> v);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// Hermitian part (A + A*)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// Sum of squared magnitudes of the off-diagonal entries.
double off_diagonal_mass(const ComplexMatrix& a);

/// <v, w> = sum conj(v_i) w_i
cplx inner(std::span<const cplx> v, std::span<const cplx> w);
double vector_norm(std::span<const cplx> v);

/// tr(AB)
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> values;         // ascending
  std::vector<ComplexVector> vectors; // orthonormal, vectors[k] pairs with values[k]

  ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi diagonalization. Throws NotHermitian when ||M - M*||_F > eq_tol.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, const Tolerance& tol = {});

double min_eigenvalue(const ComplexMatrix& m, const Tolerance& tol = {});
double max_eigenvalue(const ComplexMatrix& m, const Tolerance& tol = {});

/// f applied to the spectrum of a Hermitian matrix.
ComplexMatrix hermitian_function(const ComplexMatrix& m, const std::function<double(double)>& f,
                                 const Tolerance& tol = {});

/// PSD square root. Eigenvalues in [-psd_tol, 0) and those at round-off
/// level are treated as 0; anything below -psd_tol raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerance& tol = {});

/// A <= B in Loewner order: min eig(B - A) >= -psd_tol.
bool loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol = {});

/// Orthonormal basis diagonalizing every member of a pairwise commuting
/// Hermitian family. Throws NotCommutingFamily if some commutator exceeds eq_tol.
std::vector<ComplexVector> simultaneous_eigenbasis(std::span<const ComplexMatrix> family,
                                                   const Tolerance& tol = {},
                                                   std::uint64_t seed = 0x51a7e5eedULL);

/// V* M V for the basis given as columns of V.
ComplexMatrix conjugate_by_basis(const ComplexMatrix& m, std::span<const ComplexVector> basis);

}  // namespace qcond
