#include "qcond/core.hpp"

#include <cmath>
#include <sstream>

#include "qcond/error.hpp"

namespace qcond {

std::string describe(std::span<const Violation> violations) {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].invariant << " (magnitude " << violations[i].magnitude << ")";
  }
  return out.str();
}

State State::maximally_mixed(std::size_t dim) {
  return State(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

namespace {

// Appends a hermiticity violation if any; returns true iff the spectrum can be examined.
bool check_hermitian(const ComplexMatrix& m, const Tolerance& tol, std::vector<Violation>& out) {
  const double asym = frobenius_distance(m, m.adjoint());
  if (asym > tol.eq_tol) {
    out.push_back({"not Hermitian: ||M - M*||", asym});
    return false;
  }
  return true;
}

[[noreturn]] void throw_invalid(std::string_view what, std::span<const Violation> v) {
  fail(ErrorKind::ValidationError, std::string(what) + ": " + describe(v));
}

}  // namespace

std::vector<Violation> validate(const State& rho, const Tolerance& tol) {
  std::vector<Violation> out;
  if (rho.dim() == 0) {
    out.push_back({"empty matrix", 0.0});
    return out;
  }
  if (!check_hermitian(rho.matrix(), tol, out)) return out;
  const double lo = min_eigenvalue(rho.matrix(), tol);
  if (lo < -tol.psd_tol) out.push_back({"not PSD: eigenvalue", lo});
  const double tr = rho.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol.eq_tol) out.push_back({"trace != 1: tr", tr});
  return out;
}

std::vector<Violation> validate(const Effect& a, const Tolerance& tol) {
  std::vector<Violation> out;
  if (a.dim() == 0) {
    out.push_back({"empty matrix", 0.0});
    return out;
  }
  if (!check_hermitian(a.matrix(), tol, out)) return out;
  const auto eig = hermitian_eig(a.matrix(), tol);
  if (eig.values.front() < -tol.psd_tol) out.push_back({"not >= 0: eigenvalue", eig.values.front()});
  if (eig.values.back() > 1.0 + tol.psd_tol) out.push_back({"not <= I: eigenvalue", eig.values.back()});
  return out;
}

void require_valid(const State& rho, const Tolerance& tol, std::string_view what) {
  auto v = validate(rho, tol);
  if (!v.empty()) throw_invalid(what, v);
}

void require_valid(const Effect& a, const Tolerance& tol, std::string_view what) {
  auto v = validate(a, tol);
  if (!v.empty()) throw_invalid(what, v);
}

double prob(const State& rho, const Effect& a, const Tolerance& tol) {
  const double p = trace_product(rho.matrix(), a.matrix()).real();
  if (p < 0.0 && p >= -tol.eq_tol) return 0.0;
  return p;
}

Effect complement(const Effect& a) { return Effect(ComplexMatrix::identity(a.dim()) - a.matrix()); }

bool perp(const Effect& a, const Effect& b, const Tolerance& tol) {
  require_same_dim(a.matrix(), b.matrix());
  return loewner_leq(a.matrix() + b.matrix(), ComplexMatrix::identity(a.dim()), tol);
}

bool is_sharp(const Effect& a, const Tolerance& tol) {
  const auto& m = a.matrix();
  return frobenius_distance(m * m, m) <= tol.eq_tol;
}

bool is_atomic(const Effect& a, const Tolerance& tol) {
  if (!is_sharp(a, tol)) return false;
  const auto eig = hermitian_eig(a.matrix(), tol);
  int ones = 0;
  for (double v : eig.values) {
    if (std::abs(v - 1.0) <= tol.eq_tol) {
      ++ones;
    } else if (std::abs(v) > tol.eq_tol) {
      return false;
    }
  }
  return ones == 1;
}

}  // namespace qcond
