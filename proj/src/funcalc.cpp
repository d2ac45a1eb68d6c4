#include "finq/funcalc.hpp"

#include <cmath>

#include "finq/lapack.hpp"

namespace finq {

void require_positive(const CMatrix& q, double tol, const char* who) {
  if (!q.square()) throw InputError(std::string(who) + ": not square");
  const double scale = std::max(1.0, fro_norm(q));
  if (fro_norm(q - adjoint(q)) > tol * scale)
    throw NumericalError(std::string(who) + ": operand not Hermitian");
}

static CMatrix rebuild(const HermEig& e, const std::vector<cplx>& f) {
  // V diag(f) V^*
  const int n = e.v.rows;
  CMatrix vf = e.v;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vf(i, j) *= f[j];
  return matmul(vf, adjoint(e.v));
}

CMatrix funcalc_power(const CMatrix& q, cplx z, double tol) {
  require_positive(q, tol, "funcalc_power");
  HermEig e = eigh(q);
  const double top = e.w.empty() ? 0.0 : std::max(1.0, std::abs(e.w.back()));
  std::vector<cplx> f(e.w.size());
  for (size_t i = 0; i < e.w.size(); ++i) {
    if (e.w[i] <= tol * top)
      throw NumericalError("funcalc_power: operand not positive definite");
    f[i] = std::exp(z * std::log(e.w[i]));
  }
  return rebuild(e, f);
}

CMatrix funcalc_log(const CMatrix& q, double tol) {
  require_positive(q, tol, "funcalc_log");
  HermEig e = eigh(q);
  const double top = e.w.empty() ? 0.0 : std::max(1.0, std::abs(e.w.back()));
  std::vector<cplx> f(e.w.size());
  for (size_t i = 0; i < e.w.size(); ++i) {
    if (e.w[i] <= tol * top) throw NumericalError("funcalc_log: operand not positive definite");
    f[i] = std::log(e.w[i]);
  }
  return rebuild(e, f);
}

CMatrix funcalc_exp(const CMatrix& h, double tol) {
  require_positive(h, tol, "funcalc_exp");  // Hermitian check only; sign free
  HermEig e = eigh(h);
  std::vector<cplx> f(e.w.size());
  for (size_t i = 0; i < e.w.size(); ++i) f[i] = std::exp(e.w[i]);
  return rebuild(e, f);
}

}  // namespace finq
