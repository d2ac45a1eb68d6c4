#include "finq/antilinear.hpp"

#include "finq/funcalc.hpp"
#include "finq/lapack.hpp"

namespace finq {

std::vector<cplx> AntilinearOp::operator()(const std::vector<cplx>& v) const {
  std::vector<cplx> c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = std::conj(v[i]);
  return mat_vec(base, c);
}

CMatrix compose(const AntilinearOp& a, const AntilinearOp& b) {
  return matmul(a.base, conjugate(b.base));
}

AntilinearOp compose(const CMatrix& l, const AntilinearOp& a) {
  return AntilinearOp(matmul(l, a.base));
}

AntilinearOp compose(const AntilinearOp& a, const CMatrix& l) {
  return AntilinearOp(matmul(a.base, conjugate(l)));
}

AntilinearOp adjoint(const AntilinearOp& a) { return AntilinearOp(transpose(a.base)); }

AntilinearOp kron(const AntilinearOp& a, const AntilinearOp& b) {
  return AntilinearOp(kron(a.base, b.base));
}

double distance(const AntilinearOp& a, const AntilinearOp& b) {
  return fro_norm(a.base - b.base);
}

bool is_antiunitary(const AntilinearOp& a, double tol) {
  const CMatrix g = matmul(adjoint(a.base), a.base);
  return fro_norm(g - CMatrix::identity(a.dim())) <= tol * std::max(1.0, fro_norm(g));
}

std::pair<AntilinearOp, CMatrix> polar_antilinear(const AntilinearOp& s, const CMatrix& gram) {
  const int n = s.dim();
  if (gram.rows != n || gram.cols != n) throw InputError("polar_antilinear: gram mismatch");
  // Move to coordinates where gram becomes the identity.
  const CMatrix g_half = funcalc_power(gram, 0.5);
  const CMatrix g_mhalf = funcalc_power(gram, -0.5);
  const CMatrix b_std = matmul(g_half, matmul(s.base, conjugate(g_mhalf)));
  if (smallest_singular_value(b_std) < 1e-12 * std::max(1.0, fro_norm(b_std)))
    throw NumericalError("polar_antilinear: singular operator");

  // In standard coordinates: nabla = B^T conj(B), J = S nabla^{-1/2}.
  const CMatrix nab_std = matmul(transpose(b_std), conjugate(b_std));
  const CMatrix nab_m_half = funcalc_power(nab_std, -0.5);
  const CMatrix j_std = matmul(b_std, conjugate(nab_m_half));

  // Transform back.
  CMatrix nab = matmul(g_mhalf, matmul(nab_std, g_half));
  CMatrix j_base = matmul(g_mhalf, matmul(j_std, conjugate(g_half)));
  return {AntilinearOp(std::move(j_base)), std::move(nab)};
}

std::pair<AntilinearOp, CMatrix> polar_antilinear(const AntilinearOp& s) {
  return polar_antilinear(s, CMatrix::identity(s.dim()));
}

}  // namespace finq
