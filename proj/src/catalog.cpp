#include <cmath>

#include "finq/lapack.hpp"
#include "finq/legs.hpp"
#include "finq/qgroup.hpp"

namespace finq {

FqgPtr function_algebra(const GroupTable& g, const std::string& name) {
  g.verify();
  const int n = g.order;
  std::vector<CMatrix> basis;
  for (int i = 0; i < n; ++i) {
    CMatrix e(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  ConcreteStarAlgebra alg = make_algebra(n, basis);
  // make_algebra may reorder nothing here (diagonal units are orthonormal),
  // but build delta against the actual basis by locating each unit.
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(alg.basis[j](i, i) - cplx(1.0)) < 1e-12) pos[i] = j;
  CMatrix delta(n * n, n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) delta(pos[h] * n + pos[k], pos[g.mult[h][k]]) = 1.0;
  std::vector<cplx> eps(n, cplx(0.0));
  eps[pos[g.identity]] = 1.0;
  CMatrix s(n, n);
  for (int h = 0; h < n; ++h) s(pos[g.inverse(h)], pos[h]) = 1.0;
  return make_quantum_group(name, alg, delta, eps, s);
}

FqgPtr group_algebra(const GroupTable& g, const std::string& name) {
  g.verify();
  const int n = g.order;
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<CMatrix> basis;
  for (int h = 0; h < n; ++h) {
    CMatrix lam(n, n);
    for (int k = 0; k < n; ++k) lam(g.mult[h][k], k) = r;  // lambda_h / sqrt(n)
    basis.push_back(std::move(lam));
  }
  ConcreteStarAlgebra alg;
  alg.ambient = n;
  alg.basis = basis;  // already orthonormal under HS
  alg.contains_identity = true;
  CMatrix delta(n * n, n);
  const double rt = std::sqrt(static_cast<double>(n));
  for (int h = 0; h < n; ++h) delta(h * n + h, h) = rt;  // Delta(b_h)=sqrt(n) b_h (x) b_h
  std::vector<cplx> eps(n, cplx(r));
  CMatrix s(n, n);
  for (int h = 0; h < n; ++h) s(g.inverse(h), h) = 1.0;
  return make_quantum_group(name, alg, delta, eps, s);
}

FqgPtr trivial_quantum_group() {
  return function_algebra(GroupTable::cyclic(1), "trivial");
}

FqgPtr kac_paljutkin() {
  // Masuoka's presentation of the eight-dimensional algebra: generators
  // x, y, z with x^2 = y^2 = 1, xy = yx, zx = yz, zy = xz,
  // z^2 = (1+x+y-xy)/2, and
  //   Delta(x) = x (x) x, Delta(y) = y (x) y,
  //   Delta(z) = (1/2)(1(x)1 + 1(x)x + y(x)1 - y(x)x)(z (x) z).
  // Represented on C^4 (+) C^2: four characters plus one 2-dim block.
  const int d = 6;
  auto diag6 = [](cplx a, cplx b, cplx c, cplx e, cplx f, cplx g) {
    CMatrix m(6, 6);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = e;
    m(4, 4) = f;
    m(5, 5) = g;
    return m;
  };
  const cplx i1(0.0, 1.0);
  CMatrix x = diag6(1, 1, -1, -1, 1, -1);
  CMatrix y = diag6(1, 1, -1, -1, -1, 1);
  CMatrix z = diag6(1, -1, i1, -i1, 0, 0);
  z(4, 5) = 1.0;
  z(5, 4) = 1.0;

  std::vector<CMatrix> words;
  CMatrix one = CMatrix::identity(d);
  CMatrix xy = matmul(x, y);
  words = {one, x, y, xy, z, matmul(x, z), matmul(y, z), matmul(xy, z)};
  ConcreteStarAlgebra alg = make_algebra(d, words);
  if (alg.dim() != 8) throw StructureError("kac_paljutkin: algebra dimension != 8");

  // Delta on generators, spatially on C^6 (x) C^6.
  CMatrix dx = kron(x, x);
  CMatrix dy = kron(y, y);
  CMatrix id2 = CMatrix::identity(d * d);
  CMatrix omega = id2 + kron(one, x) + kron(y, one) - kron(y, x);
  omega *= cplx(0.5);
  CMatrix dz = matmul(omega, kron(z, z));
  CMatrix done = id2;
  CMatrix dxy = matmul(dx, dy);
  std::vector<CMatrix> dwords = {done, dx, dy, dxy, dz,
                                 matmul(dx, dz), matmul(dy, dz),     matmul(dxy, dz)};

  // Expand each orthonormal basis element in words, push through Delta.
  CMatrix gram(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) gram(i, j) = hs_inner(words[j], words[i]);
  CMatrix delta(64, 8);
  std::vector<cplx> eps(8);
  for (int j = 0; j < 8; ++j) {
    CMatrix rhs(8, 1);
    for (int i = 0; i < 8; ++i) rhs(i, 0) = hs_inner(alg.basis[j], words[i]);
    CMatrix c = solve(gram, rhs);
    CMatrix dsp(d * d, d * d);
    cplx e = 0.0;
    for (int i = 0; i < 8; ++i) {
      serial::axpy(c(i, 0), dwords[i], dsp);
      e += c(i, 0);  // eps(word) = 1 for every word
    }
    double resid = 0.0;
    auto dc = tensor2_coords(alg, dsp, &resid);
    if (resid > 1e-9) throw StructureError("kac_paljutkin: Delta escapes M (x) M");
    for (int r = 0; r < 64; ++r) delta(r, j) = dc[r];
    eps[j] = e;
  }
  CMatrix s = solve_antipode(alg, delta, eps);
  return make_quantum_group("kac_paljutkin", alg, delta, eps, s);
}

FqgPtr opposite(const FqgPtr& qg) {
  const int n = qg->dim();
  CMatrix sig = leg_permutation_operator({n, n}, {1, 0});
  CMatrix delta_op = matmul(sig, qg->delta);
  // For Kac quantum groups S_op = S and the Haar state is unchanged.
  return make_quantum_group(qg->name + "_op", qg->alg, delta_op, qg->counit, qg->antipode,
                            qg->haar);
}

FqgPtr commutant_qg(const FqgPtr& qg) {
  const int n = qg->dim();
  const AntilinearOp& j = qg->gnsphi.j;
  // M' = J M J with basis J pi(b_i) J; Delta'(x) = (J (x) J) Delta(JxJ) (J (x) J).
  std::vector<CMatrix> prim;
  for (int i = 0; i < n; ++i) prim.push_back(compose(compose(j, qg->gnsphi.pi[i]), j));
  ConcreteStarAlgebra algp = make_algebra(n, prim);
  if (algp.dim() != n) throw StructureError("commutant_qg: dim M' != dim M");

  // pi(M) coordinates of a spatial operator, via the pi-Gram system.
  CMatrix gp(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) gp(i, k) = hs_inner(qg->gnsphi.pi[k], qg->gnsphi.pi[i]);
  auto pi_coords = [&](const CMatrix& m) {
    CMatrix rhs(n, 1);
    for (int i = 0; i < n; ++i) rhs(i, 0) = hs_inner(m, qg->gnsphi.pi[i]);
    CMatrix c = solve(gp, rhs);
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = c(i, 0);
    return out;
  };

  AntilinearOp jj = kron(j, j);
  CMatrix delta_p(n * n, n);
  for (int jcol = 0; jcol < n; ++jcol) {
    CMatrix m = compose(compose(j, algp.basis[jcol]), j);  // J x J in pi(M)
    CMatrix dsp = qg->delta_spatial(pi_coords(m));
    CMatrix out = compose(jj, compose(dsp, jj));
    double resid = 0.0;
    auto c = tensor2_coords(algp, out, &resid);
    if (resid > 1e-8) throw StructureError("commutant_qg: Delta' escapes M' (x) M'");
    for (int r = 0; r < n * n; ++r) delta_p(r, jcol) = c[r];
  }
  auto eps = solve_counit(algp, delta_p);
  auto s = solve_antipode(algp, delta_p, eps);
  return make_quantum_group(qg->name + "'", algp, delta_p, eps, s);
}

}  // namespace finq
