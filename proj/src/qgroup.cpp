#include "finq/qgroup.hpp"

#include <cmath>

#include "finq/funcalc.hpp"
#include "finq/lapack.hpp"
#include "finq/legs.hpp"

namespace finq {

CMatrix FiniteQuantumGroup::delta_spatial(const std::vector<cplx>& coords) const {
  const int n = dim();
  auto d = mat_vec(delta, coords);
  const int h = gnsphi.dim();
  CMatrix out(h * h, h * h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx c = d[static_cast<size_t>(i) * n + j];
      if (std::abs(c) < 1e-15) continue;
      serial::axpy(c, kron(gnsphi.pi[i], gnsphi.pi[j]), out);
    }
  return out;
}

CMatrix FiniteQuantumGroup::lambda_of(const std::vector<cplx>& omega_row) const {
  const int h = gnsphi.dim();
  CMatrix out(h, h);
  for (size_t i = 0; i < omega_row.size(); ++i)
    if (omega_row[i] != cplx(0.0)) serial::axpy(omega_row[i], w_legs[i], out);
  return out;
}

std::vector<cplx> FiniteQuantumGroup::xi_of(const std::vector<cplx>& omega_row) const {
  const int n = dim();
  const CMatrix star = alg.star_map();
  std::vector<cplx> y(n);
  for (int i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k) s += omega_row[k] * star(k, i);
    y[i] = s;  // omega(b_i^*)
  }
  return mat_vec(adjoint(gnsphi.lambda_inv), y);
}

std::vector<cplx> FiniteQuantumGroup::vector_functional(const std::vector<cplx>& xi,
                                                        const std::vector<cplx>& eta) const {
  std::vector<cplx> row(dim());
  for (int i = 0; i < dim(); ++i) row[i] = vec_inner(mat_vec(gnsphi.pi[i], xi), eta);
  return row;
}

std::vector<cplx> tensor2_mult(const ConcreteStarAlgebra& alg, const std::vector<cplx>& u,
                               const std::vector<cplx>& v) {
  CMatrix x = tensor2_matrix(alg, u);
  CMatrix y = tensor2_matrix(alg, v);
  return tensor2_coords(alg, matmul(x, y));
}

CMatrix tensor2_matrix(const ConcreteStarAlgebra& alg, const std::vector<cplx>& u) {
  const int n = alg.dim();
  const int d = alg.ambient;
  CMatrix out(d * d, d * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx c = u[static_cast<size_t>(i) * n + j];
      if (std::abs(c) < 1e-15) continue;
      serial::axpy(c, kron(alg.basis[i], alg.basis[j]), out);
    }
  return out;
}

std::vector<cplx> tensor2_coords(const ConcreteStarAlgebra& alg, const CMatrix& x,
                                 double* residual) {
  const int n = alg.dim();
  std::vector<cplx> c(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c[static_cast<size_t>(i) * n + j] = hs_inner(x, kron(alg.basis[i], alg.basis[j]));
  if (residual) {
    CMatrix back = tensor2_matrix(alg, c);
    const double nx = fro_norm(x);
    *residual = nx == 0.0 ? 0.0 : fro_norm(x - back) / nx;
  }
  return c;
}

Weight solve_haar(const ConcreteStarAlgebra& alg, const CMatrix& delta) {
  const int n = alg.dim();
  const auto unit = alg.unit_coords();
  CMatrix sys(2 * n * n, n);
  for (int k = 0; k < n; ++k) {
    // Left invariance phi((omega_k (x) id)Delta(x)) = phi(x) omega_k(1) for
    // the coordinate functionals omega_k: constraint A_k^T phi = unit_k phi
    // with A_k[i][j] = Delta[(k,i), j].
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sys(k * n + j, i) += delta(k * n + i, j);
    for (int j = 0; j < n; ++j) sys(k * n + j, j) -= unit[k];
    // Right invariance with B_k[i][j] = Delta[(i,k), j].
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sys(n * n + k * n + j, i) += delta(i * n + k, j);
    for (int j = 0; j < n; ++j) sys(n * n + k * n + j, j) -= unit[k];
  }
  CMatrix ns = null_space(sys, 1e-9);
  if (ns.cols == 0) throw StructureError("solve_haar: no bi-invariant functional");
  if (ns.cols > 1) throw StructureError("solve_haar: invariance space not one-dimensional");
  Weight phi;
  phi.algebra = alg;
  phi.values.resize(n);
  for (int i = 0; i < n; ++i) phi.values[i] = ns(i, 0);
  cplx s = phi.eval_coords(unit);
  if (std::abs(s) < 1e-10) throw StructureError("solve_haar: solution kills the unit");
  for (auto& v : phi.values) v /= s;
  if (!phi.faithful()) throw StructureError("solve_haar: invariant functional not faithful");
  return phi;
}

std::vector<cplx> solve_counit(const ConcreteStarAlgebra& alg, const CMatrix& delta) {
  const int n = alg.dim();
  CMatrix sys(2 * n * n, n), rhs(2 * n * n, 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        sys(j * n + k, i) += delta(i * n + k, j);
        sys(n * n + j * n + k, i) += delta(k * n + i, j);
      }
      rhs(j * n + k, 0) = (j == k) ? 1.0 : 0.0;
      rhs(n * n + j * n + k, 0) = (j == k) ? 1.0 : 0.0;
    }
  CMatrix e = pinv_solve(sys, rhs);
  if (rel_residual(matmul(sys, e), rhs) > 1e-8)
    throw StructureError("solve_counit: counit axioms unsolvable");
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = e(i, 0);
  return out;
}

CMatrix solve_antipode(const ConcreteStarAlgebra& alg, const CMatrix& delta,
                       const std::vector<cplx>& counit) {
  const int n = alg.dim();
  const CMatrix m = alg.mult_map();
  const auto unit = alg.unit_coords();
  // m(S (x) id)Delta(b_j) = eps_j 1 = m(id (x) S)Delta(b_j), linear in
  // vec_row(S).
  CMatrix sys(2 * n * n, n * n), rhs(2 * n * n, 1);
  const CMatrix pt = leg_permutation_operator({n, n}, {1, 0});
  for (int j = 0; j < n; ++j) {
    CMatrix d(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) d(i, k) = delta(i * n + k, j);
    // vec_row(S D) = kron(I, D^T) vec_row(S)
    CMatrix a1 = matmul(m, kron(CMatrix::identity(n), transpose(d)));
    // (id (x) S): [(i,q)] = (D S^T)[i,q]; vec_row(D S^T) = kron(D, I) P_T s
    CMatrix a2 = matmul(m, matmul(kron(d, CMatrix::identity(n)), pt));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n * n; ++c) {
        sys(j * n + r, c) += a1(r, c);
        sys(n * n + j * n + r, c) += a2(r, c);
      }
      rhs(j * n + r, 0) = counit[j] * unit[r];
      rhs(n * n + j * n + r, 0) = counit[j] * unit[r];
    }
  }
  CMatrix s = pinv_solve(sys, rhs);
  if (rel_residual(matmul(sys, s), rhs) > 1e-8)
    throw StructureError("solve_antipode: antipode axioms unsolvable");
  CMatrix out(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) out(p, q) = s(p * n + q, 0);
  return out;
}

FqgPtr make_quantum_group(std::string name, ConcreteStarAlgebra alg, CMatrix delta,
                          std::vector<cplx> counit, CMatrix antipode,
                          std::optional<Weight> haar) {
  auto qg = std::make_shared<FiniteQuantumGroup>();
  qg->name = std::move(name);
  qg->alg = std::move(alg);
  qg->delta = std::move(delta);
  qg->counit = std::move(counit);
  qg->antipode = std::move(antipode);
  const int n = qg->dim();
  if (qg->delta.rows != n * n || qg->delta.cols != n)
    throw InputError("make_quantum_group: delta shape mismatch");
  qg->haar = haar ? *haar : solve_haar(qg->alg, qg->delta);
  qg->gnsphi = gns(qg->haar);

  // W^*(Lambda a (x) Lambda b) = (Lambda (x) Lambda)(Delta(b)(a (x) 1)) and
  // V(Lambda a (x) Lambda b) = (Lambda (x) Lambda)(Delta(a)(1 (x) b)).
  const CMatrix lam2 = kron(qg->gnsphi.lambda, qg->gnsphi.lambda);
  const CMatrix lam2_inv = kron(qg->gnsphi.lambda_inv, qg->gnsphi.lambda_inv);
  const auto unit = qg->alg.unit_coords();
  CMatrix wstar_cols(n * n, n * n);
  CMatrix v_cols(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> ei(n, cplx(0.0));
    ei[i] = 1.0;
    CMatrix bi_one = tensor2_matrix(qg->alg, tensor_vec(ei, unit));
    CMatrix one_bi = tensor2_matrix(qg->alg, tensor_vec(unit, ei));
    for (int j = 0; j < n; ++j) {
      std::vector<cplx> ej(n, cplx(0.0));
      ej[j] = 1.0;
      {
        CMatrix prod = matmul(tensor2_matrix(qg->alg, mat_vec(qg->delta, ej)), bi_one);
        auto c = mat_vec(lam2, tensor2_coords(qg->alg, prod));
        for (int r = 0; r < n * n; ++r) wstar_cols(r, i * n + j) = c[r];
      }
      {
        CMatrix prod = matmul(tensor2_matrix(qg->alg, mat_vec(qg->delta, ej)), one_bi);
        auto c = mat_vec(lam2, tensor2_coords(qg->alg, prod));
        for (int r = 0; r < n * n; ++r) v_cols(r, j * n + i) = c[r];
      }
    }
  }
  CMatrix wstar = matmul(wstar_cols, lam2_inv);
  qg->w = adjoint(wstar);
  qg->v = matmul(v_cols, lam2_inv);
  if (rel_residual(matmul(adjoint(qg->w), qg->w), CMatrix::identity(n * n)) > 1e-7)
    throw StructureError("make_quantum_group: W is not unitary");
  if (rel_residual(matmul(adjoint(qg->v), qg->v), CMatrix::identity(n * n)) > 1e-7)
    throw StructureError("make_quantum_group: V is not unitary");

  // Expand W over the first leg in the pi(M) basis: W = sum_i pi(b_i) (x) w_i.
  {
    CMatrix gp(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gp(i, j) = hs_inner(qg->gnsphi.pi[j], qg->gnsphi.pi[i]);
    std::vector<CMatrix> c(n);
    for (int i = 0; i < n; ++i) c[i] = slice_left_density(qg->w, n, n, adjoint(qg->gnsphi.pi[i]));
    CMatrix gpinv = inverse(gp);
    qg->w_legs.assign(n, CMatrix(n, n));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (gpinv(j, i) != cplx(0.0)) serial::axpy(gpinv(j, i), c[i], qg->w_legs[j]);
    CMatrix back(n * n, n * n);
    for (int i = 0; i < n; ++i)
      serial::axpy(cplx(1.0), kron(qg->gnsphi.pi[i], qg->w_legs[i]), back);
    qg->w_leg_residual = rel_residual(back, qg->w);
  }
  return qg;
}

Report validate(const FiniteQuantumGroup& qg, double tol) {
  Report rep;
  const int n = qg.dim();
  const auto unit = qg.alg.unit_coords();
  auto basis_coords = [&](int i) {
    std::vector<cplx> e(n, cplx(0.0));
    e[i] = 1.0;
    return e;
  };

  {
    double hom = 0.0, star = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        auto prod = qg.alg.coords(matmul(qg.alg.basis[i], qg.alg.basis[j]));
        CMatrix lhs = tensor2_matrix(qg.alg, mat_vec(qg.delta, prod));
        CMatrix rhs = matmul(tensor2_matrix(qg.alg, mat_vec(qg.delta, basis_coords(i))),
                             tensor2_matrix(qg.alg, mat_vec(qg.delta, basis_coords(j))));
        hom = std::max(hom, rel_residual(lhs, rhs));
      }
      auto si = qg.alg.coords(adjoint(qg.alg.basis[i]));
      CMatrix lhs = tensor2_matrix(qg.alg, mat_vec(qg.delta, si));
      CMatrix rhs = adjoint(tensor2_matrix(qg.alg, mat_vec(qg.delta, basis_coords(i))));
      star = std::max(star, rel_residual(lhs, rhs));
    }
    rep.add("delta.homomorphism", "Delta normal unital *-homomorphism", hom, tol);
    rep.add("delta.star", "Delta normal unital *-homomorphism", star, tol);
    CMatrix one2 = tensor2_matrix(qg.alg, tensor_vec(unit, unit));
    rep.add("delta.unital", "Delta normal unital *-homomorphism",
            rel_residual(tensor2_matrix(qg.alg, mat_vec(qg.delta, unit)), one2), tol);
  }

  {
    CMatrix lhs = matmul(kron(qg.delta, CMatrix::identity(n)), qg.delta);
    CMatrix rhs = matmul(kron(CMatrix::identity(n), qg.delta), qg.delta);
    rep.add("delta.coassociative", "coassociativity", rel_residual(lhs, rhs), tol);
  }

  {
    CMatrix el(n, n), er(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        cplx sl = 0.0, sr = 0.0;
        for (int i = 0; i < n; ++i) {
          sl += qg.counit[i] * qg.delta(i * n + k, j);
          sr += qg.counit[i] * qg.delta(k * n + i, j);
        }
        el(k, j) = sl;
        er(k, j) = sr;
      }
    rep.add("counit.left", "counit law", rel_residual(el, CMatrix::identity(n)), tol);
    rep.add("counit.right", "counit law", rel_residual(er, CMatrix::identity(n)), tol);
  }

  {
    const CMatrix m = qg.alg.mult_map();
    double resid = 0.0;
    for (int j = 0; j < n; ++j) {
      auto d = mat_vec(qg.delta, basis_coords(j));
      std::vector<cplx> sd(static_cast<size_t>(n) * n), ds(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          cplx a = 0.0, b = 0.0;
          for (int p = 0; p < n; ++p) {
            a += qg.antipode(i, p) * d[static_cast<size_t>(p) * n + k];
            b += qg.antipode(k, p) * d[static_cast<size_t>(i) * n + p];
          }
          sd[static_cast<size_t>(i) * n + k] = a;
          ds[static_cast<size_t>(i) * n + k] = b;
        }
      auto l = mat_vec(m, sd);
      auto r = mat_vec(m, ds);
      for (int i = 0; i < n; ++i) {
        resid = std::max(resid, std::abs(l[i] - qg.counit[j] * unit[i]));
        resid = std::max(resid, std::abs(r[i] - qg.counit[j] * unit[i]));
      }
    }
    rep.add("antipode.law", "antipode axiom", resid, tol);
  }

  {
    rep.add("kac.s_squared", "S^2 = id (Kac)",
            rel_residual(matmul(qg.antipode, qg.antipode), CMatrix::identity(n)), tol);
    const CMatrix c = qg.alg.star_map();
    rep.add("kac.s_star", "S(x^*) = S(x)^* (Kac)",
            rel_residual(matmul(qg.antipode, c), matmul(c, conjugate(qg.antipode))), tol);
    double tracial = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto xy = qg.alg.coords(matmul(qg.alg.basis[i], qg.alg.basis[j]));
        auto yx = qg.alg.coords(matmul(qg.alg.basis[j], qg.alg.basis[i]));
        tracial =
            std::max(tracial, std::abs(qg.haar.eval_coords(xy) - qg.haar.eval_coords(yx)));
      }
    rep.add("kac.phi_tracial", "phi tracial (Kac)", tracial, tol);
    double phis = 0.0;
    for (int j = 0; j < n; ++j) {
      std::vector<cplx> sj(n);
      for (int i = 0; i < n; ++i) sj[i] = qg.antipode(i, j);
      phis = std::max(phis, std::abs(qg.haar.eval_coords(sj) - qg.haar.values[j]));
    }
    rep.add("kac.phi_antipode", "phi o S = phi", phis, tol);
    rep.add("kac.nabla_trivial", "nabla = 1 (nu = 1, delta = 1)",
            rel_residual(qg.gnsphi.nabla, CMatrix::identity(n)), tol);
  }

  {
    double left = 0.0, right = 0.0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        cplx l = 0.0, r = 0.0;
        for (int i = 0; i < n; ++i) {
          l += qg.delta(k * n + i, j) * qg.haar.values[i];
          r += qg.delta(i * n + k, j) * qg.haar.values[i];
        }
        left = std::max(left, std::abs(l - unit[k] * qg.haar.values[j]));
        right = std::max(right, std::abs(r - unit[k] * qg.haar.values[j]));
      }
    rep.add("haar.left_invariant", "left invariant in the sense that", left, tol);
    rep.add("haar.right_invariant", "psi right invariant", right, tol);
    rep.add("haar.state", "phi(1) = 1", std::abs(qg.haar.eval_coords(unit) - cplx(1.0)), tol);
  }

  {
    const int h = n;
    CMatrix id = CMatrix::identity(h * h);
    rep.add("w.unitary", "W multiplicative unitary",
            rel_residual(matmul(adjoint(qg.w), qg.w), id), tol);
    rep.add("v.unitary", "V multiplicative unitary",
            rel_residual(matmul(adjoint(qg.v), qg.v), id), tol);
    std::vector<int> dims = {h, h, h};
    CMatrix w12 = embed_legs(qg.w, dims, {0, 1});
    CMatrix w13 = embed_legs(qg.w, dims, {0, 2});
    CMatrix w23 = embed_legs(qg.w, dims, {1, 2});
    rep.add("w.pentagon", "pentagonal equation",
            rel_residual(matmul(w12, matmul(w13, w23)), matmul(w23, w12)), tol);
    CMatrix v12 = embed_legs(qg.v, dims, {0, 1});
    CMatrix v13 = embed_legs(qg.v, dims, {0, 2});
    CMatrix v23 = embed_legs(qg.v, dims, {1, 2});
    rep.add("v.pentagon", "pentagonal equation",
            rel_residual(matmul(v12, matmul(v13, v23)), matmul(v23, v12)), tol);
    double implements = 0.0;
    for (int i = 0; i < n; ++i) {
      CMatrix lhs = qg.delta_spatial(basis_coords(i));
      CMatrix rhs =
          matmul(adjoint(qg.w), matmul(kron(CMatrix::identity(h), qg.gnsphi.pi[i]), qg.w));
      implements = std::max(implements, rel_residual(lhs, rhs));
    }
    rep.add("w.implements_delta", "Delta(x) = W*(1 (x) x)W", implements, tol);
    rep.add("w.first_leg_in_m", "W in M (x) B(H)", qg.w_leg_residual, tol);
  }
  return rep;
}

const DualData& build_dual(const FiniteQuantumGroup& qg) {
  if (qg.dual_cache) return *qg.dual_cache;
  auto dual = std::make_shared<DualData>();
  const int n = qg.dim();

  {
    std::vector<CMatrix> slices;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        CMatrix d(n, n);
        d(k, l) = 1.0;
        slices.push_back(slice_left_density(qg.w, n, n, d));
      }
    dual->alg_hat = make_algebra(n, slices);
    if (dual->alg_hat.dim() != n) throw StructureError("build_dual: dim M-hat != dim M");
    if (!dual->alg_hat.contains(CMatrix::identity(n), 1e-8))
      throw StructureError("build_dual: M-hat misses the identity");
  }
  const int nh = dual->alg_hat.dim();

  {
    // lambda(omega) = y-hat solved for omega, then Lambda-hat(y) = xi(omega).
    CMatrix lmap(n * n, n);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < n * n; ++r) lmap(r, i) = qg.w_legs[i].a[r];
    if (rank(lmap, 1e-9) != n)
      throw StructureError("build_dual: lambda not injective on functionals");
    CMatrix lpinv = pinv(lmap);
    dual->lambda_hat = CMatrix(n, nh);
    for (int j = 0; j < nh; ++j) {
      CMatrix yv(n * n, 1);
      for (int r = 0; r < n * n; ++r) yv(r, 0) = dual->alg_hat.basis[j].a[r];
      CMatrix om = matmul(lpinv, yv);
      std::vector<cplx> omega(n);
      for (int i = 0; i < n; ++i) omega[i] = om(i, 0);
      auto xi = qg.xi_of(omega);
      for (int r = 0; r < n; ++r) dual->lambda_hat(r, j) = xi[r];
    }
    if (rank(dual->lambda_hat, 1e-9) != nh)
      throw StructureError("build_dual: xi(omega) system singular");
  }

  {
    dual->phi_hat.algebra = dual->alg_hat;
    dual->phi_hat.values.resize(nh);
    auto lam1 = mat_vec(dual->lambda_hat, dual->alg_hat.unit_coords());
    for (int j = 0; j < nh; ++j) {
      std::vector<cplx> ej(nh, cplx(0.0));
      ej[j] = 1.0;
      dual->phi_hat.values[j] = vec_inner(mat_vec(dual->lambda_hat, ej), lam1);
    }
  }

  {
    const CMatrix sig = flip(n, n);
    dual->delta_hat = CMatrix(nh * nh, nh);
    for (int j = 0; j < nh; ++j) {
      CMatrix t = matmul(
          sig, matmul(qg.w, matmul(kron(dual->alg_hat.basis[j], CMatrix::identity(n)),
                                   matmul(adjoint(qg.w), sig))));
      double resid = 0.0;
      auto c = tensor2_coords(dual->alg_hat, t, &resid);
      if (resid > 1e-7) throw StructureError("build_dual: Delta-hat escapes M-hat (x) M-hat");
      for (int r = 0; r < nh * nh; ++r) dual->delta_hat(r, j) = c[r];
    }
  }

  {
    CMatrix lam_inv = inverse(dual->lambda_hat);
    AntilinearOp s(
        matmul(dual->lambda_hat, matmul(dual->alg_hat.star_map(), conjugate(lam_inv))));
    auto [j, nab] = polar_antilinear(s);
    dual->j_hat = std::move(j);
    dual->nabla_hat = std::move(nab);
  }

  {
    Weight haar = dual->phi_hat;
    cplx c = haar.eval_coords(dual->alg_hat.unit_coords());
    if (std::abs(c) < 1e-12) throw StructureError("build_dual: phi-hat(1) = 0");
    for (auto& v : haar.values) v /= c;
    auto eps = solve_counit(dual->alg_hat, dual->delta_hat);
    auto s = solve_antipode(dual->alg_hat, dual->delta_hat, eps);
    dual->fqg =
        make_quantum_group(qg.name + "^", dual->alg_hat, dual->delta_hat, eps, s, haar);
  }

  qg.dual_cache = dual;
  return *qg.dual_cache;
}

double appendix_a1_check(const FiniteQuantumGroup& qg, const std::vector<cplx>& xi,
                         const std::vector<cplx>& b_coords) {
  const DualData& dual = build_dual(qg);
  auto eta = qg.gnsphi.map(b_coords);
  auto omega = qg.vector_functional(xi, eta);
  CMatrix lam_om = qg.lambda_of(omega);
  if (dual.alg_hat.membership_residual(lam_om) > 1e-8) return 1.0;
  auto lhs = mat_vec(dual.lambda_hat, dual.alg_hat.coords(lam_om));
  CMatrix sb = modular_half(qg.haar, qg.alg.from_coords(b_coords), 0.5);
  CMatrix jbj = compose(compose(qg.gnsphi.j, qg.rep(qg.alg.coords(sb))), qg.gnsphi.j);
  auto rhs = mat_vec(jbj, xi);
  double num = 0.0;
  const double den = std::max(1.0, vec_norm(rhs));
  for (size_t i = 0; i < lhs.size(); ++i) num += std::norm(lhs[i] - rhs[i]);
  return std::sqrt(num) / den;
}

double appendix_a2_check(const FiniteQuantumGroup& qg, const std::vector<cplx>& a_coords,
                         const std::vector<cplx>& xi, const std::vector<cplx>& eta) {
  const int n = qg.dim();
  auto om = qg.vector_functional(xi, eta);
  auto d = mat_vec(qg.delta, a_coords);
  std::vector<cplx> sliced(n, cplx(0.0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) sliced[i] += d[static_cast<size_t>(i) * n + k] * om[k];
  auto lhs = qg.gnsphi.map(sliced);
  CMatrix vs = slice_right(qg.v, n, n, xi, eta);
  auto rhs = mat_vec(vs, qg.gnsphi.map(a_coords));
  double num = 0.0;
  const double den = std::max(1.0, vec_norm(rhs));
  for (size_t i = 0; i < lhs.size(); ++i) num += std::norm(lhs[i] - rhs[i]);
  return std::sqrt(num) / den;
}

std::vector<cplx> appendix_extra_recover(
    const FiniteQuantumGroup& qg,
    const std::vector<std::pair<std::vector<cplx>, cplx>>& pairings, double tol) {
  if (pairings.empty()) throw InputError("appendix_extra_recover: no pairing data");
  const int n = qg.dim();
  // Find eta with <xi(omega), eta> = p(omega), then x = Lambda^{-1}(eta).
  CMatrix sys(static_cast<int>(pairings.size()), n), rhs(static_cast<int>(pairings.size()), 1);
  for (size_t r = 0; r < pairings.size(); ++r) {
    auto xi = qg.xi_of(pairings[r].first);
    for (int i = 0; i < n; ++i) sys(static_cast<int>(r), i) = std::conj(xi[i]);
    rhs(static_cast<int>(r), 0) = std::conj(pairings[r].second);
  }
  CMatrix etac = pinv_solve(sys, rhs);
  if (rel_residual(matmul(sys, etac), rhs) > tol)
    throw InputError("appendix_extra_recover: inconsistent pairing data");
  std::vector<cplx> eta(n);
  for (int i = 0; i < n; ++i) eta[i] = std::conj(etac(i, 0));
  return qg.gnsphi.unmap(eta);
}

bool is_commutative(const FiniteQuantumGroup& qg, double tol) {
  for (const auto& x : qg.alg.basis)
    for (const auto& y : qg.alg.basis)
      if (commutator_norm(x, y) > tol * std::max(1.0, fro_norm(x) * fro_norm(y))) return false;
  return true;
}

bool is_cocommutative(const FiniteQuantumGroup& qg, double tol) {
  const int n = qg.dim();
  CMatrix sig = leg_permutation_operator({n, n}, {1, 0});
  return rel_residual(matmul(sig, qg.delta), qg.delta) <= tol;
}

int GroupTable::inverse(int g) const {
  for (int h = 0; h < order; ++h)
    if (mult[g][h] == identity) return h;
  throw InputError("GroupTable: element without inverse");
}

void GroupTable::verify() const {
  if (order <= 0 || static_cast<int>(mult.size()) != order)
    throw InputError("GroupTable: bad table shape");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != order) throw InputError("GroupTable: bad table shape");
    for (int v : row)
      if (v < 0 || v >= order) throw InputError("GroupTable: entry out of range");
  }
  for (int g = 0; g < order; ++g)
    if (mult[identity][g] != g || mult[g][identity] != g)
      throw InputError("GroupTable: identity fails");
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      for (int k = 0; k < order; ++k)
        if (mult[mult[g][h]][k] != mult[g][mult[h][k]])
          throw InputError("GroupTable: not associative");
  for (int g = 0; g < order; ++g) inverse(g);
}

GroupTable GroupTable::cyclic(int n) {
  GroupTable t;
  t.order = n;
  t.identity = 0;
  t.mult.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.mult[i][j] = (i + j) % n;
  return t;
}

GroupTable GroupTable::symmetric3() {
  const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  GroupTable t;
  t.order = 6;
  t.identity = 0;
  t.mult.assign(6, std::vector<int>(6));
  auto compose_perm = [&](int a, int b) {
    int c[3];
    for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
    for (int k = 0; k < 6; ++k)
      if (c[0] == perms[k][0] && c[1] == perms[k][1] && c[2] == perms[k][2]) return k;
    return -1;
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t.mult[a][b] = compose_perm(a, b);
  return t;
}

}  // namespace finq
