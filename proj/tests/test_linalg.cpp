// Leg permutations, slices, functional calculus and the antilinear polar
// decomposition, checked against the brute-force oracles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finq/antilinear.hpp"
#include "finq/funcalc.hpp"
#include "finq/lapack.hpp"
#include "finq/legs.hpp"

using namespace finq;

TEST_CASE("flip basics") {
  CHECK(fro_norm(flip(1, 5) - CMatrix::identity(5)) == 0.0);
  CMatrix f22 = flip(2, 2);
  // swaps e1(x)e0 and e0(x)e1
  CHECK(f22(1, 2) == cplx(1.0));
  CHECK(f22(2, 1) == cplx(1.0));
  CHECK(f22(0, 0) == cplx(1.0));
  CHECK(f22(3, 3) == cplx(1.0));
  CHECK(fro_norm(matmul(flip(3, 2), flip(2, 3)) - CMatrix::identity(6)) == 0.0);
  std::mt19937_64 rng(3);
  CMatrix a = random_matrix(3, 3, rng), b = random_matrix(2, 2, rng);
  CMatrix s = flip(3, 2);
  CHECK(fro_norm(matmul(s, matmul(kron(a, b), adjoint(s))) - kron(b, a)) < 1e-12);
  // unitarity
  CHECK(fro_norm(matmul(s, adjoint(s)) - CMatrix::identity(6)) < 1e-12);
}

TEST_CASE("permute_legs agrees with kron reshuffles") {
  std::mt19937_64 rng(5);
  CMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(2, 2, rng);
  CMatrix x = kron(a, kron(b, c));
  CHECK(fro_norm(permute_legs(x, {2, 3, 2}, {1, 0, 2}) - kron(b, kron(a, c))) < 1e-12);
  CHECK(fro_norm(permute_legs(x, {2, 3, 2}, {2, 1, 0}) - kron(c, kron(b, a))) < 1e-12);
  CHECK(fro_norm(permute_legs(x, {2, 3, 2}, {0, 1, 2}) - x) == 0.0);
}

TEST_CASE("embed_legs places operators on the right legs") {
  std::mt19937_64 rng(7);
  CMatrix a = random_matrix(3, 3, rng);
  CMatrix b = random_matrix(2, 2, rng);
  // legs (2,3,2): embed on {1}
  CHECK(fro_norm(embed_legs(a, {2, 3, 2}, {1}) -
                 kron(CMatrix::identity(2), kron(a, CMatrix::identity(2)))) == 0.0);
  // embed on {0,2}
  CMatrix ab = kron(b, b);
  CMatrix e = embed_legs(ab, {2, 3, 2}, {0, 2});
  CMatrix want = permute_legs(kron(kron(b, b), CMatrix::identity(3)), {2, 2, 3}, {0, 2, 1});
  CHECK(fro_norm(e - want) < 1e-12);
}

TEST_CASE("slice_left on kron and identity") {
  std::mt19937_64 rng(9);
  CMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng);
  CMatrix x = kron(a, b);
  auto e0 = basis_vec(2, 0);
  CMatrix s = slice_left(x, 2, 3, e0, e0);
  CHECK(fro_norm(s - a(0, 0) * b) < 1e-12);
  // slice of identity: omega(1) * I
  CMatrix id6 = CMatrix::identity(6);
  std::vector<cplx> xi = {cplx(1, 2), cplx(0, -1)}, eta = {cplx(0.5, 0), cplx(1, 1)};
  CMatrix si = slice_left(id6, 2, 3, xi, eta);
  cplx om1 = vec_inner(xi, eta);
  CHECK(fro_norm(si - om1 * CMatrix::identity(3)) < 1e-12);
}

TEST_CASE("slice_left matches the sum-over-index oracle") {
  std::mt19937_64 rng(21);
  CMatrix x = random_matrix(6, 6, rng);
  std::vector<cplx> xi = {cplx(1, 1), cplx(-2, 0.5)}, eta = {cplx(0, 1), cplx(3, -1)};
  CMatrix y = slice_left(x, 2, 3, xi, eta);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      cplx s = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += std::conj(eta[i]) * xi[j] * x(i * 3 + k, j * 3 + l);
      CHECK(std::abs(y(k, l) - s) < 1e-12);
    }
  // density slices agree with the vector form for rank-one densities
  CMatrix dens(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) dens(i, j) = xi[i] * std::conj(eta[j]);
  CMatrix yd = slice_left_density(x, 2, 3, dens);
  CHECK(fro_norm(yd - y) < 1e-12);
  // and slice_right against its own oracle
  CMatrix z = slice_right(x, 3, 2, xi, eta);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) s += std::conj(eta[k]) * xi[l] * x(i * 2 + k, j * 2 + l);
      CHECK(std::abs(z(i, j) - s) < 1e-12);
    }
  CMatrix zd = slice_right_density(x, 3, 2, dens);
  CHECK(fro_norm(zd - z) < 1e-12);
}

TEST_CASE("funcalc powers") {
  CHECK(fro_norm(funcalc_power(CMatrix::identity(3), 0.5) - CMatrix::identity(3)) < 1e-13);
  CMatrix q = CMatrix::diag({1.0, 4.0});
  CHECK(fro_norm(funcalc_power(q, 0.5) - CMatrix::diag({1.0, 2.0})) < 1e-13);
  std::mt19937_64 rng(23);
  CMatrix p = random_positive(4, rng);
  CHECK(fro_norm(funcalc_power(p, 0.0) - CMatrix::identity(4)) < 1e-12);
  CHECK(rel_residual(funcalc_power(p, 1.0), p) < 1e-12);
  // group law for imaginary powers
  const double t = 0.37, s = -1.21;
  CMatrix a = matmul(funcalc_power(p, cplx(0, t)), funcalc_power(p, cplx(0, s)));
  CMatrix b = funcalc_power(p, cplx(0, t + s));
  CHECK(fro_norm(a - b) < 1e-11);
  // imaginary powers are unitary
  CMatrix u = funcalc_power(p, cplx(0, t));
  CHECK(fro_norm(matmul(adjoint(u), u) - CMatrix::identity(4)) < 1e-11);
  CHECK_THROWS_AS(funcalc_power(random_matrix(3, 3, rng), 0.5), NumericalError);
}

TEST_CASE("polar decomposition of antilinear maps") {
  // conjugation: J = conjugation, nabla = 1
  auto [j0, n0] = polar_antilinear(AntilinearOp::conjugation(3));
  CHECK(fro_norm(j0.base - CMatrix::identity(3)) < 1e-12);
  CHECK(fro_norm(n0 - CMatrix::identity(3)) < 1e-12);

  // s with base diag(2, 1/2): self-inverse antilinear, nabla = diag(4, 1/4)
  AntilinearOp s(CMatrix::diag({2.0, 0.5}));
  auto [j, nab] = polar_antilinear(s);
  CHECK(fro_norm(nab - CMatrix::diag({4.0, 0.25})) < 1e-12);
  CHECK(fro_norm(j.base - CMatrix::identity(2)) < 1e-12);
  // reconstruct and J^2 = 1
  CMatrix nab_half = funcalc_power(nab, 0.5);
  CHECK(fro_norm(matmul(j.base, conjugate(nab_half)) - s.base) < 1e-12);
  CHECK(fro_norm(compose(j, j) - CMatrix::identity(2)) < 1e-12);

  // random invertible antilinear: round-trip s = J nabla^{1/2}
  std::mt19937_64 rng(31);
  AntilinearOp r(random_matrix(4, 4, rng));
  auto [jr, nr] = polar_antilinear(r);
  CHECK(is_antiunitary(jr, 1e-10));
  CMatrix rebuilt = matmul(jr.base, conjugate(funcalc_power(nr, 0.5)));
  CHECK(rel_residual(rebuilt, r.base) < 1e-10);

  // gram-aware variant: transport standard case through a random gram
  CMatrix gram = random_positive(4, rng);
  auto [jg, ng] = polar_antilinear(r, gram);
  // J antiunitary w.r.t. gram: <Ju, Jv>_g = <v, u>_g, i.e. B^* G B = G^T
  CMatrix jgb = jg.base;
  CMatrix lhs = matmul(adjoint(jgb), matmul(gram, jgb));
  CHECK(rel_residual(lhs, transpose(gram)) < 1e-9);
  // nabla is positive in the gram geometry; its square root there is
  // G^{-1/2} (G^{1/2} nabla G^{-1/2})^{1/2} G^{1/2}
  CMatrix gh = funcalc_power(gram, 0.5);
  CMatrix gmh = funcalc_power(gram, -0.5);
  CMatrix ng_std = matmul(gh, matmul(ng, gmh));
  CMatrix ng_half = matmul(gmh, matmul(funcalc_power(ng_std, 0.5), gh));
  CMatrix rebuilt_g = matmul(jg.base, conjugate(ng_half));
  CHECK(rel_residual(rebuilt_g, r.base) < 1e-9);
}

TEST_CASE("antilinear composition rules") {
  std::mt19937_64 rng(37);
  AntilinearOp a(random_matrix(3, 3, rng)), b(random_matrix(3, 3, rng));
  CMatrix l = random_matrix(3, 3, rng);
  std::vector<cplx> v = {cplx(1, 2), cplx(-1, 0), cplx(0.3, 0.7)};
  // (a o b) v = a(b(v))
  auto lhs = mat_vec(compose(a, b), v);
  auto rhs = a(b(v));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
  // (l o a) and (a o l)
  auto l1 = compose(l, a)(v);
  auto r1 = mat_vec(l, a(v));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(l1[i] - r1[i]) < 1e-12);
  auto l2 = compose(a, l)(v);
  auto r2 = a(mat_vec(l, v));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(l2[i] - r2[i]) < 1e-12);
  // adjoint: <A u, v> = <A* v, u>
  std::vector<cplx> u = {cplx(0, 1), cplx(2, -1), cplx(1, 1)};
  CHECK(std::abs(vec_inner(a(u), v) - vec_inner(adjoint(a)(v), u)) < 1e-12);
}

TEST_CASE("null_space and column_span") {
  std::mt19937_64 rng(41);
  CMatrix a = random_matrix(3, 5, rng);
  CMatrix ns = null_space(a);
  CHECK(ns.cols == 2);
  CHECK(fro_norm(matmul(a, ns)) < 1e-10);
  CMatrix sp = column_span(a);
  CHECK(sp.cols == 3);
}
