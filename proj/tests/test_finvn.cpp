// Weights, GNS data, modular theory, Connes cocycles, spatial derivatives.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finq/funcalc.hpp"
#include "finq/lapack.hpp"
#include "finq/legs.hpp"
#include "finq/weight.hpp"

using namespace finq;

namespace {
std::vector<double> sorted_eigs(const CMatrix& m) {
  HermEig e = eigh(m);
  return e.w;
}
}  // namespace

TEST_CASE("gns of the normalized trace on M2 is tracial") {
  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  Weight tr = normalized_trace_weight(m2);
  GnsData g = gns(tr);
  CHECK(fro_norm(g.nabla - CMatrix::identity(4)) < 1e-10);
  // sigma_t = id
  std::mt19937_64 rng(3);
  CMatrix x = random_matrix(2, 2, rng);
  CHECK(rel_residual(modular_flow(tr, x, 0.7), x) < 1e-10);
}

TEST_CASE("gns modular operator eigenvalues for a skew density on M2") {
  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  Weight th = weight_from_density(m2, CMatrix::diag({1.0, 2.0}));
  GnsData g = gns(th);
  auto w = sorted_eigs(g.nabla);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w[3] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gns on the trivial algebra") {
  ConcreteStarAlgebra c = scalar_algebra(1);
  Weight th;
  th.algebra = c;
  th.values = {cplx(1.0)};
  GnsData g = gns(th);
  CHECK(g.dim() == 1);
  CHECK(fro_norm(g.nabla - CMatrix::identity(1)) < 1e-12);
  CHECK(fro_norm(g.j.base - CMatrix::identity(1)) < 1e-12);
}

TEST_CASE("gns invariants on random weights") {
  std::mt19937_64 rng(11);
  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  for (int trial = 0; trial < 5; ++trial) {
    Weight th = random_faithful_weight(m2, rng);
    REQUIRE(th.faithful());
    GnsData g = gns(th);
    const int n = m2.dim();
    // <Lambda x, Lambda y> = theta(y^* x)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto li = g.map(basis_vec(n, i));
        auto lj = g.map(basis_vec(n, j));
        cplx want = th(matmul(adjoint(m2.basis[j]), m2.basis[i]));
        CHECK(std::abs(vec_inner(li, lj) - want) < 1e-9);
      }
    // J nabla^{1/2} Lambda(x) = Lambda(x^*)
    CMatrix nh = funcalc_power(g.nabla, 0.5);
    for (int i = 0; i < n; ++i) {
      auto v = g.map(basis_vec(n, i));
      auto got = g.j(mat_vec(nh, v));
      auto want = g.map(m2.coords(adjoint(m2.basis[i])));
      for (int k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-9);
    }
    // J^2 = 1
    CHECK(fro_norm(compose(g.j, g.j) - CMatrix::identity(n)) < 1e-9);
    // pi(x) Lambda(y) = Lambda(xy)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto got = mat_vec(g.pi[i], g.map(basis_vec(n, j)));
        auto want = g.map(m2.coords(matmul(m2.basis[i], m2.basis[j])));
        for (int k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-9);
      }
    // GNS round trip: theta(x^* x) = ||Lambda(x)||^2
    for (int i = 0; i < n; ++i) {
      auto v = g.map(basis_vec(n, i));
      cplx want = th(matmul(adjoint(m2.basis[i]), m2.basis[i]));
      CHECK(std::abs(vec_norm(v) * vec_norm(v) - want.real()) < 1e-9);
    }
    // modular invariance theta(sigma_t(x)) = theta(x)
    for (double t : {1.0, -1.0, 0.37, -0.37})
      for (int i = 0; i < n; ++i) {
        CMatrix sx = modular_flow(th, m2.basis[i], t);
        CHECK(std::abs(th(sx) - th.values[i]) < 1e-9);
      }
    // density oracle: nabla^{it} pi(x) nabla^{-it} = pi(sigma_t(x))
    for (double t : {0.37, -1.0}) {
      CMatrix nit = funcalc_power(g.nabla, cplx(0, t));
      CMatrix nmit = funcalc_power(g.nabla, cplx(0, -t));
      for (int i = 0; i < n; ++i) {
        CMatrix lhs = matmul(nit, matmul(g.pi[i], nmit));
        CMatrix rhs = g.represent(m2.coords(modular_flow(th, m2.basis[i], t)));
        CHECK(rel_residual(lhs, rhs) < 1e-8);
      }
    }
  }
}

TEST_CASE("connes cocycle identities") {
  std::mt19937_64 rng(13);
  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  Weight t1 = random_faithful_weight(m2, rng);
  Weight t2 = random_faithful_weight(m2, rng);
  Weight t3 = random_faithful_weight(m2, rng);

  CHECK(fro_norm(connes_cocycle(t1, t1, 0.9) - CMatrix::identity(2)) < 1e-10);
  CHECK(fro_norm(connes_cocycle(t2, t1, 0.0) - CMatrix::identity(2)) < 1e-10);

  // chain rule
  const double t = 0.43;
  CMatrix chain = matmul(connes_cocycle(t3, t2, t), connes_cocycle(t2, t1, t));
  CHECK(rel_residual(chain, connes_cocycle(t3, t1, t)) < 1e-9);

  // cocycle identity [D2:D1]_{t+s} = [D2:D1]_t sigma^1_t([D2:D1]_s)
  const double s = -0.7;
  CMatrix lhs = connes_cocycle(t2, t1, t + s);
  CMatrix rhs = matmul(connes_cocycle(t2, t1, t), modular_flow(t1, connes_cocycle(t2, t1, s), t));
  CHECK(rel_residual(lhs, rhs) < 1e-9);

  // unitary + membership
  CMatrix u = connes_cocycle(t2, t1, t);
  CHECK(fro_norm(matmul(adjoint(u), u) - CMatrix::identity(2)) < 1e-9);
  CHECK(m2.membership_residual(u) < 1e-9);
}

TEST_CASE("relative modular data intertwines the standard representations") {
  std::mt19937_64 rng(17);
  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  Weight t1 = random_faithful_weight(m2, rng);
  Weight t2 = random_faithful_weight(m2, rng);

  // theta2 = theta1: u = 1
  RelativeModular same = relative_modular(t1, t1);
  CHECK(fro_norm(same.u - CMatrix::identity(4)) < 1e-9);

  RelativeModular rm = relative_modular(t2, t1);
  GnsData g1 = gns(t1), g2 = gns(t2);
  CHECK(fro_norm(matmul(adjoint(rm.u), rm.u) - CMatrix::identity(4)) < 1e-9);
  for (int i = 0; i < m2.dim(); ++i) {
    CMatrix lhs = matmul(rm.u, matmul(g1.pi[i], adjoint(rm.u)));
    CHECK(rel_residual(lhs, g2.pi[i]) < 1e-8);
  }
  // J_{1,2} = J_{2,1}^*
  RelativeModular rm_back = relative_modular(t1, t2);
  CHECK(distance(rm_back.j21, adjoint(rm.j21)) < 1e-8);
  // u maps the positive cone of GNS_1 into that of GNS_2
  CMatrix n1q = funcalc_power(g1.nabla, 0.25);
  CMatrix n2q = funcalc_power(g2.nabla, -0.25);
  for (int trial = 0; trial < 4; ++trial) {
    CMatrix x = random_matrix(2, 2, rng);
    CMatrix pos = matmul(adjoint(x), x);
    auto v = mat_vec(n1q, g1.map(m2.coords(pos)));
    auto w = mat_vec(n2q, mat_vec(rm.u, v));
    CMatrix y = m2.from_coords(g2.unmap(w));
    // y should be positive
    CHECK(fro_norm(y - adjoint(y)) < 1e-8 * std::max(1.0, fro_norm(y)));
    HermEig e = eigh(cplx(0.5) * (y + adjoint(y)));
    CHECK(e.w.front() > -1e-8 * std::max(1.0, e.w.back()));
  }
}

TEST_CASE("balanced weight recovers the Connes cocycle") {
  std::mt19937_64 rng(19);
  ConcreteStarAlgebra c1 = scalar_algebra(1);
  Weight w1;
  w1.algebra = c1;
  w1.values = {cplx(1.0)};
  Weight bal0 = balanced_weight(w1, w1);
  // on C (+) C inside M2: the balanced weight of two traces on C is the
  // unnormalized trace of the diagonal
  CMatrix e11 = kron(CMatrix::identity(1), CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
  CMatrix e22 = kron(CMatrix::identity(1), CMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}}));
  CMatrix e12 = kron(CMatrix::identity(1), CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
  CHECK(std::abs(bal0(e11) - cplx(1.0)) < 1e-12);
  CHECK(std::abs(bal0(e22) - cplx(1.0)) < 1e-12);
  CHECK(std::abs(bal0(e12)) < 1e-12);

  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  Weight t1 = random_faithful_weight(m2, rng);
  Weight t2 = random_faithful_weight(m2, rng);
  Weight bal = balanced_weight(t1, t2);
  REQUIRE(bal.faithful());
  // sigma^bal_t(1 (x) e21) = [D t2 : D t1]_t (x) e21
  CMatrix e21(2, 2);
  e21(1, 0) = 1.0;
  for (double t : {0.37, -0.9}) {
    CMatrix lhs = modular_flow(bal, kron(CMatrix::identity(2), e21), t);
    CMatrix rhs = kron(connes_cocycle(t2, t1, t), e21);
    CHECK(rel_residual(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("spatial derivative special cases") {
  std::mt19937_64 rng(23);
  // N = B(C^3), N' = C with psi(1) = 1: d phi / d psi = density of phi.
  ConcreteStarAlgebra n = full_matrix_algebra(3);
  ConcreteStarAlgebra np = scalar_algebra(3);
  CMatrix q = random_positive(3, rng);
  Weight phi = weight_from_density(n, q);
  Weight psi;
  psi.algebra = np;
  psi.values = {cplx(1.0 / std::sqrt(3.0))};  // basis is I/sqrt(3); psi(1)=1
  CMatrix d = spatial_derivative(phi, psi);
  CHECK(rel_residual(d, q) < 1e-8);

  // N = C*1 with phi(1)=1, psi = Tr on B(C^3). Direct evaluation of the
  // Theta form gives Theta(xi) = ||xi||^2 * 1, so d phi/d psi = I; this is
  // also forced by reciprocity against the first case.
  Weight phi2;
  phi2.algebra = scalar_algebra(3);
  phi2.values = {cplx(1.0 / std::sqrt(3.0))};
  Weight psi2 = trace_weight(full_matrix_algebra(3));
  CMatrix d2 = spatial_derivative(phi2, psi2);
  CHECK(rel_residual(d2, CMatrix::identity(3)) < 1e-9);
}

TEST_CASE("spatial derivative: modular property and reciprocity") {
  std::mt19937_64 rng(29);
  // N = M2 (x) 1 on C^4, N' = 1 (x) M2
  ConcreteStarAlgebra m2 = full_matrix_algebra(2);
  std::vector<CMatrix> nb, ncb;
  for (const auto& b : m2.basis) {
    nb.push_back(kron(b, CMatrix::identity(2)));
    ncb.push_back(kron(CMatrix::identity(2), b));
  }
  ConcreteStarAlgebra n = make_algebra(4, nb);
  ConcreteStarAlgebra nc = make_algebra(4, ncb);
  Weight phi = random_faithful_weight(n, rng);
  Weight psi = random_faithful_weight(nc, rng);
  CMatrix d = spatial_derivative(phi, psi);
  // (d phi/d psi)^{it} x (d phi/d psi)^{-it} = sigma^phi_t(x) for x in N
  for (double t : {0.37, -1.0}) {
    CMatrix dit = funcalc_power(d, cplx(0, t));
    CMatrix dmit = funcalc_power(d, cplx(0, -t));
    for (const auto& x : n.basis) {
      CMatrix lhs = matmul(dit, matmul(x, dmit));
      CMatrix rhs = modular_flow(phi, x, t);
      CHECK(rel_residual(lhs, rhs) < 1e-8);
    }
  }
  // reciprocity: d phi/d psi * d psi/d phi = 1
  CMatrix dback = spatial_derivative(psi, phi);
  CHECK(rel_residual(matmul(d, dback), CMatrix::identity(4)) < 1e-8);
}
