// Finite quantum groups: axioms, Haar states, multiplicative unitaries,
// duality, appendix identities, the catalog.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finq/funcalc.hpp"
#include "finq/lapack.hpp"
#include "finq/legs.hpp"
#include "finq/qgroup.hpp"

using namespace finq;

namespace {
const double tol = 1e-9;

std::vector<cplx> e_of(int n, int k) { return basis_vec(n, k); }
}  // namespace

TEST_CASE("trivial quantum group: every residual is zero") {
  auto qg = trivial_quantum_group();
  Report r = validate(*qg);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.residual <= 1e-12, c.check_id);
  CHECK(fro_norm(qg->w - CMatrix::identity(1)) < 1e-12);
  CHECK(fro_norm(qg->v - CMatrix::identity(1)) < 1e-12);
}

TEST_CASE("group algebra of Z2 validates; antipode fixes the basis") {
  auto qg = group_algebra(GroupTable::cyclic(2), "CZ2");
  Report r = validate(*qg);
  CHECK_MESSAGE(r.pass(), "worst residual ", r.worst());
  CHECK(rel_residual(qg->antipode, CMatrix::identity(2)) < tol);
  CHECK(is_commutative(*qg));
  CHECK(is_cocommutative(*qg));
}

TEST_CASE("solved Haar states match the group oracles") {
  // C[G]: phi(lambda_g) = delta_{g,e}; basis is lambda_g / sqrt(|G|).
  auto cg = group_algebra(GroupTable::cyclic(3), "CZ3");
  const double r3 = std::sqrt(3.0);
  for (int g = 0; g < 3; ++g) {
    cplx want = g == 0 ? cplx(1.0 / r3) : cplx(0.0);
    CHECK(std::abs(cg->haar.values[g] - want) < tol);
  }
  // C(G): phi(delta_g) = 1/|G|
  auto fg = function_algebra(GroupTable::symmetric3(), "CS3");
  for (int g = 0; g < 6; ++g) CHECK(std::abs(fg->haar.values[g] - cplx(1.0 / 6)) < tol);
  // trivial group: phi = eps
  auto tv = trivial_quantum_group();
  CHECK(std::abs(tv->haar.values[0] - tv->counit[0]) < tol);
}

TEST_CASE("corrupting Delta breaks coassociativity detectably") {
  auto qg = group_algebra(GroupTable::cyclic(2), "CZ2");
  CMatrix bad = qg->delta;
  bad(1, 1) += 1e-3;
  const int n = 2;
  CMatrix lhs = matmul(kron(bad, CMatrix::identity(n)), bad);
  CMatrix rhs = matmul(kron(CMatrix::identity(n), bad), bad);
  CHECK(rel_residual(lhs, rhs) > tol);
}

TEST_CASE("W of C(Z2) is the translation operator") {
  auto qg = function_algebra(GroupTable::cyclic(2), "CZ2f");
  const int n = 2;
  CMatrix lam2 = kron(qg->gnsphi.lambda, qg->gnsphi.lambda);
  CMatrix wstar_frame = matmul(inverse(lam2), matmul(adjoint(qg->w), lam2));
  // translation oracle: W^* Lambda(delta_g) (x) Lambda(delta_h)
  //                       = Lambda(delta_g) (x) Lambda(delta_{g+h})
  CMatrix oracle(4, 4);
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h) oracle(g * 2 + ((g + h) % 2), g * 2 + h) = 1.0;
  CHECK(rel_residual(wstar_frame, oracle) < 1e-9);
  Report r = validate(*qg);
  CHECK_MESSAGE(r.pass(), "worst ", r.worst());
  for (const auto& c : r.checks)
    if (c.check_id == "w.pentagon") CHECK(c.residual < 1e-12);
}

TEST_CASE("duality: the dual W of C[Z2] is Sigma W* Sigma") {
  auto qa = group_algebra(GroupTable::cyclic(2), "CZ2");
  Report r = validate(*qa);
  CHECK_MESSAGE(r.pass(), "worst ", r.worst());
  for (const auto& c : r.checks)
    if (c.check_id == "w.pentagon") CHECK(c.residual < 1e-12);
  const DualData& d = build_dual(*qa);
  CMatrix sig = flip(2, 2);
  CMatrix w_hat = matmul(sig, matmul(adjoint(qa->w), sig));
  // transport the abstract dual's W to H along Lambda-hat (x) Lambda-hat;
  // the Haar normalization cancels in W but not in the transport unitary.
  const auto& f = *d.fqg;
  CMatrix u = matmul(d.lambda_hat, f.gnsphi.lambda_inv);
  cplx c1 = d.phi_hat.eval_coords(d.alg_hat.unit_coords());
  u *= cplx(1.0 / std::sqrt(c1.real()));
  CHECK(rel_residual(matmul(adjoint(u), u), CMatrix::identity(2)) < 1e-8);
  CMatrix w_transported = matmul(kron(u, u), matmul(f.w, adjoint(kron(u, u))));
  CHECK(rel_residual(w_transported, w_hat) < 1e-7);
}

TEST_CASE("kac-paljutkin validates; neither commutative nor cocommutative") {
  auto kp = kac_paljutkin();
  CHECK(kp->dim() == 8);
  Report r = validate(*kp);
  for (const auto& c : r.checks)
    CHECK_MESSAGE(c.residual <= 1e-8, c.check_id, " ", c.residual);
  CHECK_FALSE(is_commutative(*kp));
  CHECK_FALSE(is_cocommutative(*kp));
}

TEST_CASE("function algebra of S3 is commutative but not cocommutative") {
  auto fg = function_algebra(GroupTable::symmetric3(), "CS3");
  Report r = validate(*fg);
  CHECK_MESSAGE(r.pass(), "worst ", r.worst());
  CHECK(is_commutative(*fg));
  CHECK_FALSE(is_cocommutative(*fg));
}

TEST_CASE("duals: dimension, validation, GNS consistency, modular relations") {
  for (auto qg : {group_algebra(GroupTable::cyclic(2), "CZ2"),
                  group_algebra(GroupTable::cyclic(3), "CZ3"),
                  function_algebra(GroupTable::cyclic(2), "CZ2f")}) {
    const DualData& d = build_dual(*qg);
    CHECK(d.alg_hat.dim() == qg->dim());
    Report r = validate(*d.fqg);
    CHECK_MESSAGE(r.pass(), qg->name, " dual worst ", r.worst());
    const int n = qg->dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto li = mat_vec(d.lambda_hat, e_of(n, i));
        auto lj = mat_vec(d.lambda_hat, e_of(n, j));
        cplx want = d.phi_hat(matmul(adjoint(d.alg_hat.basis[j]), d.alg_hat.basis[i]));
        worst = std::max(worst, std::abs(vec_inner(li, lj) - want));
      }
    CHECK(worst < 1e-8);
    double mod = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto prod = d.alg_hat.coords(matmul(d.alg_hat.basis[i], d.alg_hat.basis[j]));
        auto lhs = mat_vec(d.lambda_hat, prod);
        auto rhs = mat_vec(d.alg_hat.basis[i], mat_vec(d.lambda_hat, e_of(n, j)));
        for (int k = 0; k < n; ++k) mod = std::max(mod, std::abs(lhs[k] - rhs[k]));
      }
    CHECK(mod < 1e-8);
    CHECK(rel_residual(d.nabla_hat, CMatrix::identity(n)) < 1e-8);
    double rres = 0.0;
    for (int i = 0; i < n; ++i) {
      CMatrix lhs = compose(compose(d.j_hat, adjoint(qg->gnsphi.pi[i])), d.j_hat);
      std::vector<cplx> si(n);
      for (int k = 0; k < n; ++k) si[k] = qg->antipode(k, i);
      rres = std::max(rres, rel_residual(lhs, qg->rep(si)));
    }
    CHECK(rres < 1e-8);
    CHECK(rel_residual(compose(d.j_hat, qg->gnsphi.j), compose(qg->gnsphi.j, d.j_hat)) < 1e-8);
    CMatrix sig = flip(n, n);
    AntilinearOp jj = kron(d.j_hat, d.j_hat);
    CMatrix rhs = compose(jj, compose(matmul(sig, matmul(adjoint(qg->w), sig)), jj));
    CHECK(rel_residual(qg->v, rhs) < 1e-8);
  }
}

TEST_CASE("dual of C[G] is C(G)") {
  for (int m : {2, 3}) {
    auto qa = group_algebra(GroupTable::cyclic(m), "CZ");
    auto fg = function_algebra(GroupTable::cyclic(m), "CZf");
    IsoResult iso = find_isomorphism(*build_dual(*qa).fqg, *fg);
    CHECK_MESSAGE(iso.identified, "residual ", iso.residual);
    CHECK(iso.residual < 1e-8);
  }
  auto qs = group_algebra(GroupTable::symmetric3(), "CS3g");
  auto fs = function_algebra(GroupTable::symmetric3(), "CS3f");
  IsoResult iso = find_isomorphism(*build_dual(*qs).fqg, *fs);
  CHECK_MESSAGE(iso.identified, "residual ", iso.residual);
}

TEST_CASE("kac-paljutkin is self-dual") {
  auto kp = kac_paljutkin();
  const DualData& d = build_dual(*kp);
  Report r = validate(*d.fqg);
  CHECK_MESSAGE(r.pass(), "dual worst ", r.worst());
  IsoResult iso = find_isomorphism(*d.fqg, *kp);
  CHECK_MESSAGE(iso.identified, "residual ", iso.residual);
  CHECK(iso.residual < 1e-8);
}

TEST_CASE("bidual is isomorphic to the original") {
  for (auto qg : {group_algebra(GroupTable::cyclic(2), "CZ2"),
                  function_algebra(GroupTable::cyclic(3), "CZ3f")}) {
    const DualData& d = build_dual(*qg);
    const DualData& dd = build_dual(*d.fqg);
    IsoResult iso = find_isomorphism(*dd.fqg, *qg);
    CHECK_MESSAGE(iso.identified, qg->name, " residual ", iso.residual);
  }
}

TEST_CASE("opposite and commutant quantum groups validate") {
  auto kp = kac_paljutkin();
  auto op = opposite(kp);
  Report r1 = validate(*op);
  CHECK_MESSAGE(r1.pass(), "opposite worst ", r1.worst());
  auto cq = commutant_qg(kp);
  Report r2 = validate(*cq);
  CHECK_MESSAGE(r2.pass(), "commutant worst ", r2.worst());
  for (const auto& x : cq->alg.basis)
    for (int i = 0; i < kp->dim(); ++i)
      CHECK(commutator_norm(x, kp->gnsphi.pi[i]) < 1e-8);
}

TEST_CASE("appendix identities") {
  std::mt19937_64 rng(77);
  auto tv = trivial_quantum_group();
  CHECK(appendix_a1_check(*tv, {cplx(0.3, 0.7)}, {cplx(1.0)}) < 1e-12);

  for (auto qg : {function_algebra(GroupTable::cyclic(2), "CZ2f"),
                  group_algebra(GroupTable::cyclic(2), "CZ2")}) {
    const int n = qg->dim();
    for (int k = 0; k < n; ++k)
      for (int b = 0; b < n; ++b) CHECK(appendix_a1_check(*qg, e_of(n, k), e_of(n, b)) < 1e-8);
    CMatrix g = random_matrix(n, 1, rng);
    std::vector<cplx> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = g(i, 0);
    CHECK(appendix_a1_check(*qg, xi, e_of(n, n - 1)) < 1e-8);

    CMatrix g2 = random_matrix(n, 2, rng);
    std::vector<cplx> u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = g2(i, 0);
      v[i] = g2(i, 1);
    }
    for (int a = 0; a < n; ++a) CHECK(appendix_a2_check(*qg, e_of(n, a), u, v) < 1e-8);
    CHECK(appendix_a2_check(*qg, qg->alg.unit_coords(), u, v) < 1e-10);

    for (int x0 = 0; x0 < n; ++x0) {
      auto eta = qg->gnsphi.map(e_of(n, x0));
      std::vector<std::pair<std::vector<cplx>, cplx>> pairs;
      for (int k = 0; k < n; ++k) {
        auto om = e_of(n, k);
        pairs.push_back({om, vec_inner(qg->xi_of(om), eta)});
      }
      auto got = appendix_extra_recover(*qg, pairs);
      for (int i = 0; i < n; ++i)
        CHECK(std::abs(got[i] - (i == x0 ? cplx(1.0) : cplx(0.0))) < 1e-8);
    }
    std::vector<std::pair<std::vector<cplx>, cplx>> bad;
    for (int k = 0; k < n; ++k) bad.push_back({e_of(n, k), cplx(0.0)});
    bad.push_back({e_of(n, 0), cplx(1.0)});
    CHECK_THROWS_AS(appendix_extra_recover(*qg, bad), InputError);
  }
  auto kp = kac_paljutkin();
  for (int k = 0; k < 8; ++k) CHECK(appendix_a1_check(*kp, e_of(8, k), e_of(8, k)) < 1e-8);
}

TEST_CASE("haar uniqueness across the catalog") {
  for (auto qg : {trivial_quantum_group(), group_algebra(GroupTable::cyclic(3), "CZ3"),
                  function_algebra(GroupTable::symmetric3(), "CS3f"), kac_paljutkin()}) {
    Weight again = solve_haar(qg->alg, qg->delta);
    for (int i = 0; i < qg->dim(); ++i)
      CHECK(std::abs(again.values[i] - qg->haar.values[i]) < 1e-9);
  }
}
