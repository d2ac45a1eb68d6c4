#include "finq/weight.hpp"

#include <cmath>

#include "finq/funcalc.hpp"
#include "finq/lapack.hpp"
#include "finq/legs.hpp"

namespace finq {

cplx Weight::eval_coords(const std::vector<cplx>& c) const {
  if (c.size() != values.size()) throw InputError("weight: coordinate size mismatch");
  cplx s = 0.0;
  for (size_t i = 0; i < c.size(); ++i) s += values[i] * c[i];
  return s;
}

cplx Weight::operator()(const CMatrix& x) const { return eval_coords(algebra.coords(x)); }

CMatrix Weight::gram() const {
  const int n = algebra.dim();
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    CMatrix bi = adjoint(algebra.basis[i]);
    for (int j = 0; j < n; ++j) g(i, j) = (*this)(matmul(bi, algebra.basis[j]));
  }
  return g;
}

CMatrix Weight::density() const {
  // theta(b_i) = Tr(Q b_i) with Q = sum_j c_j b_j: solve the small system
  // A[i][j] = Tr(b_j b_i).
  const int n = algebra.dim();
  CMatrix a(n, n), rhs(n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = trace(matmul(algebra.basis[j], algebra.basis[i]));
    rhs(i, 0) = values[i];
  }
  CMatrix c = solve(a, rhs);
  std::vector<cplx> cc(n);
  for (int i = 0; i < n; ++i) cc[i] = c(i, 0);
  return algebra.from_coords(cc);
}

bool Weight::faithful(double tol) const {
  CMatrix g = gram();
  if (fro_norm(g - adjoint(g)) > tol * std::max(1.0, fro_norm(g))) return false;
  HermEig e = eigh(g);
  if (e.w.empty()) return false;
  return e.w.front() > tol * std::max(1.0, e.w.back());
}

Weight weight_from_density(const ConcreteStarAlgebra& a, const CMatrix& q) {
  Weight w;
  w.algebra = a;
  w.values.resize(a.dim());
  for (int i = 0; i < a.dim(); ++i) w.values[i] = trace(matmul(q, a.basis[i]));
  return w;
}

Weight trace_weight(const ConcreteStarAlgebra& a) {
  return weight_from_density(a, CMatrix::identity(a.ambient));
}

Weight normalized_trace_weight(const ConcreteStarAlgebra& a) {
  CMatrix q = CMatrix::identity(a.ambient);
  q *= cplx(1.0 / a.ambient);
  return weight_from_density(a, q);
}

Weight random_faithful_weight(const ConcreteStarAlgebra& a, std::mt19937_64& rng) {
  // Random strictly positive density inside the algebra: sum x^* x over a
  // few random algebra elements plus a slice of the identity.
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix q(a.ambient, a.ambient);
  for (int rep = 0; rep < 2; ++rep) {
    std::vector<cplx> c(a.dim());
    for (auto& v : c) v = cplx(g(rng), g(rng));
    CMatrix x = a.from_coords(c);
    q += matmul(adjoint(x), x);
  }
  CMatrix one = a.from_coords(a.unit_coords());
  serial::axpy(cplx(0.25), one, q);
  return weight_from_density(a, q);
}

std::vector<cplx> GnsData::map(const std::vector<cplx>& coords) const {
  return mat_vec(lambda, coords);
}

std::vector<cplx> GnsData::unmap(const std::vector<cplx>& v) const {
  return mat_vec(lambda_inv, v);
}

CMatrix GnsData::represent(const std::vector<cplx>& coords) const {
  CMatrix x(dim(), dim());
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != cplx(0.0)) serial::axpy(coords[i], pi[i], x);
  return x;
}

GnsData gns(const Weight& theta) {
  GnsData g;
  g.gram = theta.gram();
  {
    HermEig e = eigh(g.gram);
    if (e.w.empty() || e.w.front() <= 1e-10 * std::max(1.0, e.w.back()))
      throw InputError("gns: weight not faithful");
  }
  g.lambda = funcalc_power(g.gram, 0.5);
  g.lambda_inv = funcalc_power(g.gram, -0.5);
  const int n = theta.algebra.dim();
  g.pi.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> e(n, cplx(0.0));
    e[i] = 1.0;
    g.pi.push_back(matmul(g.lambda, matmul(theta.algebra.left_mult(e), g.lambda_inv)));
  }
  g.density = theta.density();
  {
    // S Lambda(x) = Lambda(x^*)
    AntilinearOp s(matmul(g.lambda, matmul(theta.algebra.star_map(), conjugate(g.lambda_inv))));
    auto [j, nab] = polar_antilinear(s);
    g.j = std::move(j);
    g.nabla = std::move(nab);
  }
  return g;
}

CMatrix modular_flow(const Weight& theta, const CMatrix& x, double t) {
  CMatrix q = theta.density();
  CMatrix qit = funcalc_power(q, cplx(0.0, t));
  CMatrix qmit = funcalc_power(q, cplx(0.0, -t));
  return matmul(qit, matmul(x, qmit));
}

CMatrix modular_half(const Weight& theta, const CMatrix& x, double s) {
  CMatrix q = theta.density();
  CMatrix qm = funcalc_power(q, -s);
  CMatrix qp = funcalc_power(q, s);
  return matmul(qm, matmul(x, qp));
}

CMatrix connes_cocycle(const Weight& theta2, const Weight& theta1, double t) {
  if (!span_equal(theta2.algebra, theta1.algebra, 1e-8))
    throw InputError("connes_cocycle: weights on different algebras");
  CMatrix q2 = theta2.density();
  CMatrix q1 = theta1.density();
  return matmul(funcalc_power(q2, cplx(0.0, t)), funcalc_power(q1, cplx(0.0, -t)));
}

RelativeModular relative_modular(const Weight& theta2, const Weight& theta1) {
  if (!span_equal(theta2.algebra, theta1.algebra, 1e-8))
    throw InputError("relative_modular: weights on different algebras");
  GnsData g1 = gns(theta1);
  GnsData g2 = gns(theta2);
  const CMatrix star = theta1.algebra.star_map();
  // S_{2,1} Lambda_1(x) = Lambda_2(x^*)
  AntilinearOp s21(matmul(g2.lambda, matmul(star, conjugate(g1.lambda_inv))));
  auto [j21, nab21] = polar_antilinear(s21);
  RelativeModular out;
  out.u = compose(j21, g1.j);
  out.j21 = std::move(j21);
  out.nabla21 = std::move(nab21);
  return out;
}

ConcreteStarAlgebra algebra_tensor_m2(const ConcreteStarAlgebra& a) {
  std::vector<CMatrix> basis;
  for (const auto& b : a.basis)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CMatrix e(2, 2);
        e(i, j) = 1.0;
        basis.push_back(kron(b, e));
      }
  return make_algebra(a.ambient * 2, basis);
}

Weight balanced_weight(const Weight& theta1, const Weight& theta2) {
  if (!span_equal(theta1.algebra, theta2.algebra, 1e-8))
    throw InputError("balanced_weight: weights on different algebras");
  ConcreteStarAlgebra big = algebra_tensor_m2(theta1.algebra);
  CMatrix e11(2, 2), e22(2, 2);
  e11(0, 0) = 1.0;
  e22(1, 1) = 1.0;
  CMatrix q = kron(theta1.density(), e11) + kron(theta2.density(), e22);
  return weight_from_density(big, q);
}

CMatrix spatial_derivative(const Weight& phi, const Weight& psi) {
  const int d = phi.algebra.ambient;
  if (psi.algebra.ambient != d) throw InputError("spatial_derivative: ambient mismatch");
  // psi lives on the commutant of phi's algebra.
  for (const auto& x : phi.algebra.basis)
    for (const auto& y : psi.algebra.basis)
      if (commutator_norm(x, y) > 1e-8 * std::max(1.0, fro_norm(x) * fro_norm(y)))
        throw InputError("spatial_derivative: psi not on the commutant");
  GnsData gp = gns(psi);
  const int m = psi.algebra.dim();
  // R^psi(xi) Lambda_psi(y) = y xi: columns over the GNS basis.
  auto r_of = [&](const std::vector<cplx>& xi) {
    CMatrix b(d, m);
    for (int j = 0; j < m; ++j) {
      auto col = mat_vec(psi.algebra.basis[j], xi);
      for (int i = 0; i < d; ++i) b(i, j) = col[i];
    }
    return matmul(b, gp.lambda_inv);
  };
  std::vector<CMatrix> r(d);
  for (int k = 0; k < d; ++k) r[k] = r_of(basis_vec(d, k));
  CMatrix deriv(d, d);
  double theta_membership = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix t = matmul(r[j], adjoint(r[i]));
      if (i == j) theta_membership = std::max(theta_membership, phi.algebra.membership_residual(t));
      deriv(i, j) = phi(t);
    }
  if (theta_membership > 1e-7)
    throw NumericalError("spatial_derivative: Theta^psi(xi) escaped the algebra");
  // Positive definite by construction; reject degenerate forms.
  HermEig e = eigh(cplx(0.5) * (deriv + adjoint(deriv)));
  if (e.w.empty() || e.w.front() <= 1e-11 * std::max(1.0, e.w.back()))
    throw NumericalError("spatial_derivative: degenerate form");
  return deriv;
}

}  // namespace finq
