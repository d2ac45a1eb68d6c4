#pragma once

#include "finq/algebra.hpp"
#include "finq/antilinear.hpp"

namespace finq {

// A faithful positive linear functional on a ConcreteStarAlgebra. At finite
// dimension every weight is bounded, so this covers every n.s.f. weight in
// sight.
struct Weight {
  ConcreteStarAlgebra algebra;
  std::vector<cplx> values;  // theta(b_i)

  cplx eval_coords(const std::vector<cplx>& c) const;
  cplx operator()(const CMatrix& x) const;

  // gram[i][j] = theta(b_i^* b_j); positive definite iff faithful.
  CMatrix gram() const;
  // The unique Q in the algebra with theta(x) = Tr(Q x); positive definite
  // for faithful weights.
  CMatrix density() const;
  bool faithful(double tol = 1e-9) const;
};

Weight weight_from_density(const ConcreteStarAlgebra& a, const CMatrix& q);
Weight trace_weight(const ConcreteStarAlgebra& a);             // ambient trace restricted
Weight normalized_trace_weight(const ConcreteStarAlgebra& a);  // state version
Weight random_faithful_weight(const ConcreteStarAlgebra& a, std::mt19937_64& rng);

// GNS data in an orthonormal realization: the GNS space is C^n with the
// standard inner product and Lambda = gram^{1/2} on coordinates, so
// <Lambda(x), Lambda(y)> = theta(y^* x).
struct GnsData {
  CMatrix gram;
  CMatrix lambda;      // coords -> GNS vectors
  CMatrix lambda_inv;
  std::vector<CMatrix> pi;  // pi(b_i)
  AntilinearOp j;
  CMatrix nabla;
  CMatrix density;  // ambient matrix Q

  int dim() const { return lambda.rows; }
  std::vector<cplx> map(const std::vector<cplx>& coords) const;  // Lambda
  std::vector<cplx> unmap(const std::vector<cplx>& v) const;     // Lambda^{-1}
  CMatrix represent(const std::vector<cplx>& coords) const;      // pi(x)
};

GnsData gns(const Weight& theta);

// sigma_t(x) = Q^{it} x Q^{-it} as an ambient matrix (x given in ambient).
CMatrix modular_flow(const Weight& theta, const CMatrix& x, double t);
// Analytic continuation sigma_z for purely imaginary arguments is covered by
// real powers of Q; sigma_{i/2}(x) = Q^{-1/2} x Q^{1/2}.
CMatrix modular_half(const Weight& theta, const CMatrix& x, double s);  // sigma_{i s}

// [D theta2 : D theta1]_t = Q2^{it} Q1^{-it}, a unitary in the algebra.
CMatrix connes_cocycle(const Weight& theta2, const Weight& theta1, double t);

struct RelativeModular {
  AntilinearOp j21;
  CMatrix nabla21;
  CMatrix u;  // J_{2,1} J_1, intertwines the standard representations
};

RelativeModular relative_modular(const Weight& theta2, const Weight& theta1);

Weight balanced_weight(const Weight& theta1, const Weight& theta2);
// The ambient algebra (x) M2 that balanced_weight lives on.
ConcreteStarAlgebra algebra_tensor_m2(const ConcreteStarAlgebra& a);

// Connes' spatial derivative d(phi)/d(psi) for phi on N and psi on N'.
CMatrix spatial_derivative(const Weight& phi, const Weight& psi);

}  // namespace finq
