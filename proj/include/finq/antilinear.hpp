#pragma once

#include "finq/cmatrix.hpp"

namespace finq {

// Antilinear operator v -> base * conj(v), conjugation in the canonical
// basis. Compositions collapse by the rules below; in particular the
// product of two antilinears is linear, which is how J-tilde (J-hat (x)
// J-theta) becomes the unitary implementation.
struct AntilinearOp {
  CMatrix base;

  AntilinearOp() = default;
  explicit AntilinearOp(CMatrix b) : base(std::move(b)) {
    if (!base.square()) throw InputError("AntilinearOp: base must be square");
  }

  int dim() const { return base.rows; }
  std::vector<cplx> operator()(const std::vector<cplx>& v) const;

  static AntilinearOp conjugation(int n) { return AntilinearOp(CMatrix::identity(n)); }
};

// a after b (apply b first).
CMatrix compose(const AntilinearOp& a, const AntilinearOp& b);
AntilinearOp compose(const CMatrix& l, const AntilinearOp& a);
AntilinearOp compose(const AntilinearOp& a, const CMatrix& l);

// Adjoint with respect to the standard inner product: <A u, v> = <A* v, u>.
AntilinearOp adjoint(const AntilinearOp& a);
AntilinearOp kron(const AntilinearOp& a, const AntilinearOp& b);

// ||a - b|| on bases.
double distance(const AntilinearOp& a, const AntilinearOp& b);
bool is_antiunitary(const AntilinearOp& a, double tol);

// Polar decomposition s = J nabla^{1/2} of an invertible antilinear map,
// orthogonal with respect to the inner product <u,v>_g = v^* gram u.
// Returns (J antiunitary w.r.t. gram, nabla positive definite w.r.t. gram).
std::pair<AntilinearOp, CMatrix> polar_antilinear(const AntilinearOp& s, const CMatrix& gram);
std::pair<AntilinearOp, CMatrix> polar_antilinear(const AntilinearOp& s);

}  // namespace finq
