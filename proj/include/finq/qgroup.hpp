#pragma once

#include <memory>
#include <optional>

#include "finq/report.hpp"
#include "finq/weight.hpp"

namespace finq {

struct FiniteQuantumGroup;
using FqgPtr = std::shared_ptr<const FiniteQuantumGroup>;

// The dual quantum group realized spatially on H = GNS(haar): the algebra of
// left slices of W, the dual GNS map Lambda-hat (paper normalization), the
// dual Haar weight and modular data, plus the same structure repackaged as
// an abstract FiniteQuantumGroup (with state-normalized Haar).
struct DualData {
  ConcreteStarAlgebra alg_hat;
  CMatrix delta_hat;   // coords n^2 x n over alg_hat's basis
  CMatrix lambda_hat;  // alg_hat coords -> H
  Weight phi_hat;      // unnormalized: phi_hat(y) = <Lambda-hat y, Lambda-hat 1>
  AntilinearOp j_hat;
  CMatrix nabla_hat;
  FqgPtr fqg;
};

// A finite quantum group: Hopf *-algebra data over a concrete algebra, the
// Haar state, and the derived GNS/multiplicative-unitary apparatus.
struct FiniteQuantumGroup {
  std::string name;
  ConcreteStarAlgebra alg;
  CMatrix delta;             // n^2 x n over the algebra basis
  std::vector<cplx> counit;  // row over the basis
  CMatrix antipode;          // n x n over the basis
  Weight haar;

  GnsData gnsphi;  // H = GNS(haar); J = gnsphi.j, nabla = gnsphi.nabla
  CMatrix w;       // W on H (x) H
  CMatrix v;       // V on H (x) H
  std::vector<CMatrix> w_legs;  // W = sum_i pi(b_i) (x) w_legs[i]
  double w_leg_residual = 0.0;  // membership residual of W in M (x) B(H)

  mutable std::shared_ptr<const DualData> dual_cache;

  int dim() const { return alg.dim(); }
  CMatrix rep(const std::vector<cplx>& coords) const { return gnsphi.represent(coords); }
  CMatrix rep_basis(int i) const { return gnsphi.pi[i]; }
  // (pi (x) pi)(Delta(x)) on H (x) H
  CMatrix delta_spatial(const std::vector<cplx>& coords) const;
  // lambda(omega) = (omega (x) id)(W) for an abstract functional on M.
  CMatrix lambda_of(const std::vector<cplx>& omega_row) const;
  // xi(omega): the vector with omega(x^*) = <xi, Lambda(x)>.
  std::vector<cplx> xi_of(const std::vector<cplx>& omega_row) const;
  // omega_{xi,eta} restricted to M, as a row on the basis.
  std::vector<cplx> vector_functional(const std::vector<cplx>& xi,
                                      const std::vector<cplx>& eta) const;
};

// Builds the derived data; solves the Haar state when absent. Throws
// StructureError when the inputs are not finite-quantum-group data (no Haar
// state, non-unitary W).
FqgPtr make_quantum_group(std::string name, ConcreteStarAlgebra alg, CMatrix delta,
                          std::vector<cplx> counit, CMatrix antipode,
                          std::optional<Weight> haar = std::nullopt);

// The unique bi-invariant state; null space of the stacked invariance system.
Weight solve_haar(const ConcreteStarAlgebra& alg, const CMatrix& delta);

// Unique solutions of the counit/antipode axioms for given (alg, delta).
std::vector<cplx> solve_counit(const ConcreteStarAlgebra& alg, const CMatrix& delta);
CMatrix solve_antipode(const ConcreteStarAlgebra& alg, const CMatrix& delta,
                       const std::vector<cplx>& counit);

// Every axiom and Kac assertion as a residual report.
Report validate(const FiniteQuantumGroup& qg, double tol = 1e-9);

const DualData& build_dual(const FiniteQuantumGroup& qg);

// Multiplication of coordinate vectors in M (x) M, via the spatial picture.
std::vector<cplx> tensor2_mult(const ConcreteStarAlgebra& alg, const std::vector<cplx>& u,
                               const std::vector<cplx>& v);
CMatrix tensor2_matrix(const ConcreteStarAlgebra& alg, const std::vector<cplx>& u);
std::vector<cplx> tensor2_coords(const ConcreteStarAlgebra& alg, const CMatrix& x,
                                 double* residual = nullptr);

// Appendix identities.
double appendix_a1_check(const FiniteQuantumGroup& qg, const std::vector<cplx>& xi,
                         const std::vector<cplx>& b_coords);
double appendix_a2_check(const FiniteQuantumGroup& qg, const std::vector<cplx>& a_coords,
                         const std::vector<cplx>& xi, const std::vector<cplx>& eta);
std::vector<cplx> appendix_extra_recover(
    const FiniteQuantumGroup& qg,
    const std::vector<std::pair<std::vector<cplx>, cplx>>& pairings, double tol = 1e-8);

// Finite group presentation for the catalog builders.
struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> mult;  // mult[g][h] = g*h
  int identity = 0;

  int inverse(int g) const;
  void verify() const;  // associativity, identity, inverses

  static GroupTable cyclic(int n);
  static GroupTable symmetric3();
};

FqgPtr trivial_quantum_group();
FqgPtr group_algebra(const GroupTable& g, const std::string& name);
FqgPtr function_algebra(const GroupTable& g, const std::string& name);
FqgPtr kac_paljutkin();
FqgPtr opposite(const FqgPtr& qg);
FqgPtr commutant_qg(const FqgPtr& qg);

bool is_commutative(const FiniteQuantumGroup& qg, double tol = 1e-9);
bool is_cocommutative(const FiniteQuantumGroup& qg, double tol = 1e-9);

// Isomorphism search between finite quantum groups: a unital *-isomorphism
// intertwining the comultiplications (and then necessarily counit, antipode
// and Haar state). Gauss-Newton refinement seeded over block matchings; a
// failed search reports identified=false, never "non-isomorphic".
struct IsoResult {
  bool identified = false;
  double residual = 1.0;
  CMatrix map;  // coords of a -> coords of b
};

IsoResult find_isomorphism(const FiniteQuantumGroup& a, const FiniteQuantumGroup& b,
                           double tol = 1e-8, int seeds_per_matching = 6,
                           unsigned long long seed = 20260810);

}  // namespace finq
