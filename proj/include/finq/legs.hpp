#pragma once

#include "finq/cmatrix.hpp"

namespace finq {

// Tensor-leg conventions: kron(a,b) has the first factor on the slow index,
// so an operator on legs (d0,...,dk-1) indexes basis vectors as
// i = ((i0*d1 + i1)*d2 + ...). All leg bookkeeping in the project goes
// through the helpers below; higher modules never write index code.

// Unitary flip on C^{d1} (x) C^{d2}: Sigma(v (x) w) = w (x) v.
CMatrix flip(int dim1, int dim2);

// perm[p] = original leg placed at position p of the output.
// Returns P x P^{-1} as a matrix where P permutes the tensor factors.
CMatrix permute_legs(const CMatrix& x, const std::vector<int>& dims,
                     const std::vector<int>& perm);

// The permutation operator P itself (perm as above).
CMatrix leg_permutation_operator(const std::vector<int>& dims, const std::vector<int>& perm);

// Embed an operator acting on the sub-legs `legs` (strictly increasing) of a
// product with leg dimensions `dims` into the full space.
CMatrix embed_legs(const CMatrix& x, const std::vector<int>& dims, const std::vector<int>& legs);

// Slices by vector functionals omega_{xi,eta}(a) = <a xi, eta>.
// slice_left = (omega (x) id)(x), slice_right = (id (x) omega)(x).
CMatrix slice_left(const CMatrix& x, int d1, int d2, const std::vector<cplx>& xi,
                   const std::vector<cplx>& eta);
CMatrix slice_right(const CMatrix& x, int d1, int d2, const std::vector<cplx>& xi,
                    const std::vector<cplx>& eta);

// Density pairing omega(a) = Tr(D a).
CMatrix slice_left_density(const CMatrix& x, int d1, int d2, const CMatrix& dens);
CMatrix slice_right_density(const CMatrix& x, int d1, int d2, const CMatrix& dens);

std::vector<cplx> tensor_vec(const std::vector<cplx>& v, const std::vector<cplx>& w);
std::vector<cplx> basis_vec(int dim, int k);

}  // namespace finq
