#pragma once

#include "finq/cmatrix.hpp"

namespace finq {

struct HermEig {
  std::vector<double> w;  // ascending
  CMatrix v;              // columns are eigenvectors
};

struct Svd {
  CMatrix u;
  std::vector<double> s;  // descending
  CMatrix vh;
};

HermEig eigh(const CMatrix& x);
Svd svd(const CMatrix& x);

// Solve a x = b for square a (b may have several columns).
CMatrix solve(const CMatrix& a, const CMatrix& b);
CMatrix inverse(const CMatrix& a);
// Minimum-norm least squares via SVD with relative rank cut.
CMatrix pinv_solve(const CMatrix& a, const CMatrix& b, double rcond = 1e-12);
CMatrix pinv(const CMatrix& a, double rcond = 1e-12);

// Orthonormal basis for the right null space of a (columns), singular
// values below rcond * s_max counted as rank deficiency.
CMatrix null_space(const CMatrix& a, double rcond = 1e-10);
// Orthonormal basis for the column span of a, rank-revealing.
CMatrix column_span(const CMatrix& a, double rcond = 1e-10);

int rank(const CMatrix& a, double rcond = 1e-10);
double smallest_singular_value(const CMatrix& a);

}  // namespace finq
