#pragma once

#include "finq/cmatrix.hpp"

namespace finq {

// Functional calculus on positive definite Hermitian matrices via
// eigendecomposition. Powers take a complex exponent, so q^{it} covers the
// modular flows and q^{1/2} the polar decompositions.
CMatrix funcalc_power(const CMatrix& q, cplx z, double tol = 1e-10);
CMatrix funcalc_log(const CMatrix& q, double tol = 1e-10);
CMatrix funcalc_exp(const CMatrix& h, double tol = 1e-10);  // h Hermitian

// Hermitian part check helper used by the calculus entry points.
void require_positive(const CMatrix& q, double tol, const char* who);

}  // namespace finq
