#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace finq {

using cplx = std::complex<double>;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major.
struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool square() const { return rows == cols; }
  bool empty() const { return rows == 0 || cols == 0; }

  static CMatrix zero(int r, int c) { return CMatrix(r, c); }
  static CMatrix identity(int n);
  static CMatrix diag(const std::vector<cplx>& d);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);
};

// Kernel layer. `serial` holds the reference implementations; `par` the
// OpenMP ones. The unqualified entry points dispatch on problem size so the
// parallel path only kicks in where it pays off.
namespace serial {
void matmul(const CMatrix& x, const CMatrix& y, CMatrix& out);
void kron(const CMatrix& x, const CMatrix& y, CMatrix& out);
void adjoint(const CMatrix& x, CMatrix& out);
void conjugate(const CMatrix& x, CMatrix& out);
void axpy(cplx alpha, const CMatrix& x, CMatrix& y);  // y += alpha*x
}  // namespace serial

namespace par {
void matmul(const CMatrix& x, const CMatrix& y, CMatrix& out);
void kron(const CMatrix& x, const CMatrix& y, CMatrix& out);
void adjoint(const CMatrix& x, CMatrix& out);
void conjugate(const CMatrix& x, CMatrix& out);
void axpy(cplx alpha, const CMatrix& x, CMatrix& y);
}  // namespace par

CMatrix matmul(const CMatrix& x, const CMatrix& y);
CMatrix kron(const CMatrix& x, const CMatrix& y);
CMatrix adjoint(const CMatrix& x);
CMatrix conjugate(const CMatrix& x);
CMatrix transpose(const CMatrix& x);

CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix operator*(cplx s, const CMatrix& x);
CMatrix operator+(const CMatrix& x, const CMatrix& y);
CMatrix operator-(const CMatrix& x, const CMatrix& y);

std::vector<cplx> mat_vec(const CMatrix& x, const std::vector<cplx>& v);

cplx trace(const CMatrix& x);
double fro_norm(const CMatrix& x);
// Hilbert-Schmidt pairing <x,y> = Tr(y^* x), linear in x.
cplx hs_inner(const CMatrix& x, const CMatrix& y);
double rel_residual(const CMatrix& got, const CMatrix& want);
// ||x y - y x||_F
double commutator_norm(const CMatrix& x, const CMatrix& y);
bool finite(const CMatrix& x);

// <u,v> = v^* u, linear in the first argument.
cplx vec_inner(const std::vector<cplx>& u, const std::vector<cplx>& v);
double vec_norm(const std::vector<cplx>& u);

CMatrix random_matrix(int r, int c, std::mt19937_64& rng);
CMatrix random_hermitian(int n, std::mt19937_64& rng);
CMatrix random_positive(int n, std::mt19937_64& rng);  // strictly positive definite

}  // namespace finq
