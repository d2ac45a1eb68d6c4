#include "finq/lapack.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace finq {

static lapack_complex_double* lp(std::vector<cplx>& v) {
  return reinterpret_cast<lapack_complex_double*>(v.data());
}

HermEig eigh(const CMatrix& x) {
  if (!x.square()) throw InputError("eigh: not square");
  HermEig out;
  out.v = x;
  out.w.resize(x.rows);
  if (x.rows == 0) return out;
  int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'L', x.rows, lp(out.v.a), x.rows,
                            out.w.data());
  if (info != 0) throw NumericalError("zheevd failed, info=" + std::to_string(info));
  return out;
}

Svd svd(const CMatrix& x) {
  Svd out;
  const int m = x.rows, n = x.cols, k = std::min(m, n);
  out.u = CMatrix(m, k);
  out.vh = CMatrix(k, n);
  out.s.resize(k);
  if (k == 0) return out;
  CMatrix work = x;
  std::vector<double> superb(std::max(1, k - 1));
  int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S', m, n, lp(work.a), n, out.s.data(),
                            lp(out.u.a), k, lp(out.vh.a), n, superb.data());
  if (info != 0) throw NumericalError("zgesvd failed, info=" + std::to_string(info));
  return out;
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
  if (!a.square() || a.rows != b.rows) throw InputError("solve: shape mismatch");
  CMatrix lu = a, x = b;
  std::vector<lapack_int> ipiv(a.rows);
  int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, a.rows, b.cols, lp(lu.a), a.cols, ipiv.data(),
                           lp(x.a), b.cols);
  if (info != 0) throw NumericalError("zgesv failed, info=" + std::to_string(info));
  return x;
}

CMatrix inverse(const CMatrix& a) { return solve(a, CMatrix::identity(a.rows)); }

CMatrix pinv(const CMatrix& a, double rcond) {
  Svd d = svd(a);
  const double cut = d.s.empty() ? 0.0 : d.s[0] * rcond;
  // pinv = V s^+ U^*
  CMatrix vsu(a.cols, a.rows);
  CMatrix v = adjoint(d.vh);
  CMatrix uh = adjoint(d.u);
  for (int i = 0; i < v.rows; ++i)
    for (int k = 0; k < static_cast<int>(d.s.size()); ++k) {
      if (d.s[k] <= cut) continue;
      const cplx f = v(i, k) / d.s[k];
      for (int j = 0; j < uh.cols; ++j) vsu(i, j) += f * uh(k, j);
    }
  return vsu;
}

CMatrix pinv_solve(const CMatrix& a, const CMatrix& b, double rcond) {
  return matmul(pinv(a, rcond), b);
}

// Rotate each column so its largest-modulus entry is real positive; SVD
// phases are otherwise arbitrary and would leak into downstream bases.
static void canonicalize_columns(CMatrix& m) {
  for (int j = 0; j < m.cols; ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < m.rows; ++i) {
      const double v = std::abs(m(i, j));
      if (v > best + 1e-12) {
        best = v;
        arg = i;
      }
    }
    if (best <= 0.0) continue;
    const cplx phase = std::conj(m(arg, j)) / best;
    for (int i = 0; i < m.rows; ++i) m(i, j) *= phase;
  }
}

CMatrix null_space(const CMatrix& a, double rcond) {
  if (a.rows == 0 || a.cols == 0) return CMatrix::identity(a.cols);
  Svd d = svd(a);
  const double cut = d.s.empty() ? 0.0 : std::max(d.s[0], 1.0) * rcond;
  int r = 0;
  for (double s : d.s)
    if (s > cut) ++r;
  const int k = std::min(a.rows, a.cols);
  // rows r..k-1 of vh plus the trailing cols beyond k span the null space
  CMatrix out(a.cols, a.cols - r);
  int col = 0;
  for (int i = r; i < k; ++i, ++col)
    for (int j = 0; j < a.cols; ++j) out(j, col) = std::conj(d.vh(i, j));
  if (k < a.cols) {
    // zgesvd with 'S' already returned k rows; the orthogonal complement of
    // the row space needs the full V. Recompute with full vectors.
    CMatrix work = a;
    std::vector<double> s(k), superb(std::max(1, k - 1));
    CMatrix u(a.rows, a.rows), vh(a.cols, a.cols);
    int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'A', 'A', a.rows, a.cols, lp(work.a), a.cols,
                              s.data(), lp(u.a), a.rows, lp(vh.a), a.cols, superb.data());
    if (info != 0) throw NumericalError("zgesvd failed, info=" + std::to_string(info));
    out = CMatrix(a.cols, a.cols - r);
    col = 0;
    for (int i = r; i < a.cols; ++i, ++col)
      for (int j = 0; j < a.cols; ++j) out(j, col) = std::conj(vh(i, j));
  }
  canonicalize_columns(out);
  return out;
}

CMatrix column_span(const CMatrix& a, double rcond) {
  if (a.rows == 0 || a.cols == 0) return CMatrix(a.rows, 0);
  Svd d = svd(a);
  const double cut = d.s.empty() ? 0.0 : d.s[0] * rcond;
  int r = 0;
  for (double s : d.s)
    if (s > cut) ++r;
  CMatrix out(a.rows, r);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < r; ++j) out(i, j) = d.u(i, j);
  canonicalize_columns(out);
  return out;
}

int rank(const CMatrix& a, double rcond) {
  if (a.rows == 0 || a.cols == 0) return 0;
  Svd d = svd(a);
  const double cut = d.s.empty() ? 0.0 : std::max(d.s[0], 1.0) * rcond;
  int r = 0;
  for (double s : d.s)
    if (s > cut) ++r;
  return r;
}

double smallest_singular_value(const CMatrix& a) {
  Svd d = svd(a);
  return d.s.empty() ? 0.0 : d.s.back();
}

}  // namespace finq
