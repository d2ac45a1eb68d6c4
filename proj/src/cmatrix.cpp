#include "finq/cmatrix.hpp"

#include <cmath>
#include <cstring>

namespace finq {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(const std::vector<cplx>& d) {
  CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  CMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw InputError("from_rows: ragged rows");
    int j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows != o.rows || cols != o.cols) throw InputError("matrix add: shape mismatch");
  for (size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows != o.rows || cols != o.cols) throw InputError("matrix sub: shape mismatch");
  for (size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : a) v *= s;
  return *this;
}

namespace serial {

void matmul(const CMatrix& x, const CMatrix& y, CMatrix& out) {
  if (x.cols != y.rows) throw InputError("matmul: shape mismatch");
  out = CMatrix(x.rows, y.cols);
  const int n = x.rows, k = x.cols, m = y.cols;
  for (int i = 0; i < n; ++i) {
    cplx* oi = &out.a[static_cast<size_t>(i) * m];
    for (int p = 0; p < k; ++p) {
      const cplx xv = x(i, p);
      if (xv == cplx(0.0)) continue;
      const cplx* yp = &y.a[static_cast<size_t>(p) * m];
      for (int j = 0; j < m; ++j) oi[j] += xv * yp[j];
    }
  }
}

void kron(const CMatrix& x, const CMatrix& y, CMatrix& out) {
  out = CMatrix(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      const cplx xv = x(i, j);
      if (xv == cplx(0.0)) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          out(i * y.rows + k, j * y.cols + l) = xv * y(k, l);
    }
}

void adjoint(const CMatrix& x, CMatrix& out) {
  out = CMatrix(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out(j, i) = std::conj(x(i, j));
}

void conjugate(const CMatrix& x, CMatrix& out) {
  out = x;
  for (auto& v : out.a) v = std::conj(v);
}

void axpy(cplx alpha, const CMatrix& x, CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InputError("axpy: shape mismatch");
  for (size_t k = 0; k < x.a.size(); ++k) y.a[k] += alpha * x.a[k];
}

}  // namespace serial

namespace par {

void matmul(const CMatrix& x, const CMatrix& y, CMatrix& out) {
  if (x.cols != y.rows) throw InputError("matmul: shape mismatch");
  out = CMatrix(x.rows, y.cols);
  const int n = x.rows, k = x.cols, m = y.cols;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    cplx* oi = &out.a[static_cast<size_t>(i) * m];
    for (int p = 0; p < k; ++p) {
      const cplx xv = x(i, p);
      if (xv == cplx(0.0)) continue;
      const cplx* yp = &y.a[static_cast<size_t>(p) * m];
      for (int j = 0; j < m; ++j) oi[j] += xv * yp[j];
    }
  }
}

void kron(const CMatrix& x, const CMatrix& y, CMatrix& out) {
  out = CMatrix(x.rows * y.rows, x.cols * y.cols);
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < y.rows; ++k) {
      for (int j = 0; j < x.cols; ++j) {
        const cplx xv = x(i, j);
        if (xv == cplx(0.0)) continue;
        for (int l = 0; l < y.cols; ++l)
          out(i * y.rows + k, j * y.cols + l) = xv * y(k, l);
      }
    }
}

void adjoint(const CMatrix& x, CMatrix& out) {
  out = CMatrix(x.cols, x.rows);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out(j, i) = std::conj(x(i, j));
}

void conjugate(const CMatrix& x, CMatrix& out) {
  out = x;
  const long long n = static_cast<long long>(out.a.size());
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < n; ++k) out.a[k] = std::conj(out.a[k]);
}

void axpy(cplx alpha, const CMatrix& x, CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InputError("axpy: shape mismatch");
  const long long n = static_cast<long long>(x.a.size());
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < n; ++k) y.a[k] += alpha * x.a[k];
}

}  // namespace par

// Parallelism threshold in output elements.
static constexpr size_t kParCut = 1 << 14;

CMatrix matmul(const CMatrix& x, const CMatrix& y) {
  CMatrix out;
  const size_t work = static_cast<size_t>(x.rows) * y.cols;
  if (work >= kParCut)
    par::matmul(x, y, out);
  else
    serial::matmul(x, y, out);
  return out;
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out;
  const size_t work = static_cast<size_t>(x.rows) * y.rows * x.cols * y.cols;
  if (work >= kParCut)
    par::kron(x, y, out);
  else
    serial::kron(x, y, out);
  return out;
}

CMatrix adjoint(const CMatrix& x) {
  CMatrix out;
  if (x.a.size() >= kParCut)
    par::adjoint(x, out);
  else
    serial::adjoint(x, out);
  return out;
}

CMatrix conjugate(const CMatrix& x) {
  CMatrix out;
  if (x.a.size() >= kParCut)
    par::conjugate(x, out);
  else
    serial::conjugate(x, out);
  return out;
}

CMatrix transpose(const CMatrix& x) {
  CMatrix out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
  return out;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) { return matmul(x, y); }

CMatrix operator*(cplx s, const CMatrix& x) {
  CMatrix out = x;
  out *= s;
  return out;
}

CMatrix operator+(const CMatrix& x, const CMatrix& y) {
  CMatrix out = x;
  out += y;
  return out;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
  CMatrix out = x;
  out -= y;
  return out;
}

std::vector<cplx> mat_vec(const CMatrix& x, const std::vector<cplx>& v) {
  if (x.cols != static_cast<int>(v.size())) throw InputError("apply: shape mismatch");
  std::vector<cplx> out(x.rows, cplx(0.0));
  for (int i = 0; i < x.rows; ++i) {
    cplx s = 0.0;
    const cplx* xi = &x.a[static_cast<size_t>(i) * x.cols];
    for (int j = 0; j < x.cols; ++j) s += xi[j] * v[j];
    out[i] = s;
  }
  return out;
}

cplx trace(const CMatrix& x) {
  if (!x.square()) throw InputError("trace: not square");
  cplx s = 0.0;
  for (int i = 0; i < x.rows; ++i) s += x(i, i);
  return s;
}

double fro_norm(const CMatrix& x) {
  double s = 0.0;
  for (const auto& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

cplx hs_inner(const CMatrix& x, const CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InputError("hs_inner: shape mismatch");
  cplx s = 0.0;
  for (size_t k = 0; k < x.a.size(); ++k) s += std::conj(y.a[k]) * x.a[k];
  return s;
}

double rel_residual(const CMatrix& got, const CMatrix& want) {
  const double scale = std::max(1.0, std::max(fro_norm(got), fro_norm(want)));
  return fro_norm(got - want) / scale;
}

double commutator_norm(const CMatrix& x, const CMatrix& y) {
  return fro_norm(matmul(x, y) - matmul(y, x));
}

bool finite(const CMatrix& x) {
  for (const auto& v : x.a)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

cplx vec_inner(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  if (u.size() != v.size()) throw InputError("vec_inner: size mismatch");
  cplx s = 0.0;
  for (size_t k = 0; k < u.size(); ++k) s += std::conj(v[k]) * u[k];
  return s;
}

double vec_norm(const std::vector<cplx>& u) {
  double s = 0.0;
  for (const auto& v : u) s += std::norm(v);
  return std::sqrt(s);
}

CMatrix random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(r, c);
  for (auto& v : m.a) v = cplx(g(rng), g(rng));
  return m;
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  CMatrix m = random_matrix(n, n, rng);
  CMatrix out = m + adjoint(m);
  out *= 0.5;
  return out;
}

CMatrix random_positive(int n, std::mt19937_64& rng) {
  CMatrix m = random_matrix(n, n, rng);
  CMatrix out = matmul(adjoint(m), m);
  for (int i = 0; i < n; ++i) out(i, i) += 0.5;
  return out;
}

}  // namespace finq
